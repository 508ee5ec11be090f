//! JSON and text formats for complexes, graphs, ring elements and reports.
//!
//! Complexes: `{"labels": [...], "facets": [[...], ...]}` or
//! `{"labels": [...], "weights": ["1", "1/4", ...]}`. Weights are exact
//! rationals written as strings; decimals and JSON numbers are rejected.
//!
//! Ring elements in text form are sums of terms such as `-2*Pi{1,3}*Sigma{1,2}^2`,
//! with the constant term written as a bare integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::complex::{GroundSet, HassettWeights, SimplicialComplex};
use crate::divisor::DivisorKind;
use crate::error::{Error, Result};
use crate::graph::{canonical_side, KStableGraph};
use crate::labels::LabelSet;
use crate::oracle::OracleReport;
use crate::ring::{Monomial, PoincareProfile, Presentation, RingElement};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    labels: Vec<String>,
    #[serde(default)]
    facets: Option<Vec<Vec<String>>>,
    #[serde(default)]
    weights: Option<Vec<Value>>,
}

/// Parsed complex input, remembering the weights when given.
#[derive(Clone, Debug)]
pub enum ComplexInput {
    Facets(SimplicialComplex),
    Weights(HassettWeights, SimplicialComplex),
}

impl ComplexInput {
    pub fn complex(&self) -> &SimplicialComplex {
        match self {
            ComplexInput::Facets(k) | ComplexInput::Weights(_, k) => k,
        }
    }

    pub fn into_complex(self) -> SimplicialComplex {
        match self {
            ComplexInput::Facets(k) | ComplexInput::Weights(_, k) => k,
        }
    }
}

/// `p/q` or `p`, integers only.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("{s:?} is not an exact rational p/q"));
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(Error::Invalid(format!("{s:?} has zero denominator")));
            }
            Ok(BigRational::new(int(p)?, q))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexInput> {
    let doc: ComplexDoc =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("complex JSON: {e}")))?;
    let ground = GroundSet::new(doc.labels)?;
    match (doc.facets, doc.weights) {
        (Some(facets), None) => {
            let sets = facets
                .iter()
                .map(|f| ground.set_of(f))
                .collect::<Result<Vec<_>>>()?;
            Ok(ComplexInput::Facets(SimplicialComplex::from_facets(ground, sets)?))
        }
        (None, Some(weights)) => {
            let ws = weights
                .iter()
                .map(|w| match w {
                    Value::String(s) => parse_rational(s),
                    other => Err(Error::Invalid(format!(
                        "weight {other} must be a string such as \"1/4\""
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            let hw = HassettWeights::new(ground, ws)?;
            let k = SimplicialComplex::from_hassett_weights(&hw);
            Ok(ComplexInput::Weights(hw, k))
        }
        _ => Err(Error::Invalid(
            "complex JSON needs exactly one of \"facets\" and \"weights\"".into(),
        )),
    }
}

fn names(ground: &GroundSet, set: LabelSet) -> Value {
    json!(ground.names(set))
}

pub fn complex_to_json(complex: &SimplicialComplex) -> Value {
    let g = complex.ground();
    json!({
        "labels": g.labels(),
        "facets": complex.facets().iter().map(|&f| names(g, f)).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    blocks: Vec<Vec<String>>,
    #[serde(default)]
    splits: Vec<(Vec<String>, Vec<String>)>,
}

/// A graph over the labels of `ground`. Both sides of each split must be
/// listed and must be complementary.
pub fn parse_graph(ground: &GroundSet, text: &str) -> Result<KStableGraph> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("graph JSON: {e}")))?;
    let u = ground.universe();
    let blocks = doc
        .blocks
        .iter()
        .map(|b| ground.set_of(b))
        .collect::<Result<Vec<_>>>()?;
    let mut splits = Vec::with_capacity(doc.splits.len());
    for (a, b) in &doc.splits {
        let (a, b) = (ground.set_of(a)?, ground.set_of(b)?);
        if !a.is_disjoint(b) || a.union(b) != u {
            return Err(Error::Structure(format!(
                "split {} | {} is not a bipartition",
                ground.format_set(a),
                ground.format_set(b)
            )));
        }
        splits.push(a);
    }
    KStableGraph::new(u, blocks, splits)
}

pub fn graph_to_json(ground: &GroundSet, graph: &KStableGraph) -> Value {
    let splits: Vec<Value> = (0..graph.splits().len())
        .map(|i| {
            let (a, b) = graph.split_sides(i);
            json!([names(ground, a), names(ground, b)])
        })
        .collect();
    json!({
        "blocks": graph.blocks().iter().map(|&b| names(ground, b)).collect::<Vec<_>>(),
        "splits": splits,
    })
}

pub fn element_to_json(e: &RingElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(m, c)| {
                json!({
                    "monomial": m.exponents().iter().map(|&(g, k)| json!([g, k])).collect::<Vec<_>>(),
                    "coeff": c.to_string(),
                })
            })
            .collect(),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    monomial: Vec<(usize, u32)>,
    coeff: String,
}

pub fn parse_element_json(pres: &Presentation, text: &str) -> Result<RingElement> {
    let terms: Vec<TermDoc> =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("element JSON: {e}")))?;
    let mut e = RingElement::zero();
    for t in terms {
        let mut m = Monomial::one();
        for (g, k) in t.monomial {
            if g >= pres.generators().len() {
                return Err(Error::Invalid(format!("no generator with id {g}")));
            }
            for _ in 0..k {
                m = m.times_generator(g);
            }
        }
        let c = parse_rational(&t.coeff)?;
        if !c.is_integer() {
            return Err(Error::Invalid(format!("coefficient {} is not an integer", t.coeff)));
        }
        e.add_term(m, c.to_integer());
    }
    Ok(e)
}

/// `+Pi{1,2} -2*Pi{1,3}*Sigma{1,2}^2`; `0` for zero.
pub fn render_element(pres: &Presentation, e: &RingElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (m, c) in e.terms() {
        let sign = if c.is_negative() { '-' } else { '+' };
        let abs = c.abs();
        let mut factors: Vec<String> = m
            .exponents()
            .iter()
            .map(|&(g, k)| {
                let name = pres.generator_name(g);
                if k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        if factors.is_empty() || !abs.is_one() {
            factors.insert(0, abs.to_string());
        }
        parts.push(format!("{sign}{}", factors.join("*")));
    }
    parts.join(" ")
}

/// Parse the text form produced by [`render_element`]. Generators may be
/// named by either side of a two-component divisor.
pub fn parse_element(pres: &Presentation, text: &str) -> Result<RingElement> {
    let complex = pres.complex();
    let ground = complex.ground();
    let bad = |msg: String| Error::Invalid(format!("element {text:?}: {msg}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty".into()));
    }
    // split into signed terms, not splitting inside braces
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for ch in compact.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if !cur.is_empty() {
                terms.push((negative, std::mem::take(&mut cur)));
            } else if !terms.is_empty() || negative {
                return Err(bad("dangling sign".into()));
            }
            negative = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if cur.is_empty() {
        return Err(bad("dangling sign".into()));
    }
    terms.push((negative, cur));

    let mut out = RingElement::zero();
    for (negative, term) in terms {
        let mut coeff = BigInt::one();
        let mut mono = RingElement::one();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor".into()));
            }
            if factor.bytes().all(|b| b.is_ascii_digit()) {
                coeff *= factor.parse::<BigInt>().map_err(|e| bad(e.to_string()))?;
                continue;
            }
            let (base, power) = match factor.rsplit_once('^') {
                Some((b, p)) if !p.contains('}') => (b, p.parse::<u32>().map_err(|e| bad(e.to_string()))?),
                _ => (factor, 1),
            };
            let (kind, inner) = if let Some(r) = base.strip_prefix("Pi{") {
                ("Pi", r)
            } else if let Some(r) = base.strip_prefix("Sigma{") {
                ("Sigma", r)
            } else {
                return Err(bad(format!("unknown factor {factor:?}")));
            };
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| bad(format!("unclosed brace in {factor:?}")))?;
            let labels: Vec<&str> = inner.split(',').collect();
            let set = ground.set_of(&labels)?;
            let kind = match kind {
                "Pi" => DivisorKind::Pi(canonical_side(set, complex.universe())),
                _ => {
                    if set.len() != 2 {
                        return Err(bad(format!("{factor:?} needs two labels")));
                    }
                    let mut it = set.iter();
                    DivisorKind::Sigma(it.next().unwrap(), it.next().unwrap())
                }
            };
            let gen = pres.generator_element(kind)?;
            for _ in 0..power {
                mono = &mono * &gen;
            }
        }
        if negative {
            coeff = -coeff;
        }
        out = &out + &mono.scale(&coeff);
    }
    Ok(out)
}

pub fn profile_to_json(profile: &PoincareProfile) -> Value {
    json!({
        "ranks": profile.ranks,
        "torsion": profile
            .torsion
            .iter()
            .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn oracle_report_to_json(report: &OracleReport) -> Value {
    json!({
        "point_count_coeffs": report.point_count_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "presentation_ranks": report.presentation_ranks,
        "torsion": report
            .torsion
            .iter()
            .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "match": report.matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::new(parse_complex(text).unwrap().complex()).unwrap()
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/4").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(parse_rational("6/8").unwrap(), BigRational::new(3.into(), 4.into()));
        for bad in ["0.25", "1e-2", "1/0", "", "a/b", "1/ 4x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complexes_from_json() {
        let k = parse_complex(r#"{"labels":["1","2","3","4"],"facets":[["1","2"],["3"],["4"]]}"#).unwrap();
        assert!(k.complex().contains_labels(&["1", "2"]).unwrap());
        let w = parse_complex(r#"{"labels":["1","2","3","4","5"],"weights":["1","1","1/4","1/4","1/4"]}"#).unwrap();
        assert_eq!(w.complex().facets().len(), 3);
        assert!(parse_complex(r#"{"labels":["1","2","3"],"weights":[1,1,1]}"#).is_err());
        assert!(parse_complex(r#"{"labels":["1","2","3"],"weights":["0.5","1","1"]}"#).is_err());
        assert!(parse_complex(r#"{"labels":["1","2","3"]}"#).is_err());
        assert!(parse_complex(r#"{"labels":["1","2","3"],"facets":[["1"],["2"],["3"]],"extra":1}"#).is_err());
    }

    #[test]
    fn complex_round_trip() {
        let text = r#"{"labels":["a","b","c","d","e"],"facets":[["a","b"],["c","d","e"]]}"#;
        let k = parse_complex(text).unwrap().into_complex();
        let again = parse_complex(&complex_to_json(&k).to_string()).unwrap().into_complex();
        assert_eq!(k, again);
    }

    #[test]
    fn graph_round_trip() {
        let g = GroundSet::numbered(5).unwrap();
        let text = r#"{"blocks":[["1","2"],["3"],["4"],["5"]],"splits":[[["4","5"],["1","2","3"]]]}"#;
        let graph = parse_graph(&g, text).unwrap();
        assert_eq!(graph.codimension(), 2);
        let out = graph_to_json(&g, &graph);
        assert_eq!(
            out.to_string(),
            r#"{"blocks":[["1","2"],["3"],["4"],["5"]],"splits":[[["1","2","3"],["4","5"]]]}"#
        );
        assert_eq!(parse_graph(&g, &out.to_string()).unwrap(), graph);
        let uncovered = r#"{"blocks":[["1","2"],["3"]],"splits":[]}"#;
        assert!(matches!(parse_graph(&g, uncovered), Err(Error::Structure(_))));
        let overlap = r#"{"blocks":[["1"],["2"],["3"],["4"],["5"]],"splits":[[["1","2"],["2","3","4","5"]]]}"#;
        assert!(matches!(parse_graph(&g, overlap), Err(Error::Structure(_))));
    }

    #[test]
    fn element_text() {
        let p = pres(r#"{"labels":["1","2","3","4"],"facets":[["1"],["2"],["3"],["4"]]}"#);
        let w = p.wdvv(0, 1, 2, 3).unwrap();
        assert_eq!(render_element(&p, &w), "+Pi{1,2} -Pi{1,3}");
        assert_eq!(parse_element(&p, "+Pi{1,2} -Pi{1,3}").unwrap(), w);
        assert_eq!(parse_element(&p, "Pi{3,4} - Pi{2,4}").unwrap(), w);
        let sq = parse_element(&p, "-3*Pi{1,2}^2 + 2").unwrap();
        assert_eq!(render_element(&p, &sq), "+2 -3*Pi{1,2}^2");
        assert_eq!(parse_element(&p, &render_element(&p, &sq)).unwrap(), sq);
        assert_eq!(render_element(&p, &RingElement::zero()), "0");
        for bad in ["", "Pi{1,5}", "Pi{1,2}+", "Sigma{1,2}", "Foo{1}", "Pi{1,2", "2**Pi{1,2}"] {
            assert!(parse_element(&p, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn element_json() {
        let p = pres(r#"{"labels":["1","2","3","4","5"],"facets":[["1","2"],["3"],["4"],["5"]]}"#);
        let x = parse_element(&p, "2*Sigma{1,2}*Pi{1,2,3} - Pi{1,3}").unwrap();
        let v = element_to_json(&x);
        assert_eq!(parse_element_json(&p, &v.to_string()).unwrap(), x);
        assert!(parse_element_json(&p, r#"[{"monomial":[[99,1]],"coeff":"1"}]"#).is_err());
    }

    #[test]
    fn reports() {
        let p = pres(r#"{"labels":["1","2","3","4","5"],"facets":[["1"],["2"],["3"],["4"],["5"]]}"#);
        let v = profile_to_json(&p.poincare_profile().unwrap());
        assert_eq!(v.to_string(), r#"{"ranks":[1,5,1],"torsion":[[],[],[]]}"#);
        let r = oracle_report_to_json(&crate::oracle::compare(&p).unwrap());
        assert_eq!(
            r.to_string(),
            r#"{"match":true,"point_count_coeffs":["1","5","1"],"presentation_ranks":[1,5,1],"torsion":[[],[],[]]}"#
        );
    }
}
