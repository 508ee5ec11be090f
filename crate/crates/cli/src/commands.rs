use std::fmt::Write as _;

use kchow::crosscheck::{self, Check};
use kchow::io::{self, ComplexInput};
use kchow::oracle;
use kchow::strata::hasse_edges;
use kchow::{enumerate_graphs, Codim, DivisorKind, GroundSet, LabelSet, Presentation, RingElement, SimplicialComplex};
use serde_json::{json, Value};

use crate::{Cli, Command, Failure, Format, Outcome};

type Res<T> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Res<Outcome> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("--input <path> is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let input = io::parse_complex(&text)?;
    let n = input.complex().n();
    if !matches!(cli.command, Command::Validate) && n > cli.max_labels {
        return Err(Failure::SizeGuard(format!(
            "{n} labels exceed the size guard of {} (raise --max-labels)",
            cli.max_labels
        )));
    }
    if let Command::Validate = cli.command {
        return Ok(validate(&input, cli.format));
    }
    let complex = input.complex();
    complex.ensure_triparted()?;
    let out = match &cli.command {
        Command::Validate => unreachable!(),
        Command::Divisors => divisors(complex, cli.format)?,
        Command::Strata { codim, all } => {
            let which = if *all { Codim::All } else { Codim::Exact(codim.unwrap_or(0)) };
            strata(complex, which, cli.format)?
        }
        Command::Ring => ring(&Presentation::new(complex)?, cli.format),
        Command::Betti => betti(&Presentation::new(complex)?, cli.format)?,
        Command::Multiply { a, b } => {
            let pres = Presentation::new(complex)?;
            let x = element_arg(&pres, a)?;
            let y = element_arg(&pres, b)?;
            element(&pres, &pres.multiply(&x, &y)?, cli.format)
        }
        Command::StratumClass { graph } => {
            let pres = Presentation::new(complex)?;
            let json = if graph.trim_start().starts_with('{') {
                graph.clone()
            } else {
                std::fs::read_to_string(graph)
                    .map_err(|e| Failure::Usage(format!("cannot read graph {graph}: {e}")))?
            };
            let g = io::parse_graph(complex.ground(), &json)?;
            element(&pres, &pres.stratum_class(&g)?, cli.format)
        }
        Command::Wdvv { i, j, k, l } => {
            let pres = Presentation::new(complex)?;
            let g = complex.ground();
            let e = pres.wdvv(g.index_of(i)?, g.index_of(j)?, g.index_of(k)?, g.index_of(l)?)?;
            element(&pres, &e, cli.format)
        }
        Command::Pushforward { labels } => {
            let pres = Presentation::new(complex)?;
            let side = labels_arg(complex.ground(), labels)?;
            element(&pres, &pres.pushforward(side)?, cli.format)
        }
        Command::Pointcount { q: Some(q) } => {
            let count = oracle::count_points(complex, *q)?;
            match cli.format {
                Format::Text => format!("{count}\n"),
                Format::Json => pretty(&json!({ "q": q, "count": count.to_string() })),
                Format::Csv => csv(&["q", "count"], vec![vec![q.to_string(), count.to_string()]]),
            }
        }
        Command::Pointcount { q: None } => return pointcount(&Presentation::new(complex)?, cli.format),
        Command::Selftest { brute_max_labels } => {
            return selftest(&Presentation::new(complex)?, *brute_max_labels, cli.format)
        }
    };
    Ok(Outcome { stdout: out, failure: None })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory writer");
    for r in rows {
        w.write_record(&r).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("UTF-8 fields")
}

fn labels_arg(ground: &GroundSet, args: &[String]) -> Res<LabelSet> {
    let labels: Vec<&str> = args
        .iter()
        .flat_map(|a| a.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(ground.set_of(&labels)?)
}

fn element_arg(pres: &Presentation, arg: &str) -> Res<RingElement> {
    if arg.trim_start().starts_with('[') {
        Ok(io::parse_element_json(pres, arg)?)
    } else {
        Ok(io::parse_element(pres, arg)?)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn validate(input: &ComplexInput, format: Format) -> Outcome {
    let k = input.complex();
    let g = k.ground();
    let triparted = k.is_at_least_triparted();
    let weights: Option<Vec<String>> = match input {
        ComplexInput::Weights(w, _) => Some(w.weights().iter().map(|x| x.to_string()).collect()),
        ComplexInput::Facets(_) => None,
    };
    let facets: Vec<String> = k.facets().iter().map(|&f| g.format_set(f)).collect();
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "labels: {}", g.labels().join(","));
            if let Some(w) = &weights {
                let _ = writeln!(s, "weights: {}", w.join(","));
            }
            let _ = writeln!(s, "facets: {}", facets.join(" "));
            let _ = writeln!(s, "discrete: {}", yes_no(k.is_discrete()));
            let _ = writeln!(s, "triparted: {}", yes_no(triparted));
            s
        }
        Format::Json => {
            let mut v = io::complex_to_json(k);
            if let Some(w) = &weights {
                v["weights"] = json!(w);
            }
            v["discrete"] = json!(k.is_discrete());
            v["triparted"] = json!(triparted);
            pretty(&v)
        }
        Format::Csv => {
            let mut rows = vec![vec!["labels".into(), g.labels().join(" ")]];
            if let Some(w) = &weights {
                rows.push(vec!["weights".into(), w.join(" ")]);
            }
            rows.push(vec!["facets".into(), facets.join(" ")]);
            rows.push(vec!["discrete".into(), k.is_discrete().to_string()]);
            rows.push(vec!["triparted".into(), triparted.to_string()]);
            csv(&["field", "value"], rows)
        }
    };
    let failure = (!triparted).then(|| Failure::Validation(kchow::Error::NotTriparted.to_string()));
    Outcome { stdout, failure }
}

fn divisors(k: &SimplicialComplex, format: Format) -> Res<String> {
    let g = k.ground();
    let ds = kchow::divisors(k)?;
    let kind = |d: &kchow::BoundaryDivisor| match d.kind() {
        DivisorKind::Pi(_) => "Pi",
        DivisorKind::Sigma(..) => "Sigma",
    };
    Ok(match format {
        Format::Text => ds
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{i} {} {}\n", d.name(g), d.graph().describe(g)))
            .collect(),
        Format::Json => pretty(&Value::Array(
            ds.iter()
                .enumerate()
                .map(|(i, d)| {
                    json!({ "id": i, "name": d.name(g), "kind": kind(d), "graph": io::graph_to_json(g, d.graph()) })
                })
                .collect(),
        )),
        Format::Csv => csv(
            &["id", "name", "kind"],
            ds.iter()
                .enumerate()
                .map(|(i, d)| vec![i.to_string(), d.name(g), kind(d).to_string()])
                .collect(),
        ),
    })
}

fn strata(k: &SimplicialComplex, which: Codim, format: Format) -> Res<String> {
    let g = k.ground();
    let graphs = enumerate_graphs(k, which)?;
    let covers = hasse_edges(&graphs);
    let set_list = |sets: Vec<String>| sets.join(" ");
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            for (i, x) in graphs.iter().enumerate() {
                let _ = writeln!(s, "{i} codim {} {}", x.codimension(), x.describe(g));
            }
            for (lo, hi) in &covers {
                let _ = writeln!(s, "cover {lo} < {hi}");
            }
            s
        }
        Format::Json => pretty(&json!({
            "graphs": graphs
                .iter()
                .enumerate()
                .map(|(i, x)| json!({ "id": i, "codimension": x.codimension(), "graph": io::graph_to_json(g, x) }))
                .collect::<Vec<_>>(),
            "covers": covers.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })),
        Format::Csv => csv(
            &["id", "codimension", "blocks", "splits"],
            graphs
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let blocks = set_list(x.blocks().iter().map(|&b| g.format_set(b)).collect());
                    let splits = set_list(
                        (0..x.splits().len())
                            .map(|e| {
                                let (a, b) = x.split_sides(e);
                                format!("{}|{}", g.format_set(a), g.format_set(b))
                            })
                            .collect(),
                    );
                    vec![i.to_string(), x.codimension().to_string(), blocks, splits]
                })
                .collect(),
        ),
    })
}

fn ring(pres: &Presentation, format: Format) -> String {
    let k = pres.complex();
    let g = k.ground();
    let rel = pres.relations();
    let names: Vec<String> = (0..pres.generators().len()).map(|i| pres.generator_name(i)).collect();
    let quad: Vec<String> = rel.quadratic.iter().map(|&(a, b)| format!("{}*{}", names[a], names[b])).collect();
    let quad_tag = |w: &kchow::ring::WdvvRelation| {
        w.labels.iter().map(|&x| g.label(x).to_string()).collect::<Vec<_>>().join(",")
    };
    match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "generators {}", names.len());
            for (i, name) in names.iter().enumerate() {
                let _ = writeln!(s, "{i} {name}");
            }
            let _ = writeln!(s, "quadratic {}", quad.len());
            for q in &quad {
                let _ = writeln!(s, "{q}");
            }
            let _ = writeln!(s, "wdvv {}", rel.linear.len());
            for w in &rel.linear {
                let _ = writeln!(s, "{}: {}", quad_tag(w), io::render_element(pres, &w.element));
            }
            s
        }
        Format::Json => pretty(&json!({
            "generators": names,
            "quadratic": rel.quadratic.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "wdvv": rel
                .linear
                .iter()
                .map(|w| json!({
                    "labels": w.labels.iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
                    "element": io::element_to_json(&w.element),
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = names.iter().map(|n| vec!["generator".into(), n.clone()]).collect();
            rows.extend(quad.iter().map(|q| vec!["quadratic".into(), q.clone()]));
            rows.extend(rel.linear.iter().map(|w| {
                vec![format!("wdvv {}", quad_tag(w)), io::render_element(pres, &w.element)]
            }));
            csv(&["type", "relation"], rows)
        }
    }
}

fn betti(pres: &Presentation, format: Format) -> Res<String> {
    let p = pres.poincare_profile()?;
    Ok(match format {
        Format::Text => {
            let mut s = format!("{}\n", join(&p.ranks));
            for (d, t) in p.torsion.iter().enumerate().filter(|(_, t)| !t.is_empty()) {
                let _ = writeln!(s, "torsion {d}: {}", join(t));
            }
            s
        }
        Format::Json => pretty(&io::profile_to_json(&p)),
        Format::Csv => csv(
            &["degree", "rank", "torsion"],
            p.ranks
                .iter()
                .zip(&p.torsion)
                .enumerate()
                .map(|(d, (r, t))| vec![d.to_string(), r.to_string(), t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")])
                .collect(),
        ),
    })
}

fn element(pres: &Presentation, e: &RingElement, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", io::render_element(pres, e)),
        Format::Json => pretty(&io::element_to_json(e)),
        Format::Csv => csv(
            &["monomial", "coeff"],
            e.terms()
                .map(|(m, c)| {
                    let mono = io::render_element(pres, &RingElement::monomial(m.clone(), 1.into()));
                    vec![mono.trim_start_matches('+').to_string(), c.to_string()]
                })
                .collect(),
        ),
    }
}

fn pointcount(pres: &Presentation, format: Format) -> Res<Outcome> {
    let report = oracle::compare(pres)?;
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "point count: {}", join(&report.point_count_coeffs));
            let _ = writeln!(s, "ranks: {}", join(&report.presentation_ranks));
            let torsion: Vec<String> = report
                .torsion
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_empty())
                .map(|(d, t)| format!("{d}:{}", join(t)))
                .collect();
            let _ = writeln!(s, "torsion: {}", if torsion.is_empty() { "none".into() } else { torsion.join(" ") });
            let _ = writeln!(s, "match: {}", yes_no(report.matches));
            s
        }
        Format::Json => pretty(&io::oracle_report_to_json(&report)),
        Format::Csv => csv(
            &["degree", "point_count", "rank"],
            report
                .point_count_coeffs
                .iter()
                .zip(&report.presentation_ranks)
                .enumerate()
                .map(|(d, (c, r))| vec![d.to_string(), c.to_string(), r.to_string()])
                .collect(),
        ),
    };
    let failure = (!report.matches)
        .then(|| Failure::Internal("point count and presentation ranks disagree".into()));
    Ok(Outcome { stdout, failure })
}

fn selftest(pres: &Presentation, brute_max_labels: usize, format: Format) -> Res<Outcome> {
    let checks: Vec<Check> = crosscheck::selftest(pres, brute_max_labels);
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let o = &c.outcome;
                if o.passed() {
                    let _ = writeln!(s, "PASS {} ({} cases)", c.name, o.cases);
                } else {
                    let _ = writeln!(s, "FAIL {} ({} of {} cases)", c.name, o.failures, o.cases);
                    for e in &o.examples {
                        let _ = writeln!(s, "  {e}");
                    }
                }
            }
            s
        }
        Format::Json => pretty(&Value::Array(
            checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "cases": c.outcome.cases,
                        "failures": c.outcome.failures,
                        "examples": c.outcome.examples,
                    })
                })
                .collect(),
        )),
        Format::Csv => csv(
            &["check", "cases", "failures"],
            checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.outcome.cases.to_string(), c.outcome.failures.to_string()])
                .collect(),
        ),
    };
    let failed: Vec<&str> = checks.iter().filter(|c| !c.outcome.passed()).map(|c| c.name).collect();
    let failure = (!failed.is_empty()).then(|| Failure::Internal(format!("selftest failed: {}", failed.join(", "))));
    Ok(Outcome { stdout, failure })
}
