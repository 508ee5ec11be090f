//! Slow, independent routes to the quantities the fast code computes, and
//! the identity checks tying the modules together.
//!
//! The brute-force routes avoid the shortcuts of the main implementation:
//! triparted-ness by enumerating every set partition, graphs by enumerating
//! every family of bipartitions, and the order on graphs by gluing
//! 𝒦(v)-stable graphs into each vertex.

use std::collections::{BTreeSet, HashSet};

use crate::complex::{permute_set, SimplicialComplex};
use crate::divisor::{disjoint, disjoint_by_cases, divisors};
use crate::error::Result;
use crate::graph::{canonical_side, generic_meet, induced_complex, splits_compatible, KStableGraph};
use crate::labels::LabelSet;
use crate::oracle;
use crate::ring::{Presentation, RingElement};
use crate::strata::{enumerate_graphs, Codim};

const KEPT_EXAMPLES: usize = 5;

/// Tally of one check: how many cases ran and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub cases: usize,
    pub failures: usize,
    /// The first few failing cases, described.
    pub examples: Vec<String>,
}

impl Outcome {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn merge(&mut self, other: Outcome) {
        self.cases += other.cases;
        self.failures += other.failures;
        let room = KEPT_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl Check {
    fn run(name: &'static str, f: impl FnOnce() -> Result<Outcome>) -> Check {
        let outcome = f().unwrap_or_else(|e| {
            let mut o = Outcome::default();
            o.record(false, || format!("error: {e}"));
            o
        });
        Check { name, outcome }
    }
}

/// All partitions of `universe` into nonempty blocks, each sorted.
pub fn set_partitions(universe: LabelSet) -> Vec<Vec<LabelSet>> {
    fn go(rest: LabelSet, acc: &mut Vec<LabelSet>, out: &mut Vec<Vec<LabelSet>>) {
        let Some(first) = rest.min() else {
            let mut p = acc.clone();
            p.sort();
            out.push(p);
            return;
        };
        let others = rest.difference(LabelSet::singleton(first));
        for extra in others.subsets() {
            acc.push(extra.with(first));
            go(others.difference(extra), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(universe, &mut Vec::new(), &mut out);
    out
}

/// Triparted-ness straight from the definition: no partition of the ground
/// set into one or two faces.
pub fn triparted_by_partitions(complex: &SimplicialComplex) -> bool {
    set_partitions(complex.universe())
        .iter()
        .filter(|p| p.len() <= 2)
        .all(|p| !p.iter().all(|&b| complex.is_face(b)))
}

/// Every simplicial complex on `n` labels (singletons always faces), built
/// one face at a time in order of size.
pub fn all_complexes(n: usize) -> Result<Vec<SimplicialComplex>> {
    let ground = crate::complex::GroundSet::numbered(n)?;
    let candidates: Vec<LabelSet> = {
        let mut v: Vec<LabelSet> = ground.universe().subsets().filter(|s| s.len() >= 2).collect();
        v.sort_by_key(|s| (s.len(), *s));
        v
    };
    fn go(cands: &[LabelSet], i: usize, faces: &mut HashSet<LabelSet>, out: &mut Vec<Vec<LabelSet>>) {
        if i == cands.len() {
            out.push(faces.iter().copied().collect());
            return;
        }
        go(cands, i + 1, faces, out);
        let s = cands[i];
        let closed = s.iter().all(|x| {
            let sub = s.difference(LabelSet::singleton(x));
            sub.len() < 2 || faces.contains(&sub)
        });
        if closed {
            faces.insert(s);
            go(cands, i + 1, faces, out);
            faces.remove(&s);
        }
    }
    let mut families = Vec::new();
    go(&candidates, 0, &mut HashSet::new(), &mut families);
    families
        .into_iter()
        .map(|f| SimplicialComplex::from_faces(ground.clone(), f))
        .collect()
}

/// One complex per relabelling class on `n` labels.
pub fn complex_orbit_representatives(n: usize) -> Result<Vec<SimplicialComplex>> {
    let perms = SimplicialComplex::discrete(crate::complex::GroundSet::numbered(n)?).automorphisms();
    let mut seen: HashSet<Vec<LabelSet>> = HashSet::new();
    let mut out = Vec::new();
    for k in all_complexes(n)? {
        let key = perms
            .iter()
            .map(|p| {
                let mut f: Vec<LabelSet> = k.facets().iter().map(|&x| permute_set(x, p)).collect();
                f.sort();
                f
            })
            .min()
            .expect("identity permutation");
        if seen.insert(key) {
            out.push(k);
        }
    }
    Ok(out)
}

/// Stability read off the split system without building the tree: a vertex
/// with fewer than three half edges is either a leaf carrying one leg (a
/// split side equal to one block) or the lone vertex of a graph with fewer
/// than three legs.
fn brute_valid(complex: &SimplicialComplex, blocks: &[LabelSet], splits: &[LabelSet]) -> bool {
    let u = complex.universe();
    let compatible = splits
        .iter()
        .enumerate()
        .all(|(i, &a)| splits[i + 1..].iter().all(|&b| splits_compatible(a, b, u)));
    let faces = blocks.iter().all(|&b| complex.is_face(b));
    let leaves = if splits.is_empty() {
        !complex.is_face(u)
    } else {
        splits
            .iter()
            .all(|&a| !complex.is_face(a) && !complex.is_face(a.complement(u)))
    };
    let stable = if splits.is_empty() {
        blocks.len() >= 3
    } else {
        splits
            .iter()
            .all(|&a| !blocks.contains(&a) && !blocks.contains(&a.complement(u)))
    };
    compatible && faces && leaves && stable
}

/// All 𝒦-stable graphs, by trying every set partition and every family of
/// bipartitions whose sides are unions of blocks. Exponential; meant for
/// five or six labels.
pub fn brute_graphs(complex: &SimplicialComplex) -> Vec<KStableGraph> {
    let u = complex.universe();
    let mut out = Vec::new();
    for blocks in set_partitions(u) {
        // bipartitions {A, A^c} with A a union of blocks containing block 0
        let rest = &blocks[1..];
        let sides: Vec<LabelSet> = (0..1u64 << rest.len())
            .map(|mask| {
                rest.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(blocks[0], |acc, (_, &b)| acc.union(b))
            })
            .filter(|&a| a != u)
            .collect();
        for mask in 0..1u64 << sides.len() {
            let splits: Vec<LabelSet> = (0..sides.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sides[i])
                .collect();
            if brute_valid(complex, &blocks, &splits) {
                out.push(KStableGraph::new(u, blocks.clone(), splits).expect("bipartitions"));
            }
        }
    }
    out.sort();
    out
}

/// Every graph obtained from `graph` by replacing each vertex `v` with a
/// 𝒦(v)-stable graph and gluing along the edges.
pub fn lower_set(complex: &SimplicialComplex, graph: &KStableGraph) -> Result<BTreeSet<KStableGraph>> {
    let u = complex.universe();
    let verts = graph.vertices()?;
    // per vertex: the glued contributions (marking blocks, marking splits)
    let mut choices: Vec<Vec<(Vec<LabelSet>, Vec<LabelSet>)>> = Vec::with_capacity(verts.len());
    for v in &verts {
        let local = induced_complex(complex, graph, v)?;
        let image: Vec<LabelSet> = v
            .legs
            .iter()
            .map(|&b| graph.blocks()[b])
            .chain(v.edges.iter().map(|&(_, far)| far))
            .collect();
        let is_leg = |i: usize| i < v.legs.len();
        let lift = |s: LabelSet| s.iter().fold(LabelSet::EMPTY, |acc, i| acc.union(image[i]));
        let mut opts = Vec::new();
        for lg in brute_graphs(&local) {
            let blocks: Vec<LabelSet> = lg
                .blocks()
                .iter()
                .filter(|b| b.iter().all(is_leg))
                .map(|&b| lift(b))
                .collect();
            let splits: Vec<LabelSet> = lg.splits().iter().map(|&s| canonical_side(lift(s), u)).collect();
            opts.push((blocks, splits));
        }
        choices.push(opts);
    }
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let mut blocks = Vec::new();
        let mut splits: Vec<LabelSet> = graph.splits().to_vec();
        for (c, &p) in choices.iter().zip(&pick) {
            blocks.extend_from_slice(&c[p].0);
            splits.extend_from_slice(&c[p].1);
        }
        out.insert(KStableGraph::new(u, blocks, splits)?);
        // odometer over the per-vertex choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(out);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Enumeration against the brute-force graph list.
pub fn check_enumeration(complex: &SimplicialComplex) -> Result<Outcome> {
    let fast = enumerate_graphs(complex, Codim::All)?;
    let slow = brute_graphs(complex);
    let mut o = Outcome::default();
    let g = complex.ground();
    let fast_set: BTreeSet<&KStableGraph> = fast.iter().collect();
    let slow_set: BTreeSet<&KStableGraph> = slow.iter().collect();
    for x in fast_set.union(&slow_set) {
        o.record(fast_set.contains(x) && slow_set.contains(x), || {
            format!("{} found by only one enumeration", x.describe(g))
        });
    }
    let by_codim = enumerate_graphs(complex, Codim::Exact(1))?;
    let mut ds: Vec<KStableGraph> = divisors(complex)?.iter().map(|d| d.graph().clone()).collect();
    ds.sort();
    o.record(by_codim == ds, || "divisors differ from the codimension-one graphs".into());
    Ok(o)
}

/// Triparted-ness of every complex on `n` labels against set partitions.
pub fn check_triparted_exhaustive(n: usize) -> Result<Outcome> {
    let mut o = Outcome::default();
    for k in all_complexes(n)? {
        o.record(k.is_at_least_triparted() == triparted_by_partitions(&k), || {
            format!("triparted verdicts differ on {k:?}")
        });
    }
    Ok(o)
}

/// The order, disjointness and meets against Γ-structure search.
pub fn check_order(complex: &SimplicialComplex) -> Result<Outcome> {
    let g = complex.ground();
    let graphs = enumerate_graphs(complex, Codim::All)?;
    let lower: Vec<BTreeSet<KStableGraph>> = graphs
        .iter()
        .map(|x| lower_set(complex, x))
        .collect::<Result<_>>()?;
    let mut o = Outcome::default();
    for (b, low) in graphs.iter().zip(&lower) {
        o.record(low.iter().all(|x| graphs.binary_search(x).is_ok()), || {
            format!("gluing into {} leaves the enumerated graphs", b.describe(g))
        });
        for a in &graphs {
            o.record(a.leq(b) == low.contains(a), || {
                format!("leq({}, {}) disagrees with gluing", a.describe(g), b.describe(g))
            });
        }
    }
    let index = |x: &KStableGraph| graphs.binary_search(x).expect("enumerated");
    for (i, a) in graphs.iter().enumerate() {
        for (j, b) in graphs.iter().enumerate() {
            let common: Vec<&KStableGraph> = lower[i].intersection(&lower[j]).collect();
            let maximal: Vec<&KStableGraph> = common
                .iter()
                .copied()
                .filter(|m| !common.iter().any(|c| *c != *m && lower[index(c)].contains(*m)))
                .collect();
            let meet = generic_meet(complex, a, b);
            let expected: Vec<&KStableGraph> = meet.iter().collect();
            o.record(maximal == expected, || {
                format!(
                    "meet of {} and {}: {} maximal common lower bounds, generic meet has {}",
                    a.describe(g),
                    b.describe(g),
                    maximal.len(),
                    meet.len()
                )
            });
        }
    }
    let ds = divisors(complex)?;
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i + 1..] {
            let la = &lower[index(a.graph())];
            let lb = &lower[index(b.graph())];
            let none_below = la.intersection(lb).next().is_none();
            o.record(disjoint(complex, a, b)? == none_below, || {
                format!("disjoint({}, {}) disagrees with the search", a.name(g), b.name(g))
            });
        }
    }
    Ok(o)
}

/// Vertex reconstruction against the encoding.
pub fn check_encoding(complex: &SimplicialComplex) -> Result<Outcome> {
    let g = complex.ground();
    let mut o = Outcome::default();
    for x in enumerate_graphs(complex, Codim::All)? {
        let verts = x.vertices()?;
        let legs: usize = verts.iter().map(|v| v.legs.len()).sum();
        let degree: usize = verts.iter().map(|v| v.edges.len()).sum();
        let codim = x.splits().len() + x.n() - legs;
        let stable = verts.iter().all(|v| v.valence() >= 3);
        o.record(
            legs == x.blocks().len()
                && degree == 2 * x.splits().len()
                && verts.len() == x.splits().len() + 1
                && codim == x.codimension()
                && stable,
            || format!("reconstruction of {} is inconsistent", x.describe(g)),
        );
        for v in &verts {
            let local = induced_complex(complex, &x, v)?;
            o.record(local.is_at_least_triparted(), || {
                format!("vertex {} of {} has a complex that is not triparted", v.id, x.describe(g))
            });
        }
    }
    Ok(o)
}

/// A generating set of the automorphism group, picked greedily.
pub fn automorphism_generators(complex: &SimplicialComplex) -> Vec<Vec<usize>> {
    let n = complex.n();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..n).map(|i| a[b[i]]).collect() };
    let identity: Vec<usize> = (0..n).collect();
    let order = |p: &[usize]| -> usize {
        let mut x = p.to_vec();
        let mut k = 1;
        while x != identity {
            x = compose(p, &x);
            k += 1;
        }
        k
    };
    // elements of large order first: two of them usually generate
    let mut candidates = complex.automorphisms();
    candidates.sort_by_key(|p| std::cmp::Reverse(order(p)));
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut group: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    for p in candidates {
        if group.contains(&p) {
            continue;
        }
        gens.push(p);
        let mut frontier: Vec<Vec<usize>> = group.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = compose(s, &x);
                if group.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Relabellings fixing 𝒦 act on everything. Checking a generating set
/// suffices: every property checked is preserved under composition.
pub fn check_equivariance(pres: &Presentation) -> Result<Outcome> {
    let complex = pres.complex();
    let g = complex.ground();
    let n = complex.n();
    let graphs = enumerate_graphs(complex, Codim::All)?;
    let ds = divisors(complex)?;
    let quads: Vec<[usize; 4]> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| [i, j, k, l]))))
        .filter(|q| LabelSet::from_indices(*q).len() == 4)
        .collect();
    let mut o = Outcome::default();
    for perm in automorphism_generators(complex) {
        let image: Vec<KStableGraph> = graphs.iter().map(|x| x.permuted(&perm)).collect();
        let mut sorted = image.clone();
        sorted.sort();
        o.record(sorted == graphs, || format!("{perm:?} does not permute the strata"));
        for (a, pa) in graphs.iter().zip(&image) {
            for (b, pb) in graphs.iter().zip(&image) {
                if a.codimension() < b.codimension() {
                    continue;
                }
                o.record(a.leq(b) == pa.leq(pb), || {
                    format!("{perm:?} breaks leq({}, {})", a.describe(g), b.describe(g))
                });
            }
        }
        for d in &ds {
            let pd = d.graph().permuted(&perm);
            for q in &quads {
                let pq: Vec<usize> = q.iter().map(|&x| perm[x]).collect();
                let ok = d.graph().separates(q[0], q[1], q[2], q[3])?
                    == pd.separates(pq[0], pq[1], pq[2], pq[3])?;
                o.record(ok, || format!("{perm:?} breaks separation for {} at {q:?}", d.name(g)));
            }
        }
        for (i, a) in ds.iter().enumerate() {
            for b in &ds[i + 1..] {
                let m: Vec<KStableGraph> =
                    generic_meet(complex, a.graph(), b.graph()).iter().map(|x| x.permuted(&perm)).collect();
                let pm = generic_meet(complex, &a.graph().permuted(&perm), &b.graph().permuted(&perm));
                o.record(m == pm, || format!("{perm:?} breaks the meet of {} and {}", a.name(g), b.name(g)));
            }
        }
        let gp = pres.generator_permutation(&perm)?;
        let mut seen = gp.clone();
        seen.sort();
        o.record(seen == (0..gp.len()).collect::<Vec<_>>(), || {
            format!("{perm:?} does not permute the generators")
        });
        // the relation ideal is generated by WDVV in degree 1 and the
        // disjoint pairs in degree 2
        if pres.top_degree() >= 1 {
            for rel in pres.relation_basis(1)? {
                let moved = rel.map_generators(|x| gp[x]);
                o.record(pres.normal_form(&moved)?.is_zero(), || {
                    format!("{perm:?} moves a WDVV relation out of the relation span")
                });
            }
        }
        let quadratic: HashSet<(usize, usize)> = pres.relations().quadratic.iter().copied().collect();
        for &(a, b) in &pres.relations().quadratic {
            let (x, y) = (gp[a].min(gp[b]), gp[a].max(gp[b]));
            o.record(quadratic.contains(&(x, y)), || format!("{perm:?} does not preserve disjointness"));
        }
    }
    Ok(o)
}

fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// WDVV through separation against the collision/two-component form, and
/// against pushforwards of Keel divisors.
pub fn check_wdvv(pres: &Presentation) -> Result<Outcome> {
    let complex = pres.complex();
    let u = complex.universe();
    let g = complex.ground();
    let mut o = Outcome::default();
    for [a, b, c, d] in quadruples(complex.n()) {
        for [i, j, k, l] in [[a, b, c, d], [a, c, d, b], [a, d, b, c]] {
            let sep = pres.wdvv(i, j, k, l)?;
            let keel = pres.wdvv_keel_form(i, j, k, l)?;
            let tag = || format!("({},{},{},{})", g.label(i), g.label(j), g.label(k), g.label(l));
            o.record(sep == keel, || format!("WDVV forms differ at {}", tag()));
            let pushed = |x: usize, y: usize, z: usize, w: usize| -> Result<RingElement> {
                let inside = LabelSet::from_indices([x, y]);
                let free = u.difference(inside).difference(LabelSet::from_indices([z, w]));
                let mut e = RingElement::zero();
                for extra in free.subsets() {
                    e = &e + &pres.pushforward(inside.union(extra))?;
                }
                Ok(e)
            };
            let identity = &pushed(i, j, k, l)? - &pushed(i, k, j, l)?;
            o.record(identity == sep, || format!("pushforward identity fails at {}", tag()));
        }
    }
    Ok(o)
}

/// Products of divisors against classes of their meets.
pub fn check_intersections(pres: &Presentation) -> Result<Outcome> {
    let complex = pres.complex();
    let g = complex.ground();
    let ds = pres.generators().divisors();
    let mut o = Outcome::default();
    for (i, a) in ds.iter().enumerate() {
        for (j, b) in ds.iter().enumerate().skip(i + 1) {
            let prod = pres.multiply(&RingElement::generator(i), &RingElement::generator(j))?;
            let meet = generic_meet(complex, a.graph(), b.graph());
            let expected = match meet.as_slice() {
                [] => RingElement::zero(),
                [m] if m.codimension() == 2 => pres.stratum_class(m)?,
                _ => {
                    o.record(false, || format!("meet of {} and {} is not one codim-2 graph", a.name(g), b.name(g)));
                    continue;
                }
            };
            o.record(prod == expected, || {
                format!("{} * {} differs from the class of the meet", a.name(g), b.name(g))
            });
        }
    }
    Ok(o)
}

/// Stratum classes do not depend on the order of the factors, nor on the
/// marking used to spell out each collision.
pub fn check_stratum_classes(pres: &Presentation) -> Result<Outcome> {
    let complex = pres.complex();
    let g = complex.ground();
    let product = |factors: &[usize]| -> Result<RingElement> {
        let mut acc = RingElement::one();
        for &f in factors {
            acc = pres.multiply(&acc, &RingElement::generator(f))?;
        }
        Ok(acc)
    };
    let mut o = Outcome::default();
    for x in enumerate_graphs(complex, Codim::All)? {
        let class = pres.stratum_class(&x)?;
        let mut factors = pres.stratum_factors(&x)?;
        factors.reverse();
        o.record(product(&factors)? == class, || format!("factor order matters for {}", x.describe(g)));
        // chain b0-b1, b1-b2, ... instead of the star at b0
        let mut chain = Vec::new();
        for &side in x.splits() {
            chain.push(pres.generator_element(crate::divisor::DivisorKind::Pi(side))?);
        }
        for &block in x.blocks() {
            let ms: Vec<usize> = block.iter().collect();
            for w in ms.windows(2) {
                chain.push(pres.generator_element(crate::divisor::DivisorKind::Sigma(w[0], w[1]))?);
            }
        }
        let mut acc = RingElement::one();
        for f in chain.iter().rev() {
            acc = pres.multiply(&acc, f)?;
        }
        o.record(acc == class, || format!("collision anchor matters for {}", x.describe(g)));
        if x.codimension() == 1 {
            let d = crate::divisor::BoundaryDivisor::from_graph(complex, &x)?;
            o.record(class == pres.normal_form(&pres.generator_element(d.kind())?)?, || {
                format!("class of {} is not its generator", x.describe(g))
            });
        }
    }
    Ok(o)
}

/// Graded ranks: palindromic, rank one at both ends, nothing above the top.
pub fn check_profile(pres: &Presentation) -> Result<Outcome> {
    let profile = pres.poincare_profile()?;
    let top = pres.top_degree();
    let mut o = Outcome::default();
    o.record(profile.is_palindromic(), || format!("ranks {:?} are not palindromic", profile.ranks));
    o.record(profile.ranks.first() == Some(&1) && profile.ranks.last() == Some(&1), || {
        format!("ranks {:?} do not start and end with 1", profile.ranks)
    });
    o.record(profile.ranks.len() == top + 1, || "profile has the wrong length".into());
    let above = pres.graded_rank(top + 1)?;
    o.record(above.rank == 0 && above.torsion.is_empty(), || {
        format!("degree {} is nonzero", top + 1)
    });
    let relations = pres.relations();
    for &(a, b) in &relations.quadratic {
        let ds = pres.generators().divisors();
        o.record(disjoint(pres.complex(), &ds[a], &ds[b])?, || "quadratic relation on a meeting pair".into());
    }
    for r in &relations.linear {
        o.record(r.element.degrees().iter().all(|&d| d == 1), || {
            "linear relation is not homogeneous of degree 1".into()
        });
    }
    Ok(o)
}

/// Presentation ranks against the point-count oracle.
pub fn check_oracle(pres: &Presentation) -> Result<Outcome> {
    let report = oracle::compare(pres)?;
    let mut o = Outcome::default();
    o.record(report.matches, || {
        format!(
            "point count {:?} but presentation ranks {:?}",
            report.point_count_coeffs, report.presentation_ranks
        )
    });
    Ok(o)
}

/// The case list for disjointness against the meet test. Disagreements on
/// four labels are expected and only reported.
pub fn check_case_list(complex: &SimplicialComplex) -> Result<Outcome> {
    let g = complex.ground();
    let ds = divisors(complex)?;
    let mut o = Outcome::default();
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i + 1..] {
            let agree = disjoint(complex, a, b)? == disjoint_by_cases(complex, a, b);
            o.record(agree || complex.n() < 5, || {
                format!("case list and meet disagree on {} and {}", a.name(g), b.name(g))
            });
        }
    }
    Ok(o)
}

/// Everything above, with the exponential routes limited to complexes on at
/// most `brute_max_labels` labels.
pub fn selftest(pres: &Presentation, brute_max_labels: usize) -> Vec<Check> {
    let complex = pres.complex();
    let brute = complex.n() <= brute_max_labels;
    let mut checks = vec![
        Check::run("triparted", || {
            let mut o = Outcome::default();
            o.record(complex.is_at_least_triparted() == triparted_by_partitions(complex), || {
                "triparted verdicts differ".into()
            });
            Ok(o)
        }),
        Check::run("encoding", || check_encoding(complex)),
    ];
    if brute {
        checks.push(Check::run("enumeration", || check_enumeration(complex)));
        checks.push(Check::run("order", || check_order(complex)));
    }
    checks.extend([
        Check::run("case-list", || check_case_list(complex)),
        Check::run("equivariance", || check_equivariance(pres)),
        Check::run("wdvv", || check_wdvv(pres)),
        Check::run("intersections", || check_intersections(pres)),
        Check::run("stratum-classes", || check_stratum_classes(pres)),
        Check::run("profile", || check_profile(pres)),
        Check::run("oracle", || check_oracle(pres)),
    ]);
    checks
}

/// Sum of outcomes, for callers that only want one verdict.
pub fn combined(checks: &[Check]) -> Outcome {
    let mut o = Outcome::default();
    for c in checks {
        o.merge(c.outcome.clone());
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::GroundSet;

    fn complex(n: usize, faces: &[&[usize]]) -> SimplicialComplex {
        let faces: Vec<LabelSet> = faces
            .iter()
            .map(|f| LabelSet::from_indices(f.iter().map(|l| l - 1)))
            .collect();
        SimplicialComplex::from_faces(GroundSet::numbered(n).unwrap(), faces).unwrap()
    }

    fn assert_all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.outcome.passed(), "{}: {:?}", c.name, c.outcome.examples);
            assert!(c.outcome.cases > 0, "{} ran no cases", c.name);
        }
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| set_partitions(LabelSet::full(n)).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn complexes_on_few_labels() {
        assert_eq!(all_complexes(3).unwrap().len(), 9);
        assert_eq!(all_complexes(4).unwrap().len(), 114);
        assert_eq!(complex_orbit_representatives(3).unwrap().len(), 5);
        assert_eq!(complex_orbit_representatives(4).unwrap().len(), 20);
    }

    #[test]
    fn triparted_on_every_complex_of_four_labels() {
        let o = check_triparted_exhaustive(4).unwrap();
        assert!(o.passed(), "{:?}", o.examples);
        assert_eq!(o.cases, 114);
    }

    #[test]
    fn brute_enumeration_counts() {
        assert_eq!(brute_graphs(&complex(5, &[])).len(), 26);
        assert_eq!(brute_graphs(&complex(4, &[&[1, 2]])).len(), 4);
    }

    #[test]
    fn gluing_gives_the_lower_set() {
        let k = complex(5, &[]);
        let top = KStableGraph::open_stratum(5);
        assert_eq!(lower_set(&k, &top).unwrap().len(), 26);
    }

    #[test]
    fn generators_of_symmetric_groups() {
        let gens = automorphism_generators(&complex(5, &[]));
        assert_eq!(gens.len(), 2);
        assert!(automorphism_generators(&complex(4, &[&[1, 2, 3]])).len() >= 2);
    }

    #[test]
    fn selftest_passes_on_small_complexes() {
        for k in [
            complex(4, &[]),
            complex(5, &[]),
            complex(4, &[&[1, 2]]),
            complex(5, &[&[3, 4, 5]]),
            complex(5, &[&[1, 2], &[3, 4]]),
        ] {
            let p = Presentation::new(&k).unwrap();
            assert_all_pass(&selftest(&p, 5));
        }
    }

    #[test]
    fn every_triparted_complex_on_four_labels() {
        for k in all_complexes(4).unwrap().into_iter().filter(|k| k.is_at_least_triparted()) {
            let e = check_enumeration(&k).unwrap();
            assert!(e.passed(), "{k:?} {:?}", e.examples);
            let o = check_order(&k).unwrap();
            assert!(o.passed(), "{k:?} {:?}", o.examples);
        }
    }
}
