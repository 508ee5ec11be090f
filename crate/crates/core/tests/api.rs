use kchow::oracle::{count_points, interpolate_profile, open_moduli_count};
use kchow::{
    disjoint, divisors, enumerate_graphs, generic_meet, pushforward_divisor, BoundaryDivisor, Codim, DivisorKind,
    Error, GroundSet, HassettWeights, LabelSet, Presentation, SimplicialComplex,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn discrete(n: usize) -> SimplicialComplex {
    SimplicialComplex::discrete(GroundSet::numbered(n).unwrap())
}

fn with_faces(n: usize, faces: &[&[usize]]) -> SimplicialComplex {
    let g = GroundSet::numbered(n).unwrap();
    let mut facets: Vec<LabelSet> = faces.iter().map(|f| LabelSet::from_indices(f.iter().copied())).collect();
    let covered = facets.iter().fold(LabelSet::EMPTY, |a, &f| a.union(f));
    facets.extend((0..n).filter(|&i| !covered.contains(i)).map(LabelSet::singleton));
    SimplicialComplex::from_facets(g, facets).unwrap()
}

fn set(labels: &[usize]) -> LabelSet {
    LabelSet::from_indices(labels.iter().copied())
}

#[test]
fn open_counts() {
    assert_eq!(open_moduli_count(3, 2).unwrap(), BigInt::from(1));
    assert_eq!(open_moduli_count(4, 5).unwrap(), BigInt::from(3));
    assert_eq!(open_moduli_count(5, 7).unwrap(), BigInt::from(20));
    assert!(matches!(open_moduli_count(2, 5), Err(Error::Domain(_))));
    assert!(matches!(open_moduli_count(5, 6), Err(Error::Domain(_))));
}

#[test]
fn stratum_sums() {
    assert_eq!(count_points(&discrete(4), 5).unwrap(), BigInt::from(6));
    assert_eq!(count_points(&discrete(5), 5).unwrap(), BigInt::from(51));
    assert_eq!(count_points(&with_faces(4, &[&[0, 1]]), 5).unwrap(), BigInt::from(6));
    assert!(count_points(&discrete(6), 3).is_err());
}

#[test]
fn boundary_divisors() {
    assert_eq!(divisors(&discrete(5)).unwrap().len(), 10);
    let pair = with_faces(4, &[&[0, 1]]);
    let kinds: Vec<DivisorKind> = divisors(&pair).unwrap().iter().map(BoundaryDivisor::kind).collect();
    assert_eq!(kinds.len(), 3);
    assert!(kinds.contains(&DivisorKind::Sigma(0, 1)));
}

#[test]
fn meets_and_disjointness() {
    let k = discrete(5);
    let d12 = BoundaryDivisor::pi(&k, set(&[0, 1])).unwrap();
    let d34 = BoundaryDivisor::pi(&k, set(&[2, 3])).unwrap();
    let d13 = BoundaryDivisor::pi(&k, set(&[0, 2])).unwrap();
    let meet = generic_meet(&k, d12.graph(), d34.graph());
    assert_eq!(meet.len(), 1);
    assert_eq!(meet[0].codimension(), 2);
    assert!(!disjoint(&k, &d12, &d34).unwrap());
    assert!(generic_meet(&k, d12.graph(), d13.graph()).is_empty());
    assert!(disjoint(&k, &d12, &d13).unwrap());
}

#[test]
fn pushforwards() {
    let pair = with_faces(4, &[&[0, 1]]);
    let sigma = pushforward_divisor(&pair, set(&[0, 1])).unwrap().unwrap();
    assert_eq!(sigma.kind(), DivisorKind::Sigma(0, 1));
    let lm = with_faces(5, &[&[2, 3, 4]]);
    assert!(pushforward_divisor(&lm, set(&[2, 3, 4])).unwrap().is_none());
}

#[test]
fn weights_give_losev_manin() {
    let quarter = BigRational::new(1.into(), 4.into());
    let one = BigRational::from_integer(1.into());
    let w = HassettWeights::new(
        GroundSet::numbered(5).unwrap(),
        vec![one.clone(), one, quarter.clone(), quarter.clone(), quarter],
    )
    .unwrap();
    let k = SimplicialComplex::from_hassett_weights(&w);
    assert_eq!(k, with_faces(5, &[&[2, 3, 4]]));
    let p = Presentation::new(&k).unwrap().poincare_profile().unwrap();
    assert_eq!(p.ranks, vec![1, 4, 1]);
}

#[test]
fn ranks_agree_with_point_counts() {
    for k in [discrete(6), with_faces(6, &[&[0, 1], &[2, 3]]), with_faces(6, &[&[0, 1, 2]])] {
        let pres = Presentation::new(&k).unwrap();
        let ranks = pres.poincare_profile().unwrap().ranks;
        let counts: Vec<BigInt> = interpolate_profile(&k).unwrap().coeffs;
        assert_eq!(counts, ranks.iter().map(|&r| BigInt::from(r)).collect::<Vec<_>>());
        assert_eq!(enumerate_graphs(&k, Codim::Exact(1)).unwrap().len(), pres.generators().len());
    }
}
