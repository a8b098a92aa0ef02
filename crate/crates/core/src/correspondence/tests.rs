use super::*;
use crate::ideal::same_ideal;
use crate::manifold::parse_map_file;

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts((re, 1), (im, 1))
}

fn gq(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::from_parts(re, im)
}

fn limits() -> Limits {
    Limits::default()
}

fn sphere() -> CRManifold {
    CRManifold::affine(&["z1", "z2"], &["z1*~z1 + z2*~z2 - 1"]).unwrap()
}

fn power2() -> CRManifold {
    CRManifold::affine(&["z1", "z2"], &["z1^2*~z1^2 + z2^2*~z2^2 - 1"]).unwrap()
}

fn power_point() -> Point {
    vec![gq((30, 97), (78, 97)), gq((68, 97), (41, 97))]
}

fn square() -> AlgebraicMap {
    AlgebraicMap::polynomial(&["z1", "z2"], &["z1^2", "z2^2"]).unwrap()
}

fn rotation() -> AlgebraicMap {
    AlgebraicMap::polynomial(&["z1", "z2"], &["3/5*z1 - 4/5*z2", "4/5*z1 + 3/5*z2"]).unwrap()
}

fn graph_of(c: &Correspondence, src: &str) -> Ideal {
    let gens = src
        .split(',')
        .map(|s| crate::poly::parse_poly(s, c.graph.table()).unwrap())
        .collect();
    Ideal::grevlex(c.graph.table(), gens).unwrap()
}

#[test]
fn rank_checks() {
    let id = AlgebraicMap::identity(&["z1", "z2"]).unwrap();
    let r = max_rank_check(&id, &[g(1, 0), g(0, 0)], Some(&sphere())).unwrap();
    assert_eq!((r.rank, r.maximal), (2, true));
    assert_eq!((r.tangent_rank, r.tangent_dim), (Some(1), Some(1)));
    let r = max_rank_check(&square(), &[g(1, 0), g(1, 0)], None).unwrap();
    assert!(r.maximal);
    let r = max_rank_check(&square(), &[g(0, 0), g(1, 0)], None).unwrap();
    assert_eq!(r.rank, 1);
    let constant = AlgebraicMap::polynomial(&["z1", "z2"], &["1", "2*i"]).unwrap();
    assert!(!max_rank_check(&constant, &[g(1, 0), g(1, 0)], None).unwrap().maximal);
}

#[test]
fn rational_map_components() {
    let f = AlgebraicMap::from_file(&parse_map_file("vars z1 z2\nf: z1 over z2 + 1\nf: z2\n").unwrap()).unwrap();
    assert_eq!(f.eval(&[g(2, 0), g(1, 0)]).unwrap(), vec![g(1, 0), g(1, 0)]);
    assert!(matches!(f.eval(&[g(2, 0), g(-1, 0)]), Err(CorrespondenceError::Pole)));
    let j = f.jacobian(&[g(2, 0), g(1, 0)]).unwrap();
    assert_eq!(j[(0, 0)], gq((1, 2), (0, 1)));
    assert_eq!(j[(0, 1)], gq((-1, 2), (0, 1)));
}

#[test]
fn invariance_under_sphere_rotations() {
    let mut s = Sampler::new(5);
    let r = verify_invariance(&sphere(), &sphere(), &rotation(), 6, 5, &mut s, &limits()).unwrap();
    assert!(r.all_passed());
    assert_eq!(r.checks, 30);
    assert_eq!((r.ideal_containments, r.radical_containments), (6, 0));
    let unitary = AlgebraicMap::polynomial(&["z1", "z2"], &["3/5*z1 + 4/5*i*z2", "4/5*i*z1 + 3/5*z2"]).unwrap();
    assert!(verify_invariance(&sphere(), &sphere(), &unitary, 4, 5, &mut s, &limits()).unwrap().all_passed());
}

#[test]
fn invariance_of_power_map() {
    let mut s = Sampler::new(6);
    let r = verify_invariance(&power2(), &sphere(), &square(), 5, 5, &mut s, &limits()).unwrap();
    assert!(r.all_passed());
    assert_eq!(r.checks, 25);
}

#[test]
fn non_cr_linear_map_fails() {
    let mut s = Sampler::new(8);
    let f = AlgebraicMap::polynomial(&["z1", "z2"], &["z1 + z2", "z2"]).unwrap();
    let r = verify_invariance(&sphere(), &sphere(), &f, 5, 5, &mut s, &limits()).unwrap();
    assert!(r.failed > 0);
    assert_eq!(r.containment_failures, 5);
    assert!(!r.all_passed());
}

#[test]
fn containment_by_membership_then_radical() {
    let l = limits();
    let w = vec![gq((3, 5), (0, 1)), gq((0, 1), (4, 5))];
    let fw = rotation().eval(&w).unwrap();
    assert_eq!(segre_containment(&sphere(), &sphere(), &rotation(), &w, &fw, &l).unwrap(), Containment::Ideal);
    let other = vec![g(1, 0), g(0, 0)];
    assert_eq!(segre_containment(&sphere(), &sphere(), &rotation(), &w, &other, &l).unwrap(), Containment::Fails);
    // Q_w = {(z2 - conj w2)^3 = 0} is not reduced; the tube's Segre
    // variety contains it only up to radical
    let cube = CRManifold::affine(&["z1", "z2"], &["i*z2^3 - 3*i*z2^2*~z2 + 3*i*z2*~z2^2 - i*~z2^3"]).unwrap();
    let tube = CRManifold::affine(&["z1", "z2"], &["-1/2*i*z2 + 1/2*i*~z2"]).unwrap();
    let id = AlgebraicMap::identity(&["z1", "z2"]).unwrap();
    let p = vec![g(2, 1), g(3, 0)];
    assert_eq!(segre_containment(&cube, &tube, &id, &p, &p, &l).unwrap(), Containment::Radical);
    assert_eq!(segre_containment(&tube, &tube, &id, &p, &p, &l).unwrap(), Containment::Ideal);
    assert!(matches!(
        segre_containment(&tube, &tube, &id, &p, &p[..1], &l),
        Err(CorrespondenceError::DimensionMismatch { .. })
    ));
}

#[test]
fn identity_correspondence() {
    let c = build_correspondence(&sphere(), &sphere(), &AlgebraicMap::identity(&["z1", "z2"]).unwrap(), &limits()).unwrap();
    assert!(same_ideal(&c.graph, &graph_of(&c, "v1 - w1, v2 - w2"), &limits()).unwrap());
    assert_eq!(c.fiber_degree, Some(1));
    let w = vec![gq((3, 5), (0, 1)), gq((0, 1), (4, 5))];
    let f = c.fiber(&w, &limits()).unwrap();
    assert_eq!(f.degree, 1);
    assert_eq!(f.solutions, Some(vec![w.clone()]));
    assert_eq!(f.complete, Some(true));
    assert!(c.splits_at(&w, &limits()).unwrap().splits);
}

#[test]
fn rotation_correspondence_is_its_graph() {
    let c = build_correspondence(&sphere(), &sphere(), &rotation(), &limits()).unwrap();
    let expected = graph_of(&c, "v1 - 3/5*w1 + 4/5*w2, v2 - 4/5*w1 - 3/5*w2");
    assert!(same_ideal(&c.graph, &expected, &limits()).unwrap());
}

#[test]
fn power_correspondence_valency() {
    let c = build_correspondence(&power2(), &sphere(), &square(), &limits()).unwrap();
    assert!(same_ideal(&c.graph, &graph_of(&c, "v1 - w1^2, v2 - w2^2"), &limits()).unwrap());
    assert_eq!(c.fiber_degree, Some(1));
    assert!(!c.excluded.is_empty());
    let w = power_point();
    let f = c.fiber(&w, &limits()).unwrap();
    assert_eq!(f.degree, 1);
    assert_eq!(f.complete, Some(true));
    let r = c.transpose(&limits()).unwrap();
    assert_eq!(r.fiber_degree, Some(4));
    let v: Point = w.iter().map(|x| x * x).collect();
    let back = r.fiber(&v, &limits()).unwrap();
    assert_eq!((back.degree, back.distinct), (4, 4));
    let sols = back.solutions.unwrap();
    assert!(sols.contains(&w));
    assert_eq!(back.complete, Some(true));
}

#[test]
fn fiber_over_excluded_point_is_flagged() {
    let c = build_correspondence(&sphere(), &sphere(), &AlgebraicMap::identity(&["z1", "z2"]).unwrap(), &limits()).unwrap();
    let w = vec![g(0, 0), g(1, 0)];
    assert!(c.on_excluded_locus(&w));
    let f = c.fiber(&w, &limits()).unwrap();
    assert!(f.on_excluded_locus);
    assert_eq!(f.degree, 1);
}

#[test]
fn splitting_at_branch_points() {
    let c = build_correspondence(&power2(), &sphere(), &square(), &limits()).unwrap();
    assert!(c.splits_at(&power_point(), &limits()).unwrap().splits);
    let r = c.transpose(&limits()).unwrap();
    let branch = vec![g(1, 0), g(0, 0)];
    let s = r.splits_at(&branch, &limits()).unwrap();
    assert!(!s.fiber_radical);
    assert!(!s.splits);
    // generic point: four distinct preimages, but the target Segre map
    // is four-to-one there
    let q = vec![gq((3, 5), (0, 1)), gq((0, 1), (4, 5))];
    let s = r.splits_at(&q, &limits()).unwrap();
    assert!(s.fiber_radical);
    assert!(!s.splits);
}

#[test]
fn splitting_falls_back_to_joint_count() {
    // sqrt(3/5) is not in Q(i): the fiber of v^2 = w at w = (3/5, 4/5) is
    // not rational
    let c = build_correspondence(&power2(), &sphere(), &square(), &limits()).unwrap();
    let r = c.transpose(&limits()).unwrap();
    let q = vec![gq((3, 5), (0, 1)), gq((4, 5), (0, 1))];
    let f = r.fiber(&q, &limits()).unwrap();
    assert_eq!(f.solutions, None);
    let s = r.splits_at(&q, &limits()).unwrap();
    assert!(s.target_degrees.is_none());
    assert!(!s.splits);
    let id = build_correspondence(&sphere(), &sphere(), &AlgebraicMap::identity(&["z1", "z2"]).unwrap(), &limits()).unwrap();
    let sq = compose(&id, &id, &limits()).unwrap();
    assert!(sq.splits_at(&q, &limits()).unwrap().splits);
}

#[test]
fn compositions() {
    let l = limits();
    let id = build_correspondence(&sphere(), &sphere(), &AlgebraicMap::identity(&["z1", "z2"]).unwrap(), &l).unwrap();
    let rot = build_correspondence(&sphere(), &sphere(), &rotation(), &l).unwrap();
    let c = compose(&rot, &id, &l).unwrap();
    assert!(same_ideal(&c.graph, &rot.graph, &l).unwrap());
    let c = compose(&id, &rot, &l).unwrap();
    assert!(same_ideal(&c.graph, &rot.graph, &l).unwrap());
    // rotation by twice the angle: cos = -7/25, sin = 24/25
    let rr = compose(&rot, &rot, &l).unwrap();
    assert!(same_ideal(&rr.graph, &graph_of(&rr, "v1 + 7/25*w1 + 24/25*w2, v2 - 24/25*w1 + 7/25*w2"), &l).unwrap());
    let assoc1 = compose(&compose(&rot, &rot, &l).unwrap(), &id, &l).unwrap();
    let assoc2 = compose(&rot, &compose(&rot, &id, &l).unwrap(), &l).unwrap();
    assert!(same_ideal(&assoc1.graph, &assoc2.graph, &l).unwrap());
}

#[test]
fn power_deck_correspondence() {
    let l = limits();
    let c = build_correspondence(&power2(), &sphere(), &square(), &l).unwrap();
    let deck = compose(&c, &c.transpose(&l).unwrap(), &l).unwrap();
    assert!(same_ideal(&deck.graph, &graph_of(&deck, "v1^2 - w1^2, v2^2 - w2^2"), &l).unwrap());
    assert_eq!(deck.fiber_degree, Some(4));
}

#[test]
fn correspondence_soundness_by_sampling() {
    let l = limits();
    let c = build_correspondence(&power2(), &sphere(), &square(), &l).unwrap();
    let mut s = Sampler::new(9);
    let ws = s.points_on(&power2(), &[], 4).unwrap();
    for w in ws {
        let f = c.fiber(&w, &l).unwrap();
        for v in f.solutions.unwrap() {
            for z in s.points_on_segre(&power2(), &w, 5, &l).unwrap() {
                let fz = square().eval(&z).unwrap();
                assert!(in_segre(&sphere(), &fz, &v));
            }
        }
    }
}

#[test]
fn dimension_mismatch_is_reported() {
    let m = CRManifold::affine(&["z1", "z2", "z3"], &["z1*~z1 + z2*~z2 + z3*~z3 - 1"]).unwrap();
    assert!(matches!(
        build_correspondence(&m, &sphere(), &square(), &limits()),
        Err(CorrespondenceError::DimensionMismatch { .. })
    ));
    let constant = AlgebraicMap::polynomial(&["z1", "z2"], &["1", "z2"]).unwrap();
    assert!(matches!(
        build_correspondence(&sphere(), &sphere(), &constant, &limits()),
        Err(CorrespondenceError::RankDeficient { rank: 1, .. })
    ));
}
