use super::*;
use crate::ideal::solve_triangular;
use crate::manifold::parse_manifold;

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

fn quadric() -> CRManifold {
    parse_manifold("vars z0..z3\nrho: z0*~z0 + z1*~z1 - z2*~z2 - z3*~z3\nchart: projective 0\n")
        .unwrap()
        .to_affine()
        .unwrap()
}

fn tube() -> CRManifold {
    CRManifold::affine(&["z1", "z2"], &["-1/2*i*z2 + 1/2*i*~z2"]).unwrap()
}

fn cylinder() -> CRManifold {
    CRManifold::affine(&["z1", "z2"], &["z1*~z1 - 1"]).unwrap()
}

#[test]
fn segre_variety_at_a_point() {
    let q = segre_variety(&sphere(), &SegreParam::Point(vec![g(1, 0), g(0, 0)])).unwrap();
    assert_eq!(q.ideal.generators().len(), 1);
    assert_eq!(q.ideal.generators()[0].to_string(), "z1 - 1");
    assert!(q.contains(&[g(1, 0), g(7, 3)]));
    assert!(!q.contains(&[g(0, 0), g(1, 0)]));
}

#[test]
fn symbolic_segre_variety() {
    let q = segre_variety(&sphere(), &SegreParam::Symbolic).unwrap();
    assert_eq!(q.ideal.generators()[0].to_string(), "z1*~w1 + z2*~w2 - 1");
    assert_eq!(q.params, vec![2, 3]);
    let p = segre_variety(&power2(), &SegreParam::Symbolic).unwrap();
    assert_eq!(p.ideal.generators()[0].to_string(), "z1^2*~w1^2 + z2^2*~w2^2 - 1");
}

#[test]
fn power_segre_variety_contains_base_point() {
    let w = power_point();
    assert!(power2().contains(&w));
    let q = segre_variety(&power2(), &SegreParam::Point(w.clone())).unwrap();
    assert!(q.contains(&w));
    assert_eq!(q.ideal.generators()[0].total_degree(), 2);
}

#[test]
fn non_real_input_rejected() {
    let t = VarTable::with_conjugates(&["z1"]).unwrap();
    let bad = CRManifold::new(
        &t,
        vec![crate::poly::parse_poly("z1*~z1 + z1", &t).unwrap()],
        crate::manifold::Chart::Affine { homogenizing: None },
    )
    .unwrap();
    assert!(segre_variety(&bad, &SegreParam::Symbolic).is_err());
}

#[test]
fn symmetry_examples() {
    let s = sphere();
    assert!(in_segre(&s, &[g(1, 0), g(0, 0)], &[g(1, 0), g(0, 0)]));
    assert!(in_segre(&s, &[g(1, 0), g(1, 0)], &[g(1, 0), g(0, 0)]));
    assert!(in_segre(&s, &[g(1, 0), g(0, 0)], &[g(1, 0), g(1, 0)]));
    assert!(check_symmetry(&s, &[g(1, 0), g(1, 0)], &[g(1, 0), g(0, 0)]));
    for a in -2..3 {
        for b in -2..3 {
            let z = [gq((a, 3), (b, 2)), g(b, a)];
            let w = [g(1, b), gq((a, 5), (1, 1))];
            for m in [sphere(), power2(), tube(), cylinder()] {
                assert!(check_symmetry(&m, &z, &w));
                assert_eq!(in_segre(&m, &z, &z), m.contains(&z));
            }
        }
    }
}

#[test]
fn graph_form_linear_solve() {
    let q = segre_variety(&sphere(), &SegreParam::Symbolic).unwrap();
    let gf = q.graph_form(&[1]).unwrap();
    assert_eq!(gf.denominator.to_string(), "~w2");
    assert_eq!(gf.numerators[0].to_string(), "-z1*~w1 + 1");
    assert!(gf.verify(&q));

    let h = segre_variety(&quadric(), &SegreParam::Symbolic).unwrap();
    let gf = h.graph_form(&[2]).unwrap();
    assert!(gf.verify(&h));
    assert_eq!(gf.denominator.to_string(), "-~w3");

    let at = segre_variety(&sphere(), &SegreParam::Point(vec![g(1, 0), g(0, 0)])).unwrap();
    assert!(matches!(at.graph_form(&[1]), Err(SegreError::Singular)));
    assert!(at.graph_form(&[0]).unwrap().verify(&at));
    assert!(matches!(at.graph_form(&[0, 1]), Err(SegreError::BadSplit { .. })));
}

#[test]
fn graph_form_needs_a_root_for_power_example() {
    let q = segre_variety(&power2(), &SegreParam::Symbolic).unwrap();
    assert!(matches!(q.graph_form(&[1]), Err(SegreError::Nonlinear)));
}

#[test]
fn sphere_inversion_set_is_the_point() {
    let w = vec![g(1, 0), g(0, 0)];
    let inv = inversion_set(&sphere(), &SegreParam::Point(w.clone()), &limits()).unwrap();
    assert_eq!(degree_zero_dim(&inv.ideal, &limits()).unwrap(), 1);
    assert_eq!(solve_triangular(&inv.ideal, &limits()).unwrap().unwrap(), vec![w]);
    assert!(inv.excluded.is_empty());
}

#[test]
fn power_inversion_set_has_four_sign_flips() {
    let w = power_point();
    let inv = inversion_set(&power2(), &SegreParam::Point(w.clone()), &limits()).unwrap();
    assert_eq!(degree_zero_dim(&inv.ideal, &limits()).unwrap(), 4);
    let mut sols = solve_triangular(&inv.ideal, &limits()).unwrap().unwrap();
    sols.sort_by_key(|s| format!("{}{}", s[0], s[1]));
    assert_eq!(sols.len(), 4);
    for s in &sols {
        assert!(s[0] == w[0] || s[0] == -w[0].clone());
        assert!(s[1] == w[1] || s[1] == -w[1].clone());
    }
}

#[test]
fn inversion_set_contains_its_point() {
    let cases: Vec<(CRManifold, Point)> = vec![
        (sphere(), vec![gq((3, 5), (0, 1)), gq((0, 1), (4, 5))]),
        (power2(), power_point()),
        (quadric(), vec![g(1, 0), g(1, 0), g(1, 0)]),
        (tube(), vec![g(2, 1), g(3, 0)]),
        (cylinder(), vec![gq((3, 5), (4, 5)), g(2, 1)]),
    ];
    for (m, w) in cases {
        assert!(m.contains(&w));
        let inv = inversion_set(&m, &SegreParam::Point(w.clone()), &limits()).unwrap();
        assert!(inv.ideal.generators().iter().all(|p| p.eval_dense(&w).is_zero()));
    }
}

#[test]
fn symbolic_inversion_incidence() {
    let inv = inversion_set(&power2(), &SegreParam::Symbolic, &limits()).unwrap();
    assert_eq!(inv.params, vec![2, 3]);
    assert!(!inv.excluded.is_empty());
    let w = power_point();
    let mut v = vec![w[0].clone(), -w[1].clone()];
    v.extend(w.iter().cloned());
    assert!(inv.ideal.generators().iter().all(|p| p.eval_dense(&v).is_zero()));
    let mut v = vec![w[0].clone(), w[0].clone()];
    v.extend(w.iter().cloned());
    assert!(!inv.ideal.generators().iter().all(|p| p.eval_dense(&v).is_zero()));
}

#[test]
fn essential_finiteness_examples() {
    let e = essential_finiteness(&sphere(), &[g(1, 0), g(0, 0)], &limits()).unwrap();
    assert_eq!((e.finite, e.degree), (true, Some(1)));
    let e = essential_finiteness(&power2(), &power_point(), &limits()).unwrap();
    assert_eq!((e.finite, e.degree, e.distinct), (true, Some(4), Some(4)));
    let e = essential_finiteness(&tube(), &[g(2, 1), g(3, 0)], &limits()).unwrap();
    assert!(!e.finite);
    assert!(e.dimension > 0);
    assert_eq!(e.degree, None);
    assert!(matches!(
        essential_finiteness(&sphere(), &[g(2, 0), g(0, 0)], &limits()),
        Err(SegreError::Manifold(ManifoldError::NotOnManifold(1)))
    ));
}

#[test]
fn local_injectivity() {
    let l = limits();
    assert!(segre_map_locally_injective(&sphere(), &[gq((3, 5), (0, 1)), gq((0, 1), (4, 5))], &l).unwrap());
    assert!(!segre_map_locally_injective(&power2(), &power_point(), &l).unwrap());
    assert!(segre_map_locally_injective(&quadric(), &[g(1, 0), g(1, 0), g(1, 0)], &l).unwrap());
}

#[test]
fn sphere_segre_sets() {
    let c = segre_sets(&sphere(), &[g(1, 0), g(0, 0)], 4, &limits()).unwrap();
    assert_eq!(c.dims, vec![1, 2]);
    assert!(c.ideals[1].is_zero_ideal());
    assert_eq!(c.first_full(2), Some(2));
    assert!(c.is_decreasing(&limits()).unwrap());
    let m = minimality(&sphere(), &[g(1, 0), g(0, 0)], 4, &limits()).unwrap();
    assert_eq!((m.minimal, m.j0), (true, Some(2)));
}

#[test]
fn quadric_and_power_are_minimal() {
    let q = quadric();
    let m = minimality(&q, &[g(1, 0), g(1, 0), g(1, 0)], default_j_max(&q), &limits()).unwrap();
    assert_eq!((m.minimal, m.j0), (true, Some(2)));
    assert_eq!(m.chain.dims, vec![2, 3]);
    let p = power2();
    let m = minimality(&p, &power_point(), default_j_max(&p), &limits()).unwrap();
    assert_eq!((m.minimal, m.j0), (true, Some(2)));
}

#[test]
fn tube_and_cylinder_are_not_minimal() {
    for (m, p) in [
        (tube(), vec![g(2, 1), g(3, 0)]),
        (cylinder(), vec![gq((3, 5), (4, 5)), g(2, 1)]),
    ] {
        let r = minimality(&m, &p, default_j_max(&m), &limits()).unwrap();
        assert!(!r.minimal);
        assert!(r.chain.stabilized);
        assert_eq!(r.chain.dims, vec![1, 1]);
        assert!(r.chain.is_decreasing(&limits()).unwrap());
    }
}

#[test]
fn minimality_inconclusive_when_j_max_too_small() {
    let e = minimality(&sphere(), &[g(1, 0), g(0, 0)], 1, &limits()).unwrap_err();
    assert!(matches!(e, SegreError::Inconclusive { j_max: 1, .. }));
}

#[test]
fn segre_sets_need_a_point_of_m() {
    assert!(segre_sets(&sphere(), &[g(2, 0), g(0, 0)], 3, &limits()).is_err());
}
