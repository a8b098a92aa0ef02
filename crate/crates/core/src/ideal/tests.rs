use std::sync::Arc;

use num_traits::Zero;

use super::*;
use crate::poly::{parse_poly, GaussianRational, VarTable};

fn xyz() -> Arc<VarTable> {
    VarTable::params(&["x", "y", "z"]).unwrap()
}

fn p(t: &Arc<VarTable>, s: &str) -> Poly {
    parse_poly(s, t).unwrap()
}

fn ideal(t: &Arc<VarTable>, gens: &[&str], order: MonomialOrder) -> Ideal {
    Ideal::new(t, gens.iter().map(|s| p(t, s)).collect(), order).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn groebner_of_redundant_univariate() {
    let t = VarTable::params(&["x"]).unwrap();
    let gb = groebner_basis(&ideal(&t, &["x^2 - 1", "x - 1"], MonomialOrder::Lex), &lim()).unwrap();
    assert_eq!(gb.generators(), &[p(&t, "x - 1")]);
}

#[test]
fn groebner_of_variables_is_itself() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    let gb = groebner_basis(&ideal(&t, &["y", "x"], MonomialOrder::Grevlex), &lim()).unwrap();
    assert_eq!(gb.generators(), &[p(&t, "x"), p(&t, "y")]);
}

#[test]
fn sphere_segre_ideal_at_a_point() {
    let t = VarTable::with_conjugates(&["z1", "z2"]).unwrap();
    let sphere = p(&t, "z1*~z1 + z2*~z2 - 1");
    let at = sphere
        .substitute_named(&[("~z1", p(&t, "1")), ("~z2", p(&t, "0"))])
        .unwrap();
    let gb = groebner_basis(&Ideal::grevlex(&t, vec![at]).unwrap(), &lim()).unwrap();
    assert_eq!(gb.generators(), &[p(&t, "z1 - 1")]);
    // 1 is not in the ideal
    assert_eq!(normal_form(&p(&t, "1"), &gb, &lim()).unwrap(), p(&t, "1"));
}

#[test]
fn normal_form_examples() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    let i = ideal(&t, &["x^2 - y"], MonomialOrder::Lex);
    assert_eq!(normal_form(&p(&t, "x^2"), &i, &lim()).unwrap(), p(&t, "y"));
    assert!(normal_form(&p(&t, "x^2 - y"), &i, &lim()).unwrap().is_zero());
    let nf = normal_form(&p(&t, "x^3 + x*y + 1"), &i, &lim()).unwrap();
    assert_eq!(normal_form(&nf, &i, &lim()).unwrap(), nf);
}

#[test]
fn membership_and_radical_membership() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    assert!(member(&p(&t, "x*y"), &ideal(&t, &["x"], MonomialOrder::Grevlex), &lim()).unwrap());
    let sq = ideal(&t, &["x^2"], MonomialOrder::Grevlex);
    assert!(!member(&p(&t, "x"), &sq, &lim()).unwrap());
    assert!(radical_member(&p(&t, "x"), &sq, &lim()).unwrap());
    assert!(!radical_member(&p(&t, "y"), &sq, &lim()).unwrap());
}

#[test]
fn twisted_cubic_elimination() {
    let t = xyz();
    let i = ideal(&t, &["y - x^2", "z - x^3"], MonomialOrder::Grevlex);
    let e = eliminate(&i, &[1, 2], &lim()).unwrap();
    assert_eq!(e.table().names(), &["y".to_string(), "z".to_string()]);
    let target = p(e.table(), "z^2 - y^3");
    assert!(member(&target, &e, &lim()).unwrap());
    assert!(e.generators().iter().all(|g| !g.is_zero()));
}

#[test]
fn elimination_to_zero_ideal() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    let e = eliminate(&ideal(&t, &["x - 1"], MonomialOrder::Grevlex), &[1], &lim()).unwrap();
    assert!(e.is_zero_ideal());
    assert_eq!(dimension(&e, &lim()).unwrap(), 1);
}

#[test]
fn dimension_and_degree() {
    let t = VarTable::params(&["x"]).unwrap();
    let i = ideal(&t, &["x^2 - 1"], MonomialOrder::Grevlex);
    assert_eq!(dimension(&i, &lim()).unwrap(), 0);
    assert_eq!(degree_zero_dim(&i, &lim()).unwrap(), 2);
    let t2 = VarTable::params(&["x", "y"]).unwrap();
    let xy = ideal(&t2, &["x*y"], MonomialOrder::Grevlex);
    assert_eq!(dimension(&xy, &lim()).unwrap(), 1);
    assert!(matches!(degree_zero_dim(&xy, &lim()), Err(EngineError::PositiveDimensional(1))));
    let unit = ideal(&t2, &["x", "x - 1"], MonomialOrder::Grevlex);
    assert_eq!(dimension(&unit, &lim()).unwrap(), -1);
    let zero = Ideal::grevlex(&t2, vec![]).unwrap();
    assert_eq!(dimension(&zero, &lim()).unwrap(), 2);
}

#[test]
fn degree_of_binomial_family() {
    let t = VarTable::params(&["x"]).unwrap();
    for a in 1..7 {
        for c in ["1", "-3", "2/5+i"] {
            let i = Ideal::grevlex(&t, vec![p(&t, &format!("x^{a} - ({c})"))]).unwrap();
            assert_eq!(degree_zero_dim(&i, &lim()).unwrap(), a as u64);
        }
    }
}

#[test]
fn degree_counts_multiplicity_and_distinct_count_does_not() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    let i = ideal(&t, &["x^2", "y - 1"], MonomialOrder::Grevlex);
    assert_eq!(degree_zero_dim(&i, &lim()).unwrap(), 2);
    assert_eq!(distinct_solution_count(&i, &lim()).unwrap(), 1);
    assert!(!is_radical_zero_dim(&i, &lim()).unwrap());
    let j = ideal(&t, &["x^2 - 1", "y^2 - x"], MonomialOrder::Grevlex);
    assert_eq!(degree_zero_dim(&j, &lim()).unwrap(), 4);
    assert!(is_radical_zero_dim(&j, &lim()).unwrap());
}

#[test]
fn triangular_back_substitution() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    let i = ideal(&t, &["x^2 - 16", "y^2 - x"], MonomialOrder::Grevlex);
    let sols = solve_triangular(&i, &lim()).unwrap().unwrap();
    assert_eq!(sols.len(), 4);
    for s in &sols {
        for g in i.generators() {
            assert!(g.eval_dense(s).is_zero());
        }
    }
    let irr = ideal(&t, &["x^2 - 2", "y"], MonomialOrder::Grevlex);
    assert!(solve_triangular(&irr, &lim()).unwrap().is_none());
}

#[test]
fn parametric_examples() {
    let t = VarTable::builder().holo("z1").param("w1").param("w2").build().unwrap();
    let params = [1, 2];
    let i = ideal(&t, &["z1 - 1"], MonomialOrder::Grevlex);
    let r = parametric_normal_form(&p(&t, "z1*w1 - w1"), &i, &params, &lim()).unwrap();
    assert!(r.remainder.is_zero());
    assert!(r.excluded.is_empty());

    let i = ideal(&t, &["w1*z1 - w2"], MonomialOrder::Grevlex);
    let r = parametric_normal_form(&p(&t, "w1*z1 - 1"), &i, &params, &lim()).unwrap();
    assert_eq!(r.remainder, p(&t, "w2 - 1"));
    assert_eq!(r.excluded, vec![p(&t, "w1")]);
}

#[test]
fn resource_limit_reports_statistics() {
    let t = xyz();
    let i = ideal(&t, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"], MonomialOrder::Lex);
    let tight = Limits { max_basis: 2, max_degree: 64 };
    match groebner_basis(&i, &tight) {
        Err(EngineError::ResourceLimit { stats, .. }) => assert!(stats.basis_size > 2),
        other => panic!("expected a resource error, got {other:?}"),
    }
}

#[test]
fn saturation_removes_component() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    // V(x*y, x*(y-1)) = {x=0}; saturating by x leaves y = 0 and y = 1 => unit
    let i = ideal(&t, &["x*y", "x*(y - 1)"], MonomialOrder::Grevlex);
    let s = saturate(&i, &p(&t, "x"), &lim()).unwrap();
    assert!(is_unit_ideal(&s, &lim()).unwrap());
    let j = ideal(&t, &["x*(y - 2)"], MonomialOrder::Grevlex);
    let s = saturate(&j, &p(&t, "x"), &lim()).unwrap();
    assert_eq!(s.generators(), &[p(&t, "y - 2")]);
}

#[test]
fn buchberger_criterion_on_mixed_examples() {
    let t = xyz();
    let cases: [&[&str]; 3] = [
        &["x^2 + y*z - 2", "y^2 + x*z - 3", "x*y*z - 1"],
        &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
        &["(1+i)*x^2 - y", "x*y - i*z", "z^2 - 1/3*x"],
    ];
    for gens in cases {
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::eliminating(3, &[0])] {
            let i = ideal(&t, gens, order.clone());
            let gb = groebner_basis(&i, &lim()).unwrap();
            assert!(is_groebner_basis(gb.generators(), &order));
            assert!(is_reduced(gb.generators(), &order));
            for g in i.generators() {
                assert!(normal_form(g, &gb, &lim()).unwrap().is_zero());
            }
            // idempotent
            let again = groebner_basis(&gb, &lim()).unwrap();
            assert_eq!(again.generators(), gb.generators());
        }
    }
}

#[test]
fn same_ideal_ignores_generator_choice() {
    let t = VarTable::params(&["x", "y"]).unwrap();
    let a = ideal(&t, &["x - y", "y^2 - 1"], MonomialOrder::Grevlex);
    let b = ideal(&t, &["x^2 - 1", "x - y", "x*y - 1"], MonomialOrder::Lex);
    assert!(same_ideal(&a, &b, &lim()).unwrap());
    assert!(contains_ideal(&a, &b, &lim()).unwrap());
    let c = ideal(&t, &["x - y"], MonomialOrder::Grevlex);
    assert!(!same_ideal(&a, &c, &lim()).unwrap());
    assert!(contains_ideal(&c, &Ideal::grevlex(&t, vec![p(&t, "x^2 - x*y")]).unwrap(), &lim()).unwrap());
}

#[test]
fn gaussian_coefficients_survive_reduction() {
    let t = VarTable::params(&["x"]).unwrap();
    let i = ideal(&t, &["x^2 + 1"], MonomialOrder::Grevlex);
    let x_minus_i = p(&t, "x - i");
    assert!(!member(&x_minus_i, &i, &lim()).unwrap());
    let prod = &x_minus_i * &p(&t, "x + i");
    assert!(member(&prod, &i, &lim()).unwrap());
    let _ = GaussianRational::i();
}
