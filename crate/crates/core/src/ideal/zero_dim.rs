//! Solution counting and exact back-substitution for zero-dimensional
//! ideals.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::{degree_zero_dim, eliminate, groebner_basis, EngineError, Ideal, Limits, MonomialOrder, UniPoly};
use crate::poly::{GaussianRational, Poly};

/// Number of distinct points of V(ideal), via the radical
/// `ideal + <squarefree part of each univariate eliminant>`.
pub fn distinct_solution_count(ideal: &Ideal, limits: &Limits) -> Result<u64, EngineError> {
    let radical = radical_zero_dim(ideal, limits)?;
    degree_zero_dim(&radical, limits)
}

/// A zero-dimensional ideal is radical iff counting with and without
/// multiplicity agrees.
pub fn is_radical_zero_dim(ideal: &Ideal, limits: &Limits) -> Result<bool, EngineError> {
    Ok(degree_zero_dim(ideal, limits)? == distinct_solution_count(ideal, limits)?)
}

fn radical_zero_dim(ideal: &Ideal, limits: &Limits) -> Result<Ideal, EngineError> {
    let table = ideal.table().clone();
    let mut gens = ideal.generators().to_vec();
    for var in 0..table.len() {
        let elim = eliminate(ideal, &[var], limits)?;
        // zero-dimensional: the eliminant is principal and nonzero
        let g = elim
            .generators()
            .first()
            .ok_or(EngineError::PositiveDimensional(1))?;
        let uni = UniPoly::from_poly(g, 0).expect("univariate eliminant");
        gens.push(uni.squarefree().to_poly(&table, var));
    }
    Ideal::new(&table, gens, MonomialOrder::Grevlex)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Solutions {
    /// Every solution, each a value per table variable.
    Exact { points: Vec<Vec<String>> },
    /// Back-substitution needed roots outside `Q(i)`.
    DegreeOnly,
}

/// Distinct solutions of a zero-dimensional ideal by lexicographic
/// back-substitution, when every univariate step has roots in `Q(i)`.
/// Returns `None` when some root is not exactly representable.
pub fn solve_triangular(ideal: &Ideal, limits: &Limits) -> Result<Option<Vec<Vec<GaussianRational>>>, EngineError> {
    let lex = groebner_basis(&ideal.with_order(MonomialOrder::Lex), limits)?;
    let basis = lex.basis().unwrap().to_vec();
    let n = ideal.table().len();
    if basis.len() == 1 && basis[0].as_constant().is_some() {
        return Ok(Some(Vec::new()));
    }
    let mut out = Vec::new();
    let mut values: HashMap<usize, GaussianRational> = HashMap::new();
    if !back_substitute(n, &basis, &mut values, &mut out) {
        return Ok(None);
    }
    for sol in &out {
        for g in ideal.generators() {
            debug_assert!(g.eval_dense(sol).is_zero());
        }
    }
    Ok(Some(out))
}

fn back_substitute(
    level: usize,
    basis: &[Poly],
    values: &mut HashMap<usize, GaussianRational>,
    out: &mut Vec<Vec<GaussianRational>>,
) -> bool {
    if level == 0 {
        let mut v: Vec<(usize, GaussianRational)> = values.iter().map(|(k, v)| (*k, v.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        out.push(v.into_iter().map(|(_, x)| x).collect());
        return true;
    }
    let var = level - 1;
    let mut g = UniPoly(Vec::new());
    for b in basis {
        // elements in the variables var..n only
        if (0..var).any(|i| b.uses_var(i)) {
            continue;
        }
        let s = b.specialize(values);
        let u = UniPoly::from_poly(&s, var).expect("lex basis is triangular");
        if u.is_zero() {
            continue;
        }
        g = if g.is_zero() { u.monic() } else { g.gcd(&u) };
    }
    if g.is_zero() {
        // free variable: not zero-dimensional
        return false;
    }
    if g.degree() == Some(0) {
        // inconsistent branch
        return true;
    }
    let roots = match g.exact_roots() {
        Some(r) => r,
        None => return false,
    };
    for r in roots {
        values.insert(var, r);
        if !back_substitute(level - 1, basis, values, out) {
            return false;
        }
    }
    values.remove(&var);
    true
}
