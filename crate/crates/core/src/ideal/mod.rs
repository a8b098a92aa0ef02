//! Gröbner-basis engine: normal forms, membership, elimination, dimension
//! and degree, and reduction with symbolic parameters.

mod groebner;
mod order;
mod parametric;
mod univariate;
mod zero_dim;

use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::poly::{Poly, PolyError, VarTable};
pub use groebner::{is_groebner_basis, is_reduced, GbStats, Limits};
use groebner::{buchberger, reduce_terms, sorted_terms, Term};
pub use order::MonomialOrder;
pub use parametric::{parametric_normal_form, ParametricRemainder};
pub use univariate::UniPoly;
pub use zero_dim::{distinct_solution_count, is_radical_zero_dim, solve_triangular, Solutions};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("resource limit exceeded: {what} ({stats:?})")]
    ResourceLimit { what: String, stats: GbStats },
    #[error("ideal has dimension {0}; a zero-dimensional ideal is required")]
    PositiveDimensional(i64),
    #[error("ideal is the unit ideal (empty variety)")]
    UnitIdeal,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Finite generating set with an optional cached reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    table: Arc<VarTable>,
    generators: Vec<Poly>,
    order: MonomialOrder,
    groebner: Option<Arc<Vec<Poly>>>,
    stats: Option<GbStats>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(table: &Arc<VarTable>, generators: Vec<Poly>, order: MonomialOrder) -> Result<Self, EngineError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.is_zero() {
                continue;
            }
            gens.push(g.embed(table)?);
        }
        Ok(Self {
            table: table.clone(),
            generators: gens,
            order,
            groebner: None,
            stats: None,
        })
    }

    pub fn grevlex(table: &Arc<VarTable>, generators: Vec<Poly>) -> Result<Self, EngineError> {
        Self::new(table, generators, MonomialOrder::Grevlex)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Cached reduced Gröbner basis, if computed.
    pub fn basis(&self) -> Option<&[Poly]> {
        self.groebner.as_deref().map(|v| v.as_slice())
    }

    pub fn stats(&self) -> Option<&GbStats> {
        self.stats.as_ref()
    }

    /// Same generators under another order; drops the cache.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self {
            table: self.table.clone(),
            generators: self.generators.clone(),
            order,
            groebner: None,
            stats: None,
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced basis, computed now if not cached.
    pub fn reduced_basis(&self, limits: &Limits) -> Result<Arc<Vec<Poly>>, EngineError> {
        if let Some(b) = &self.groebner {
            return Ok(b.clone());
        }
        Ok(groebner_basis(self, limits)?.groebner.unwrap())
    }

    /// Sum of ideals over the same table.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, EngineError> {
        let mut gens = self.generators.clone();
        for g in &other.generators {
            gens.push(g.embed(&self.table)?);
        }
        Ideal::new(&self.table, gens, self.order.clone())
    }

    /// Conjugates every generator (requires a fully paired table).
    pub fn conjugate(&self) -> Result<Ideal, EngineError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate())
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.table, gens, self.order.clone())
    }
}

/// Reduced Gröbner basis of `ideal` under its order, returned as an ideal
/// whose generators are the basis (and with the cache filled).
pub fn groebner_basis(ideal: &Ideal, limits: &Limits) -> Result<Ideal, EngineError> {
    let (terms, stats) = buchberger(&ideal.generators, &ideal.order, limits)?;
    let basis: Vec<Poly> = terms
        .into_iter()
        .map(|t| Poly::from_terms(&ideal.table, t))
        .collect();
    Ok(Ideal {
        table: ideal.table.clone(),
        generators: basis.clone(),
        order: ideal.order.clone(),
        groebner: Some(Arc::new(basis)),
        stats: Some(stats),
    })
}

/// Remainder of `p` on division by the reduced basis of `ideal`.
pub fn normal_form(p: &Poly, ideal: &Ideal, limits: &Limits) -> Result<Poly, EngineError> {
    let basis = ideal.reduced_basis(limits)?;
    Ok(normal_form_with(p, &basis, &ideal.order)?)
}

/// Remainder of `p` modulo an already computed Gröbner basis.
pub fn normal_form_with(p: &Poly, basis: &[Poly], order: &MonomialOrder) -> Result<Poly, PolyError> {
    let table = match basis.first() {
        Some(b) => b.table().clone(),
        None => return Ok(p.clone()),
    };
    let p = p.embed(&table)?;
    let terms: Vec<Vec<Term>> = basis.iter().map(|b| sorted_terms(b, order)).collect();
    let refs: Vec<&[Term]> = terms.iter().map(|t| t.as_slice()).collect();
    let rem = reduce_terms(sorted_terms(&p, order), &refs, order);
    Ok(Poly::from_terms(&table, rem))
}

pub fn member(p: &Poly, ideal: &Ideal, limits: &Limits) -> Result<bool, EngineError> {
    Ok(normal_form(p, ideal, limits)?.is_zero())
}

/// `p` vanishes on V(ideal): 1 lies in `ideal + <1 - t*p>` with a fresh `t`.
pub fn radical_member(p: &Poly, ideal: &Ideal, limits: &Limits) -> Result<bool, EngineError> {
    if p.is_zero() {
        return Ok(true);
    }
    let t_name = ideal.table.fresh_name("_t");
    let ext = ideal.table.extended(&[t_name.as_str()])?;
    let t = Poly::var_named(&ext, &t_name)?;
    let mut gens: Vec<Poly> = ideal
        .generators
        .iter()
        .map(|g| g.embed(&ext))
        .collect::<Result<_, _>>()?;
    gens.push(&Poly::one(&ext) - &(&t * &p.embed(&ext)?));
    let gb = groebner_basis(&Ideal::grevlex(&ext, gens)?, limits)?;
    Ok(is_unit_basis(gb.basis().unwrap()))
}

fn is_unit_basis(basis: &[Poly]) -> bool {
    basis.len() == 1 && basis[0].as_constant().is_some_and(|c| c.is_one())
}

pub fn is_unit_ideal(ideal: &Ideal, limits: &Limits) -> Result<bool, EngineError> {
    Ok(is_unit_basis(&ideal.reduced_basis(limits)?))
}

/// `ideal ∩ Q(i)[keep]`, returned over the sub-table on `keep` with its
/// reduced grevlex basis cached.
pub fn eliminate(ideal: &Ideal, keep: &[usize], limits: &Limits) -> Result<Ideal, EngineError> {
    let n = ideal.table.len();
    let mut mask = vec![false; n];
    for &k in keep {
        mask[k] = true;
    }
    let elim: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
    let order = MonomialOrder::eliminating(n, &elim);
    let gb = groebner_basis(&ideal.with_order(order), limits)?;
    let sub = ideal.table.restrict(keep)?;
    let kept: Vec<Poly> = gb
        .generators
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.supported_in(&mask)))
        .map(|g| g.embed(&sub))
        .collect::<Result<_, _>>()?;
    Ok(Ideal {
        table: sub,
        generators: kept.clone(),
        order: MonomialOrder::Grevlex,
        groebner: Some(Arc::new(kept)),
        stats: gb.stats,
    })
}

/// Saturation `ideal : h^∞`, the closure of V(ideal) minus V(h).
pub fn saturate(ideal: &Ideal, h: &Poly, limits: &Limits) -> Result<Ideal, EngineError> {
    let t_name = ideal.table.fresh_name("_s");
    let ext = ideal.table.extended(&[t_name.as_str()])?;
    let t = Poly::var_named(&ext, &t_name)?;
    let mut gens: Vec<Poly> = ideal
        .generators
        .iter()
        .map(|g| g.embed(&ext))
        .collect::<Result<_, _>>()?;
    gens.push(&Poly::one(&ext) - &(&t * &h.embed(&ext)?));
    let keep: Vec<usize> = (0..ideal.table.len()).collect();
    let out = eliminate(&Ideal::grevlex(&ext, gens)?, &keep, limits)?;
    // restrict() rebuilt the same table; hand back the caller's Arc
    let gens: Vec<Poly> = out
        .generators
        .iter()
        .map(|g| g.embed(&ideal.table))
        .collect::<Result<_, _>>()?;
    Ok(Ideal {
        table: ideal.table.clone(),
        generators: gens.clone(),
        order: MonomialOrder::Grevlex,
        groebner: Some(Arc::new(gens)),
        stats: out.stats,
    })
}

/// Both ideals have the same reduced grevlex basis.
pub fn same_ideal(a: &Ideal, b: &Ideal, limits: &Limits) -> Result<bool, EngineError> {
    let ga = a.with_order(MonomialOrder::Grevlex).reduced_basis(limits)?;
    let gb = b.with_order(MonomialOrder::Grevlex).reduced_basis(limits)?;
    if ga.len() != gb.len() {
        return Ok(false);
    }
    for (x, y) in ga.iter().zip(gb.iter()) {
        if x.terms() != y.embed(a.table())?.terms() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every generator of `inner` lies in `outer`.
pub fn contains_ideal(outer: &Ideal, inner: &Ideal, limits: &Limits) -> Result<bool, EngineError> {
    let basis = outer.reduced_basis(limits)?;
    for g in &inner.generators {
        if !normal_form_with(g, &basis, &outer.order)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Krull dimension from the leading-monomial staircase: the size of a
/// largest variable set containing no leading monomial. The unit ideal has
/// dimension -1.
pub fn dimension(ideal: &Ideal, limits: &Limits) -> Result<i64, EngineError> {
    let basis = ideal.reduced_basis(limits)?;
    if is_unit_basis(&basis) {
        return Ok(-1);
    }
    let n = ideal.table.len();
    let lms: Vec<Vec<bool>> = basis
        .iter()
        .map(|g| {
            let (m, _) = g.leading(&ideal.order).unwrap();
            m.0.iter().map(|&e| e > 0).collect()
        })
        .collect();
    // a set S is independent when no leading monomial is supported in S
    let independent = |mask: &[bool]| !lms.iter().any(|lm| lm.iter().zip(mask).all(|(u, s)| !u || *s));
    let mut best = 0;
    let mut mask = vec![false; n];
    fn search(i: usize, size: usize, mask: &mut Vec<bool>, best: &mut usize, ok: &dyn Fn(&[bool]) -> bool) {
        if size + (mask.len() - i) <= *best {
            return;
        }
        if i == mask.len() {
            *best = size;
            return;
        }
        mask[i] = true;
        if ok(mask) {
            search(i + 1, size + 1, mask, best, ok);
        }
        mask[i] = false;
        search(i + 1, size, mask, best, ok);
    }
    search(0, 0, &mut mask, &mut best, &independent);
    Ok(best as i64)
}

/// Number of standard monomials of a zero-dimensional ideal, i.e. the
/// number of solutions counted with multiplicity.
pub fn degree_zero_dim(ideal: &Ideal, limits: &Limits) -> Result<u64, EngineError> {
    let dim = dimension(ideal, limits)?;
    if dim < 0 {
        return Err(EngineError::UnitIdeal);
    }
    if dim > 0 {
        return Err(EngineError::PositiveDimensional(dim));
    }
    let basis = ideal.reduced_basis(limits)?;
    let lms: Vec<Vec<u32>> = basis
        .iter()
        .map(|g| g.leading(&ideal.order).unwrap().0 .0.clone())
        .collect();
    let n = ideal.table.len();
    let mut bound = vec![u32::MAX; n];
    for lm in &lms {
        let nz: Vec<usize> = (0..n).filter(|&i| lm[i] > 0).collect();
        if nz.len() == 1 {
            bound[nz[0]] = bound[nz[0]].min(lm[nz[0]]);
        }
    }
    let mut exps = vec![0u32; n];
    let mut count = 0u64;
    fn walk(i: usize, exps: &mut Vec<u32>, bound: &[u32], lms: &[Vec<u32>], count: &mut u64) {
        let divisible = |e: &[u32]| lms.iter().any(|lm| lm.iter().zip(e).all(|(a, b)| a <= b));
        if i == exps.len() {
            *count += 1;
            return;
        }
        for e in 0..bound[i] {
            exps[i] = e;
            if divisible(exps) {
                break;
            }
            walk(i + 1, exps, bound, lms, count);
        }
        exps[i] = 0;
    }
    walk(0, &mut exps, &bound, &lms, &mut count);
    Ok(count)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealSummary {
    pub generators: Vec<String>,
    pub order: String,
}

impl Ideal {
    pub fn summary(&self) -> IdealSummary {
        IdealSummary {
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            order: self.order.name(),
        }
    }
}

#[cfg(test)]
mod tests;
