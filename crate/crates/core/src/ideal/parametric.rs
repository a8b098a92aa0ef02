//! Pseudo-division with symbolic parameters kept in the coefficients.
//!
//! The ideal is first brought to a Gröbner basis under an order where the
//! main (non-parameter) variables dominate. Viewed over the field of
//! rational functions in the parameters this is a Gröbner basis of the
//! extended ideal, and it stays one under any specialization that keeps
//! every leading coefficient nonzero. Those leading coefficients form the
//! excluded locus.

use num_traits::One;

use super::{groebner_basis, EngineError, Ideal, Limits, MonomialOrder};
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug)]
pub struct ParametricRemainder {
    /// Pseudo-remainder: no main-variable monomial of it is divisible by a
    /// leading main monomial of the basis.
    pub remainder: Poly,
    /// Product of the leading coefficients `p` was multiplied by, so that
    /// `multiplier * p - remainder` lies in the ideal.
    pub multiplier: Poly,
    /// Parameter polynomials whose vanishing invalidates the reduction.
    pub excluded: Vec<Poly>,
    /// The basis that was divided by.
    pub basis: Vec<Poly>,
}

impl ParametricRemainder {
    /// Coefficients of the remainder with respect to the main variables;
    /// all vanish iff `p` lies in the ideal off the excluded locus.
    pub fn main_coefficients(&self, params: &[usize]) -> Vec<Poly> {
        let main = complement(self.remainder.table().len(), params);
        self.remainder
            .coefficients_in(&main)
            .into_iter()
            .map(|(_, c)| c)
            .collect()
    }
}

fn complement(n: usize, params: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !params.contains(i)).collect()
}

/// Splits `p` into (leading main monomial, its parameter coefficient).
fn leading_main(p: &Poly, main: &[usize]) -> Option<(Monomial, Poly)> {
    p.coefficients_in(main).into_iter().next()
}

pub fn parametric_normal_form(
    p: &Poly,
    ideal: &Ideal,
    params: &[usize],
    limits: &Limits,
) -> Result<ParametricRemainder, EngineError> {
    let table = ideal.table().clone();
    let p = p.embed(&table)?;
    let n = table.len();
    let main = complement(n, params);
    let order = MonomialOrder::eliminating(n, &main);
    let gb = groebner_basis(&ideal.with_order(order), limits)?;
    let basis: Vec<Poly> = gb.basis().unwrap().to_vec();

    let heads: Vec<(Monomial, Poly)> = basis
        .iter()
        .map(|g| leading_main(g, &main).expect("basis elements are nonzero"))
        .collect();
    let mut excluded: Vec<Poly> = Vec::new();
    for (_, lc) in &heads {
        if lc.is_constant() {
            continue;
        }
        let lc = lc.monic();
        if !excluded.contains(&lc) {
            excluded.push(lc);
        }
    }

    let mut work = p.clone();
    let mut rem = Poly::zero(&table);
    let mut mult = Poly::one(&table);
    while let Some((m, c)) = leading_main(&work, &main) {
        let divisor = heads
            .iter()
            .zip(&basis)
            .find(|((lm, _), _)| lm.divides(&m));
        let top = Poly::monomial(&table, m.clone(), crate::poly::GaussianRational::one());
        match divisor {
            Some(((lm, lc), g)) => {
                let q = lm.div_into(&m).unwrap();
                let shifted = g.mul_term(&q, &crate::poly::GaussianRational::one());
                match c.div_exact(lc) {
                    Some(k) => work = &work - &(&k * &shifted),
                    None => {
                        work = &(lc * &work) - &(&c * &shifted);
                        rem = lc * &rem;
                        mult = lc * &mult;
                    }
                }
            }
            None => {
                let head = &c * &top;
                rem = &rem + &head;
                work = &work - &head;
            }
        }
    }
    Ok(ParametricRemainder {
        remainder: rem,
        multiplier: mult,
        excluded,
        basis,
    })
}
