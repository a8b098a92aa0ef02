//! Buchberger's algorithm with the sugar selection strategy and both of
//! Buchberger's criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{EngineError, MonomialOrder};
use crate::poly::{GaussianRational, Monomial, Poly};

pub(crate) type Term = (Monomial, GaussianRational);

/// Caps on a single basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum number of polynomials in the working basis.
    pub max_basis: usize,
    /// Maximum total degree of any polynomial added to the basis.
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_basis: 2000,
            max_degree: 64,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub coprime_skips: usize,
    pub chain_skips: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
    pub max_degree: u32,
}

pub(crate) fn sorted_terms(p: &Poly, order: &MonomialOrder) -> Vec<Term> {
    let mut t = p.terms().to_vec();
    if *order != MonomialOrder::Grevlex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

fn degree(t: &[Term]) -> u32 {
    t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

fn make_monic(t: &mut [Term]) {
    if let Some((_, lc)) = t.first() {
        if lc.is_one() {
            return;
        }
        let inv = lc.inv().unwrap();
        for (_, c) in t.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

/// `a - coef * mult * g`, all sorted descending by `order`.
fn sub_mul(a: &[Term], g: &[Term], mult: &Monomial, coef: &GaussianRational, order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let next_g = |j: usize| -> Term { (g[j].0.mul(mult), &g[j].1 * coef) };
    let mut pending: Option<Term> = None;
    while i < a.len() || j < g.len() || pending.is_some() {
        if pending.is_none() && j < g.len() {
            pending = Some(next_g(j));
            j += 1;
        }
        match (&pending, a.get(i)) {
            (None, Some(t)) => {
                out.push(t.clone());
                i += 1;
            }
            (Some(_), None) => {
                let (m, c) = pending.take().unwrap();
                out.push((m, -c));
            }
            (Some((gm, gc)), Some((am, ac))) => match order.cmp(am, gm) {
                Ordering::Greater => {
                    out.push((am.clone(), ac.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm.clone(), -gc));
                    pending = None;
                }
                Ordering::Equal => {
                    let c = ac - gc;
                    if !c.is_zero() {
                        out.push((am.clone(), c));
                    }
                    i += 1;
                    pending = None;
                }
            },
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `f` modulo `basis` (each element sorted by `order`,
/// first term leading).
pub(crate) fn reduce_terms(f: Vec<Term>, basis: &[&[Term]], order: &MonomialOrder) -> Vec<Term> {
    let mut rem = Vec::new();
    let mut rest = f;
    let mut start = 0;
    while start < rest.len() {
        let (m, c) = &rest[start];
        let divisor = basis.iter().find(|g| !g.is_empty() && g[0].0.divides(m));
        match divisor {
            Some(g) => {
                let q = g[0].0.div_into(m).unwrap();
                let coef = c / &g[0].1;
                rest = sub_mul(&rest[start + 1..], &g[1..], &q, &coef, order);
                start = 0;
            }
            None => {
                rem.push(rest[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn s_poly(f: &[Term], g: &[Term], order: &MonomialOrder) -> Vec<Term> {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.div_into(&lcm).unwrap();
    let mg = g[0].0.div_into(&lcm).unwrap();
    let a: Vec<Term> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c / &f[0].1)).collect();
    let coef = GaussianRational::one() / &g[0].1;
    sub_mul(&a, &g[1..], &mg, &coef, order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Gröbner basis of `gens` under `order`, monic, sorted by
/// descending leading monomial.
pub(crate) fn buchberger(
    gens: &[Poly],
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<(Vec<Vec<Term>>, GbStats), EngineError> {
    let mut stats = GbStats::default();
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut input: Vec<Vec<Term>> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| sorted_terms(p, order))
        .collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let check = |basis_len: usize, deg: u32, stats: &GbStats| -> Result<(), EngineError> {
        if basis_len > limits.max_basis {
            return Err(EngineError::ResourceLimit {
                what: format!("basis size exceeded {}", limits.max_basis),
                stats: stats.clone(),
            });
        }
        if deg > limits.max_degree {
            return Err(EngineError::ResourceLimit {
                what: format!("total degree exceeded {}", limits.max_degree),
                stats: stats.clone(),
            });
        }
        Ok(())
    };

    let add = |mut h: Vec<Term>,
                   s: u32,
                   basis: &mut Vec<Vec<Term>>,
                   sugar: &mut Vec<u32>,
                   pairs: &mut Vec<Pair>,
                   pending: &mut HashSet<(usize, usize)>,
                   stats: &mut GbStats|
     -> Result<(), EngineError> {
        make_monic(&mut h);
        let deg = degree(&h);
        stats.max_degree = stats.max_degree.max(deg);
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let lcm = b[0].0.lcm(&h[0].0);
            if b[0].0.coprime(&h[0].0) {
                stats.coprime_skips += 1;
                continue;
            }
            let si = sugar[i] + lcm.degree() - b[0].0.degree();
            let sk = s + lcm.degree() - h[0].0.degree();
            pairs.push(Pair {
                i,
                j: k,
                lcm,
                sugar: si.max(sk),
            });
            pending.insert((i, k));
            stats.pairs_created += 1;
        }
        basis.push(h);
        sugar.push(s);
        stats.basis_size = basis.len();
        check(basis.len(), deg, stats)
    };

    for g in input {
        let refs: Vec<&[Term]> = basis.iter().map(|b| b.as_slice()).collect();
        let s = degree(&g);
        let h = reduce_terms(g, &refs, order);
        if h.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        add(h, s, &mut basis, &mut sugar, &mut pairs, &mut pending, &mut stats)?;
    }

    while !pairs.is_empty() {
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)))
            .unwrap();
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k][0].0.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            stats.chain_skips += 1;
            continue;
        }
        stats.pairs_reduced += 1;
        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let refs: Vec<&[Term]> = basis.iter().map(|b| b.as_slice()).collect();
        let h = reduce_terms(s, &refs, order);
        if h.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        add(h, pair.sugar, &mut basis, &mut sugar, &mut pairs, &mut pending, &mut stats)?;
    }

    let reduced = interreduce(basis, order);
    stats.basis_size = reduced.len();
    Ok((reduced, stats))
}

/// Minimal, tail-reduced, monic basis sorted by descending leading monomial.
fn interreduce(basis: Vec<Vec<Term>>, order: &MonomialOrder) -> Vec<Vec<Term>> {
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h[0].0.divides(lm) && (h[0].0 != *lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&[Term]> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.as_slice())
            .collect();
        let mut g = vec![minimal[i][0].clone()];
        g.extend(reduce_terms(minimal[i][1..].to_vec(), &others, order));
        make_monic(&mut g);
        out.push(g);
    }
    out.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Poly], order: &MonomialOrder) -> bool {
    let terms: Vec<Vec<Term>> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| sorted_terms(p, order))
        .collect();
    let refs: Vec<&[Term]> = terms.iter().map(|t| t.as_slice()).collect();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let s = s_poly(&terms[i], &terms[j], order);
            if !reduce_terms(s, &refs, order).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Reduced: no leading monomial divides any term of another element, and
/// every element is monic.
pub fn is_reduced(basis: &[Poly], order: &MonomialOrder) -> bool {
    let terms: Vec<Vec<Term>> = basis.iter().map(|p| sorted_terms(p, order)).collect();
    for (i, g) in terms.iter().enumerate() {
        if g.is_empty() || !g[0].1.is_one() {
            return false;
        }
        for (j, h) in terms.iter().enumerate() {
            if i != j && h.iter().any(|(m, _)| g[0].0.divides(m)) {
                return false;
            }
        }
    }
    true
}
