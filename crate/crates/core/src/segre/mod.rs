//! Segre varieties `Q_w`, inversion sets `I_w`, and Segre sets of a
//! real-algebraic submanifold. Everything is global over `Q(i)`; genericity
//! assumptions surface as excluded polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::ideal::{
    contains_ideal, degree_zero_dim, dimension, distinct_solution_count, eliminate, parametric_normal_form,
    same_ideal, saturate, EngineError, Ideal, Limits,
};
use crate::manifold::{CRManifold, ManifoldError, Point};
use crate::poly::{GaussianRational, Poly, PolyError, VarTable};

#[derive(Debug, thiserror::Error)]
pub enum SegreError {
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generators are not affine-linear in the solved coordinates")]
    Nonlinear,
    #[error("Jacobian of the solved coordinates is singular")]
    Singular,
    #[error("split solves {got} coordinates but there are {expected} generators")]
    BadSplit { expected: usize, got: usize },
    #[error("Segre sets neither filled C^n nor stabilized within j_max = {j_max} (dims {dims:?})")]
    Inconclusive { j_max: usize, dims: Vec<i64> },
}

/// Which Segre variety: at a fixed point, or the whole family with the
/// conjugate parameter `~w` kept symbolic.
#[derive(Clone, Debug, PartialEq)]
pub enum SegreParam {
    Point(Point),
    Symbolic,
}

#[derive(Clone, Debug)]
pub struct SegreVariety {
    pub base: CRManifold,
    pub parameter: SegreParam,
    /// Ideal in the coordinates `z` (plus `~w` parameters when symbolic).
    pub ideal: Ideal,
    /// Table indices of `z` in `ideal`.
    pub coords: Vec<usize>,
    /// Table indices of `~w` in `ideal`; empty at a point.
    pub params: Vec<usize>,
}

/// Holomorphic coordinates only, in coordinate order.
pub(crate) fn holo_table(m: &CRManifold) -> Result<Arc<VarTable>, PolyError> {
    m.table().restrict(m.holo())
}

/// `count` names `base1..` avoiding every name in `taken`.
pub(crate) fn dual_names(taken: &[String], base: &str, count: usize) -> Vec<String> {
    let mut base = base.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|k| format!("{base}{k}")).collect();
        let clash = names
            .iter()
            .any(|n| taken.iter().any(|t| t == n || t.trim_start_matches('~') == n));
        if !clash {
            return names;
        }
        base.push('_');
    }
}

fn conj_values(m: &CRManifold, w: &[GaussianRational]) -> HashMap<usize, GaussianRational> {
    m.conj().into_iter().zip(w).map(|(i, x)| (i, x.conj())).collect()
}

/// `rho_j(z, conj w)` with `~z` replaced by the parameters named in `bar`.
pub(crate) fn rename_conj(m: &CRManifold, r: &Poly, target: &Arc<VarTable>, bar: &[String]) -> Result<Poly, PolyError> {
    let table = m.table().clone();
    let map: HashMap<String, String> = m
        .conj()
        .into_iter()
        .zip(bar)
        .map(|(i, b)| (table.name(i).to_string(), b.clone()))
        .collect();
    r.rename_into(target, |n| map.get(n).cloned().unwrap_or_else(|| n.to_string()))
}

pub fn segre_variety(m: &CRManifold, w: &SegreParam) -> Result<SegreVariety, SegreError> {
    if let Some(j) = m.rho().iter().position(|r| !r.is_real()) {
        return Err(ManifoldError::NotReal(j).into());
    }
    let n = m.holo().len();
    match w {
        SegreParam::Point(w) => {
            m.check_point(w)?;
            let table = holo_table(m)?;
            let values = conj_values(m, w);
            let gens = m
                .rho()
                .iter()
                .map(|r| r.specialize(&values).embed(&table))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SegreVariety {
                base: m.clone(),
                parameter: SegreParam::Point(w.clone()),
                ideal: Ideal::grevlex(&table, gens)?,
                coords: (0..n).collect(),
                params: Vec::new(),
            })
        }
        SegreParam::Symbolic => {
            let coords = m.coordinate_names();
            let bar: Vec<String> = dual_names(&coords, "w", n).into_iter().map(|w| format!("~{w}")).collect();
            let mut b = VarTable::builder();
            for c in &coords {
                b = b.holo(c);
            }
            for w in &bar {
                b = b.param(w);
            }
            let table = b.build()?;
            let gens = m
                .rho()
                .iter()
                .map(|r| rename_conj(m, r, &table, &bar))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SegreVariety {
                base: m.clone(),
                parameter: SegreParam::Symbolic,
                ideal: Ideal::grevlex(&table, gens)?,
                coords: (0..n).collect(),
                params: (n..2 * n).collect(),
            })
        }
    }
}

impl SegreVariety {
    /// `z` satisfies every generator; symbolic varieties need `w` too.
    pub fn contains(&self, z: &[GaussianRational]) -> bool {
        match &self.parameter {
            SegreParam::Point(_) => self.ideal.generators().iter().all(|g| g.eval_dense(z).is_zero()),
            SegreParam::Symbolic => false,
        }
    }

    /// The variety at `w` from a symbolic family.
    pub fn at(&self, w: &[GaussianRational]) -> Result<SegreVariety, SegreError> {
        segre_variety(&self.base, &SegreParam::Point(w.to_vec()))
    }

    /// Rewrites the ideal as a graph `zeta = h(xi, ~w)` over the listed
    /// coordinate positions. Only affine-linear dependence on the solved
    /// block is handled (Cramer's rule over the rational-function field).
    pub fn graph_form(&self, solve: &[usize]) -> Result<GraphForm, SegreError> {
        let gens = self.ideal.generators();
        if gens.len() != solve.len() {
            return Err(SegreError::BadSplit {
                expected: gens.len(),
                got: solve.len(),
            });
        }
        let table = self.ideal.table().clone();
        let block: Vec<usize> = solve.iter().map(|&k| self.coords[k]).collect();
        let k = block.len();
        let mut a = vec![vec![Poly::zero(&table); k]; k];
        let mut rhs = vec![Poly::zero(&table); k];
        for (j, g) in gens.iter().enumerate() {
            if g.degree_in_block(&block) > 1 {
                return Err(SegreError::Nonlinear);
            }
            for (key, c) in g.coefficients_in(&block) {
                match block.iter().position(|&v| key.0[v] == 1) {
                    Some(col) => a[j][col] = c,
                    None => rhs[j] = -&c,
                }
            }
        }
        let den = det(&a);
        if den.is_zero() {
            return Err(SegreError::Singular);
        }
        let numerators = (0..k)
            .map(|col| {
                let mut ac = a.clone();
                for (row, r) in ac.iter_mut().zip(&rhs) {
                    row[col] = r.clone();
                }
                det(&ac)
            })
            .collect();
        Ok(GraphForm {
            solved: solve.to_vec(),
            vars: block,
            numerators,
            denominator: den,
        })
    }
}

/// `z[solved[k]] = numerators[k] / denominator`.
#[derive(Clone, Debug)]
pub struct GraphForm {
    pub solved: Vec<usize>,
    vars: Vec<usize>,
    pub numerators: Vec<Poly>,
    pub denominator: Poly,
}

impl GraphForm {
    /// `denominator * g(zeta -> h)` vanishes identically for each
    /// generator `g` (exact for affine-linear `g`).
    pub fn verify(&self, q: &SegreVariety) -> bool {
        q.ideal.generators().iter().all(|g| {
            let mut acc = Poly::zero(q.ideal.table());
            for (key, c) in g.coefficients_in(&self.vars) {
                acc = match self.vars.iter().position(|&v| key.0[v] == 1) {
                    Some(col) => &acc + &(&c * &self.numerators[col]),
                    None => &acc + &(&c * &self.denominator),
                };
            }
            acc.is_zero()
        })
    }
}

fn det(a: &[Vec<Poly>]) -> Poly {
    match a.len() {
        0 => unreachable!("empty matrix"),
        1 => a[0][0].clone(),
        n => {
            let table = a[0][0].table().clone();
            let mut acc = Poly::zero(&table);
            for col in 0..n {
                if a[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &a[0][col] * &det(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `rho_j(z, conj w) = 0` for every `j`.
pub fn in_segre(m: &CRManifold, z: &[GaussianRational], w: &[GaussianRational]) -> bool {
    let wbar: Point = w.iter().map(|x| x.conj()).collect();
    let v = m.values(z, &wbar);
    m.rho().iter().all(|r| r.eval_dense(&v).is_zero())
}

/// `z in Q_w` iff `w in Q_z`; true for every real `M`.
pub fn check_symmetry(m: &CRManifold, z: &[GaussianRational], w: &[GaussianRational]) -> bool {
    in_segre(m, z, w) == in_segre(m, w, z)
}

/// Ideal of the inversion set, in the coordinates `z` (and `w` when
/// symbolic).
#[derive(Clone, Debug)]
pub struct InversionSet {
    pub ideal: Ideal,
    pub coords: Vec<usize>,
    /// Indices of `w` in `ideal`; empty at a point.
    pub params: Vec<usize>,
    /// Polynomials in `w` off whose zero set the incidence ideal is valid.
    pub excluded: Vec<Poly>,
}

/// `{z : rho_j(t, conj z) lies in <rho(t, conj w)> for all j}` via a
/// parametric normal form in `t`, collecting every `t`-coefficient.
pub fn inversion_set(m: &CRManifold, w: &SegreParam, limits: &Limits) -> Result<InversionSet, SegreError> {
    if let Some(j) = m.rho().iter().position(|r| !r.is_real()) {
        return Err(ManifoldError::NotReal(j).into());
    }
    let n = m.holo().len();
    let coords = m.coordinate_names();
    let symbolic = matches!(w, SegreParam::Symbolic);
    let wnames = if symbolic { dual_names(&coords, "w", n) } else { Vec::new() };
    let mut all = coords.clone();
    all.extend(wnames.iter().cloned());
    let table = VarTable::with_conjugates(&all)?;
    let bar: Vec<String> = wnames.iter().map(|w| format!("~{w}")).collect();

    let segre_gens = match w {
        SegreParam::Point(w) => {
            m.check_point(w)?;
            let values = conj_values(m, w);
            m.rho()
                .iter()
                .map(|r| r.specialize(&values).embed(&table))
                .collect::<Result<Vec<_>, _>>()?
        }
        SegreParam::Symbolic => m
            .rho()
            .iter()
            .map(|r| rename_conj(m, r, &table, &bar))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let segre = Ideal::grevlex(&table, segre_gens)?;
    let params: Vec<usize> = (0..table.len()).filter(|&i| i >= n).collect();

    let mut gens = Vec::new();
    let mut excluded: Vec<Poly> = Vec::new();
    for r in m.rho() {
        let p = r.embed(&table)?;
        let pnf = parametric_normal_form(&p, &segre, &params, limits)?;
        for c in pnf.main_coefficients(&params) {
            gens.push(c.conjugate()?);
        }
        for e in pnf.excluded {
            let e = e.conjugate()?;
            if !excluded.contains(&e) {
                excluded.push(e);
            }
        }
    }
    let holo: Vec<usize> = table.holo_indices();
    let out = table.restrict(&holo)?;
    let gens = gens.iter().map(|g| g.embed(&out)).collect::<Result<Vec<_>, _>>()?;
    let excluded = excluded.iter().map(|g| g.embed(&out)).collect::<Result<Vec<_>, _>>()?;
    let mut ideal = Ideal::grevlex(&out, gens)?;
    if let Some(h) = excluded.iter().cloned().reduce(|a, b| &a * &b) {
        ideal = saturate(&ideal, &h, limits)?;
    }
    Ok(InversionSet {
        ideal,
        coords: (0..n).collect(),
        params: if symbolic { (n..2 * n).collect() } else { Vec::new() },
        excluded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialFiniteness {
    pub finite: bool,
    pub dimension: i64,
    /// Number of points of `I_w` with multiplicity, when finite.
    pub degree: Option<u64>,
    /// Number of distinct points of `I_w`, when finite.
    pub distinct: Option<u64>,
}

pub fn essential_finiteness(m: &CRManifold, w: &[GaussianRational], limits: &Limits) -> Result<EssentialFiniteness, SegreError> {
    m.require_on(w)?;
    let inv = inversion_set(m, &SegreParam::Point(w.to_vec()), limits)?;
    let dim = dimension(&inv.ideal, limits)?;
    if dim != 0 {
        return Ok(EssentialFiniteness {
            finite: false,
            dimension: dim,
            degree: None,
            distinct: None,
        });
    }
    Ok(EssentialFiniteness {
        finite: true,
        dimension: 0,
        degree: Some(degree_zero_dim(&inv.ideal, limits)?),
        distinct: Some(distinct_solution_count(&inv.ideal, limits)?),
    })
}

/// `Q_z = Q_q` forces `z = q`: the inversion set at `q` has degree 1.
pub fn segre_map_locally_injective(m: &CRManifold, q: &[GaussianRational], limits: &Limits) -> Result<bool, SegreError> {
    Ok(essential_finiteness(m, q, limits)?.degree == Some(1))
}

/// Zariski closures of the Segre sets `Q^1_p, Q^2_p, ...` at `p`.
#[derive(Clone, Debug)]
pub struct SegreSetChain {
    pub base: Point,
    /// `ideals[k]` defines the closure of `Q^{k+1}_p`.
    pub ideals: Vec<Ideal>,
    pub dims: Vec<i64>,
    /// Two consecutive ideals agreed.
    pub stabilized: bool,
}

impl SegreSetChain {
    /// First `j` with `dim Q^j_p = n`.
    pub fn first_full(&self, n: usize) -> Option<usize> {
        self.dims.iter().position(|&d| d == n as i64).map(|k| k + 1)
    }

    /// Each ideal contains the next one.
    pub fn is_decreasing(&self, limits: &Limits) -> Result<bool, EngineError> {
        for w in self.ideals.windows(2) {
            if !contains_ideal(&w[0], &w[1], limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn default_j_max(m: &CRManifold) -> usize {
    m.n() + 2
}

/// Iterates `K_{j+1} = (<conj K_j (~z)> + <rho(z, ~z)>) ∩ Q(i)[z]` from
/// `K_0 = <z - p>`, stopping once the dimension reaches `n` or two
/// consecutive ideals agree.
pub fn segre_sets(m: &CRManifold, p: &[GaussianRational], j_max: usize, limits: &Limits) -> Result<SegreSetChain, SegreError> {
    m.check_point(p)?;
    if !m.contains(p) {
        let bad = m.defining_values(p).iter().filter(|x| !x.is_zero()).count();
        return Err(ManifoldError::NotOnManifold(bad).into());
    }
    let n = m.holo().len();
    let holo = holo_table(m)?;
    let point: Vec<Poly> = (0..n)
        .map(|k| &Poly::var(&holo, k) - &Poly::constant(&holo, p[k].clone()))
        .collect();
    let mut current = Ideal::grevlex(&holo, point)?;
    let mut chain = SegreSetChain {
        base: p.to_vec(),
        ideals: Vec::new(),
        dims: Vec::new(),
        stabilized: false,
    };
    for _ in 0..j_max {
        let mut gens: Vec<Poly> = current
            .generators()
            .iter()
            .map(|g| g.embed(m.table()).and_then(|g| g.conjugate()))
            .collect::<Result<_, _>>()?;
        gens.extend(m.rho().iter().cloned());
        let next = eliminate(&Ideal::grevlex(m.table(), gens)?, m.holo(), limits)?;
        let dim = dimension(&next, limits)?;
        let same = !chain.ideals.is_empty() && same_ideal(&current, &next, limits)?;
        chain.ideals.push(next.clone());
        chain.dims.push(dim);
        if dim == n as i64 {
            break;
        }
        if same {
            chain.stabilized = true;
            break;
        }
        current = next;
    }
    Ok(chain)
}

#[derive(Clone, Debug)]
pub struct Minimality {
    pub minimal: bool,
    /// First step at which the Segre set fills `C^n`.
    pub j0: Option<usize>,
    pub chain: SegreSetChain,
}

pub fn minimality(m: &CRManifold, p: &[GaussianRational], j_max: usize, limits: &Limits) -> Result<Minimality, SegreError> {
    let chain = segre_sets(m, p, j_max, limits)?;
    let n = m.holo().len();
    if let Some(j0) = chain.first_full(n) {
        return Ok(Minimality {
            minimal: true,
            j0: Some(j0),
            chain,
        });
    }
    if chain.stabilized {
        return Ok(Minimality {
            minimal: false,
            j0: None,
            chain,
        });
    }
    Err(SegreError::Inconclusive {
        j_max,
        dims: chain.dims,
    })
}

#[cfg(test)]
mod tests;
