//! Holomorphic correspondences `A = {(w, v) : f(Q_w) ⊂ Q'_v}` built from
//! algebraic maps, with fibers, splitting and composition.

mod map;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::ideal::{
    degree_zero_dim, dimension, distinct_solution_count, eliminate, member, parametric_normal_form,
    radical_member, saturate, solve_triangular, EngineError, Ideal, Limits,
};
use crate::manifold::{CRManifold, ManifoldError, Point};
use crate::poly::{GaussianRational, Monomial, Poly, PolyError, VarTable};
use crate::sample::{SampleError, Sampler, DEFAULT_SEED};
use crate::segre::{
    dual_names, essential_finiteness, in_segre, inversion_set, rename_conj, segre_variety, SegreError, SegreParam,
};
pub use map::{max_rank_check, AlgebraicMap, RankReport};

#[derive(Debug, thiserror::Error)]
pub enum CorrespondenceError {
    #[error(transparent)]
    Segre(#[from] SegreError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("map has a pole at the point")]
    Pole,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map has generic rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("graph ideal is {0}")]
    EmptyGraph(&'static str),
    #[error("fiber is positive-dimensional (dimension {0})")]
    PositiveDimensionalFiber(i64),
}

/// Graph ideal in `(w, v)`: `w` on the source, `v` on the target.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub graph: Ideal,
    pub source_vars: Vec<usize>,
    pub target_vars: Vec<usize>,
    pub source: CRManifold,
    pub target: CRManifold,
    /// Polynomials in the source variables (over the graph table) whose
    /// zero set is not covered by the construction.
    pub excluded: Vec<Poly>,
    /// Fiber degree at a pseudo-random source point.
    pub fiber_degree: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub points: usize,
    pub points_mapped_into_target: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    /// Sampled `p` with `f(Q_p) ⊂ Q'_{f(p)}` decided by plain membership.
    pub ideal_containments: usize,
    /// Sampled `p` where only radical membership held.
    pub radical_containments: usize,
    pub containment_failures: usize,
}

impl InvarianceReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.containment_failures == 0 && self.points_mapped_into_target == self.points
    }
}

/// How `f(Q_w) ⊂ Q'_{w'}` was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    Ideal,
    Radical,
    Fails,
}

/// Decides `f(Q_w) ⊂ Q'_{w'}`: every `D^a rho'_k(f(z), conj w')`, with `D`
/// the common denominator of `f`, is tested for membership in the ideal of
/// `Q_w`, then in its radical.
pub fn segre_containment(
    source: &CRManifold,
    target: &CRManifold,
    f: &AlgebraicMap,
    w: &[GaussianRational],
    wp: &[GaussianRational],
    limits: &Limits,
) -> Result<Containment, CorrespondenceError> {
    let big_n = target.holo().len();
    if f.source_dim() != source.holo().len() {
        return Err(CorrespondenceError::DimensionMismatch {
            expected: source.holo().len(),
            got: f.source_dim(),
        });
    }
    for got in [f.target_dim(), wp.len()] {
        if got != big_n {
            return Err(CorrespondenceError::DimensionMismatch { expected: big_n, got });
        }
    }
    let q = segre_variety(source, &SegreParam::Point(w.to_vec()))?;
    let table = q.ideal.table().clone();
    let (nums, den) = f.cleared(&table)?;
    let holo = target.holo();
    let conj = target.conj();
    let mut pulled = Vec::new();
    for r in target.rho() {
        let a = r.degree_in_block(holo);
        let mut acc = Poly::zero(&table);
        for (m, c) in r.terms() {
            let mut coeff = c.clone();
            let mut term = Poly::one(&table);
            let mut used = 0;
            for (k, (&h, &cj)) in holo.iter().zip(&conj).enumerate() {
                if m.0[h] > 0 {
                    term = &term * &nums[k].pow(m.0[h]);
                    used += m.0[h];
                }
                if m.0[cj] > 0 {
                    coeff = &coeff * &wp[k].conj().pow(m.0[cj]);
                }
            }
            term = &term * &Poly::constant(&table, coeff);
            acc = &acc + &(&term * &den.pow(a - used));
        }
        pulled.push(acc);
    }
    let mut notion = Containment::Ideal;
    for p in &pulled {
        if member(p, &q.ideal, limits)? {
            continue;
        }
        if radical_member(p, &q.ideal, limits)? {
            notion = Containment::Radical;
        } else {
            return Ok(Containment::Fails);
        }
    }
    Ok(notion)
}

/// Samples `p` on `M` and `z` on `Q_p` and checks `f(z) in Q'_{f(p)}`
/// exactly; also decides `f(Q_p) ⊂ Q'_{f(p)}` by ideal membership and
/// counts how many `f(p)` land on `M'`.
pub fn verify_invariance(
    source: &CRManifold,
    target: &CRManifold,
    f: &AlgebraicMap,
    points: usize,
    per_point: usize,
    sampler: &mut Sampler,
    limits: &Limits,
) -> Result<InvarianceReport, CorrespondenceError> {
    let ps = sampler.points_on(source, &[], points)?;
    let mut report = InvarianceReport {
        points: ps.len(),
        points_mapped_into_target: 0,
        checks: 0,
        passed: 0,
        failed: 0,
        ideal_containments: 0,
        radical_containments: 0,
        containment_failures: 0,
    };
    for p in &ps {
        let Ok(fp) = f.eval(p) else { continue };
        if target.contains(&fp) {
            report.points_mapped_into_target += 1;
        }
        match segre_containment(source, target, f, p, &fp, limits)? {
            Containment::Ideal => report.ideal_containments += 1,
            Containment::Radical => report.radical_containments += 1,
            Containment::Fails => report.containment_failures += 1,
        }
        for z in sampler.points_on_segre(source, p, per_point, limits)? {
            let Ok(fz) = f.eval(&z) else { continue };
            report.checks += 1;
            if in_segre(target, &fz, &fp) {
                report.passed += 1;
            } else {
                report.failed += 1;
            }
        }
    }
    Ok(report)
}

/// `D^a * rho'(f(t), ~v)` with `D` the product of the distinct
/// denominators and `a` the holomorphic degree of `rho'`.
fn pull_back(
    rho: &Poly,
    target: &CRManifold,
    numerators: &[Poly],
    den: &Poly,
    bar: &[usize],
    table: &Arc<VarTable>,
) -> Poly {
    let holo = target.holo();
    let conj = target.conj();
    let a = rho.degree_in_block(holo);
    let mut acc = Poly::zero(table);
    for (m, c) in rho.terms() {
        let mut term = Poly::constant(table, c.clone());
        let mut used = 0;
        for (k, (&h, &cj)) in holo.iter().zip(&conj).enumerate() {
            if m.0[h] > 0 {
                term = &term * &numerators[k].pow(m.0[h]);
                used += m.0[h];
            }
            if m.0[cj] > 0 {
                let mut e = vec![0; table.len()];
                e[bar[k]] = m.0[cj];
                term = term.mul_term(&Monomial(e), &GaussianRational::from_integer(1));
            }
        }
        acc = &acc + &(&term * &den.pow(a - used));
    }
    acc
}

pub fn build_correspondence(
    source: &CRManifold,
    target: &CRManifold,
    f: &AlgebraicMap,
    limits: &Limits,
) -> Result<Correspondence, CorrespondenceError> {
    let n = source.holo().len();
    let big_n = target.holo().len();
    if f.source_dim() != n {
        return Err(CorrespondenceError::DimensionMismatch {
            expected: n,
            got: f.source_dim(),
        });
    }
    if f.target_dim() != big_n {
        return Err(CorrespondenceError::DimensionMismatch {
            expected: big_n,
            got: f.target_dim(),
        });
    }
    let rank = f.generic_rank();
    if rank < n.min(big_n) {
        return Err(CorrespondenceError::RankDeficient {
            rank,
            expected: n.min(big_n),
        });
    }
    for (j, r) in source.rho().iter().chain(target.rho()).enumerate() {
        if !r.is_real() {
            return Err(ManifoldError::NotReal(j).into());
        }
    }

    let coords = source.coordinate_names();
    let wn = dual_names(&coords, "w", n);
    let vn = dual_names(&coords, "v", big_n);
    let wbar: Vec<String> = wn.iter().map(|w| format!("~{w}")).collect();
    let vbar: Vec<String> = vn.iter().map(|v| format!("~{v}")).collect();
    let mut b = VarTable::builder();
    for c in &coords {
        b = b.holo(c);
    }
    for p in wbar.iter().chain(&vbar) {
        b = b.param(p);
    }
    let t_table = b.build()?;
    let params: Vec<usize> = (n..t_table.len()).collect();
    let vbar_idx: Vec<usize> = (n + n..t_table.len()).collect();

    let segre_gens = source
        .rho()
        .iter()
        .map(|r| rename_conj(source, r, &t_table, &wbar))
        .collect::<Result<Vec<_>, _>>()?;
    let segre = Ideal::grevlex(&t_table, segre_gens)?;

    let (nums, den) = f.cleared(&t_table)?;
    let mut gens = Vec::new();
    let mut excluded: Vec<Poly> = Vec::new();
    for r in target.rho() {
        let p = pull_back(r, target, &nums, &den, &vbar_idx, &t_table);
        let pnf = parametric_normal_form(&p, &segre, &params, limits)?;
        gens.extend(pnf.main_coefficients(&params));
        for e in pnf.excluded {
            if !excluded.contains(&e) {
                excluded.push(e);
            }
        }
    }

    let mut names = wn.clone();
    names.extend(vn.iter().cloned());
    let full = VarTable::with_conjugates(&names)?;
    let lift = |p: &Poly| -> Result<Poly, PolyError> { p.embed(&full)?.conjugate() };
    let gens: Vec<Poly> = gens.iter().map(lift).collect::<Result<_, _>>()?;
    let excluded: Vec<Poly> = excluded.iter().map(lift).collect::<Result<_, _>>()?;
    let graph_table = full.restrict(&full.holo_indices())?;
    let gens: Vec<Poly> = gens.iter().map(|g| g.embed(&graph_table)).collect::<Result<_, _>>()?;
    let excluded: Vec<Poly> = excluded.iter().map(|g| g.embed(&graph_table)).collect::<Result<_, _>>()?;

    let mut graph = Ideal::grevlex(&graph_table, gens)?;
    if graph.is_zero_ideal() {
        return Err(CorrespondenceError::EmptyGraph("zero"));
    }
    if let Some(h) = excluded.iter().cloned().reduce(|a, b| &a * &b) {
        graph = saturate(&graph, &h, limits)?;
    }
    if dimension(&graph, limits)? < 0 {
        return Err(CorrespondenceError::EmptyGraph("the unit ideal"));
    }
    let mut c = Correspondence {
        graph,
        source_vars: (0..n).collect(),
        target_vars: (n..n + big_n).collect(),
        source: source.clone(),
        target: target.clone(),
        excluded,
        fiber_degree: None,
    };
    c.fiber_degree = c.generic_fiber_degree(limits)?;
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub point: Point,
    pub degree: u64,
    pub distinct: u64,
    /// Exact solutions when the degree is at most 4 and back-substitution
    /// stays in `Q(i)`.
    pub solutions: Option<Vec<Point>>,
    pub on_excluded_locus: bool,
    /// Whether the solutions equal the target inversion set of the first
    /// one; only checked when solutions are exact.
    pub complete: Option<bool>,
}

impl FiberReport {
    pub fn is_radical(&self) -> bool {
        self.degree == self.distinct
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub splits: bool,
    pub fiber_radical: bool,
    /// Degree of the target inversion set at each fiber point, when the
    /// fiber is known exactly.
    pub target_degrees: Option<Vec<u64>>,
}

impl Correspondence {
    pub fn source_dim(&self) -> usize {
        self.source_vars.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_vars.len()
    }

    fn dense(&self, w: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); self.graph.table().len()];
        for (k, &i) in self.source_vars.iter().enumerate() {
            v[i] = w[k].clone();
        }
        v
    }

    pub fn on_excluded_locus(&self, w: &[GaussianRational]) -> bool {
        let v = self.dense(w);
        self.excluded.iter().any(|e| e.eval_dense(&v).is_zero())
    }

    /// The graph specialized at `w`, as an ideal in the target variables.
    pub fn fiber_ideal(&self, w: &[GaussianRational]) -> Result<Ideal, CorrespondenceError> {
        if w.len() != self.source_dim() {
            return Err(CorrespondenceError::DimensionMismatch {
                expected: self.source_dim(),
                got: w.len(),
            });
        }
        let values: HashMap<usize, GaussianRational> =
            self.source_vars.iter().copied().zip(w.iter().cloned()).collect();
        let sub = self.graph.table().restrict(&self.target_vars)?;
        let gens = self
            .graph
            .generators()
            .iter()
            .map(|g| g.specialize(&values).embed(&sub))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::grevlex(&sub, gens)?)
    }

    pub fn fiber(&self, w: &[GaussianRational], limits: &Limits) -> Result<FiberReport, CorrespondenceError> {
        let ideal = self.fiber_ideal(w)?;
        let on_excluded = self.on_excluded_locus(w);
        let dim = dimension(&ideal, limits)?;
        if dim > 0 {
            return Err(CorrespondenceError::PositiveDimensionalFiber(dim));
        }
        if dim < 0 {
            return Ok(FiberReport {
                point: w.to_vec(),
                degree: 0,
                distinct: 0,
                solutions: Some(Vec::new()),
                on_excluded_locus: on_excluded,
                complete: None,
            });
        }
        let degree = degree_zero_dim(&ideal, limits)?;
        let distinct = distinct_solution_count(&ideal, limits)?;
        let solutions = if degree <= 4 {
            solve_triangular(&ideal, limits)?
        } else {
            None
        };
        let complete = match &solutions {
            Some(s) if !s.is_empty() => Some(self.is_complete(s, limits)?),
            _ => None,
        };
        Ok(FiberReport {
            point: w.to_vec(),
            degree,
            distinct,
            solutions,
            on_excluded_locus: on_excluded,
            complete,
        })
    }

    /// The fiber equals the target inversion set of its first point.
    fn is_complete(&self, sols: &[Point], limits: &Limits) -> Result<bool, CorrespondenceError> {
        let inv = inversion_set(&self.target, &SegreParam::Point(sols[0].clone()), limits)?;
        let Some(expected) = solve_triangular(&inv.ideal, limits)? else {
            return Ok(false);
        };
        Ok(expected.len() == sols.len() && expected.iter().all(|e| sols.contains(e)))
    }

    /// The fiber at `q` is reduced and the target Segre map is locally
    /// injective at every fiber point.
    pub fn splits_at(&self, q: &[GaussianRational], limits: &Limits) -> Result<SplitReport, CorrespondenceError> {
        self.source.require_on(q)?;
        let fiber = self.fiber(q, limits)?;
        if !fiber.is_radical() {
            return Ok(SplitReport {
                splits: false,
                fiber_radical: false,
                target_degrees: None,
            });
        }
        if let Some(sols) = &fiber.solutions {
            let mut degrees = Vec::new();
            for s in sols {
                let e = essential_finiteness(&self.target, s, limits)?;
                degrees.push(e.degree.unwrap_or(0));
            }
            return Ok(SplitReport {
                splits: degrees.iter().all(|&d| d == 1),
                fiber_radical: true,
                target_degrees: Some(degrees),
            });
        }
        // fiber points not rational: count the joint solutions of the fiber
        // and the target incidence ideal instead
        let fiber_ideal = self.fiber_ideal(q)?;
        let inc = inversion_set(&self.target, &SegreParam::Symbolic, limits)?;
        let t = inc.ideal.table().clone();
        let images: Vec<Poly> = inc.params.iter().map(|&i| Poly::var(&t, i)).collect();
        let mut gens: Vec<Poly> = inc.ideal.generators().to_vec();
        for g in fiber_ideal.generators() {
            gens.push(g.map_into(&t, &images)?);
        }
        let joint = Ideal::grevlex(&t, gens)?;
        let dim = dimension(&joint, limits)?;
        let splits = dim == 0 && degree_zero_dim(&joint, limits)? == fiber.distinct;
        Ok(SplitReport {
            splits,
            fiber_radical: true,
            target_degrees: None,
        })
    }

    /// Swaps source and target.
    pub fn transpose(&self, limits: &Limits) -> Result<Correspondence, CorrespondenceError> {
        let mut excluded = Vec::new();
        for h in &self.excluded {
            if let Some(p) = project(&self.graph, h, &self.target_vars, limits)? {
                if !excluded.contains(&p) {
                    excluded.push(p);
                }
            }
        }
        let mut c = Correspondence {
            graph: self.graph.clone(),
            source_vars: self.target_vars.clone(),
            target_vars: self.source_vars.clone(),
            source: self.target.clone(),
            target: self.source.clone(),
            excluded,
            fiber_degree: None,
        };
        c.fiber_degree = c.generic_fiber_degree(limits)?;
        Ok(c)
    }

    /// Fiber degree at a few pseudo-random source points off the excluded
    /// locus; `None` if all of them gave positive-dimensional fibers.
    fn generic_fiber_degree(&self, limits: &Limits) -> Result<Option<u64>, CorrespondenceError> {
        let mut sampler = Sampler::new(DEFAULT_SEED);
        for _ in 0..5 {
            let w = sampler.point(self.source_dim(), 7);
            if self.on_excluded_locus(&w) {
                continue;
            }
            let ideal = self.fiber_ideal(&w)?;
            if dimension(&ideal, limits)? == 0 {
                return Ok(Some(degree_zero_dim(&ideal, limits)?));
            }
        }
        Ok(None)
    }
}

/// First generator of `(graph + <h>) ∩ Q(i)[keep]`, re-embedded in the
/// graph table.
fn project(graph: &Ideal, h: &Poly, keep: &[usize], limits: &Limits) -> Result<Option<Poly>, CorrespondenceError> {
    let mut gens = graph.generators().to_vec();
    gens.push(h.clone());
    let e = eliminate(&Ideal::grevlex(graph.table(), gens)?, keep, limits)?;
    match e.generators().first() {
        Some(g) => Ok(Some(g.embed(graph.table())?)),
        None => Ok(None),
    }
}

/// Joins `c1` and `c2` over the middle manifold and eliminates it.
pub fn compose(c1: &Correspondence, c2: &Correspondence, limits: &Limits) -> Result<Correspondence, CorrespondenceError> {
    let (n, mid, big_n) = (c1.source_dim(), c1.target_dim(), c2.target_dim());
    if c2.source_dim() != mid {
        return Err(CorrespondenceError::DimensionMismatch {
            expected: mid,
            got: c2.source_dim(),
        });
    }
    let mut names: Vec<String> = (1..=n).map(|k| format!("w{k}")).collect();
    names.extend((1..=big_n).map(|k| format!("v{k}")));
    names.extend((1..=mid).map(|k| format!("m{k}")));
    let mut b = VarTable::builder();
    for nm in &names {
        b = b.holo(nm);
    }
    let joint = b.build()?;
    let w: Vec<usize> = (0..n).collect();
    let v: Vec<usize> = (n..n + big_n).collect();
    let m: Vec<usize> = (n + big_n..n + big_n + mid).collect();

    let remap = |c: &Correspondence, src: &[usize], tgt: &[usize]| -> Vec<Poly> {
        let mut images = vec![Poly::zero(&joint); c.graph.table().len()];
        for (k, &i) in c.source_vars.iter().enumerate() {
            images[i] = Poly::var(&joint, src[k]);
        }
        for (k, &i) in c.target_vars.iter().enumerate() {
            images[i] = Poly::var(&joint, tgt[k]);
        }
        images
    };
    let im1 = remap(c1, &w, &m);
    let im2 = remap(c2, &m, &v);
    let g1: Vec<Poly> = c1.graph.generators().iter().map(|g| g.map_into(&joint, &im1)).collect::<Result<_, _>>()?;
    let mut gens = g1.clone();
    for g in c2.graph.generators() {
        gens.push(g.map_into(&joint, &im2)?);
    }
    let mut keep = w.clone();
    keep.extend(v.iter().copied());
    let graph = eliminate(&Ideal::grevlex(&joint, gens)?, &keep, limits)?;
    let out = graph.table().clone();

    let mut excluded: Vec<Poly> = Vec::new();
    for h in &c1.excluded {
        let p = h.map_into(&joint, &im1)?.embed(&out)?;
        if !excluded.contains(&p) {
            excluded.push(p);
        }
    }
    let first = Ideal::grevlex(&joint, g1)?;
    for h in &c2.excluded {
        let h = h.map_into(&joint, &im2)?;
        if let Some(p) = project(&first, &h, &w, limits)? {
            let p = p.embed(&out)?;
            if !excluded.contains(&p) {
                excluded.push(p);
            }
        }
    }
    let mut c = Correspondence {
        graph,
        source_vars: (0..n).collect(),
        target_vars: (n..n + big_n).collect(),
        source: c1.source.clone(),
        target: c2.target.clone(),
        excluded,
        fiber_degree: None,
    };
    c.fiber_degree = c.generic_fiber_degree(limits)?;
    Ok(c)
}

#[cfg(test)]
mod tests;
