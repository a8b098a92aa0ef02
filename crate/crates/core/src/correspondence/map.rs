use std::sync::Arc;

use serde::Serialize;

use super::CorrespondenceError;
use crate::manifold::linalg::Matrix;
use crate::manifold::{CRManifold, MapFile, Point};
use crate::poly::{parse_poly, GaussianRational, Poly, VarKind, VarTable};
use crate::sample::Sampler;

/// `z -> (num_1/den_1, ..., num_N/den_N)`; source coordinate `k` is the
/// `k`-th variable of `table`.
#[derive(Clone, Debug)]
pub struct AlgebraicMap {
    table: Arc<VarTable>,
    components: Vec<(Poly, Poly)>,
}

impl AlgebraicMap {
    pub fn new(table: &Arc<VarTable>, components: Vec<(Poly, Poly)>) -> Result<Self, CorrespondenceError> {
        let holo = table.restrict(&table.holo_indices())?;
        let mut out = Vec::with_capacity(components.len());
        for (num, den) in components {
            if den.is_zero() {
                return Err(CorrespondenceError::Pole);
            }
            let ok = |p: &Poly| p.variables().iter().all(|&i| p.table().kind(i) == VarKind::Holo);
            if !ok(&num) || !ok(&den) {
                return Err(crate::poly::PolyError::TableMismatch.into());
            }
            out.push((num.embed(&holo)?, den.embed(&holo)?));
        }
        Ok(Self {
            table: holo,
            components: out,
        })
    }

    pub fn from_file(f: &MapFile) -> Result<Self, CorrespondenceError> {
        Self::new(&f.table, f.components.clone())
    }

    /// Polynomial components parsed over holomorphic `vars`.
    pub fn polynomial<S: AsRef<str>>(vars: &[S], components: &[&str]) -> Result<Self, CorrespondenceError> {
        let mut b = VarTable::builder();
        for v in vars {
            b = b.holo(v.as_ref());
        }
        let table = b.build()?;
        let comps = components
            .iter()
            .map(|s| Ok((parse_poly(s, &table)?, Poly::one(&table))))
            .collect::<Result<Vec<_>, CorrespondenceError>>()?;
        Self::new(&table, comps)
    }

    pub fn identity<S: AsRef<str>>(vars: &[S]) -> Result<Self, CorrespondenceError> {
        let srcs: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
        Self::polynomial(vars, &srcs)
    }

    pub fn components(&self) -> &[(Poly, Poly)] {
        &self.components
    }

    pub fn source_dim(&self) -> usize {
        self.table.len()
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, p: &[GaussianRational]) -> Result<Point, CorrespondenceError> {
        if p.len() != self.source_dim() {
            return Err(CorrespondenceError::DimensionMismatch {
                expected: self.source_dim(),
                got: p.len(),
            });
        }
        self.components
            .iter()
            .map(|(n, d)| {
                let dv = d.eval_dense(p);
                let inv = dv.inv().ok_or(CorrespondenceError::Pole)?;
                Ok(&n.eval_dense(p) * &inv)
            })
            .collect()
    }

    /// `N x n` Jacobian at `p`.
    pub fn jacobian(&self, p: &[GaussianRational]) -> Result<Matrix, CorrespondenceError> {
        self.eval(p)?;
        let rows = self
            .components
            .iter()
            .map(|(num, den)| {
                let d = den.eval_dense(p);
                let dd = &d * &d;
                let inv = dd.inv().expect("checked by eval");
                (0..self.source_dim())
                    .map(|k| {
                        let top = &(&num.derivative(k) * den) - &(num * &den.derivative(k));
                        &top.eval_dense(p) * &inv
                    })
                    .collect()
            })
            .collect();
        Ok(Matrix::from_rows(rows))
    }

    /// Largest Jacobian rank over a few pseudo-random points.
    pub fn generic_rank(&self) -> usize {
        let mut s = Sampler::new(11);
        (0..4)
            .filter_map(|_| self.jacobian(&s.point(self.source_dim(), 9)).ok())
            .map(|j| j.rank())
            .max()
            .unwrap_or(0)
    }

    /// Numerators over a common denominator, moved into `target` with
    /// source coordinate `k` sent to variable `k`.
    pub(crate) fn cleared(&self, target: &Arc<VarTable>) -> Result<(Vec<Poly>, Poly), CorrespondenceError> {
        let images: Vec<Poly> = (0..self.source_dim()).map(|k| Poly::var(target, k)).collect();
        let mut dens: Vec<Poly> = Vec::new();
        for (_, d) in &self.components {
            let d = d.map_into(target, &images)?;
            if d.as_constant().is_none() && !dens.contains(&d) {
                dens.push(d);
            }
        }
        let common = dens.iter().fold(Poly::one(target), |a, d| &a * d);
        let mut nums = Vec::new();
        for (n, d) in &self.components {
            let n = n.map_into(target, &images)?;
            let d = d.map_into(target, &images)?;
            let scale = match d.as_constant() {
                Some(c) => &Poly::constant(target, c.inv().ok_or(CorrespondenceError::Pole)?) * &common,
                None => common.div_exact(&d).expect("d divides the product"),
            };
            nums.push(&n * &scale);
        }
        Ok((nums, common))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub expected: usize,
    pub maximal: bool,
    /// Rank of `df` on the complex tangent space of the given manifold.
    pub tangent_rank: Option<usize>,
    pub tangent_dim: Option<usize>,
}

/// Jacobian rank at `p` against `min(n, N)`; with a manifold, also the
/// rank on `H_p M = ker(d rho / dz)`.
pub fn max_rank_check(
    f: &AlgebraicMap,
    p: &[GaussianRational],
    manifold: Option<&CRManifold>,
) -> Result<RankReport, CorrespondenceError> {
    let j = f.jacobian(p)?;
    let rank = j.rank();
    let expected = f.source_dim().min(f.target_dim());
    let (tangent_rank, tangent_dim) = match manifold {
        Some(m) => {
            let basis = m.gradient_matrix(p, true).nullspace();
            let dim = basis.len();
            let r = if dim == 0 {
                0
            } else {
                j.mul(&Matrix::from_columns(&basis, f.source_dim())).rank()
            };
            (Some(r), Some(dim))
        }
        None => (None, None),
    };
    Ok(RankReport {
        rank,
        expected,
        maximal: rank == expected,
        tangent_rank,
        tangent_dim,
    })
}
