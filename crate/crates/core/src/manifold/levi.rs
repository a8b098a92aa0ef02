use num_traits::Zero;
use serde::Serialize;

use super::linalg::{Inertia, Matrix};
use super::{CRManifold, ManifoldError, Point};
use crate::poly::GaussianRational;

/// Signature of the Levi form at a point in one conormal direction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeviReport {
    pub point: Vec<String>,
    pub conormal: Vec<String>,
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl LeviReport {
    pub fn inertia(&self) -> Inertia {
        Inertia {
            positives: self.positives,
            negatives: self.negatives,
            zeros: self.zeros,
        }
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.positives, self.negatives, self.zeros)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    pub point: usize,
    pub conormal: Vec<String>,
    pub signature: (usize, usize, usize),
    pub mixed: bool,
}

/// Finite sampling of the pseudoconcavity condition; a probe, not a proof.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub samples: Vec<ProbeSample>,
    pub all_mixed: bool,
}

/// Nonzero vectors in `{-1, 0, 1}^d`; for `d = 1` this is `{1, -1}`.
pub fn default_conormal_grid(d: usize) -> Vec<Vec<GaussianRational>> {
    let mut out = Vec::new();
    let total = 3usize.pow(d as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<GaussianRational> = (0..d)
            .map(|_| {
                let digit = (c % 3) as i64 - 1;
                c /= 3;
                GaussianRational::from_integer(digit)
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out.sort_by_key(|v| v.iter().map(|x| if x.re > num_rational::BigRational::zero() { 0 } else { 1 }).collect::<Vec<_>>());
    out
}

impl CRManifold {
    /// Hermitian matrix `sum_j c_j d^2 rho_j / dz_k d~z_l` at `p`.
    pub fn complex_hessian(&self, p: &[GaussianRational], c: &[GaussianRational]) -> Matrix {
        let pbar: Point = p.iter().map(|x| x.conj()).collect();
        let v = self.values(p, &pbar);
        let conj = self.conj();
        let n = self.holo.len();
        let mut h = Matrix::zeros(n, n);
        for (j, r) in self.rho.iter().enumerate() {
            if c[j].is_zero() {
                continue;
            }
            for (k, &zk) in self.holo.iter().enumerate() {
                let dk = r.derivative(zk);
                for (l, &wl) in conj.iter().enumerate() {
                    let val = dk.derivative(wl).eval_dense(&v);
                    let term = &c[j] * &val;
                    h[(k, l)] += &term;
                }
            }
        }
        h
    }

    /// Levi form at `p` in conormal direction `c`: the complex Hessian of
    /// `sum c_j rho_j` restricted to the kernel of the `d rho / dz` rows.
    pub fn levi_signature(&self, p: &[GaussianRational], c: &[GaussianRational]) -> Result<LeviReport, ManifoldError> {
        self.require_on(p)?;
        if c.len() != self.d() || c.iter().any(|x| !x.is_real()) || c.iter().all(|x| x.is_zero()) {
            return Err(ManifoldError::BadConormal(self.d()));
        }
        let rank = self.genericity_rank(p)?;
        if rank < self.d() {
            return Err(ManifoldError::RankDrop { rank, d: self.d() });
        }
        let inertia = self.levi_matrix(p, c).hermitian_inertia();
        Ok(LeviReport {
            point: p.iter().map(|x| x.to_string()).collect(),
            conormal: c.iter().map(|x| x.to_string()).collect(),
            positives: inertia.positives,
            negatives: inertia.negatives,
            zeros: inertia.zeros,
        })
    }

    /// `B^T H conj(B)` for a basis `B` (columns) of `H_p M`.
    pub fn levi_matrix(&self, p: &[GaussianRational], c: &[GaussianRational]) -> Matrix {
        let n = self.holo.len();
        let basis = self.gradient_matrix(p, true).nullspace();
        let b = Matrix::from_columns(&basis, n);
        let h = self.complex_hessian(p, c);
        b.transpose().mul(&h).mul(&b.conj())
    }

    pub fn pseudoconcavity_probe(
        &self,
        points: &[Point],
        conormals: &[Vec<GaussianRational>],
    ) -> Result<ProbeReport, ManifoldError> {
        let mut samples = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for c in conormals {
                let r = self.levi_signature(p, c)?;
                samples.push(ProbeSample {
                    point: i,
                    conormal: r.conormal.clone(),
                    signature: r.triple(),
                    mixed: r.inertia().is_mixed(),
                });
            }
        }
        let all_mixed = !samples.is_empty() && samples.iter().all(|s| s.mixed);
        Ok(ProbeReport { samples, all_mixed })
    }
}
