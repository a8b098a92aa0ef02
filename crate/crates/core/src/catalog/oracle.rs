//! Damped Gauss-Newton in `f64` complex arithmetic, used only to
//! cross-check exact solution counts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub starts: usize,
    /// Starts are drawn uniformly from `[-radius, radius]^2` per coordinate.
    pub radius: f64,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            starts: 64,
            radius: 2.0,
            seed: 1,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub count: usize,
    pub roots: Vec<Vec<(f64, f64)>>,
    pub max_residual: f64,
    /// Starts that did not reach the residual tolerance.
    pub failed_starts: usize,
}

struct Compiled(Vec<(Vec<u32>, Complex64)>);

impl Compiled {
    fn new(p: &Poly) -> Self {
        Self(
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let (re, im) = c.to_f64_pair();
                    (m.0.clone(), Complex64::new(re, im))
                })
                .collect(),
        )
    }

    fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .filter(|(k, _)| **k > 0)
                    .fold(*c, |acc, (k, xi)| acc * xi.powu(*k))
            })
            .sum()
    }
}

fn residual(f: &[Compiled], x: &[Complex64]) -> DVector<Complex64> {
    DVector::from_iterator(f.len(), f.iter().map(|p| p.eval(x)))
}

/// Roots of `system` (all table variables are unknowns), deduplicated.
pub fn numeric_oracle(system: &[Poly], opts: &OracleOptions) -> NumericReport {
    let mut report = NumericReport {
        count: 0,
        roots: Vec::new(),
        max_residual: 0.0,
        failed_starts: 0,
    };
    let Some(first) = system.first() else {
        return report;
    };
    let n = first.table().len();
    let f: Vec<Compiled> = system.iter().map(Compiled::new).collect();
    let jac: Vec<Vec<Compiled>> = system
        .iter()
        .map(|p| (0..n).map(|k| Compiled::new(&p.derivative(k))).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut roots: Vec<Vec<Complex64>> = Vec::new();
    for _ in 0..opts.starts {
        let mut x: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    rng.gen_range(-opts.radius..opts.radius),
                    rng.gen_range(-opts.radius..opts.radius),
                )
            })
            .collect();
        let mut fx = residual(&f, &x);
        for _ in 0..200 {
            let norm = fx.norm();
            if norm < 1e-15 {
                break;
            }
            let j = DMatrix::from_fn(f.len(), n, |r, c| jac[r][c].eval(&x));
            let Ok(step) = j.svd(true, true).solve(&(-&fx), 1e-14) else {
                break;
            };
            let mut alpha = 1.0;
            let mut moved = false;
            while alpha > 1e-6 {
                let y: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, s)| a + s * alpha).collect();
                let fy = residual(&f, &y);
                if fy.norm() < norm {
                    x = y;
                    fx = fy;
                    moved = true;
                    break;
                }
                alpha /= 2.0;
            }
            if !moved {
                break;
            }
        }
        let res = fx.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if res > opts.tolerance || x.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            report.failed_starts += 1;
            continue;
        }
        let dup = roots
            .iter()
            .any(|r| r.iter().zip(&x).all(|(a, b)| (a - b).norm() < 1e-6 * (1.0 + a.norm())));
        if !dup {
            report.max_residual = report.max_residual.max(res);
            roots.push(x);
        }
    }
    report.count = roots.len();
    report.roots = roots
        .into_iter()
        .map(|r| r.into_iter().map(|c| (c.re, c.im)).collect())
        .collect();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarTable};

    fn system(vars: &[&str], src: &[&str]) -> Vec<Poly> {
        let t = VarTable::params(vars).unwrap();
        src.iter().map(|s| parse_poly(s, &t).unwrap()).collect()
    }

    #[test]
    fn two_roots_of_x_squared_minus_one() {
        let r = numeric_oracle(&system(&["x"], &["x^2 - 1"]), &OracleOptions::default());
        assert_eq!(r.count, 2);
        assert!(r.max_residual <= 1e-9);
    }

    #[test]
    fn inconsistent_system_has_no_roots() {
        let r = numeric_oracle(&system(&["x"], &["x", "x - 1"]), &OracleOptions::default());
        assert_eq!(r.count, 0);
        assert_eq!(r.failed_starts, 64);
    }

    #[test]
    fn overdetermined_power_system() {
        let r = numeric_oracle(
            &system(&["a", "b"], &["a^2 - 4", "b^2 + 9", "a^2*b^2 + 36"]),
            &OracleOptions::default(),
        );
        assert_eq!(r.count, 4);
    }

    #[test]
    fn double_root_counted_once() {
        let r = numeric_oracle(&system(&["x"], &["x^2 - 2*x + 1"]), &OracleOptions::default());
        assert_eq!(r.count, 1);
    }
}
