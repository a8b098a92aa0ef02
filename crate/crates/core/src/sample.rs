//! Seeded exact sampling of rational points on `M` and on Segre varieties.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::{solve_triangular, Ideal, Limits, UniPoly};
use crate::manifold::{CRManifold, Point};
use crate::poly::{GaussianRational, Poly, VarTable};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SampleError {
    #[error("found {found} of {wanted} points ({method})")]
    Exhausted {
        found: usize,
        wanted: usize,
        method: String,
    },
}

pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rational(&mut self, bound: i64) -> GaussianRational {
        let n = self.rng.gen_range(-bound..=bound);
        let d = self.rng.gen_range(1..=bound);
        GaussianRational::from_ratio(n, d)
    }

    /// `a/b + (c/e) i` with every entry bounded by `bound`.
    pub fn gaussian(&mut self, bound: i64) -> GaussianRational {
        let re = self.rational(bound);
        let im = self.rational(bound);
        &re + &(&im * &GaussianRational::i())
    }

    pub fn point(&mut self, n: usize, bound: i64) -> Point {
        (0..n).map(|_| self.gaussian(bound)).collect()
    }

    /// `(1 - s^2 + 2 s i) / (1 + s^2)` for a random rational `s`.
    pub fn unimodular(&mut self) -> GaussianRational {
        let a = self.rng.gen_range(-12i64..=12);
        let b = self.rng.gen_range(1i64..=12);
        let den = a * a + b * b;
        GaussianRational::from_parts((b * b - a * a, den), (2 * a * b, den))
    }

    /// Points of `M`: rotations of the coordinates when `M` is torus
    /// invariant, and second intersections with real lines through known
    /// points for hypersurfaces. Seeds are found by solving along
    /// coordinate axes when none are given.
    pub fn points_on(&mut self, m: &CRManifold, seeds: &[Point], count: usize) -> Result<Vec<Point>, SampleError> {
        let mut pool: Vec<Point> = seeds.iter().filter(|p| m.contains(p)).cloned().collect();
        if pool.is_empty() {
            pool.extend(self.axis_seeds(m));
        }
        let mut out: Vec<Point> = Vec::new();
        let torus = m.is_torus_invariant();
        let hyper = m.d() == 1;
        if pool.is_empty() || (!torus && !hyper) {
            return Err(SampleError::Exhausted {
                found: 0,
                wanted: count,
                method: "axis seeds".into(),
            });
        }
        let mut attempts = 0;
        while out.len() < count && attempts < 60 * count + 100 {
            attempts += 1;
            let base = pool[self.rng.gen_range(0..pool.len())].clone();
            let mut candidate = None;
            if hyper && (!torus || self.rng.gen_bool(0.5)) {
                candidate = self.real_line(m, &base);
            }
            if candidate.is_none() && torus {
                candidate = Some(base.iter().map(|x| x * &self.unimodular()).collect());
            }
            if let Some(p) = candidate {
                if m.contains(&p) && !out.contains(&p) {
                    if pool.len() < 64 {
                        pool.push(p.clone());
                    }
                    out.push(p);
                }
            }
        }
        if out.len() < count {
            return Err(SampleError::Exhausted {
                found: out.len(),
                wanted: count,
                method: if torus { "torus rotation" } else { "real line" }.into(),
            });
        }
        Ok(out)
    }

    /// Points `x e_k` (other coordinates zero or small) with real `x`.
    fn axis_seeds(&mut self, m: &CRManifold) -> Vec<Point> {
        let n = m.holo().len();
        let mut out = Vec::new();
        for round in 0..4 {
            for k in 0..n {
                let base: Point = (0..n)
                    .map(|j| {
                        if j == k || round == 0 {
                            GaussianRational::zero()
                        } else {
                            GaussianRational::from_integer(self.rng.gen_range(-2..=2))
                        }
                    })
                    .collect();
                let mut dir = vec![GaussianRational::zero(); n];
                dir[k] = GaussianRational::one();
                for t in self.real_roots(m, &base, &dir) {
                    let p: Point = base.iter().zip(&dir).map(|(b, d)| b + &(d * &t)).collect();
                    if m.contains(&p) && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Real `t` with `p + t v` on `M` (hypersurfaces only).
    fn real_roots(&mut self, m: &CRManifold, p: &[GaussianRational], v: &[GaussianRational]) -> Vec<GaussianRational> {
        let t_table = VarTable::params(&["t"]).expect("single name");
        let t = Poly::var(&t_table, 0);
        let mut images = vec![Poly::zero(&t_table); m.table().len()];
        for (k, &h) in m.holo().iter().enumerate() {
            let c = m.table().partner(h).unwrap();
            images[h] = &Poly::constant(&t_table, p[k].clone()) + &t.scale(&v[k]);
            images[c] = &Poly::constant(&t_table, p[k].conj()) + &t.scale(&v[k].conj());
        }
        let q = match m.rho()[0].map_into(&t_table, &images) {
            Ok(q) => q,
            Err(_) => return Vec::new(),
        };
        if q.is_zero() {
            return vec![self.rational(9)];
        }
        let u = UniPoly::from_poly(&q, 0).expect("univariate");
        u.exact_roots()
            .unwrap_or_default()
            .into_iter()
            .filter(|r| r.is_real())
            .collect()
    }

    fn real_line(&mut self, m: &CRManifold, p: &[GaussianRational]) -> Option<Point> {
        let v = self.point(p.len(), 4);
        let roots = self.real_roots(m, p, &v);
        let t = roots.into_iter().find(|t| !t.is_zero())?;
        Some(p.iter().zip(&v).map(|(a, b)| a + &(b * &t)).collect())
    }

    /// Points of `Q_w`: fix all but `d` coordinates at random (or zero)
    /// and solve for the rest exactly; for hypersurfaces also take second
    /// intersections with complex lines through points already found.
    pub fn points_on_segre(
        &mut self,
        m: &CRManifold,
        w: &[GaussianRational],
        count: usize,
        limits: &Limits,
    ) -> Result<Vec<Point>, SampleError> {
        let n = m.holo().len();
        let d = m.d();
        let wbar: Point = w.iter().map(|x| x.conj()).collect();
        let values: HashMap<usize, GaussianRational> = m.conj().into_iter().zip(wbar).collect();
        let q: Vec<Poly> = m.rho().iter().map(|r| r.specialize(&values)).collect();
        let holo = m.holo().to_vec();
        let on = |z: &[GaussianRational]| {
            let v = m.values(z, &vec![GaussianRational::zero(); n]);
            q.iter().all(|g| g.eval_dense(&v).is_zero())
        };
        let mut out: Vec<Point> = Vec::new();
        let mut attempts = 0;
        while out.len() < count && attempts < 40 * count + 100 {
            attempts += 1;
            let from_line = d == 1 && !out.is_empty() && self.rng.gen_bool(0.6);
            let found = if from_line {
                let base = out[self.rng.gen_range(0..out.len())].clone();
                self.complex_line(m, &q, &base)
            } else {
                self.fix_and_solve(m, &q, &holo, limits)
            };
            for z in found {
                if out.len() < count && on(&z) && !out.contains(&z) {
                    out.push(z);
                }
            }
        }
        if out.len() < count {
            return Err(SampleError::Exhausted {
                found: out.len(),
                wanted: count,
                method: "coordinate slices and complex lines".into(),
            });
        }
        Ok(out)
    }

    fn fix_and_solve(&mut self, m: &CRManifold, q: &[Poly], holo: &[usize], limits: &Limits) -> Vec<Point> {
        let n = holo.len();
        let d = m.d().min(n);
        let mut free: Vec<usize> = (0..n).collect();
        for i in (1..free.len()).rev() {
            free.swap(i, self.rng.gen_range(0..=i));
        }
        let solved: Vec<usize> = free[..d].to_vec();
        let mut fixed: HashMap<usize, GaussianRational> = HashMap::new();
        let zero_bias = self.rng.gen_bool(0.3);
        for (k, &var) in holo.iter().enumerate() {
            if solved.contains(&k) {
                continue;
            }
            let v = if zero_bias && self.rng.gen_bool(0.5) {
                GaussianRational::zero()
            } else {
                self.gaussian(6)
            };
            fixed.insert(var, v);
        }
        let keep: Vec<usize> = solved.iter().map(|&k| holo[k]).collect();
        let sub: Arc<VarTable> = match m.table().restrict(&keep) {
            Ok(t) => t,
            Err(_) => return Vec::new(),
        };
        let gens: Vec<Poly> = match q.iter().map(|g| g.specialize(&fixed).embed(&sub)).collect() {
            Ok(g) => g,
            Err(_) => return Vec::new(),
        };
        let ideal = match Ideal::grevlex(&sub, gens) {
            Ok(i) => i,
            Err(_) => return Vec::new(),
        };
        let sols = match solve_triangular(&ideal, limits) {
            Ok(Some(s)) => s,
            _ => return Vec::new(),
        };
        let mut order = keep.clone();
        order.sort_unstable();
        sols.into_iter()
            .map(|s| {
                (0..n)
                    .map(|k| match fixed.get(&holo[k]) {
                        Some(v) => v.clone(),
                        None => s[order.iter().position(|&i| i == holo[k]).unwrap()].clone(),
                    })
                    .collect()
            })
            .collect()
    }

    fn complex_line(&mut self, m: &CRManifold, q: &[Poly], base: &[GaussianRational]) -> Vec<Point> {
        let t_table = VarTable::params(&["t"]).expect("single name");
        let t = Poly::var(&t_table, 0);
        let v = self.point(base.len(), 4);
        let mut images = vec![Poly::zero(&t_table); m.table().len()];
        for (k, &h) in m.holo().iter().enumerate() {
            images[h] = &Poly::constant(&t_table, base[k].clone()) + &t.scale(&v[k]);
        }
        let Ok(line) = q[0].map_into(&t_table, &images) else {
            return Vec::new();
        };
        if line.is_zero() {
            let s = self.gaussian(6);
            return vec![base.iter().zip(&v).map(|(a, b)| a + &(b * &s)).collect()];
        }
        let Some(roots) = UniPoly::from_poly(&line, 0).and_then(|u| u.exact_roots()) else {
            return Vec::new();
        };
        roots
            .into_iter()
            .filter(|r| !r.is_zero())
            .map(|s| base.iter().zip(&v).map(|(a, b)| a + &(b * &s)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::parse_manifold;
    use crate::segre::in_segre;

    #[test]
    fn unimodular_has_norm_one() {
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            assert!(s.unimodular().norm_sqr().is_one());
        }
    }

    #[test]
    fn points_on_catalog_like_manifolds() {
        let mut s = Sampler::new(DEFAULT_SEED);
        let ms = [
            CRManifold::affine(&["z1", "z2"], &["z1*~z1 + z2*~z2 - 1"]).unwrap(),
            CRManifold::affine(&["z1", "z2"], &["z1^2*~z1^2 + z2^2*~z2^2 - 1"]).unwrap(),
            CRManifold::affine(&["z1", "z2"], &["-1/2*i*z2 + 1/2*i*~z2"]).unwrap(),
            parse_manifold("vars z1 z2 z3\nrho: z1*~z1 - z2*~z2 - z3*~z3 + 1\n").unwrap(),
        ];
        for m in &ms {
            let pts = s.points_on(m, &[], 15).unwrap();
            assert_eq!(pts.len(), 15);
            assert!(pts.iter().all(|p| m.contains(p)));
        }
    }

    #[test]
    fn points_on_segre_varieties() {
        let mut s = Sampler::new(7);
        let limits = Limits::default();
        let m = CRManifold::affine(&["z1", "z2"], &["z1^2*~z1^2 + z2^2*~z2^2 - 1"]).unwrap();
        let w = vec![
            GaussianRational::from_parts((30, 97), (78, 97)),
            GaussianRational::from_parts((68, 97), (41, 97)),
        ];
        let zs = s.points_on_segre(&m, &w, 12, &limits).unwrap();
        assert!(zs.iter().all(|z| in_segre(&m, z, &w)));
        let sphere = CRManifold::affine(&["z1", "z2"], &["z1*~z1 + z2*~z2 - 1"]).unwrap();
        let w = s.point(2, 5);
        let zs = s.points_on_segre(&sphere, &w, 12, &limits).unwrap();
        assert!(zs.iter().all(|z| in_segre(&sphere, z, &w)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let m = CRManifold::affine(&["z1", "z2"], &["z1*~z1 + z2*~z2 - 1"]).unwrap();
        let a = Sampler::new(3).points_on(&m, &[], 5).unwrap();
        let b = Sampler::new(3).points_on(&m, &[], 5).unwrap();
        assert_eq!(a, b);
    }
}
