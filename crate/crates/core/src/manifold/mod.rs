//! Real-algebraic CR submanifolds: reality and genericity checks, the polar
//! (complexification), homogeneous coordinates, and the Levi form.

mod file;
mod levi;
pub mod linalg;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::ideal::{EngineError, Ideal, MonomialOrder};
use crate::poly::{GaussianRational, Monomial, Poly, PolyError, VarTable};
pub use file::{parse_manifold, parse_map_file, MapFile};
pub use levi::{default_conormal_grid, LeviReport, ProbeReport, ProbeSample};
use linalg::Matrix;

/// A point of `C^n` with Gaussian-rational coordinates.
pub type Point = Vec<GaussianRational>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ManifoldError {
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error("defining polynomial {0} is not real")]
    NotReal(usize),
    #[error("point is not on the manifold ({0} defining polynomials nonzero)")]
    NotOnManifold(usize),
    #[error("point has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("chart index {0} out of range")]
    BadChart(usize),
    #[error("degenerate holomorphic tangent space: rank {rank} < codimension {d}")]
    RankDrop { rank: usize, d: usize },
    #[error("conormal must be real and nonzero with {0} entries")]
    BadConormal(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Chart {
    /// Affine coordinates. `homogenizing` remembers which homogeneous
    /// coordinate (position, name) was set to 1, if any.
    Affine { homogenizing: Option<(usize, String)> },
    /// Homogeneous coordinates; computations use the chart where the
    /// coordinate at `chart` equals 1.
    Projective { chart: usize },
}

/// `M = {rho_1 = ... = rho_d = 0}` with each `rho_j` a real polynomial in
/// `(z, ~z)`.
#[derive(Clone, Debug)]
pub struct CRManifold {
    table: Arc<VarTable>,
    rho: Vec<Poly>,
    chart: Chart,
    holo: Vec<usize>,
}

/// `M^c = {(z, zeta) : rho_j(z, zeta) = 0}` with `zeta` the conjugate block
/// treated as independent variables.
#[derive(Clone, Debug)]
pub struct PolarVariety {
    pub ideal: Ideal,
}

impl PolarVariety {
    /// Conjugating the generators permutes them.
    pub fn is_symmetric(&self) -> bool {
        let gens = self.ideal.generators();
        gens.iter()
            .all(|g| g.conjugate().is_ok_and(|c| gens.contains(&c)))
    }
}

impl CRManifold {
    /// `table` must pair every holomorphic variable with a conjugate.
    pub fn new(table: &Arc<VarTable>, rho: Vec<Poly>, chart: Chart) -> Result<Self, ManifoldError> {
        let holo = table.holo_indices();
        if holo.iter().any(|&i| table.partner(i).is_none()) {
            return Err(PolyError::BadTable("every coordinate needs a conjugate".into()).into());
        }
        if let Chart::Projective { chart } = chart {
            if chart >= holo.len() {
                return Err(ManifoldError::BadChart(chart));
            }
        }
        let rho = rho.into_iter().map(|r| r.embed(table)).collect::<Result<_, _>>()?;
        Ok(Self {
            table: table.clone(),
            rho,
            chart,
            holo,
        })
    }

    /// Affine manifold from coordinate names and polynomial sources.
    pub fn affine<S: AsRef<str>>(coords: &[S], rho: &[&str]) -> Result<Self, ManifoldError> {
        let table = VarTable::with_conjugates(coords)?;
        let rho = rho
            .iter()
            .map(|s| crate::poly::parse_poly(s, &table))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&table, rho, Chart::Affine { homogenizing: None })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn rho(&self) -> &[Poly] {
        &self.rho
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Table indices of the holomorphic coordinates, in coordinate order.
    pub fn holo(&self) -> &[usize] {
        &self.holo
    }

    /// Table indices of the conjugate coordinates, in coordinate order.
    pub fn conj(&self) -> Vec<usize> {
        self.holo.iter().map(|&i| self.table.partner(i).unwrap()).collect()
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        self.holo.iter().map(|&i| self.table.name(i).to_string()).collect()
    }

    /// Ambient complex dimension.
    pub fn n(&self) -> usize {
        match self.chart {
            Chart::Projective { .. } => self.holo.len() - 1,
            Chart::Affine { .. } => self.holo.len(),
        }
    }

    /// CR codimension.
    pub fn d(&self) -> usize {
        self.rho.len()
    }

    /// CR dimension.
    pub fn m(&self) -> usize {
        self.n().saturating_sub(self.d())
    }

    pub fn check_reality(&self) -> bool {
        self.rho.iter().all(|r| r.is_real())
    }

    fn require_real(&self) -> Result<(), ManifoldError> {
        match self.rho.iter().position(|r| !r.is_real()) {
            Some(j) => Err(ManifoldError::NotReal(j)),
            None => Ok(()),
        }
    }

    /// Manifold in affine coordinates (dehomogenized at its chart when
    /// given projectively).
    pub fn to_affine(&self) -> Result<CRManifold, ManifoldError> {
        match self.chart {
            Chart::Projective { chart } => self.dehomogenize(chart),
            Chart::Affine { .. } => Ok(self.clone()),
        }
    }

    /// Dense values for the table: `z` on holomorphic slots and `zbar` on
    /// conjugate slots.
    pub fn values(&self, z: &[GaussianRational], zbar: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); self.table.len()];
        for (k, &i) in self.holo.iter().enumerate() {
            v[i] = z[k].clone();
            v[self.table.partner(i).unwrap()] = zbar[k].clone();
        }
        v
    }

    pub fn check_point(&self, p: &[GaussianRational]) -> Result<(), ManifoldError> {
        if p.len() != self.holo.len() {
            return Err(ManifoldError::Dimension {
                expected: self.holo.len(),
                got: p.len(),
            });
        }
        Ok(())
    }

    /// `rho_j(p, conj p)` for each `j`.
    pub fn defining_values(&self, p: &[GaussianRational]) -> Vec<GaussianRational> {
        let pbar: Point = p.iter().map(|x| x.conj()).collect();
        let v = self.values(p, &pbar);
        self.rho.iter().map(|r| r.eval_dense(&v)).collect()
    }

    pub fn contains(&self, p: &[GaussianRational]) -> bool {
        self.defining_values(p).iter().all(|x| x.is_zero())
    }

    pub(crate) fn require_on(&self, p: &[GaussianRational]) -> Result<(), ManifoldError> {
        self.check_point(p)?;
        let bad = self.defining_values(p).iter().filter(|x| !x.is_zero()).count();
        if bad > 0 {
            return Err(ManifoldError::NotOnManifold(bad));
        }
        Ok(())
    }

    /// `d x n` matrix of `d rho_j / d ~z_k` (or `d / d z_k` when
    /// `holomorphic`) at `p`.
    pub(crate) fn gradient_matrix(&self, p: &[GaussianRational], holomorphic: bool) -> Matrix {
        let pbar: Point = p.iter().map(|x| x.conj()).collect();
        let v = self.values(p, &pbar);
        let vars: Vec<usize> = if holomorphic { self.holo.clone() } else { self.conj() };
        Matrix::from_rows(
            self.rho
                .iter()
                .map(|r| vars.iter().map(|&k| r.derivative(k).eval_dense(&v)).collect())
                .collect(),
        )
    }

    /// Rank of the antiholomorphic gradients at a point of `M`; the
    /// manifold is generic at `p` iff this equals `d`.
    pub fn genericity_rank(&self, p: &[GaussianRational]) -> Result<usize, ManifoldError> {
        self.require_on(p)?;
        Ok(self.gradient_matrix(p, false).rank())
    }

    pub fn polar(&self) -> Result<PolarVariety, ManifoldError> {
        self.require_real()?;
        Ok(PolarVariety {
            ideal: Ideal::new(&self.table, self.rho.clone(), MonomialOrder::Grevlex)?,
        })
    }

    /// Bihomogenization in `(z0, z, ~z0, ~z)`.
    pub fn homogenize(&self) -> Result<CRManifold, ManifoldError> {
        let (pos, name) = match &self.chart {
            Chart::Projective { .. } => return Ok(self.clone()),
            Chart::Affine { homogenizing: Some((pos, name)) } => (*pos, name.clone()),
            Chart::Affine { homogenizing: None } => (0, self.table.fresh_name("z0")),
        };
        let mut names = self.coordinate_names();
        names.insert(pos.min(names.len()), name.clone());
        let table = VarTable::with_conjugates(&names)?;
        let h0 = table.index_of(&name).unwrap();
        let c0 = table.partner(h0).unwrap();
        let holo = self.holo.clone();
        let conj = self.conj();
        let mut rho = Vec::new();
        for r in &self.rho {
            let a = r.degree_in_block(&holo);
            let b = r.degree_in_block(&conj);
            let lifted = r.embed(&table)?;
            let terms = lifted.terms().iter().map(|(m, c)| {
                let mut e = m.0.clone();
                let da: u32 = holo.iter().map(|&k| m.0[table.index_of(self.table.name(k)).unwrap()]).sum();
                let db: u32 = conj.iter().map(|&k| m.0[table.index_of(self.table.name(k)).unwrap()]).sum();
                e[h0] += a - da;
                e[c0] += b - db;
                (Monomial(e), c.clone())
            });
            rho.push(Poly::from_terms(&table, terms));
        }
        CRManifold::new(&table, rho, Chart::Projective { chart: pos })
    }

    /// Sets homogeneous coordinate `chart` (and its conjugate) to 1.
    pub fn dehomogenize(&self, chart: usize) -> Result<CRManifold, ManifoldError> {
        if chart >= self.holo.len() {
            return Err(ManifoldError::BadChart(chart));
        }
        let h = self.holo[chart];
        let c = self.table.partner(h).unwrap();
        let name = self.table.name(h).to_string();
        let keep: Vec<String> = self
            .coordinate_names()
            .into_iter()
            .filter(|n| *n != name)
            .collect();
        let table = VarTable::with_conjugates(&keep)?;
        let one = GaussianRational::one();
        let values: HashMap<usize, GaussianRational> = [(h, one.clone()), (c, one)].into_iter().collect();
        let rho = self
            .rho
            .iter()
            .map(|r| r.specialize(&values).embed(&table))
            .collect::<Result<Vec<_>, _>>()?;
        CRManifold::new(
            &table,
            rho,
            Chart::Affine {
                homogenizing: Some((chart, name)),
            },
        )
    }

    /// Torus-invariant: every term has equal exponents on each `z_k` and
    /// `~z_k`, so rotating coordinates by unit scalars preserves `M`.
    pub fn is_torus_invariant(&self) -> bool {
        let conj = self.conj();
        self.rho.iter().all(|r| {
            r.terms()
                .iter()
                .all(|(m, _)| self.holo.iter().zip(&conj).all(|(&h, &c)| m.0[h] == m.0[c]))
        })
    }
}
