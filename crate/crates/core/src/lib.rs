//! Exact computations with Segre varieties of real-algebraic CR
//! submanifolds and the holomorphic correspondences built from them.

pub mod catalog;
pub mod correspondence;
pub mod ideal;
pub mod manifold;
pub mod poly;
pub mod sample;
pub mod segre;

pub use correspondence::{AlgebraicMap, Containment, Correspondence, CorrespondenceError};
pub use ideal::{EngineError, GbStats, Ideal, Limits, MonomialOrder};
pub use manifold::{CRManifold, Chart, ManifoldError, Point};
pub use poly::{parse_constant, parse_poly, GaussianRational, Poly, PolyError, VarTable};
pub use sample::{Sampler, DEFAULT_SEED};
pub use segre::{SegreError, SegreParam};
