//! Exact multivariate polynomials over the Gaussian rationals.

mod coeff;
mod monomial;
mod parse;
mod polynomial;
mod vars;

pub use coeff::GaussianRational;
pub use monomial::Monomial;
pub(crate) use monomial::{grevlex_cmp, lex_cmp};
pub use parse::{parse_constant, parse_poly};
pub use polynomial::Poly;
pub use vars::{VarKind, VarTable, VarTableBuilder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no conjugate partner")]
    NoConjugate(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("polynomials live over incompatible variable tables")]
    TableMismatch,
    #[error("invalid variable table: {0}")]
    BadTable(String),
}
