use std::fmt::Display;

use segrekit_core::catalog::CatalogError;
use segrekit_core::{CorrespondenceError, EngineError, ManifoldError, PolyError, SegreError};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Inputs {
    pub files: Vec<InputFile>,
    /// SHA-256 over the command line and every input file, in order.
    pub digest: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitsEcho {
    pub max_degree: u32,
    pub max_basis: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub inputs: Inputs,
    pub seed: u64,
    pub limits: LimitsEcho,
    pub status: &'static str,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub results: Value,
    /// Polynomials whose zero sets the reported results exclude.
    pub excluded: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Value>,
}

pub fn status_name(code: u8) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_MISMATCH => "mismatch",
        EXIT_INPUT => "input-error",
        _ => "inconclusive",
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn digest(command: &[String], files: &[(String, String)]) -> Inputs {
    let mut h = Sha256::new();
    for arg in command {
        h.update(arg.as_bytes());
        h.update([0u8]);
    }
    let mut out = Vec::new();
    for (path, contents) in files {
        h.update(contents.as_bytes());
        h.update([0u8]);
        out.push(InputFile {
            path: path.clone(),
            sha256: sha256_hex(contents.as_bytes()),
        });
    }
    Inputs {
        files: out,
        digest: format!("{:x}", h.finalize()),
    }
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Display) -> Self {
        Self { code: EXIT_INPUT, message: message.to_string() }
    }

    pub fn inconclusive(message: impl Display) -> Self {
        Self { code: EXIT_INCONCLUSIVE, message: message.to_string() }
    }

    pub fn mismatch(message: impl Display) -> Self {
        Self { code: EXIT_MISMATCH, message: message.to_string() }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::input(e)
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Poly(p) => p.into(),
            other => Failure::inconclusive(other),
        }
    }
}

impl From<ManifoldError> for Failure {
    fn from(e: ManifoldError) -> Self {
        match e {
            ManifoldError::Engine(x) => x.into(),
            other => Failure::input(other),
        }
    }
}

impl From<SegreError> for Failure {
    fn from(e: SegreError) -> Self {
        match e {
            SegreError::Manifold(x) => x.into(),
            SegreError::Engine(x) => x.into(),
            SegreError::Poly(x) => x.into(),
            SegreError::Inconclusive { .. } => Failure::inconclusive(e),
            other => Failure::input(other),
        }
    }
}

impl From<CorrespondenceError> for Failure {
    fn from(e: CorrespondenceError) -> Self {
        match e {
            CorrespondenceError::Segre(x) => x.into(),
            CorrespondenceError::Engine(x) => x.into(),
            CorrespondenceError::Poly(x) => x.into(),
            CorrespondenceError::Manifold(x) => x.into(),
            CorrespondenceError::Sample(_) | CorrespondenceError::PositiveDimensionalFiber(_) => {
                Failure::inconclusive(e)
            }
            CorrespondenceError::EmptyGraph(_) => Failure::mismatch(e),
            other => Failure::input(other),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::input(e)
    }
}
