//! Ready-made example manifolds and maps with expected values, the suite
//! that recomputes them, and a floating-point cross-check.

mod oracle;
mod suite;

use serde::{Deserialize, Serialize};

use crate::correspondence::AlgebraicMap;
use crate::manifold::{parse_manifold, parse_map_file, CRManifold, ManifoldError, Point};
use crate::poly::{parse_constant, GaussianRational};
pub use oracle::{numeric_oracle, NumericReport, OracleOptions};
pub use suite::{run_suite, Check, SuiteOptions, SuiteReport};

const FILES: &[(&str, &str)] = &[
    ("sphere_C2.crm", include_str!("../../catalog/sphere_C2.crm")),
    ("power_r2_n2.crm", include_str!("../../catalog/power_r2_n2.crm")),
    ("hyperquadric_k1_n3.crm", include_str!("../../catalog/hyperquadric_k1_n3.crm")),
    ("tube_C2.crm", include_str!("../../catalog/tube_C2.crm")),
    ("cylinder_C2.crm", include_str!("../../catalog/cylinder_C2.crm")),
    ("identity_2.map", include_str!("../../catalog/identity_2.map")),
    ("rotation.map", include_str!("../../catalog/rotation.map")),
    ("unitary.map", include_str!("../../catalog/unitary.map")),
    ("square.map", include_str!("../../catalog/square.map")),
];

const MANIFEST: &str = include_str!("../../catalog/catalog.toml");

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Definition,
    Computed,
    Published,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub source: Source,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub genericity_rank: Option<Tagged<usize>>,
    pub levi: Option<Tagged<[usize; 3]>>,
    pub pseudoconcave: Option<Tagged<bool>>,
    pub essentially_finite: Option<Tagged<bool>>,
    pub essential_degree: Option<Tagged<u64>>,
    pub minimal: Option<Tagged<bool>>,
    pub j0: Option<Tagged<usize>>,
    pub locally_injective: Option<Tagged<bool>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapExpected {
    pub invariance: Option<Tagged<bool>>,
    pub forward_degree: Option<Tagged<u64>>,
    pub reverse_degree: Option<Tagged<u64>>,
    pub splits: Option<Tagged<bool>>,
    pub branch_splits: Option<Tagged<bool>>,
    pub complete: Option<Tagged<bool>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    file: String,
    from: String,
    to: String,
    #[serde(default)]
    transpose: bool,
    #[serde(default)]
    branch_points: Vec<Vec<String>>,
    expected: MapExpected,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    description: String,
    manifold: String,
    #[serde(default)]
    charts: Vec<usize>,
    points: Vec<Vec<String>>,
    conormal: Vec<String>,
    expected: Expected,
    #[serde(default, rename = "map")]
    maps: Vec<RawMap>,
}

#[derive(Deserialize)]
struct Manifest {
    entry: Vec<RawEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog manifest: {0}")]
    Manifest(String),
    #[error("no catalog file `{0}`")]
    MissingFile(String),
    #[error("{file}: {source}")]
    Manifold { file: String, source: ManifoldError },
    #[error("bad value `{0}`")]
    Value(String),
    #[error("map `{0}`: {1}")]
    Map(String, String),
    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),
}

/// A map of the catalog. The correspondence studied is the one built from
/// `map : from -> to`, transposed when `transpose` is set, so that its
/// source is the entry's manifold.
#[derive(Clone, Debug)]
pub struct CatalogMap {
    pub name: String,
    pub file: String,
    pub map: AlgebraicMap,
    pub from: CRManifold,
    pub to: CRManifold,
    pub transpose: bool,
    pub branch_points: Vec<Point>,
    pub expected: MapExpected,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub manifold_file: String,
    /// As written in the file (possibly projective).
    pub manifold: CRManifold,
    /// Extra affine charts to probe, for projective manifolds.
    pub charts: Vec<usize>,
    /// Points of the affine manifold.
    pub points: Vec<Point>,
    pub conormal: Vec<GaussianRational>,
    pub expected: Expected,
    pub maps: Vec<CatalogMap>,
}

impl CatalogEntry {
    pub fn affine(&self) -> CRManifold {
        self.manifold.to_affine().expect("validated on load")
    }
}

/// Contents of an embedded catalog file.
pub fn catalog_file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn catalog_files() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

fn manifold(file: &str) -> Result<CRManifold, CatalogError> {
    let src = catalog_file(file).ok_or_else(|| CatalogError::MissingFile(file.into()))?;
    let m = parse_manifold(src).map_err(|source| CatalogError::Manifold {
        file: file.into(),
        source,
    })?;
    m.to_affine().map_err(|source| CatalogError::Manifold {
        file: file.into(),
        source,
    })?;
    Ok(m)
}

fn point(values: &[String]) -> Result<Point, CatalogError> {
    values
        .iter()
        .map(|v| parse_constant(v).map_err(|_| CatalogError::Value(v.clone())))
        .collect()
}

fn load_map(raw: RawMap, entry_file: &str) -> Result<CatalogMap, CatalogError> {
    let src = catalog_file(&raw.file).ok_or_else(|| CatalogError::MissingFile(raw.file.clone()))?;
    let parsed = parse_map_file(src).map_err(|source| CatalogError::Manifold {
        file: raw.file.clone(),
        source,
    })?;
    let map = AlgebraicMap::from_file(&parsed).map_err(|e| CatalogError::Map(raw.name.clone(), e.to_string()))?;
    let studied_source = if raw.transpose { &raw.to } else { &raw.from };
    if studied_source != entry_file {
        return Err(CatalogError::Map(
            raw.name,
            format!("correspondence starts on `{studied_source}`, not on `{entry_file}`"),
        ));
    }
    Ok(CatalogMap {
        from: manifold(&raw.from)?,
        to: manifold(&raw.to)?,
        branch_points: raw.branch_points.iter().map(|p| point(p)).collect::<Result<_, _>>()?,
        name: raw.name,
        file: raw.file,
        map,
        transpose: raw.transpose,
        expected: raw.expected,
    })
}

/// Parses the embedded manifest and every file it names. Every manifold
/// must be real and every listed point must lie on it.
pub fn load_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    let manifest: Manifest = toml::from_str(MANIFEST).map_err(|e| CatalogError::Manifest(e.to_string()))?;
    let mut out = Vec::new();
    for raw in manifest.entry {
        let m = manifold(&raw.manifold)?;
        if !m.check_reality() {
            return Err(CatalogError::Manifold {
                file: raw.manifold,
                source: ManifoldError::NotReal(0),
            });
        }
        let affine = m.to_affine().expect("checked in manifold()");
        let points: Vec<Point> = raw.points.iter().map(|p| point(p)).collect::<Result<_, _>>()?;
        if let Some(bad) = points.iter().position(|p| affine.check_point(p).is_err() || !affine.contains(p)) {
            return Err(CatalogError::Value(format!("{}: point {} is not on the manifold", raw.name, bad)));
        }
        let maps = raw
            .maps
            .into_iter()
            .map(|r| load_map(r, &raw.manifold))
            .collect::<Result<_, _>>()?;
        out.push(CatalogEntry {
            conormal: point(&raw.conormal)?,
            name: raw.name,
            description: raw.description,
            manifold_file: raw.manifold,
            manifold: m,
            charts: raw.charts,
            points,
            expected: raw.expected,
            maps,
        });
    }
    Ok(out)
}

pub fn find_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    load_catalog()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownEntry(name.into()))
}
