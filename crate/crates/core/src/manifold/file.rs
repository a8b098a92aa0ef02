//! Text formats for manifolds and maps.
//!
//! Manifold file:
//!
//! ```text
//! # comment
//! vars z1 z2            # or a range: vars z1..z2
//! rho: z1*~z1 + z2*~z2 - 1
//! chart: projective 0   # optional; homogeneous coordinates, chart z0 = 1
//! ```
//!
//! Map file: a `vars` line followed by one `f:` line per component. A
//! rational component is written `f: <numerator> over <denominator>`.

use std::sync::Arc;

use super::{CRManifold, Chart, ManifoldError};
use crate::poly::{parse_poly, Poly, VarTable};

fn err(line: usize, message: impl Into<String>) -> ManifoldError {
    ManifoldError::File {
        line,
        message: message.into(),
    }
}

fn parse_vars(list: &str, line: usize) -> Result<Vec<String>, ManifoldError> {
    let mut out = Vec::new();
    for tok in list.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        if let Some((a, b)) = tok.split_once("..") {
            let split = |s: &str| {
                let k = s.find(|c: char| c.is_ascii_digit())?;
                Some((s[..k].to_string(), s[k..].parse::<usize>().ok()?))
            };
            let (pa, ia) = split(a).ok_or_else(|| err(line, format!("bad range `{tok}`")))?;
            let (pb, ib) = split(b).ok_or_else(|| err(line, format!("bad range `{tok}`")))?;
            if pa != pb || ib < ia {
                return Err(err(line, format!("bad range `{tok}`")));
            }
            out.extend((ia..=ib).map(|i| format!("{pa}{i}")));
        } else {
            if !tok.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') || tok == "i" {
                return Err(err(line, format!("invalid variable name `{tok}`")));
            }
            out.push(tok.to_string());
        }
    }
    if out.is_empty() {
        return Err(err(line, "`vars` needs at least one name"));
    }
    Ok(out)
}

struct Lines<'a> {
    items: Vec<(usize, &'a str, &'a str)>,
}

/// Splits into (line number, key, value) for `key: value` or `vars ...`.
fn lines(src: &str) -> Result<Lines<'_>, ManifoldError> {
    let mut items = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let n = i + 1;
        let text = raw.split('#').next().unwrap().trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("vars") {
            if rest.starts_with(|c: char| c.is_whitespace() || c == ':') {
                items.push((n, "vars", rest.trim_start_matches(':').trim()));
                continue;
            }
        }
        let (k, v) = text
            .split_once(':')
            .ok_or_else(|| err(n, format!("expected `key: value`, got `{text}`")))?;
        items.push((n, k.trim(), v.trim()));
    }
    Ok(Lines { items })
}

fn table_from(ls: &Lines<'_>) -> Result<Arc<VarTable>, ManifoldError> {
    let mut vars = None;
    for &(n, k, v) in &ls.items {
        if k == "vars" {
            if vars.is_some() {
                return Err(err(n, "duplicate `vars` line"));
            }
            vars = Some(parse_vars(v, n)?);
        }
    }
    let vars = vars.ok_or_else(|| err(1, "missing `vars` line"))?;
    VarTable::with_conjugates(&vars).map_err(|e| err(1, e.to_string()))
}

/// Parses a manifold definition file; the result is checked for reality.
pub fn parse_manifold(src: &str) -> Result<CRManifold, ManifoldError> {
    let ls = lines(src)?;
    let table = table_from(&ls)?;
    let mut rho = Vec::new();
    let mut chart = Chart::Affine { homogenizing: None };
    for &(n, k, v) in &ls.items {
        match k {
            "vars" | "name" => {}
            "rho" => {
                let p = parse_poly(v, &table).map_err(|e| err(n, e.to_string()))?;
                if p.is_zero() {
                    return Err(err(n, "defining polynomial is zero"));
                }
                if !p.is_real() {
                    return Err(err(n, "defining polynomial is not real"));
                }
                rho.push(p);
            }
            "chart" => {
                let words: Vec<&str> = v.split_whitespace().collect();
                chart = match words.as_slice() {
                    ["affine"] => Chart::Affine { homogenizing: None },
                    ["projective", idx] => Chart::Projective {
                        chart: idx.parse().map_err(|_| err(n, format!("bad chart index `{idx}`")))?,
                    },
                    _ => return Err(err(n, format!("bad chart `{v}`"))),
                };
            }
            other => return Err(err(n, format!("unknown key `{other}`"))),
        }
    }
    if rho.is_empty() {
        return Err(err(ls.items.last().map_or(1, |x| x.0), "no `rho:` lines"));
    }
    let line_of_chart = ls.items.iter().find(|x| x.1 == "chart").map_or(1, |x| x.0);
    CRManifold::new(&table, rho, chart).map_err(|e| match e {
        ManifoldError::BadChart(i) => err(line_of_chart, format!("chart index {i} out of range")),
        other => other,
    })
}

/// A polynomial or rational map read from a map file.
#[derive(Clone, Debug)]
pub struct MapFile {
    pub table: Arc<VarTable>,
    /// (numerator, denominator) per component.
    pub components: Vec<(Poly, Poly)>,
}

pub fn parse_map_file(src: &str) -> Result<MapFile, ManifoldError> {
    let ls = lines(src)?;
    let table = table_from(&ls)?;
    let mut components = Vec::new();
    for &(n, k, v) in &ls.items {
        match k {
            "vars" | "name" => {}
            "f" => {
                let (num, den) = match v.split_once(" over ") {
                    Some((a, b)) => (a, b),
                    None => (v, "1"),
                };
                let num = parse_poly(num, &table).map_err(|e| err(n, e.to_string()))?;
                let den = parse_poly(den, &table).map_err(|e| err(n, e.to_string()))?;
                if den.is_zero() {
                    return Err(err(n, "zero denominator"));
                }
                let holo_only = |p: &Poly| p.variables().iter().all(|&i| table.kind(i) == crate::poly::VarKind::Holo);
                if !holo_only(&num) || !holo_only(&den) {
                    return Err(err(n, "map components must be holomorphic (no `~` variables)"));
                }
                components.push((num, den));
            }
            other => return Err(err(n, format!("unknown key `{other}`"))),
        }
    }
    if components.is_empty() {
        return Err(err(1, "no `f:` lines"));
    }
    Ok(MapFile { table, components })
}
