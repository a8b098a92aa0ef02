//! Fixtures shared by the benchmarks.

use segrekit_core::catalog::find_entry;
use segrekit_core::{parse_poly, AlgebraicMap, CRManifold, Ideal, VarTable};

pub fn catalog_manifold(name: &str) -> CRManifold {
    find_entry(name).expect("catalog entry").affine()
}

pub fn square_map() -> AlgebraicMap {
    AlgebraicMap::polynomial(&["z1", "z2"], &["z1^2", "z2^2"]).expect("valid map")
}

/// Cyclic `n`-roots system, a standard Groebner basis workload.
pub fn cyclic(n: usize) -> Ideal {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let table = names
        .iter()
        .fold(VarTable::builder(), |b, x| b.holo(x))
        .build()
        .expect("distinct names");
    let mut gens = Vec::new();
    for d in 1..n {
        let terms: Vec<String> = (0..n)
            .map(|s| (0..d).map(|k| names[(s + k) % n].clone()).collect::<Vec<_>>().join("*"))
            .collect();
        gens.push(terms.join(" + "));
    }
    gens.push(format!("{} - 1", names.join("*")));
    let polys = gens.iter().map(|g| parse_poly(g, &table).expect("valid polynomial")).collect();
    Ideal::grevlex(&table, polys).expect("same table")
}
