use std::fmt::Debug;

use serde::Serialize;

use super::{numeric_oracle, CatalogEntry, CatalogMap, OracleOptions, Source, Tagged};
use crate::correspondence::{build_correspondence, verify_invariance, Correspondence};
use crate::ideal::{dimension, distinct_solution_count, Ideal, Limits};
use crate::manifold::{default_conormal_grid, CRManifold, Point};
use crate::sample::{Sampler, DEFAULT_SEED};
use crate::segre::{
    check_symmetry, default_j_max, essential_finiteness, in_segre, inversion_set, minimality,
    segre_map_locally_injective, SegreParam,
};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub limits: Limits,
    /// Sampled points per randomized check.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            limits: Limits::default(),
            samples: 10,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub source: Source,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub entry: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub mismatches: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    fn record<T: Debug + PartialEq>(&mut self, name: &str, expected: &Tagged<T>, actual: Result<T, String>) {
        let (ok, actual) = match actual {
            Ok(a) => (a == expected.value, format!("{a:?}")),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            self.mismatches += 1;
        }
        self.checks.push(Check {
            name: name.into(),
            expected: format!("{:?}", expected.value),
            actual,
            source: expected.source,
            ok,
        });
    }

    fn record_opt<T: Debug + PartialEq>(&mut self, name: &str, expected: &Option<Tagged<T>>, actual: impl FnOnce() -> Result<T, String>) {
        if let Some(e) = expected {
            self.record(name, e, actual());
        }
    }
}

fn holds(v: bool) -> Tagged<bool> {
    Tagged {
        value: v,
        source: Source::Definition,
    }
}

/// Exact distinct count against the numeric root count.
fn oracle_agrees(ideal: &Ideal, limits: &Limits, seed: u64) -> Result<bool, String> {
    if dimension(ideal, limits).map_err(|e| e.to_string())? != 0 {
        return Ok(true);
    }
    let exact = distinct_solution_count(ideal, limits).map_err(|e| e.to_string())?;
    let opts = OracleOptions {
        seed,
        ..OracleOptions::default()
    };
    let basis = ideal.reduced_basis(limits).map_err(|e| e.to_string())?;
    let numeric = numeric_oracle(&basis, &opts);
    Ok(numeric.count as u64 == exact && numeric.max_residual <= opts.tolerance)
}

fn symmetry_trials(m: &CRManifold, sampler: &mut Sampler, limits: &Limits) -> Result<bool, String> {
    let n = m.holo().len();
    let mut ok = true;
    for _ in 0..150 {
        let z = sampler.point(n, 6);
        let w = sampler.point(n, 6);
        ok &= check_symmetry(m, &z, &w);
        ok &= in_segre(m, &z, &z) == m.contains(&z);
    }
    let ws = sampler.points_on(m, &[], 5).map_err(|e| e.to_string())?;
    for w in &ws {
        ok &= in_segre(m, w, w);
        for z in sampler.points_on_segre(m, w, 10, limits).map_err(|e| e.to_string())? {
            ok &= in_segre(m, &z, w) && in_segre(m, w, &z);
        }
    }
    Ok(ok)
}

fn studied(map: &CatalogMap, limits: &Limits) -> Result<Correspondence, String> {
    let c = build_correspondence(
        &map.from.to_affine().map_err(|e| e.to_string())?,
        &map.to.to_affine().map_err(|e| e.to_string())?,
        &map.map,
        limits,
    )
    .map_err(|e| e.to_string())?;
    if map.transpose {
        c.transpose(limits).map_err(|e| e.to_string())
    } else {
        Ok(c)
    }
}

fn run_map(report: &mut SuiteReport, map: &CatalogMap, p: &Point, opts: &SuiteOptions, sampler: &mut Sampler) {
    let l = &opts.limits;
    let prefix = format!("map {}: ", map.name);
    let ex = &map.expected;
    report.record_opt(&format!("{prefix}invariance"), &ex.invariance, || {
        let from = map.from.to_affine().map_err(|e| e.to_string())?;
        let to = map.to.to_affine().map_err(|e| e.to_string())?;
        let r = verify_invariance(&from, &to, &map.map, opts.samples, 5, sampler, l).map_err(|e| e.to_string())?;
        Ok(r.all_passed())
    });
    let c = match studied(map, l) {
        Ok(c) => c,
        Err(e) => {
            report.record(&format!("{prefix}correspondence"), &holds(true), Err(e));
            return;
        }
    };
    let fiber = c.fiber(p, l).map_err(|e| e.to_string());
    report.record_opt(&format!("{prefix}forward_degree"), &ex.forward_degree, || {
        fiber.as_ref().map(|f| f.degree).map_err(Clone::clone)
    });
    if let Some(fd) = &ex.forward_degree {
        let generic = sampler.points_on(&c.source, &[], opts.samples).map_err(|e| e.to_string()).and_then(|ws| {
            let mut all = true;
            for w in ws {
                all &= c.fiber(&w, l).map_err(|e| e.to_string())?.degree == fd.value;
            }
            Ok(all)
        });
        report.record(&format!("{prefix}forward_degree_constant"), &holds(true), generic);
    }
    report.record_opt(&format!("{prefix}complete"), &ex.complete, || {
        fiber.as_ref().map(|f| f.complete == Some(true)).map_err(Clone::clone)
    });
    report.record_opt(&format!("{prefix}reverse_degree"), &ex.reverse_degree, || {
        let t = c.transpose(l).map_err(|e| e.to_string())?;
        t.fiber_degree.ok_or_else(|| "no zero-dimensional generic fiber".to_string())
    });
    report.record_opt(&format!("{prefix}splits"), &ex.splits, || {
        c.splits_at(p, l).map(|s| s.splits).map_err(|e| e.to_string())
    });
    report.record_opt(&format!("{prefix}branch_splits"), &ex.branch_splits, || {
        let mut any = false;
        for q in &map.branch_points {
            any |= c.splits_at(q, l).map_err(|e| e.to_string())?.splits;
        }
        Ok(any)
    });
    let agrees = c.fiber_ideal(p).map_err(|e| e.to_string()).and_then(|i| oracle_agrees(&i, l, opts.seed));
    report.record(&format!("{prefix}fiber_numeric_agreement"), &holds(true), agrees);
}

/// Recomputes every expected value of `entry` and the sampled invariants.
pub fn run_suite(entry: &CatalogEntry, opts: &SuiteOptions) -> SuiteReport {
    let mut report = SuiteReport {
        entry: entry.name.clone(),
        seed: opts.seed,
        checks: Vec::new(),
        mismatches: 0,
    };
    let mut sampler = Sampler::new(opts.seed);
    let l = &opts.limits;
    let m = entry.affine();
    let p = &entry.points[0];
    let ex = &entry.expected;

    report.record("reality", &holds(true), Ok(entry.manifold.check_reality()));
    report.record("points_on_manifold", &holds(true), Ok(entry.points.iter().all(|q| m.contains(q))));
    let sym = symmetry_trials(&m, &mut sampler, l);
    report.record("segre_symmetry", &holds(true), sym);

    report.record_opt("genericity_rank", &ex.genericity_rank, || {
        m.genericity_rank(p).map_err(|e| e.to_string())
    });
    report.record_opt("levi", &ex.levi, || {
        let r = m.levi_signature(p, &entry.conormal).map_err(|e| e.to_string())?;
        Ok([r.positives, r.negatives, r.zeros])
    });
    if ex.levi.is_some() {
        let flip = (|| {
            let minus: Vec<_> = entry.conormal.iter().map(|c| -c.clone()).collect();
            let a = m.levi_signature(p, &entry.conormal).map_err(|e| e.to_string())?;
            let b = m.levi_signature(p, &minus).map_err(|e| e.to_string())?;
            Ok(a.inertia().flipped() == b.inertia())
        })();
        report.record("levi_conormal_flip", &holds(true), flip);
    }
    report.record_opt("pseudoconcave", &ex.pseudoconcave, || {
        let mut charts = vec![m.clone()];
        for &c in &entry.charts {
            charts.push(entry.manifold.dehomogenize(c).map_err(|e| e.to_string())?);
        }
        let mut all = true;
        for chart in &charts {
            let pts = sampler.points_on(chart, &entry.points, opts.samples).map_err(|e| e.to_string())?;
            let grid = default_conormal_grid(chart.d());
            all &= chart.pseudoconcavity_probe(&pts, &grid).map_err(|e| e.to_string())?.all_mixed;
        }
        Ok(all)
    });

    let ess = essential_finiteness(&m, p, l).map_err(|e| e.to_string());
    report.record_opt("essentially_finite", &ex.essentially_finite, || {
        ess.as_ref().map(|e| e.finite).map_err(Clone::clone)
    });
    report.record_opt("essential_degree", &ex.essential_degree, || {
        ess.as_ref()
            .map_err(Clone::clone)?
            .degree
            .ok_or_else(|| "not essentially finite".to_string())
    });
    if let Some(deg) = &ex.essential_degree {
        let generic = sampler.points_on(&m, &entry.points, opts.samples).map_err(|e| e.to_string()).and_then(|ws| {
            let mut all = true;
            for w in ws {
                all &= essential_finiteness(&m, &w, l).map_err(|e| e.to_string())?.degree == Some(deg.value);
            }
            Ok(all)
        });
        report.record("essential_degree_constant", &holds(true), generic);
        let agrees = inversion_set(&m, &SegreParam::Point(p.clone()), l)
            .map_err(|e| e.to_string())
            .and_then(|inv| oracle_agrees(&inv.ideal, l, opts.seed));
        report.record("inversion_numeric_agreement", &holds(true), agrees);
    }

    if ex.minimal.is_some() || ex.j0.is_some() {
        let min = minimality(&m, p, default_j_max(&m), l).map_err(|e| e.to_string());
        report.record_opt("minimal", &ex.minimal, || min.as_ref().map(|r| r.minimal).map_err(Clone::clone));
        report.record_opt("j0", &ex.j0, || {
            min.as_ref()
                .map_err(Clone::clone)?
                .j0
                .ok_or_else(|| "not minimal".to_string())
        });
        if let Ok(r) = &min {
            let dec = r.chain.is_decreasing(l).map_err(|e| e.to_string());
            let sorted = r.chain.dims.windows(2).all(|w| w[0] <= w[1]);
            report.record("segre_chain_monotone", &holds(true), dec.map(|d| d && sorted));
        }
    }
    report.record_opt("locally_injective", &ex.locally_injective, || {
        segre_map_locally_injective(&m, p, l).map_err(|e| e.to_string())
    });

    for map in &entry.maps {
        run_map(&mut report, map, p, opts, &mut sampler);
    }
    report
}
