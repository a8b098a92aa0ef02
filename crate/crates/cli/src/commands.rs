use segrekit_core::catalog::{find_entry, load_catalog, run_suite, SuiteOptions};
use segrekit_core::correspondence::{build_correspondence, verify_invariance};
use segrekit_core::manifold::{parse_manifold, parse_map_file};
use segrekit_core::segre::{
    default_j_max, essential_finiteness, inversion_set, minimality, segre_variety, SegreParam,
};
use segrekit_core::{parse_constant, AlgebraicMap, CRManifold, Limits, Point, Sampler};
use serde_json::{json, Value};

use crate::report::{Failure, EXIT_MISMATCH, EXIT_OK};
use crate::Command;

pub struct Ctx {
    pub limits: Limits,
    pub seed: u64,
    /// (path, contents) of every file read, in order.
    pub files: Vec<(String, String)>,
}

#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub results: Value,
    pub excluded: Vec<String>,
    pub warnings: Vec<String>,
    pub human: Vec<String>,
}

impl Default for Outcome {
    fn default() -> Self {
        Self {
            code: EXIT_OK,
            results: json!({}),
            excluded: Vec::new(),
            warnings: Vec::new(),
            human: Vec::new(),
        }
    }
}

impl Ctx {
    pub fn new(limits: Limits, seed: u64) -> Self {
        Self { limits, seed, files: Vec::new() }
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let src = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
        self.files.push((path.to_string(), src.clone()));
        Ok(src)
    }

    fn manifold(&mut self, path: &str) -> Result<CRManifold, Failure> {
        let src = self.read(path)?;
        let m = parse_manifold(&src).map_err(|e| Failure::input(format!("{path}: {e}")))?;
        m.to_affine().map_err(|e| Failure::input(format!("{path}: {e}")))
    }

    fn map(&mut self, path: &str) -> Result<AlgebraicMap, Failure> {
        let src = self.read(path)?;
        let f = parse_map_file(&src).map_err(|e| Failure::input(format!("{path}: {e}")))?;
        AlgebraicMap::from_file(&f).map_err(|e| Failure::input(format!("{path}: {e}")))
    }
}

pub fn parse_point(src: &str) -> Result<Point, Failure> {
    let inner = src.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    inner
        .split(',')
        .map(|c| parse_constant(c.trim()).map_err(|e| Failure::input(format!("coordinate `{}`: {e}", c.trim()))))
        .collect()
}

fn show(p: &Point) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn run(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome, Failure> {
    match cmd {
        Command::Segre { manifold, point, symbolic } => segre(ctx, manifold, point.as_deref(), *symbolic),
        Command::Essfin { manifold, point } => essfin(ctx, manifold, point),
        Command::Minimal { manifold, point, jmax } => minimal(ctx, manifold, point, *jmax),
        Command::Levi { manifold, point, conormal } => levi(ctx, manifold, point, conormal),
        Command::Correspond { source, target, map, fiber, samples } => {
            correspond(ctx, source, target, map, fiber, *samples)
        }
        Command::Suite { name, all } => suite(ctx, name.as_deref(), *all),
    }
}

fn segre(ctx: &mut Ctx, path: &str, point: Option<&str>, symbolic: bool) -> Result<Outcome, Failure> {
    let m = ctx.manifold(path)?;
    let param = match (symbolic, point) {
        (true, _) => SegreParam::Symbolic,
        (false, Some(p)) => SegreParam::Point(parse_point(p)?),
        (false, None) => return Err(Failure::input("a point or --symbolic is required")),
    };
    let q = segre_variety(&m, &param)?;
    let generators = strings(q.ideal.generators());
    let point = match &param {
        SegreParam::Point(w) => json!(strings(w)),
        SegreParam::Symbolic => Value::Null,
    };
    let mut out = Outcome::default();
    out.human.push(match &param {
        SegreParam::Point(w) => format!("Segre variety at {}:", show(w)),
        SegreParam::Symbolic => "Segre family:".to_string(),
    });
    out.human.extend(generators.iter().map(|g| format!("  {g} = 0")));
    out.results = json!({
        "segre_variety": {
            "parameter": if symbolic { "symbolic" } else { "point" },
            "point": point,
            "coordinates": m.coordinate_names(),
            "generators": generators,
        }
    });
    Ok(out)
}

fn essfin(ctx: &mut Ctx, path: &str, point: &str) -> Result<Outcome, Failure> {
    let m = ctx.manifold(path)?;
    let w = parse_point(point)?;
    let ef = essential_finiteness(&m, &w, &ctx.limits)?;
    let inv = inversion_set(&m, &SegreParam::Point(w.clone()), &ctx.limits)?;
    let mut out = Outcome::default();
    out.human.push(if ef.finite {
        format!(
            "essentially finite at {}: degree {}, {} distinct points",
            show(&w),
            ef.degree.unwrap_or(0),
            ef.distinct.unwrap_or(0)
        )
    } else {
        format!("not essentially finite at {}: inversion set has dimension {}", show(&w), ef.dimension)
    });
    out.excluded = strings(&inv.excluded);
    out.results = json!({
        "essential_finiteness": ef,
        "inversion_set": strings(inv.ideal.generators()),
    });
    Ok(out)
}

fn minimal(ctx: &mut Ctx, path: &str, point: &str, jmax: Option<usize>) -> Result<Outcome, Failure> {
    let m = ctx.manifold(path)?;
    let p = parse_point(point)?;
    let j_max = jmax.unwrap_or_else(|| default_j_max(&m));
    let r = minimality(&m, &p, j_max, &ctx.limits)?;
    let mut out = Outcome::default();
    out.human.push(match r.j0 {
        Some(j) => format!("minimal at {}: Segre set {j} fills C^{}", show(&p), m.n()),
        None => format!(
            "not minimal at {}: Segre sets stabilized at dimension {}",
            show(&p),
            r.chain.dims.last().copied().unwrap_or(0)
        ),
    });
    let sets: Vec<Vec<String>> = r.chain.ideals.iter().map(|i| strings(i.generators())).collect();
    out.results = json!({
        "minimality": {
            "minimal": r.minimal,
            "j0": r.j0,
            "j_max": j_max,
            "dims": r.chain.dims,
            "stabilized": r.chain.stabilized,
            "segre_sets": sets,
        }
    });
    Ok(out)
}

fn levi(ctx: &mut Ctx, path: &str, point: &str, conormal: &str) -> Result<Outcome, Failure> {
    let m = ctx.manifold(path)?;
    let p = parse_point(point)?;
    let c = parse_point(conormal)?;
    let r = m.levi_signature(&p, &c)?;
    let mixed = r.inertia().is_mixed();
    let mut out = Outcome::default();
    out.human.push(format!(
        "Levi signature at {} in direction {}: ({}, {}, {}){}",
        show(&p),
        show(&c),
        r.positives,
        r.negatives,
        r.zeros,
        if mixed { ", mixed" } else { "" }
    ));
    out.results = json!({ "levi": { "signature": r, "mixed": mixed } });
    Ok(out)
}

fn correspond(
    ctx: &mut Ctx,
    source: &str,
    target: &str,
    map: &str,
    fibers: &[String],
    samples: usize,
) -> Result<Outcome, Failure> {
    let m = ctx.manifold(source)?;
    let t = ctx.manifold(target)?;
    let f = ctx.map(map)?;
    let points: Vec<Point> = fibers.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?;
    let limits = ctx.limits;
    let mut out = Outcome::default();

    let mut sampler = Sampler::new(ctx.seed);
    let inv = verify_invariance(&m, &t, &f, samples, samples, &mut sampler, &limits)?;
    if !inv.all_passed() {
        out.code = EXIT_MISMATCH;
        out.warnings.push(format!(
            "{} of {} Segre-variety checks and {} of {} containments failed",
            inv.failed, inv.checks, inv.containment_failures, inv.points
        ));
    }
    out.human.push(format!(
        "invariance: {} of {} checks passed; f(Q_p) in Q'_f(p) by membership at {}, by radical membership at {}",
        inv.passed, inv.checks, inv.ideal_containments, inv.radical_containments
    ));

    let c = build_correspondence(&m, &t, &f, &limits)?;
    let back = c.transpose(&limits)?;
    let valency = match (back.fiber_degree, c.fiber_degree) {
        (Some(r), Some(s)) => Some(format!("{r}:{s}")),
        _ => None,
    };
    out.human.push(format!(
        "correspondence: forward degree {}, reverse degree {}",
        c.fiber_degree.map_or("?".into(), |d| d.to_string()),
        back.fiber_degree.map_or("?".into(), |d| d.to_string()),
    ));
    out.excluded.extend(c.excluded.iter().map(|e| format!("forward: {e}")));
    out.excluded.extend(back.excluded.iter().map(|e| format!("reverse: {e}")));

    let mut fiber_results = Vec::new();
    for w in &points {
        let fr = c.fiber(w, &limits)?;
        if fr.on_excluded_locus {
            out.warnings.push(format!("{} lies on the excluded locus; the fiber there is degenerate", show(w)));
        }
        let split = if m.contains(w) {
            Some(c.splits_at(w, &limits)?)
        } else {
            out.warnings.push(format!("{} is not on the source manifold; splitting not checked", show(w)));
            None
        };
        out.human.push(format!(
            "fiber at {}: degree {}, {} distinct{}",
            show(w),
            fr.degree,
            fr.distinct,
            if split.as_ref().is_some_and(|s| s.splits) { ", splits" } else { "" }
        ));
        fiber_results.push(json!({ "fiber": fr, "split": split }));
    }

    out.results = json!({
        "invariance": inv,
        "correspondence": {
            "graph": strings(c.graph.generators()),
            "source_dim": c.source_dim(),
            "target_dim": c.target_dim(),
            "forward_degree": c.fiber_degree,
            "reverse_degree": back.fiber_degree,
            "valency": valency,
        },
        "fibers": fiber_results,
    });
    Ok(out)
}

fn suite(ctx: &mut Ctx, name: Option<&str>, all: bool) -> Result<Outcome, Failure> {
    let entries = match (all, name) {
        (true, _) => load_catalog()?,
        (false, Some(n)) => vec![find_entry(n)?],
        (false, None) => return Err(Failure::input("a catalog name or --all is required")),
    };
    let opts = SuiteOptions {
        seed: ctx.seed,
        limits: ctx.limits,
        ..SuiteOptions::default()
    };
    let mut out = Outcome::default();
    let mut reports = Vec::new();
    for e in &entries {
        let r = run_suite(e, &opts);
        out.human.push(format!(
            "{}: {} checks, {} mismatches",
            r.entry,
            r.checks.len(),
            r.mismatches
        ));
        for c in r.checks.iter().filter(|c| !c.ok) {
            out.human.push(format!("  {}: expected {}, got {}", c.name, c.expected, c.actual));
        }
        if !r.passed() {
            out.code = EXIT_MISMATCH;
        }
        reports.push(r);
    }
    out.results = json!({ "suite": reports });
    Ok(out)
}
