//! Verification suites run by `cycle-census verify`.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use cycle_census_core::blocks::derived_series;
use cycle_census_core::catalog;
use cycle_census_core::census::{
    conjugacy_class_size, euler_phi, structure_certificate, CensusError, CensusReport, StructureVerdict,
};
use cycle_census_core::density::{DensityReport, IntPoly};
use cycle_census_core::group::GroupError;
use cycle_census_core::{PermGroup, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data;
use crate::family::Component;
use crate::parallel;

/// Groups up to this order get a direct conjugacy-class computation.
pub const DIRECT_CLASS_LIMIT: u128 = 100_000;

#[derive(Clone, Debug)]
pub enum Origin {
    Plain,
    Wreath { inner: PermGroup, outer: PermGroup },
    Random { parent: String },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub group: PermGroup,
    pub origin: Origin,
}

impl Instance {
    fn plain(name: impl Into<String>, group: PermGroup) -> Self {
        Instance { name: name.into(), group, origin: Origin::Plain }
    }
}

fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    a.degree() == b.degree() && a.order() == b.order() && a.contains_group(b)
}

/// Cyclic, holomorph, symmetric and alternating groups of degree `2..=max`,
/// each group once.
pub fn wreath_components(max_degree: usize) -> Result<Vec<(Component, PermGroup)>> {
    let mut out: Vec<(Component, PermGroup)> = Vec::new();
    for n in 2..=max_degree {
        let mut cands = vec![Component::Cyclic(n), Component::Hol(n), Component::Sym(n)];
        if n >= 3 {
            cands.push(Component::Alt(n));
        }
        for c in cands {
            let g = c.build()?;
            if !out.iter().any(|(_, h)| same_group(h, &g)) {
                out.push((c, g));
            }
        }
    }
    Ok(out)
}

/// Every catalog instance of the theorem sweep.
pub fn catalog_instances() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 2..=24 {
        out.push(Instance::plain(format!("C{n}"), catalog::cyclic_regular(n)));
    }
    for m in 2..=27 {
        out.push(Instance::plain(format!("Hol(C{m})"), catalog::holomorph_cyclic(m)));
    }
    for n in 2..=8 {
        out.push(Instance::plain(format!("Sym({n})"), catalog::symmetric(n)));
    }
    for n in 3..=8 {
        out.push(Instance::plain(format!("Alt({n})"), catalog::alternating(n)?));
    }
    let comps = wreath_components(9)?;
    for (ci, a) in &comps {
        for (co, b) in &comps {
            if a.degree() * b.degree() <= 18 {
                out.push(Instance {
                    name: format!("{ci} wr {co}"),
                    group: catalog::wreath_imprimitive(a, b),
                    origin: Origin::Wreath { inner: a.clone(), outer: b.clone() },
                });
            }
        }
    }
    for (d, q) in [(2, 4), (2, 5), (2, 7), (2, 8), (3, 2), (3, 3)] {
        out.push(Instance::plain(format!("PGL({d},{q})"), catalog::pgl(d, q)?));
        out.push(Instance::plain(format!("PGammaL({d},{q})"), catalog::pgammal(d, q)?));
    }
    for k in 1..=2 {
        out.push(Instance::plain(format!("sharpness({k})"), catalog::sharpness_group(k)?));
    }
    for q in [2, 3] {
        out.push(Instance::plain(format!("duality(3,{q})"), catalog::duality_extension(3, q)?));
    }
    for file in ["m11", "psl2_11"] {
        let path = data::resolve_spec_path(file);
        let (spec, g) = data::load_group_spec(&path).with_context(|| format!("loading {}", path.display()))?;
        out.push(Instance::plain(spec.name, g));
    }
    Ok(out)
}

/// Transitive subgroups generated by two random elements of pool groups of
/// degree at most `max_degree`, with order at most `max_order`.
pub fn random_subgroups(
    pool: &[Instance],
    samples: usize,
    seed: u64,
    max_degree: usize,
    max_order: u128,
) -> Result<Vec<Instance>> {
    let pool: Vec<&Instance> = pool.iter().filter(|i| i.group.degree() <= max_degree).collect();
    if pool.is_empty() {
        bail!("no pool groups of degree <= {max_degree}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut attempts = 0usize;
    while out.len() < samples {
        attempts += 1;
        if attempts > samples.max(1) * 1000 {
            bail!("found only {} transitive subgroups in {} attempts", out.len(), attempts - 1);
        }
        let parent = pool[rng.gen_range(0..pool.len())];
        let g = &parent.group;
        let a = g.element_at(rng.gen_range(0..g.order()));
        let b = g.element_at(rng.gen_range(0..g.order()));
        let h = PermGroup::new(g.degree(), vec![a, b])?;
        if h.is_transitive() && h.order() <= max_order {
            out.push(Instance {
                name: format!("random#{} < {}", out.len() + 1, parent.name),
                group: h,
                origin: Origin::Random { parent: parent.name.clone() },
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exhaustive enumeration of the group.
    Census,
    /// Above the cap: n-cycles of a wreath product counted from its factors.
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub name: String,
    pub method: Method,
    pub report: CensusReport,
    /// Classes whose size was also found by conjugating with every element.
    pub classes_checked_directly: usize,
    pub violations: Vec<String>,
}

/// n-cycles in the imprimitive wreath product of `inner` (degree s) by
/// `outer` (degree r): `(f; b)` is an n-cycle iff `b` is an r-cycle and the
/// product of `f` around the cycle of `b` is an s-cycle, which gives
/// `c(outer) · |inner|^(r-1) · c(inner)`.
pub fn wreath_n_cycle_count(inner: &PermGroup, outer: &PermGroup, cap: u128, workers: usize) -> Result<u128, CensusError> {
    let ca = parallel::count_n_cycles(inner, cap, workers)?;
    let cb = parallel::count_n_cycles(outer, cap, workers)?;
    let r = outer.degree() as u32;
    let mut pow = 1u128;
    for _ in 1..r {
        pow = pow.checked_mul(inner.order()).ok_or(CensusError::Group(GroupError::OrderOverflow))?;
    }
    cb.checked_mul(pow)
        .and_then(|x| x.checked_mul(ca))
        .ok_or(CensusError::Group(GroupError::OrderOverflow))
}

fn formula_report(g: &PermGroup, count: u128) -> (CensusReport, Vec<String>) {
    let n = g.degree() as u128;
    let order = g.order();
    let phi = euler_phi(n as u64);
    let mut extra = Vec::new();
    if !count.is_multiple_of(phi as u128) {
        extra.push(format!("n-cycle count {count} not divisible by phi(n) = {phi}"));
    }
    if !(count * n).is_multiple_of(order) {
        extra.push("n-cycle count times n not divisible by |G|".to_string());
    }
    let subgroups = count / phi as u128;
    let equality = subgroups * n == order;
    let (solvable, verdict, tower) = if equality {
        let c = structure_certificate(g);
        (c.solvable, c.verdict, c.tower)
    } else {
        (derived_series(g).solvable, StructureVerdict::NotApplicable, None)
    };
    let report = CensusReport {
        degree: g.degree(),
        order,
        n_cycle_count: count,
        class_count: (count * n / order) as usize,
        cyclic_transitive_count: subgroups,
        bound: Ratio::new(order, n),
        phi_n: phi,
        equality,
        solvable: Some(solvable),
        structure_verdict: verdict,
        divides_order: subgroups != 0 && order.is_multiple_of(subgroups),
        tower,
        class_representatives: Vec::new(),
        class_sizes: Vec::new(),
    };
    (report, extra)
}

/// Census of one instance with every cross-check that applies to it.
pub fn check_instance(inst: &Instance, cap: u128, workers: usize) -> Result<SweepRow> {
    let g = &inst.group;
    let (method, report, mut violations) = match parallel::census(g, cap, workers) {
        Ok(r) => (Method::Census, r, Vec::new()),
        Err(CensusError::Group(GroupError::CapExceeded { .. })) => match &inst.origin {
            Origin::Wreath { inner, outer } => {
                let count = wreath_n_cycle_count(inner, outer, cap, workers)?;
                let (r, extra) = formula_report(g, count);
                (Method::Formula, r, extra)
            }
            _ => bail!("{} has order {} above the cap {cap}", inst.name, g.order()),
        },
        Err(e @ CensusError::InexactDivision { .. }) => {
            let count = parallel::count_n_cycles(g, cap, workers)?;
            let (r, _) = formula_report(g, count);
            (Method::Census, r, vec![e.to_string()])
        }
        Err(e) => return Err(e).with_context(|| format!("census of {}", inst.name)),
    };
    violations.extend(report.violations());
    if method == Method::Census {
        if let Origin::Wreath { inner, outer } = &inst.origin {
            let f = wreath_n_cycle_count(inner, outer, cap, workers)?;
            if f != report.n_cycle_count {
                violations.push(format!("wreath formula gives {f} n-cycles, enumeration {}", report.n_cycle_count));
            }
        }
    }
    let mut direct = 0;
    if method == Method::Census && g.order() <= DIRECT_CLASS_LIMIT {
        let expected = g.order() / g.degree() as u128;
        for rep in &report.class_representatives {
            let sigma = cycle_census_core::Permutation::parse(rep, g.degree())?;
            let size = conjugacy_class_size(g, &sigma, DIRECT_CLASS_LIMIT)?;
            direct += 1;
            if size != expected {
                violations.push(format!("class of {rep} has {size} elements, expected |G|/n = {expected}"));
            }
        }
    }
    Ok(SweepRow { name: inst.name.clone(), method, report, classes_checked_directly: direct, violations })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub rows: Vec<SweepRow>,
    pub density: Vec<DensityCheck>,
    pub violation_count: usize,
    /// Checks that failed without contradicting any bound.
    pub failure_count: usize,
}

impl SuiteSummary {
    fn new(suite: &str, rows: Vec<SweepRow>, density: Vec<DensityCheck>) -> Self {
        let violation_count = rows.iter().map(|r| r.violations.len()).sum::<usize>()
            + density.iter().filter(|d| !d.report.within_statistical_bound()).count();
        let failure_count = density.iter().filter(|d| !d.passed).count();
        SuiteSummary { suite: suite.to_string(), rows, density, violation_count, failure_count }
    }
}

pub fn run_rows(instances: &[Instance], cap: u128, workers: usize) -> Result<Vec<SweepRow>> {
    instances.iter().map(|i| check_instance(i, cap, workers)).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub cap: u128,
    pub workers: usize,
    pub samples: usize,
    pub seed: u64,
}

pub const RANDOM_MAX_DEGREE: usize = 12;
pub const RANDOM_MAX_ORDER: u128 = 100_000;

pub fn feit_jones(opts: &SuiteOptions) -> Result<SuiteSummary> {
    let rows = run_rows(&catalog_instances()?, opts.cap, opts.workers)?;
    Ok(SuiteSummary::new("feit-jones", rows, Vec::new()))
}

pub fn random(opts: &SuiteOptions) -> Result<SuiteSummary> {
    let pool = catalog_instances()?;
    let subs = random_subgroups(&pool, opts.samples, opts.seed, RANDOM_MAX_DEGREE, RANDOM_MAX_ORDER)?;
    Ok(SuiteSummary::new("random", run_rows(&subs, opts.cap, opts.workers)?, Vec::new()))
}

pub fn sweep(opts: &SuiteOptions) -> Result<SuiteSummary> {
    let pool = catalog_instances()?;
    let subs = random_subgroups(&pool, opts.samples, opts.seed, RANDOM_MAX_DEGREE, RANDOM_MAX_ORDER)?;
    let mut rows = run_rows(&pool, opts.cap, opts.workers)?;
    rows.extend(run_rows(&subs, opts.cap, opts.workers)?);
    Ok(SuiteSummary::new("sweep", rows, Vec::new()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityCheck {
    pub report: DensityReport,
    pub expectation: String,
    pub passed: bool,
}

/// The three control polynomials with their expected behaviour.
pub fn density_controls(opts: &SuiteOptions) -> Result<SuiteSummary> {
    let mut checks = Vec::new();
    let c6 = catalog::cyclic_regular(6);
    let predicted = parallel::predicted_density(&c6, opts.cap, 1)?;
    let f = IntPoly::parse("x^6+x^3+1")?;
    let r = parallel::density(&f, 2_000_000, 0, opts.workers, Some(predicted))?;
    let ok = (r.empirical_density.to_f64() - 1.0 / 3.0).abs() <= 0.01;
    checks.push(DensityCheck { report: r, expectation: "density 1/3 +- 0.01".into(), passed: ok });
    let f = IntPoly::parse("x^4+1")?;
    let r = parallel::density(&f, 100_000, 0, opts.workers, None)?;
    let ok = r.inert_count == 0;
    checks.push(DensityCheck { report: r, expectation: "no inert primes".into(), passed: ok });
    let f = IntPoly::parse("x^2+1")?;
    let r = parallel::density(&f, 1_000_000, 0, opts.workers, None)?;
    let ok = (r.empirical_density.to_f64() - 0.5).abs() <= 0.01;
    checks.push(DensityCheck { report: r, expectation: "density 1/2 +- 0.01".into(), passed: ok });
    Ok(SuiteSummary::new("density", Vec::new(), checks))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Fixed-width table of a summary.
pub fn render_text(s: &SuiteSummary) -> String {
    let mut out = String::new();
    if !s.rows.is_empty() {
        let _ = writeln!(
            out,
            "{:<28} {:>3} {:>12} {:>10} {:>7} {:>5} {:>10} {:>12} {:>5} {:>8} {:>14} {:>7}  status",
            "group", "n", "order", "n-cycles", "classes", "phi", "subgroups", "bound", "eq", "solvable", "structure", "method"
        );
        for r in &s.rows {
            let p = &r.report;
            let solvable = p.solvable.map_or("?", yes_no);
            let status = if r.violations.is_empty() { "ok".to_string() } else { r.violations.join("; ") };
            let _ = writeln!(
                out,
                "{:<28} {:>3} {:>12} {:>10} {:>7} {:>5} {:>10} {:>12} {:>5} {:>8} {:>14} {:>7}  {}",
                r.name,
                p.degree,
                p.order,
                p.n_cycle_count,
                p.class_count,
                p.phi_n,
                p.cyclic_transitive_count,
                p.bound.to_string(),
                yes_no(p.equality),
                solvable,
                p.structure_verdict.to_string(),
                match r.method {
                    Method::Census => "census",
                    Method::Formula => "formula",
                },
                status
            );
        }
    }
    for d in &s.density {
        let r = &d.report;
        let _ = writeln!(
            out,
            "{:<14} B={:<8} tested={:<7} skipped={:<3} inert={:<7} density={} ceiling={} predicted={} ({}): {}",
            r.polynomial,
            r.bound,
            r.primes_tested,
            r.primes_skipped,
            r.inert_count,
            r.empirical_density,
            r.ceiling,
            r.predicted.map_or("-".to_string(), |p| p.to_string()),
            d.expectation,
            if d.passed { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        out,
        "suite {}: {} groups, {} density checks, {} violations, {} failures",
        s.suite,
        s.rows.len(),
        s.density.len(),
        s.violation_count,
        s.failure_count
    );
    out
}
