use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cycle_census::family::{self, Component, Family, GroupRequest};
use cycle_census::suites::{self, SuiteOptions};
use cycle_census::{parallel, EXIT_ERROR, EXIT_VIOLATION};
use cycle_census_core::census::CensusError;
use cycle_census_core::density::IntPoly;
use cycle_census_core::{CensusReport, DensityReport, GroupSpec};

#[derive(Parser)]
#[command(name = "cycle-census", version, about = "Census of n-cycles and cyclic transitive subgroups of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count n-cycles, their classes and cyclic transitive subgroups of one group.
    Census(CensusArgs),
    /// List the group families and their parameters.
    Catalog,
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Density of primes modulo which a polynomial stays irreducible.
    Density(DensityArgs),
    /// Write a group as a group-spec file.
    ExportSpec(ExportArgs),
}

#[derive(Args, Clone, Default)]
struct GroupArgs {
    /// Group family.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Degree for cyclic, sym and alt; modulus for holomorph.
    #[arg(long, alias = "m")]
    n: Option<usize>,
    /// Inner wreath factor: c<n>, s<n>, a<n> or hol<n>.
    #[arg(long)]
    inner: Option<Component>,
    /// Outer wreath factor, acting on the blocks.
    #[arg(long)]
    outer: Option<Component>,
    /// Projective dimension plus one (pgl, pgammal, duality).
    #[arg(long)]
    d: Option<u32>,
    /// Field order (pgl, pgammal, duality).
    #[arg(long)]
    q: Option<u64>,
    /// Parameter of the sharpness family.
    #[arg(long)]
    k: Option<u32>,
    /// Group-spec file, or the name of one in the data directory.
    #[arg(long)]
    spec: Option<String>,
}

impl GroupArgs {
    fn request(&self) -> GroupRequest {
        GroupRequest {
            family: self.family,
            n: self.n,
            inner: self.inner,
            outer: self.outer,
            d: self.d,
            q: self.q,
            k: self.k,
            spec: self.spec.clone(),
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Largest group order that will be enumerated.
    #[arg(long, default_value_t = 20_000_000, value_parser = positive_u128)]
    cap: u128,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1024))]
    workers: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl RunArgs {
    fn workers(&self) -> usize {
        self.workers.map_or_else(parallel::default_workers, |w| w as usize)
    }
}

fn positive_u128(s: &str) -> Result<u128, String> {
    match s.replace('_', "").parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Every catalog instance.
    FeitJones,
    /// Random two-generator transitive subgroups of catalog groups.
    Random,
    /// Both of the above.
    Sweep,
    /// Control polynomials for the density lab.
    Density,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Number of random subgroups.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Seed for the random subgroups.
    #[arg(long, default_value_t = 20_240_601)]
    seed: u64,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct DensityArgs {
    /// Integer or rational polynomial in x, e.g. "x^6+x^3+1".
    #[arg(long, conflicts_with = "specialize", allow_hyphen_values = true)]
    poly: Option<String>,
    /// Use (x^(3^K) - 1)^2 - T0 instead of --poly (exploratory).
    #[arg(long, value_name = "K", requires = "t0", value_parser = clap::value_parser!(u32).range(1..=4))]
    specialize: Option<u32>,
    /// Specialization value for --specialize.
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<i64>,
    /// Largest prime to test.
    #[arg(long, default_value_t = 1_000_000)]
    bound: u64,
    /// Only primes above this value are used.
    #[arg(long, default_value_t = 0)]
    floor: u64,
    /// Group whose n-cycle proportion is reported as the predicted density.
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Output file (default: standard output).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

enum Outcome {
    Ok,
    Violation,
    Failure,
}

fn census_text(name: &str, r: &CensusReport) -> String {
    let mut s = format!("group                    {name}\n");
    s += &format!("degree                   {}\n", r.degree);
    s += &format!("order                    {}\n", r.order);
    s += &format!("n_cycle_count            {}\n", r.n_cycle_count);
    s += &format!("class_count              {}\n", r.class_count);
    s += &format!("phi_n                    {}\n", r.phi_n);
    s += &format!("cyclic_transitive_count  {}\n", r.cyclic_transitive_count);
    s += &format!("bound                    {}\n", r.bound);
    s += &format!("equality                 {}\n", r.equality);
    s += &format!("solvable                 {}\n", r.solvable.map_or("unknown".to_string(), |b| b.to_string()));
    s += &format!("structure_verdict        {}\n", r.structure_verdict);
    s += &format!("divides_order            {}\n", r.divides_order);
    if let Some(t) = &r.tower {
        let t: Vec<String> = t.iter().map(|p| p.to_string()).collect();
        s += &format!("tower                    {}\n", t.join(" "));
    }
    for (rep, size) in r.class_representatives.iter().zip(&r.class_sizes) {
        s += &format!("class                    {rep}  size {size}\n");
    }
    s
}

fn density_text(r: &DensityReport) -> String {
    let mut s = format!("polynomial         {}\n", r.polynomial);
    s += &format!("degree             {}\n", r.degree);
    s += &format!("bound              {}\n", r.bound);
    s += &format!("floor              {}\n", r.floor);
    s += &format!("primes_tested      {}\n", r.primes_tested);
    s += &format!("primes_skipped     {}\n", r.primes_skipped);
    s += &format!("inert_count        {}\n", r.inert_count);
    s += &format!("empirical_density  {} ({:.6})\n", r.empirical_density, r.empirical_density.to_f64());
    s += &format!("ceiling            {}\n", r.ceiling);
    if let Some(p) = r.predicted {
        s += &format!("predicted          {p}\n");
    }
    s
}

fn run_census(a: CensusArgs) -> Result<Outcome> {
    let g = a.group.request().resolve()?;
    let report = match parallel::census(&g.group, a.run.cap, a.run.workers()) {
        Ok(r) => r,
        Err(e @ CensusError::InexactDivision { .. }) => {
            eprintln!("violation: {e}");
            return Ok(Outcome::Violation);
        }
        Err(e) => return Err(e).with_context(|| format!("census of {}", g.name)),
    };
    match a.run.format {
        Format::Text => print!("{}", census_text(&g.name, &report)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    let v = report.violations();
    for msg in &v {
        eprintln!("violation: {msg}");
    }
    Ok(if v.is_empty() { Outcome::Ok } else { Outcome::Violation })
}

fn run_verify(a: VerifyArgs) -> Result<Outcome> {
    let opts = SuiteOptions { cap: a.run.cap, workers: a.run.workers(), samples: a.samples, seed: a.seed };
    let summary = match a.suite {
        Suite::FeitJones => suites::feit_jones(&opts)?,
        Suite::Random => suites::random(&opts)?,
        Suite::Sweep => suites::sweep(&opts)?,
        Suite::Density => suites::density_controls(&opts)?,
    };
    match a.run.format {
        Format::Text => print!("{}", suites::render_text(&summary)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
    }
    Ok(if summary.violation_count > 0 {
        Outcome::Violation
    } else if summary.failure_count > 0 {
        Outcome::Failure
    } else {
        Outcome::Ok
    })
}

fn run_density(a: DensityArgs) -> Result<Outcome> {
    let f = match (&a.poly, a.specialize) {
        (Some(text), None) => IntPoly::parse(text).with_context(|| format!("parsing {text:?}"))?,
        (None, Some(k)) => {
            let m = 3usize.pow(k);
            let t0 = a.t0.unwrap_or(0);
            let mut c = vec![0i64; 2 * m + 1];
            c[2 * m] = 1;
            c[m] = -2;
            c[0] = 1i64.checked_sub(t0).context("t0 out of range")?;
            IntPoly::new(c).context("zero polynomial")?
        }
        _ => bail!("give --poly or --specialize"),
    };
    let workers = a.run.workers();
    let req = a.group.request();
    let predicted = if req.is_empty() {
        None
    } else {
        let g = req.resolve()?;
        if g.group.degree() != f.degree() {
            bail!("group degree {} differs from polynomial degree {}", g.group.degree(), f.degree());
        }
        Some(parallel::predicted_density(&g.group, a.run.cap, workers)?)
    };
    let report = parallel::density(&f, a.bound, a.floor, workers, predicted)?;
    match a.run.format {
        Format::Text => print!("{}", density_text(&report)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    if !report.within_statistical_bound() {
        eprintln!("violation: empirical density exceeds phi(n)/n by more than three standard errors");
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Ok)
}

fn run_export(a: ExportArgs) -> Result<Outcome> {
    let g = a.group.request().resolve()?;
    let text = GroupSpec::from_group(&g.name, &g.group).to_text();
    match a.output {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Census(a) => run_census(a),
        Command::Catalog => {
            print!("{}", family::catalog_text());
            Ok(Outcome::Ok)
        }
        Command::Verify(a) => run_verify(a),
        Command::Density(a) => run_density(a),
        Command::ExportSpec(a) => run_export(a),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(EXIT_VIOLATION),
        Ok(Outcome::Failure) => ExitCode::from(EXIT_ERROR),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
