//! Command-line front end: JSON model input, CSV/JSON output, deterministic
//! exit codes (0 success/accepted, 1 rejected/outside, 2 usage or input error).

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use negmnom::{
    boundary_grid, bt_table, classify, compute_bt, directional_coefficients, divisibility,
    expand_neg_power, mean, normalized_pgf, pmf, sample, AffineModel, DistributionSpec, Error,
    GridRange, Membership, SubsetId,
};

#[derive(Parser)]
#[command(
    name = "negmnom",
    version,
    about = "Negative multinomial distributions from affine polynomials: divisibility check, kernel-power expansion, domain-of-existence queries, pmf tables and sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the b table and decide infinite divisibility
    #[command(name = "check-id")]
    CheckId(CheckIdArgs),
    /// Print b_T for one subset, or the full table
    Bt(BtArgs),
    /// Expand (1 - P)^(-lambda) up to a total-degree cap
    Expand(ExpandArgs),
    /// Domain-of-existence queries
    #[command(subcommand)]
    Domain(DomainCmd),
    #[command(name = "domain-contains", hide = true)]
    DomainContains(ContainsArgs),
    #[command(name = "domain-boundary", hide = true)]
    DomainBoundary(BoundaryArgs),
    /// Normalized PGF coefficient table for a shift point
    Pgf(PgfArgs),
    /// Truncated probability table
    Pmf(PmfArgs),
    /// Seeded draws from the truncated distribution
    Sample(SampleArgs),
    /// Directional series coefficients u_k(lambda) for a direction in H
    Directional(DirectionalArgs),
}

#[derive(Subcommand)]
enum DomainCmd {
    /// Classify a point against the domain of existence
    Contains(ContainsArgs),
    /// Emit a boundary point cloud as CSV
    Boundary(BoundaryArgs),
}

#[derive(Args)]
struct ModelArg {
    /// Path to the model JSON file: {"n": 2, "terms": {"1": 1.0, "1,2": -0.5}}
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
}

#[derive(Args)]
struct CheckIdArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Slack on the criterion: accept when b_T >= -tol-b
    #[arg(long = "tol-b", default_value_t = 0.0)]
    tol_b: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BtArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Subset label such as "1,3"; omit for the full table
    #[arg(long)]
    subset: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    model: ModelArg,
    #[arg(long)]
    lambda: f64,
    /// Total-degree cap
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ContainsArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Comma-separated point, e.g. "-0.693,-0.693"
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    /// Margin half-width of the numerical boundary band
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundaryArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Grid for s1 as "lo:hi:step"
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    /// Grid for s2 (n = 3 only)
    #[arg(long, allow_hyphen_values = true)]
    range2: Option<String>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PgfArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Positive shift point, e.g. "0.5,0.5"
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PmfArgs {
    #[command(flatten)]
    model: ModelArg,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArg,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    count: usize,
    #[arg(long)]
    seed: u64,
    /// Truncation cap; the tail mass must fall below 1e-6
    #[arg(long, default_value_t = 32)]
    degree: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DirectionalArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Direction with zero sum, e.g. "0.7,-0.7"
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long)]
    lambda: f64,
    /// Number of coefficients u_0..u_N
    #[arg(long, default_value_t = 32)]
    count: usize,
    #[arg(long)]
    csv: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

/// 17 significant digits, enough to round-trip any double.
fn ff(x: f64) -> String {
    format!("{x:.16e}")
}

fn load_model(path: &Path) -> anyhow::Result<AffineModel> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read model file {}", path.display()))?;
    Ok(AffineModel::from_json_str(&text)?)
}

fn parse_f64_list(text: &str, what: &str) -> anyhow::Result<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .with_context(|| format!("bad {what} entry {p:?}"))
        })
        .collect()
}

fn parse_range(text: &str) -> anyhow::Result<GridRange> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        anyhow::bail!("range must be lo:hi:step, got {text:?}");
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().with_context(|| format!("bad range part {p:?}")))
        .collect::<anyhow::Result<_>>()?;
    Ok(GridRange::new(nums[0], nums[1], nums[2])?)
}

enum SpecOutcome {
    Ready(Box<DistributionSpec>),
    /// Semantic negative already formatted for stdout (exit code 1).
    Negative(String),
}

fn build_spec(model: AffineModel, a: &str, lambda: f64) -> anyhow::Result<SpecOutcome> {
    let shift = parse_f64_list(a, "shift")?;
    match DistributionSpec::new(model, shift, lambda) {
        Ok(spec) => Ok(SpecOutcome::Ready(Box::new(spec))),
        Err(Error::OutsideDomain { margin }) => Ok(SpecOutcome::Negative(format!(
            "outside domain: margin={}",
            ff(margin)
        ))),
        Err(Error::NotInfinitelyDivisible { witness, value }) => Ok(SpecOutcome::Negative(
            format!("not infinitely divisible: b[{witness}] = {}", ff(value)),
        )),
        Err(e) => Err(e.into()),
    }
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::CheckId(args) => cmd_check_id(args),
        Command::Bt(args) => cmd_bt(args),
        Command::Expand(args) => cmd_expand(args),
        Command::Domain(DomainCmd::Contains(args)) | Command::DomainContains(args) => {
            cmd_contains(args)
        }
        Command::Domain(DomainCmd::Boundary(args)) | Command::DomainBoundary(args) => {
            cmd_boundary(args)
        }
        Command::Pgf(args) => cmd_pgf(args),
        Command::Pmf(args) => cmd_pmf(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Directional(args) => cmd_directional(args),
    }
}

fn cmd_check_id(args: CheckIdArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let table = bt_table(&model)?;
    let verdict = divisibility::decide_from_table(&table, args.tol_b);
    if args.json {
        let entries: serde_json::Map<String, serde_json::Value> = table
            .iter()
            .map(|(t, v)| (t.to_string(), json!(v)))
            .collect();
        let witness = match &verdict {
            divisibility::Divisibility::Accepted => serde_json::Value::Null,
            divisibility::Divisibility::Rejected { witness, value } => {
                json!({"subset": witness.to_string(), "b": value})
            }
        };
        println!(
            "{}",
            json!({
                "verdict": if verdict.is_accepted() { "accepted" } else { "rejected" },
                "witness": witness,
                "table": entries,
            })
        );
    } else {
        for (t, v) in table.iter() {
            println!("b[{t}] = {}", ff(v));
        }
        match &verdict {
            divisibility::Divisibility::Accepted => println!("accepted"),
            divisibility::Divisibility::Rejected { witness, value } => {
                println!("rejected: b[{witness}] = {} < 0", ff(*value));
            }
        }
    }
    Ok(if verdict.is_accepted() { 0 } else { 1 })
}

fn cmd_bt(args: BtArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    match args.subset {
        Some(label) => {
            let t = SubsetId::from_label(&label)?;
            let b = compute_bt(&model, t)?;
            if args.json {
                println!("{}", json!({"subset": t.to_string(), "b": b}));
            } else {
                println!("b[{t}] = {}", ff(b));
            }
        }
        None => {
            let table = bt_table(&model)?;
            if args.json {
                let entries: serde_json::Map<String, serde_json::Value> = table
                    .iter()
                    .map(|(t, v)| (t.to_string(), json!(v)))
                    .collect();
                println!("{}", json!({ "table": entries }));
            } else {
                for (t, v) in table.iter() {
                    println!("b[{t}] = {}", ff(v));
                }
            }
        }
    }
    Ok(0)
}

fn cmd_expand(args: ExpandArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let series = expand_neg_power(&model, args.lambda, args.degree)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.json {
        let coeffs: Vec<serde_json::Value> = series
            .coefficients()
            .map(|(alpha, c)| json!({"alpha": alpha, "c": c}))
            .collect();
        writeln!(
            out,
            "{}",
            json!({"n": series.n(), "lambda": args.lambda, "degree": args.degree, "coefficients": coeffs})
        )?;
    } else if args.csv {
        let header: Vec<String> = (1..=series.n()).map(|i| format!("alpha{i}")).collect();
        writeln!(out, "{},c", header.join(","))?;
        for (alpha, c) in series.coefficients() {
            let idx: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
            writeln!(out, "{},{}", idx.join(","), ff(c))?;
        }
    } else {
        let mut zeros = 0usize;
        for (alpha, c) in series.coefficients() {
            let idx: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
            if c == 0.0 {
                zeros += 1;
                writeln!(out, "c[{}] = {} (zero)", idx.join(","), ff(c))?;
            } else {
                writeln!(out, "c[{}] = {}", idx.join(","), ff(c))?;
            }
        }
        if zeros > 0 {
            writeln!(out, "# zero coefficients: {zeros}")?;
        }
    }
    Ok(0)
}

fn cmd_contains(args: ContainsArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let theta = parse_f64_list(&args.theta, "theta")?;
    let v = classify(&model, &theta, args.tol)?;
    if args.json {
        println!(
            "{}",
            json!({
                "classification": v.classification.to_string(),
                "margin": v.margin,
                "log_radius": v.log_radius(),
                "theta_bar": v.theta_bar,
                "r_s": v.radius,
                "s": v.direction.values(),
            })
        );
    } else {
        println!(
            "{} margin={} log_radius={} theta_bar={}",
            v.classification,
            ff(v.margin),
            ff(v.log_radius()),
            ff(v.theta_bar)
        );
    }
    Ok(if v.classification == Membership::Inside {
        0
    } else {
        1
    })
}

fn cmd_boundary(args: BoundaryArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let mut ranges = vec![parse_range(&args.range)?];
    if let Some(r2) = &args.range2 {
        ranges.push(parse_range(r2)?);
    }
    let rows = boundary_grid(&model, &ranges)?;
    let mut out: BufWriter<Box<dyn Write>> = match &args.out {
        Some(path) => BufWriter::new(Box::new(
            fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => BufWriter::new(Box::new(io::stdout())),
    };
    let mut header: Vec<String> = (1..=ranges.len()).map(|i| format!("s{i}")).collect();
    header.extend((1..=model.n()).map(|i| format!("theta{i}")));
    header.push("check_A".into());
    writeln!(out, "{}", header.join(","))?;
    for row in &rows {
        let mut cells: Vec<String> = row.params.iter().map(|v| ff(*v)).collect();
        cells.extend(row.theta.iter().map(|v| ff(*v)));
        cells.push(ff(row.residual));
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(0)
}

fn cmd_pgf(args: PgfArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let spec = match build_spec(model, &args.a, args.lambda)? {
        SpecOutcome::Ready(spec) => spec,
        SpecOutcome::Negative(msg) => {
            println!("{msg}");
            return Ok(1);
        }
    };
    let pgf = normalized_pgf(&spec);
    if args.json {
        let terms: serde_json::Map<String, serde_json::Value> = pgf
            .terms()
            .map(|(t, v)| (t.to_string(), json!(v)))
            .collect();
        println!(
            "{}",
            json!({"n": pgf.n(), "constant": pgf.constant(), "terms": terms})
        );
    } else {
        println!("const = {}", ff(pgf.constant()));
        for (t, v) in pgf.terms() {
            println!("z[{t}] = {}", ff(v));
        }
    }
    Ok(0)
}

fn cmd_pmf(args: PmfArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let spec = match build_spec(model, &args.a, args.lambda)? {
        SpecOutcome::Ready(spec) => spec,
        SpecOutcome::Negative(msg) => {
            println!("{msg}");
            return Ok(1);
        }
    };
    let table = pmf(&spec, args.degree)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.json {
        let entries: Vec<serde_json::Value> = table
            .entries()
            .iter()
            .map(|(alpha, p)| json!({"alpha": alpha, "p": p}))
            .collect();
        writeln!(
            out,
            "{}",
            json!({
                "lambda": spec.lambda(),
                "degree": args.degree,
                "entries": entries,
                "total": table.total_mass(),
                "tail_mass": table.tail_mass(),
            })
        )?;
    } else if args.csv {
        let header: Vec<String> = (1..=table.n()).map(|i| format!("alpha{i}")).collect();
        writeln!(out, "{},p", header.join(","))?;
        for (alpha, p) in table.entries() {
            let idx: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
            writeln!(out, "{},{}", idx.join(","), ff(*p))?;
        }
    } else {
        for (alpha, p) in table.entries() {
            let idx: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
            writeln!(out, "p[{}] = {}", idx.join(","), ff(*p))?;
        }
        writeln!(out, "total = {}", ff(table.total_mass()))?;
        writeln!(out, "tail_mass = {}", ff(table.tail_mass()))?;
        let mu = mean(&spec);
        let cells: Vec<String> = mu.iter().map(|v| ff(*v)).collect();
        writeln!(out, "mean = {}", cells.join(","))?;
    }
    Ok(0)
}

fn cmd_sample(args: SampleArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let spec = match build_spec(model, &args.a, args.lambda)? {
        SpecOutcome::Ready(spec) => spec,
        SpecOutcome::Negative(msg) => {
            println!("{msg}");
            return Ok(1);
        }
    };
    let draws = sample(&spec, args.count, args.seed, args.degree)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.json {
        writeln!(out, "{}", json!({ "draws": draws }))?;
    } else {
        let header: Vec<String> = (1..=spec.model().n()).map(|i| format!("x{i}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for alpha in &draws {
            let cells: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_directional(args: DirectionalArgs) -> anyhow::Result<i32> {
    let model = load_model(&args.model.model)?;
    let s = negmnom::DirectionVector::new(parse_f64_list(&args.s, "direction")?)?;
    let u = directional_coefficients(&model, &s, args.lambda, args.count)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.csv {
        writeln!(out, "k,u")?;
        for (k, v) in u.iter().enumerate() {
            writeln!(out, "{k},{}", ff(*v))?;
        }
    } else {
        for (k, v) in u.iter().enumerate() {
            writeln!(out, "u[{k}] = {}", ff(*v))?;
        }
    }
    Ok(0)
}
