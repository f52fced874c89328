mod literal;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use dinikit::bounds::{bound_value, hypothesis, BoundKind, Theorem};
use dinikit::dini::{eval_partial, eval_w, CorollaryFn, CorollaryId, SeriesOptions};
use dinikit::plot::{default_path, emit, image_domain, write_svg, Format};
use dinikit::rational::{self, ExactValue};
use dinikit::sampling::{DiskSampling, MAX_RADIUS};
use dinikit::verifier::{catalog_cases, find_case, run_case, Verdict, VerificationReport};
use dinikit::{Deriv, DiniError, Engine, Exec, Params};

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EVAL: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "dinikit",
    version,
    about = "Normalized Dini functions: evaluation, bounds, verification and plots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate w, w' or a partial sum at one point.
    Eval(EvalArgs),
    /// Print the exact bound constants and hypothesis slacks.
    Bounds(BoundsArgs),
    /// Run the verification catalog and emit a JSON report.
    Verify(VerifyArgs),
    /// Write image-domain plots of F1..F6.
    Plot(PlotArgs),
    /// Summarize a saved report, or run the catalog and summarize it.
    Report(ReportArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// alpha > 0, as a decimal or a/b
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    /// Order v > -1, as a decimal or a/b
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    v: String,
}

impl ParamArgs {
    fn params(&self, m: usize) -> Result<Params, Failure> {
        let alpha = rational::parse(&self.alpha)?;
        let v = rational::parse(&self.v)?;
        Ok(Params::new(alpha, v, m)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Human,
    Json,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Point in the unit disk, e.g. 0.25+0i
    #[arg(long, allow_hyphen_values = true, value_parser = literal::parse_complex)]
    z: Complex64,
    /// 0 for w, 1 for w'
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=1))]
    deriv: u32,
    #[arg(long, default_value_t = dinikit::dini::DEFAULT_TOL, allow_hyphen_values = true)]
    tol: f64,
    /// Evaluate the partial sum with m terms instead of the full series
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "human")]
    format: OutFormat,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "human")]
    format: OutFormat,
}

#[derive(Args)]
struct GridArgs {
    /// Number of radii
    #[arg(long, default_value_t = 64)]
    radii: usize,
    /// Number of angles per radius
    #[arg(long, default_value_t = 720)]
    angles: usize,
    /// Largest radius, at most 0.999
    #[arg(long, default_value_t = MAX_RADIUS, allow_hyphen_values = true)]
    rmax: f64,
    /// Add a ring at radius 1e-3
    #[arg(long)]
    zero_ring: bool,
    /// Evaluate on one thread
    #[arg(long)]
    sequential: bool,
}

impl GridArgs {
    fn spec(&self) -> Result<DiskSampling, Failure> {
        Ok(DiskSampling::uniform(self.radii, self.rmax, self.angles)?.with_zero_neighborhood(self.zero_ring))
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single catalog case
    #[arg(long)]
    case: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Svg,
    Csv,
    Both,
}

#[derive(Args)]
struct PlotArgs {
    /// f1..f6
    #[arg(long = "fn", value_parser = parse_fn)]
    function: CorollaryId,
    #[arg(long, value_enum, default_value = "both")]
    format: PlotFormat,
    /// Output directory
    #[arg(long, default_value = ".")]
    output: PathBuf,
    /// Boundary radii, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 0.75, MAX_RADIUS])]
    radii: Vec<f64>,
    /// Points per boundary circle
    #[arg(long, default_value_t = 200)]
    angles: usize,
    /// Also draw every sample as a dot
    #[arg(long)]
    scatter: bool,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON report written by `verify`; runs the catalog when absent
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
}

fn parse_fn(s: &str) -> Result<CorollaryId, String> {
    CorollaryId::parse(s).ok_or_else(|| format!("unknown function {s:?}; expected f1..f6"))
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<DiniError> for Failure {
    fn from(e: DiniError) -> Self {
        let code = match e {
            DiniError::AlphaNotPositive(_)
            | DiniError::OrderBelowFloor { .. }
            | DiniError::BadTolerance(_)
            | DiniError::InvalidSampling(_)
            | DiniError::Parse { .. }
            | DiniError::ZeroIndex => EXIT_USAGE,
            DiniError::Io { .. } | DiniError::Csv { .. } => EXIT_IO,
            _ => EXIT_EVAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn engine(sequential: bool) -> Result<Engine, Failure> {
    Ok(Engine {
        exec: if sequential { Exec::Sequential } else { Exec::Parallel },
        series: SeriesOptions::from_env()?,
    })
}

fn fmt_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{:.17}-{:.17}i", z.re, -z.im)
    } else {
        format!("{:.17}+{:.17}i", z.re, z.im)
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn eval_cmd(args: EvalArgs) -> Result<u8, Failure> {
    let deriv = Deriv::from_order(args.deriv).expect("range checked");
    let params = args.params.params(args.m.unwrap_or(0))?;
    let mut opts = SeriesOptions::from_env()?;
    opts.tol = args.tol;
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(DiniError::BadTolerance(args.tol).into());
    }
    let name = match deriv {
        Deriv::Value => "w",
        Deriv::First => "w'",
    };
    if let Some(m) = args.m {
        let value = eval_partial(&params, args.z, deriv);
        match args.format {
            OutFormat::Human => println!("({name})_{m}({}) = {}", fmt_complex(args.z), fmt_complex(value)),
            OutFormat::Json => print_json(&json!({
                "params": params,
                "z": {"re": args.z.re, "im": args.z.im},
                "deriv": args.deriv,
                "partial_terms": m,
                "value": {"re": value.re, "im": value.im},
            })),
        }
        return Ok(0);
    }
    let res = eval_w(&params, args.z, deriv, opts)?;
    match args.format {
        OutFormat::Human => {
            println!("{name}({}) = {}", fmt_complex(args.z), fmt_complex(res.value));
            println!("terms used: {}", res.terms_used);
            println!("tail bound: {:e}", res.tail_bound);
        }
        OutFormat::Json => print_json(&json!({
            "params": params,
            "z": {"re": args.z.re, "im": args.z.im},
            "deriv": args.deriv,
            "value": {"re": res.value.re, "im": res.value.im},
            "terms_used": res.terms_used,
            "tail_bound": res.tail_bound,
        })),
    }
    Ok(0)
}

fn bounds_cmd(args: BoundsArgs) -> Result<u8, Failure> {
    let params = args.params.params(0)?;
    let (a, v) = (params.alpha(), params.v());
    let mut rows = Vec::new();
    for kind in BoundKind::ALL {
        rows.push((kind.name(), bound_value(kind, a, v)?));
    }
    let hyps = [Theorem::T21, Theorem::T22].map(|t| (t, hypothesis(t, a, v)));
    match args.format {
        OutFormat::Human => {
            println!("{}", params.label());
            for (name, q) in &rows {
                println!("{name:<22} {:<24} {:.12}", rational::display(q), rational::to_f64(q));
            }
            for (t, h) in &hyps {
                let state = if h.satisfied { "satisfied" } else { "not satisfied" };
                println!("hypothesis {t:?}: {state} (slack {})", rational::display(&h.slack));
            }
        }
        OutFormat::Json => {
            let bounds: serde_json::Map<String, Value> = rows
                .iter()
                .map(|(n, q)| {
                    (
                        n.to_string(),
                        serde_json::to_value(ExactValue(q.clone())).expect("serializable"),
                    )
                })
                .collect();
            let hyp: serde_json::Map<String, Value> = hyps
                .iter()
                .map(|(t, h)| (format!("{t:?}"), serde_json::to_value(h).expect("serializable")))
                .collect();
            print_json(&json!({"params": params, "bounds": bounds, "hypotheses": hyp}));
        }
    }
    Ok(0)
}

fn run_reports(case: Option<&str>, grid: &GridArgs) -> Result<Vec<VerificationReport>, Failure> {
    let spec = grid.spec()?;
    let engine = engine(grid.sequential)?;
    let cases = match case {
        Some(id) => vec![find_case(id).ok_or_else(|| Failure {
            code: EXIT_USAGE,
            message: format!("unknown case {id:?}"),
        })?],
        None => catalog_cases(),
    };
    Ok(cases.iter().map(|c| run_case(c, &spec, &engine)).collect())
}

fn exit_for(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    let vs: Vec<Verdict> = verdicts.into_iter().collect();
    if vs.contains(&Verdict::EvaluationFailed) {
        EXIT_EVAL
    } else if vs.contains(&Verdict::Violated) {
        EXIT_VIOLATED
    } else {
        0
    }
}

fn summary_table(rows: &[(String, String, f64, f64, String)]) -> String {
    let mut s = format!(
        "{:<28} {:>14} {:>14} {:>14}  {}\n",
        "case", "bound", "empirical", "margin", "verdict"
    );
    for (id, bound, emp, margin, verdict) in rows {
        s.push_str(&format!(
            "{id:<28} {bound:>14} {emp:>14.8} {margin:>14.3e}  {verdict}\n"
        ));
    }
    s
}

fn table_rows(reports: &[VerificationReport]) -> Vec<(String, String, f64, f64, String)> {
    reports
        .iter()
        .map(|r| {
            let verdict = serde_json::to_value(r.verdict).expect("serializable");
            (
                r.case_id.clone(),
                rational::display(&r.claimed_bound),
                r.empirical,
                r.margin,
                verdict.as_str().unwrap_or_default().to_string(),
            )
        })
        .collect()
}

fn verify_cmd(args: VerifyArgs) -> Result<u8, Failure> {
    let reports = run_reports(args.case.as_deref(), &args.grid)?;
    let text = match args.format {
        OutFormat::Json => serde_json::to_string_pretty(&reports).expect("serializable") + "\n",
        OutFormat::Human => summary_table(&table_rows(&reports)),
    };
    match &args.output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e))?,
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    Ok(exit_for(reports.iter().map(|r| r.verdict)))
}

fn verdict_from_str(s: &str) -> Option<Verdict> {
    Some(match s {
        "CONFIRMED" => Verdict::Confirmed,
        "VIOLATED" => Verdict::Violated,
        "HYPOTHESIS_FAILED" => Verdict::HypothesisFailed,
        "EVALUATION_FAILED" => Verdict::EvaluationFailed,
        _ => return None,
    })
}

fn report_cmd(args: ReportArgs) -> Result<u8, Failure> {
    let Some(path) = &args.input else {
        let reports = run_reports(None, &args.grid)?;
        print!("{}", summary_table(&table_rows(&reports)));
        return Ok(exit_for(reports.iter().map(|r| r.verdict)));
    };
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: not a report: {e}", path.display()),
    })?;
    let Some(items) = doc.as_array() else {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("{}: expected a JSON array of reports", path.display()),
        });
    };
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for item in items {
        let num = |key: &str| item.get(key).and_then(Value::as_f64).unwrap_or(f64::NAN);
        let bound = &item["claimed_bound"];
        let verdict = item["verdict"].as_str().unwrap_or("?").to_string();
        verdicts.extend(verdict_from_str(&verdict));
        rows.push((
            item["case_id"].as_str().unwrap_or("?").to_string(),
            match (bound["num"].as_str(), bound["den"].as_str()) {
                (Some(n), Some("1")) => n.to_string(),
                (Some(n), Some(d)) => format!("{n}/{d}"),
                _ => "?".to_string(),
            },
            num("empirical"),
            num("margin"),
            verdict,
        ));
    }
    print!("{}", summary_table(&rows));
    Ok(exit_for(verdicts))
}

fn plot_cmd(args: PlotArgs) -> Result<u8, Failure> {
    let spec = DiskSampling::explicit(args.radii.clone(), args.angles)?;
    let engine = engine(args.sequential)?;
    let f = CorollaryFn::new(args.function);
    let grid = image_domain(&f, &spec, &engine)?;
    fs::create_dir_all(&args.output).map_err(|e| io_failure(&args.output, e))?;
    let formats: &[Format] = match args.format {
        PlotFormat::Svg => &[Format::Svg],
        PlotFormat::Csv => &[Format::Csv],
        PlotFormat::Both => &[Format::Svg, Format::Csv],
    };
    for fmt in formats {
        let path = default_path(&args.output, args.function, *fmt);
        match fmt {
            Format::Svg => write_svg(&grid, &path, args.scatter)?,
            Format::Csv => emit(&grid, Format::Csv, &path)?,
        }
        println!("wrote {}", path.display());
    }
    println!("points: {}", grid.points.len());
    match grid.min_real_part() {
        Some((m, at)) => println!("min Re: {m:.12} at z = {}", fmt_complex(at)),
        None => println!("min Re: none"),
    }
    println!(
        "claimed bound: {} ({:.12})",
        rational::display(&grid.claimed_bound),
        rational::to_f64(&grid.claimed_bound)
    );
    println!("flagged: {}", grid.flagged());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval_cmd(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Plot(a) => plot_cmd(a),
        Command::Report(a) => report_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
