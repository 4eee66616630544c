use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use symterp::classify::classify_window;
use symterp::exactfield::{parse_ratfunc, parse_rational};
use symterp::identities;
use symterp::newton;
use symterp::perfect::extra_vanishing_check;
use symterp::sympoly::parse_sympoly;
use symterp::{Error, Grid, GridSpec, Partition, Scalar, SymPoly, Window};

#[derive(Parser)]
#[command(name = "symterp", version, about = "Exact Newton interpolation of symmetric polynomials on grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the interpolation polynomial P_mu.
    Compute {
        #[command(flatten)]
        grid: GridArg,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print P_mu evaluated at the knot of lambda.
    Eval {
        #[command(flatten)]
        grid: GridArg,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Expand a symmetric polynomial in the interpolation basis.
    Expand {
        #[command(flatten)]
        grid: GridArg,
        /// File holding the polynomial in `(c)*m[..] + ...` form.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Report extra-vanishing violations up to a degree.
    CheckPerfect {
        #[command(flatten)]
        grid: GridArg,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fit a window of grid values to a perfect-grid family.
    Classify {
        /// File holding a JSON array of rows of rational values.
        #[arg(long)]
        window: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the identity suites (all of them by default).
    Verify {
        suite: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct GridArg {
    /// Grid spec: a JSON file or inline JSON.
    #[arg(long)]
    grid: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fully reduce rational-function coefficients.
    #[arg(long)]
    canonical: bool,
    /// Term order for polynomial output.
    #[arg(long, value_enum, default_value_t = Order::Asc)]
    order: Order,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Asc,
    Desc,
}

enum Failure {
    Lib(Error),
    Io(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse(_)) | Failure::Io(_) => 3,
            Failure::Lib(_) => 2,
            Failure::Verify(_) => 4,
        }
    }

    fn record(&self) -> Value {
        let (kind, message) = match self {
            Failure::Lib(e) => (e.kind(), e.to_string()),
            Failure::Io(m) => ("Io", m.clone()),
            Failure::Verify(m) => ("VerificationFailed", m.clone()),
        };
        json!({ "error": kind, "message": message, "exit": self.code() })
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_grid(arg: &GridArg) -> std::result::Result<GridSpec, Failure> {
    let text = if arg.grid.trim_start().starts_with('{') { arg.grid.clone() } else { read(Path::new(&arg.grid))? };
    Ok(GridSpec::from_json(&text)?)
}

fn partition(s: &str) -> std::result::Result<Partition, Failure> {
    Ok(s.parse()?)
}

/// Builds the grid over the rationals when possible, otherwise over
/// rational functions in the named parameters, and runs `$body` with the
/// grid bound to `$g` and the matching scalar parser bound to `$p`.
macro_rules! with_grid {
    ($spec:expr, |$g:ident, $p:ident| $body:expr) => {
        if $spec.is_rational() {
            let $p = parse_rational;
            let $g = $spec.build($p)?;
            $body
        } else {
            let $p = parse_ratfunc;
            let $g = $spec.build($p)?;
            $body
        }
    };
}

fn scalar_text<S: Scalar>(s: &S, o: &OutputArgs) -> String {
    if o.canonical {
        s.canonical().to_string()
    } else {
        s.to_string()
    }
}

fn poly_text<S: Scalar>(p: &SymPoly<S>, o: &OutputArgs) -> String {
    let p = if o.canonical { p.canonical() } else { p.clone() };
    p.to_text(matches!(o.order, Order::Desc))
}

fn compute<S: Scalar>(g: &Grid<S>, mu: &Partition, o: &OutputArgs) -> Outcome {
    Ok(poly_text(&newton::interpolation_polynomial(g, mu)?, o))
}

fn eval<S: Scalar>(g: &Grid<S>, mu: &Partition, lambda: &Partition, o: &OutputArgs) -> Outcome {
    let p = newton::interpolation_polynomial(g, mu)?;
    Ok(scalar_text(&p.eval(&g.knot(lambda)?)?, o))
}

fn expand<S: Scalar>(
    g: &Grid<S>,
    text: &str,
    parse: impl Fn(&str) -> symterp::Result<S>,
    jobs: usize,
    o: &OutputArgs,
) -> Outcome {
    let f = parse_sympoly(g.n() + 1, text, parse)?;
    let mut terms: Vec<String> =
        newton::expand(&f, g, jobs)?.iter().map(|(mu, c)| format!("({})*P{mu}", scalar_text(c, o))).collect();
    if terms.is_empty() {
        return Ok("0".into());
    }
    if matches!(o.order, Order::Desc) {
        terms.reverse();
    }
    Ok(terms.join(" + "))
}

fn check_perfect<S: Scalar>(g: &Grid<S>, degree: usize, jobs: usize) -> Outcome {
    Ok(extra_vanishing_check(g, degree, jobs)?.to_text().trim_end().to_string())
}

fn window_scalar(v: &Value) -> std::result::Result<String, Failure> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("window entry {v} is not a string or integer")).into()),
    }
}

fn classify(path: &Path) -> Outcome {
    let rows: Vec<Vec<Value>> = serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("window: {e}")))?;
    let mut values = Vec::with_capacity(rows.len());
    for row in &rows {
        let texts = row.iter().map(window_scalar).collect::<std::result::Result<Vec<_>, _>>()?;
        if texts.iter().any(|t| parse_rational(t).is_err()) && texts.iter().all(|t| parse_ratfunc(t).is_ok()) {
            return Err(Error::NotParametric.into());
        }
        values.push(texts.iter().map(|t| parse_rational(t)).collect::<symterp::Result<Vec<_>>>()?);
    }
    let w = Window::new(values)?;
    let c = classify_window(&w)?;
    Ok(serde_json::to_string_pretty(&c.to_json()).expect("serializable"))
}

fn verify(suite: Option<&str>) -> Outcome {
    let names = identities::suite_names();
    let selected: Vec<&str> = match suite {
        None => names,
        Some(s) if names.contains(&s) => vec![s],
        Some(s) => return Err(Error::Parse(format!("unknown suite `{s}`")).into()),
    };
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for name in selected {
        let o = identities::run_suite(name)?;
        if o.passed {
            lines.push(format!("{name}: PASS"));
        } else {
            lines.push(format!("{name}: FAIL {}", o.detail));
            failed.push(name);
        }
    }
    let text = lines.join("\n");
    if failed.is_empty() {
        Ok(text)
    } else {
        println!("{text}");
        Err(Failure::Verify(format!("failed suites: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let (text, out) = match &cli.command {
        Command::Compute { grid, mu, out } => {
            let mu = partition(mu)?;
            (with_grid!(load_grid(grid)?, |g, _p| compute(&g, &mu, out))?, out)
        }
        Command::Eval { grid, mu, lambda, out } => {
            let (mu, lambda) = (partition(mu)?, partition(lambda)?);
            (with_grid!(load_grid(grid)?, |g, _p| eval(&g, &mu, &lambda, out))?, out)
        }
        Command::Expand { grid, poly, jobs, out } => {
            let text = read(poly)?;
            (with_grid!(load_grid(grid)?, |g, p| expand(&g, &text, p, *jobs, out))?, out)
        }
        Command::CheckPerfect { grid, degree, jobs, out } => {
            (with_grid!(load_grid(grid)?, |g, _p| check_perfect(&g, *degree, *jobs))?, out)
        }
        Command::Classify { window, out } => (classify(window)?, out),
        Command::Verify { suite, out } => (verify(suite.as_deref())?, out),
    };
    match &out.out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            e.print().ok();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::Lib(Error::Parse(e.to_string().trim_end().to_string()));
            eprintln!("{}", f.record());
            return ExitCode::from(f.code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.record());
            ExitCode::from(f.code())
        }
    }
}
