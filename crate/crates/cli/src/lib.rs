//! Subcommand dispatch for `rct`.
//!
//! [`run`] takes the argument list and returns the exit code with the text
//! written to stdout and stderr, so the golden corpus can drive it without
//! spawning processes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rct_core::chow::{self, MHForm};
use rct_core::critical::{self, RootVerdict};
use rct_core::divisors::{self, Divisor, Verdict};
use rct_core::magic_fan::{self, ZeroCycle};
use rct_core::rational::{parse_rational, to_f64};
use rct_core::sturm;
use rct_core::{parse_poly, Rational, SparsePoly, UniPoly};

pub mod corpus;

#[derive(Parser, Debug)]
#[command(name = "rct", version, about = "Exact real-root certificates, Chow forms and divisor tools")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sturm sequences and real roots of univariate polynomials.
    #[command(subcommand)]
    Sturm(SturmCmd),
    /// Critical polynomials of monic polynomials of degree d.
    #[command(subcommand)]
    Critical(CriticalCmd),
    /// Chow forms of points and lines, and the scaling action.
    #[command(subcommand)]
    Chow(ChowCmd),
    /// Divisors and their membership tests.
    #[command(subcommand)]
    Div(DivCmd),
    /// The fan map on 0-cycles.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Golden-output regression corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand, Debug)]
pub enum SturmCmd {
    /// Count distinct real roots, on the line or in the open interval (a, b).
    Count {
        #[arg(long)]
        poly: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        interval: Option<Vec<String>>,
    },
    /// Isolate every distinct real root by bisection.
    Isolate {
        #[arg(long)]
        poly: String,
        /// Interval width, a rational.
        #[arg(long, default_value = "1/1000000000000")]
        prec: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CriticalCmd {
    /// Print F_2, …, F_d in factored form.
    Gen {
        #[arg(short = 'd', long)]
        degree: usize,
        /// Also print the expanded products.
        #[arg(long)]
        expanded: bool,
        /// JSON output (the default).
        #[arg(long)]
        json: bool,
    },
    /// Decide whether x^d + a1 x^(d-1) + … + ad has d distinct real roots.
    Test {
        /// Degree; must match the number of coefficients when given.
        #[arg(short = 'd', long)]
        degree: Option<usize>,
        /// Comma-separated a1,…,ad.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
}

#[derive(Args, Debug)]
pub struct FormInput {
    /// JSON file holding {"N", "r", "d", "m", "form"}.
    #[arg(long, conflicts_with = "expr")]
    form: Option<PathBuf>,
    /// Form in the variables u<i>_<j>.
    #[arg(long)]
    expr: Option<String>,
    /// Ambient dimension N (with --expr; default: largest coordinate index).
    #[arg(long = "ambient")]
    ambient: Option<usize>,
    /// Split index m for the scaling action.
    #[arg(short = 'm', long)]
    m: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ChowCmd {
    /// Chow form of a 0-cycle: points "1,2;3,-1/2".
    Points {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Comma-separated multiplicities (default all 1).
        #[arg(long)]
        mult: Option<String>,
    },
    /// Chow form of the linear cycle spanned by the points.
    Line {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// The s with ^tF = t^s F, if any.
    Eigen(FormInput),
    /// Whether ^tF = t^((m+1)d) F.
    Suspension {
        #[command(flatten)]
        input: FormInput,
        /// Do not flag low eigen degrees as inconsistent.
        #[arg(long)]
        improper: bool,
    },
    /// The taffy deformation H(t), optionally at one t.
    Taffy {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Check F(Au) = det(A)^d F(u) for a matrix "a,b;c,d".
    Detcheck {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Args, Debug)]
pub struct DivInput {
    /// JSON file holding {"n", "d", "f"}.
    #[arg(long, conflicts_with = "f")]
    divisor: Option<PathBuf>,
    /// Form in x0, …, xn.
    #[arg(long)]
    f: Option<String>,
    /// Number n of coordinates besides x0 (default: largest index).
    #[arg(short = 'n', long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum DivCmd {
    /// Rescale so that the coefficient of x0^d is 1.
    Normalize(DivInput),
    /// f_t = t^d f(x0/t, x1, …, xn).
    Scale {
        #[command(flatten)]
        input: DivInput,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// The product family of degree 2k and the same times x0.
    Family {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'k', long)]
        k: usize,
    },
    /// Every line through (1:0:…:0) meets D in d distinct real points.
    InE {
        #[command(flatten)]
        input: DivInput,
        /// Number of sphere samples (default 2000 for n = 2, 20000 beyond).
        #[arg(long)]
        grid: Option<usize>,
        /// Include every sample certificate.
        #[arg(long)]
        verbose: bool,
    },
    /// Membership in E together with f_t(1,1,0,…,0) != 0 on (0, 1].
    InDiv2 {
        #[command(flatten)]
        input: DivInput,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        verbose: bool,
    },
    /// ε = δ/(2M) for a positive form H in x1..xn.
    Margin {
        #[arg(long)]
        h: String,
        #[arg(short = 'n', long)]
        n: Option<usize>,
        /// Lower bound for H on the unit sphere (default: from the grid).
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FanCmd {
    /// Run the fan map; defaults to the built-in two-point example.
    Demo {
        /// JSON file holding {"points": [{"coords": [...], "mult": 1}, ...]}.
        #[arg(long)]
        cycle: Option<PathBuf>,
        /// JSON divisor file.
        #[arg(long)]
        divisor: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        t: String,
        /// Comma-separated decreasing t values for a limit run.
        #[arg(long)]
        limit: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    /// Run every case in a corpus directory.
    Run {
        dir: PathBuf,
        /// Rewrite the expected outputs instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

/// Exit code, stdout and stderr of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of a command: a JSON value and whether a yes/no question was
/// answered negatively.
struct Answer {
    value: Value,
    negative: bool,
}

fn yes(value: Value) -> Answer {
    Answer { value, negative: false }
}

type CmdResult = Result<Answer, String>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    if let Command::Corpus(CorpusCmd::Run { dir, bless }) = &cli.command {
        return corpus::run_corpus(dir, *bless);
    }
    match dispatch(&cli.command) {
        Ok(answer) => Outcome {
            code: i32::from(answer.negative),
            stdout: render(&answer.value, cli.format),
            stderr: String::new(),
        },
        Err(msg) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")),
        Format::Table => {
            let mut out = String::new();
            flatten("", v, &mut out);
            out
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}\t{s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}\t{other}");
        }
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Sturm(c) => sturm_cmd(c),
        Command::Critical(c) => critical_cmd(c),
        Command::Chow(c) => chow_cmd(c),
        Command::Div(c) => div_cmd(c),
        Command::Fan(c) => fan_cmd(c),
        Command::Corpus(_) => unreachable!("handled by run"),
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).map_err(|e| e.to_string())
}

fn rationals(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(rational).collect()
}

/// "1,2;3,4" into rows.
fn rows(s: &str) -> Result<Vec<Vec<Rational>>, String> {
    s.split(';').map(rationals).collect()
}

fn poly(s: &str) -> Result<SparsePoly, String> {
    parse_poly(s).map_err(|e| e.to_string())
}

fn strs(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn sturm_cmd(cmd: &SturmCmd) -> CmdResult {
    match cmd {
        SturmCmd::Count { poly: text, interval } => {
            let (f, var) = UniPoly::from_sparse_any(&poly(text)?).map_err(|e| e.to_string())?;
            let count = match interval.as_deref() {
                None => sturm::count_distinct_roots_total(&f),
                Some([a, b]) => sturm::count_distinct_roots_in(&f, &rational(a)?, &rational(b)?),
                Some(_) => return Err("--interval takes two endpoints".into()),
            }
            .map_err(|e| e.to_string())?;
            let seq: Vec<String> = match f.degree() {
                Some(d) if d > 0 => sturm::sturm_sequence(&f)
                    .map_err(|e| e.to_string())?
                    .polys
                    .iter()
                    .map(|p| p.to_sparse(&var).to_string())
                    .collect(),
                _ => Vec::new(),
            };
            Ok(yes(json!({ "variable": var, "count": count, "sequence": seq })))
        }
        SturmCmd::Isolate { poly: text, prec } => {
            let (f, var) = UniPoly::from_sparse_any(&poly(text)?).map_err(|e| e.to_string())?;
            let eps = rational(prec)?;
            if eps <= Rational::from_integer(0.into()) {
                return Err("precision must be positive".into());
            }
            let roots = sturm::isolate_roots_bisection(&f, &eps).map_err(|e| e.to_string())?;
            let intervals: Vec<[String; 2]> = roots.iter().map(|r| [r.lo.to_string(), r.hi.to_string()]).collect();
            let approx: Vec<f64> = roots.iter().map(|r| to_f64(&r.midpoint())).collect();
            Ok(yes(json!({ "variable": var, "count": roots.len(), "intervals": intervals, "approx": approx })))
        }
    }
}

fn critical_cmd(cmd: &CriticalCmd) -> CmdResult {
    match cmd {
        CriticalCmd::Gen { degree, expanded, .. } => {
            let set = critical::critical_polynomials(*degree).map_err(|e| e.to_string())?;
            let polys: Vec<Value> = set
                .polys
                .iter()
                .map(|p| {
                    let factors: Vec<Value> = p
                        .factors
                        .iter()
                        .map(|f| json!({ "text": f.poly.to_string(), "poly": f.poly, "exp": f.exp }))
                        .collect();
                    let mut v = json!({
                        "j": p.j,
                        "shd": p.shd().ok(),
                        "scale": p.scale.to_string(),
                        "factors": factors,
                    });
                    if *expanded {
                        let e = p.expand();
                        v["expanded"] = json!({ "text": e.to_string(), "poly": e });
                    }
                    v
                })
                .collect();
            Ok(yes(json!({ "d": set.d, "polys": polys })))
        }
        CriticalCmd::Test { degree, coeffs } => {
            let a = rationals(coeffs)?;
            if degree.is_some_and(|d| d != a.len()) {
                return Err(format!("expected {} coefficients, got {}", degree.unwrap_or(0), a.len()));
            }
            let verdict = critical::has_d_distinct_real_roots(&a).map_err(|e| e.to_string())?;
            let count = critical::direct_count(&a);
            let signs = if a.len() >= 2 {
                critical::critical_polynomials(a.len()).map_err(|e| e.to_string())?.signs_at(&a)
            } else {
                Vec::new()
            };
            let all_real = match verdict {
                RootVerdict::AllDistinctReal => true,
                RootVerdict::NotAllDistinctReal => false,
                RootVerdict::Degenerate => count == a.len(),
            };
            Ok(Answer {
                value: json!({
                    "verdict": verdict,
                    "critical_signs": signs,
                    "sturm_count": count,
                    "d_distinct_real_roots": all_real,
                }),
                negative: !all_real,
            })
        }
    }
}

fn largest_index(p: &SparsePoly, parse: impl Fn(&str) -> Option<usize>) -> usize {
    p.vars().iter().filter_map(|v| parse(v)).max().unwrap_or(0)
}

fn load_form(input: &FormInput) -> Result<MHForm, String> {
    let form = match (&input.form, &input.expr) {
        (Some(path), _) => read_json::<MHForm>(path)?,
        (None, Some(expr)) => {
            let p = poly(expr)?;
            let n = input.ambient.unwrap_or_else(|| largest_index(&p, |v| chow::parse_var(v).map(|(_, j)| j)));
            let r = largest_index(&p, |v| chow::parse_var(v).map(|(i, _)| i));
            let d = p
                .homogeneous_degree_in(&(0..=n).map(|j| chow::var_name(0, j)).collect::<Vec<_>>())
                .ok_or("form is not homogeneous in group 0")?;
            MHForm::new(n, r, d, 0, p).map_err(|e| e.to_string())?
        }
        (None, None) => return Err("give --form FILE or --expr".into()),
    };
    match input.m {
        Some(m) => form.with_split(m).map_err(|e| e.to_string()),
        None => Ok(form),
    }
}

fn form_json(f: &MHForm) -> Value {
    json!({ "N": f.ambient(), "r": f.dim(), "d": f.degree(), "m": f.split(), "form": f.form().to_string() })
}

fn chow_cmd(cmd: &ChowCmd) -> CmdResult {
    match cmd {
        ChowCmd::Points { points, mult } => {
            let pts = rows(points)?;
            let mults: Vec<u32> = match mult {
                Some(m) => m.split(',').map(|x| x.trim().parse().map_err(|e| format!("{e}"))).collect::<Result<_, _>>()?,
                None => vec![1; pts.len()],
            };
            if mults.len() != pts.len() {
                return Err("one multiplicity per point".into());
            }
            let cycle: Vec<(Vec<Rational>, u32)> = pts.into_iter().zip(mults).collect();
            let f = chow::chow_of_points(&cycle).map_err(|e| e.to_string())?;
            Ok(yes(form_json(&f)))
        }
        ChowCmd::Line { points } => {
            let f = chow::chow_of_linear(&rows(points)?).map_err(|e| e.to_string())?;
            Ok(yes(form_json(&f)))
        }
        ChowCmd::Eigen(input) => {
            let f = load_form(input)?;
            let e = chow::t_expand(&f).map_err(|e| e.to_string())?;
            let coeffs: Vec<String> = e.coeffs.iter().map(ToString::to_string).collect();
            Ok(yes(json!({
                "eigen_degree": chow::eigenform_degree(&f),
                "t_powers": e.nonzero_powers(),
                "coefficients": coeffs,
            })))
        }
        ChowCmd::Suspension { input, improper } => {
            let f = load_form(input)?;
            let rep = chow::is_suspension(&f, !improper);
            Ok(Answer {
                value: json!({
                    "is_suspension": rep.is_suspension,
                    "eigen_degree": rep.eigen_degree,
                    "expected": rep.expected,
                    "inconsistent": rep.inconsistent,
                }),
                negative: !rep.is_suspension,
            })
        }
        ChowCmd::Taffy { input, t } => {
            let f = load_form(input)?;
            let h = chow::taffy(&f).map_err(|e| e.to_string())?;
            let zero = Rational::from_integer(0.into());
            let end = h.at(&zero);
            let mut v = json!({
                "top": h.top(),
                "H": h.as_polynomial().to_string(),
                "H0": end.form().to_string(),
                "H0_is_suspension": chow::is_suspension(&end, true).is_suspension,
                "constant": h.is_constant(),
            });
            if let Some(t) = t {
                v["Ht"] = json!(h.at(&rational(t)?).form().to_string());
            }
            Ok(yes(v))
        }
        ChowCmd::Detcheck { input, matrix } => {
            let f = load_form(input)?;
            let a = rows(matrix)?;
            let ok = chow::det_action_check(&f, &a).map_err(|e| e.to_string())?;
            Ok(Answer {
                value: json!({ "holds": ok, "det": chow::det(&a).to_string(), "d": f.degree() }),
                negative: !ok,
            })
        }
    }
}

fn load_divisor(input: &DivInput) -> Result<Divisor, String> {
    match (&input.divisor, &input.f) {
        (Some(path), _) => read_json(path),
        (None, Some(text)) => {
            let p = poly(text)?;
            let n = input
                .n
                .unwrap_or_else(|| largest_index(&p, |v| v.strip_prefix('x').and_then(|i| i.parse().ok())));
            Divisor::new(n, p).map_err(|e| e.to_string())
        }
        (None, None) => Err("give --divisor FILE or --f".into()),
    }
}

fn div_json(d: &Divisor) -> Value {
    json!({ "n": d.n(), "d": d.degree(), "f": d.form().to_string(), "normalized": d.is_normalized() })
}

/// Loads and normalizes; `Err(Answer)` carries the negative Div′ verdict.
fn normalized_divisor(input: &DivInput) -> Result<Result<Divisor, Answer>, String> {
    let d = load_divisor(input)?;
    Ok(match divisors::in_div_prime(&d) {
        (true, Some(nd)) => Ok(nd),
        _ => Err(Answer {
            value: json!({ "set": "DivPrime", "verdict": "non_member", "mode": "exact", "input": div_json(&d) }),
            negative: true,
        }),
    })
}

fn report_answer(r: &divisors::MembershipReport) -> Answer {
    Answer {
        value: serde_json::to_value(r).expect("reports serialize"),
        negative: r.verdict == Verdict::NonMember,
    }
}

fn div_cmd(cmd: &DivCmd) -> CmdResult {
    match cmd {
        DivCmd::Normalize(input) => {
            let d = load_divisor(input)?;
            let (ok, nd) = divisors::in_div_prime(&d);
            Ok(Answer {
                value: json!({ "in_div_prime": ok, "normalized": nd.as_ref().map(div_json) }),
                negative: !ok,
            })
        }
        DivCmd::Scale { input, t } => {
            let d = match normalized_divisor(input)? {
                Ok(d) => d,
                Err(a) => return Ok(a),
            };
            let s = divisors::scale_divisor(&d, &rational(t)?).map_err(|e| e.to_string())?;
            Ok(yes(div_json(&s)))
        }
        DivCmd::Family { n, k } => {
            let (g, h) = divisors::product_family(*n, *k).map_err(|e| e.to_string())?;
            Ok(yes(json!({ "even": div_json(&g), "odd": div_json(&h) })))
        }
        DivCmd::InE { input, grid, verbose } => match normalized_divisor(input)? {
            Ok(d) => Ok(report_answer(&divisors::in_e(&d, *grid, *verbose).map_err(|e| e.to_string())?)),
            Err(a) => Ok(a),
        },
        DivCmd::InDiv2 { input, grid, verbose } => match normalized_divisor(input)? {
            Ok(d) => Ok(report_answer(&divisors::in_div_double_prime(&d, *grid, *verbose).map_err(|e| e.to_string())?)),
            Err(a) => Ok(a),
        },
        DivCmd::Margin { h, n, delta, grid } => {
            let hp = poly(h)?;
            let n = n.unwrap_or_else(|| largest_index(&hp, |v| v.strip_prefix('x').and_then(|i| i.parse().ok())));
            let grid = grid.unwrap_or_else(|| divisors::default_grid(n));
            let delta = match delta {
                Some(s) => rational(s)?,
                None => divisors::delta_from_grid(&hp, n, grid).ok_or("form is not positive on the sample grid")?,
            };
            let eps = divisors::positivity_margin(&hp, n, &delta).map_err(|e| e.to_string())?;
            let k = hp.homogeneous_degree().unwrap_or(0) as usize;
            Ok(yes(json!({
                "n": n,
                "k": k,
                "M": divisors::binomial(n + k - 1, k).to_string(),
                "delta": delta.to_string(),
                "epsilon": eps.to_string(),
                "sampled_minimum": divisors::sphere_minimum(&hp, n, grid),
            })))
        }
    }
}

fn fan_cmd(cmd: &FanCmd) -> CmdResult {
    let FanCmd::Demo { cycle, divisor, t, limit } = cmd;
    let (default_z, default_d) = magic_fan::default_demo();
    let z: ZeroCycle = match cycle {
        Some(path) => read_json(path)?,
        None => default_z,
    };
    let div: Divisor = match divisor {
        Some(path) => {
            let d: Divisor = read_json(path)?;
            divisors::in_div_prime(&d).1.ok_or("divisor contains (1:0:…:0)")?
        }
        None => default_d,
    };
    if let Some(list) = limit {
        let ts = rationals(list)?;
        let results: Vec<magic_fan::FanResult> =
            ts.iter().map(|t| magic_fan::psi_demo(&z, &div, t)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let residuals: Vec<f64> = results.iter().map(|r| r.residual).collect();
        let decreasing = residuals.windows(2).all(|w| w[1] < w[0]);
        let slope = (ts.len() >= 2).then(|| magic_fan::log_log_slope(&ts, &residuals));
        return Ok(yes(json!({
            "t": strs(&ts),
            "residuals": residuals,
            "strictly_decreasing": decreasing,
            "log_log_slope": slope,
            "degrees": results.iter().map(|r| r.degree).collect::<Vec<_>>(),
        })));
    }
    let r = magic_fan::psi_demo(&z, &div, &rational(t)?).map_err(|e| e.to_string())?;
    Ok(yes(serde_json::to_value(&r).expect("results serialize")))
}

/// Builds the global thread pool from `RCT_THREADS`, if set.
pub fn init_threads() {
    if let Some(n) = std::env::var("RCT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
