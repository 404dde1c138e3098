//! `thermoprior` command-line interface.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use thermoprior::models::{ModelParams, ThermalModel};
use thermoprior::schemes::{
    classify_numeric, classify_series, prior_expansion, prior_moments, ClassificationResult,
};
use thermoprior::series::{format_rational, parse_rational, Rational};
use thermoprior::verify::{run_verification, Status};
use thermoprior::{lookup, registry, Error, Scheme, DEFAULT_ORDER};

use output::{sig12, Envelope};

#[derive(Debug, Parser)]
#[command(name = "thermoprior", version)]
#[command(about = "Exact high-temperature expansions and classification of priors over β")]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct ModelArgs {
    /// Model id, label (M1…M10) or alias.
    model: String,

    /// Prior construction; defaults to the model's primary scheme.
    #[arg(long)]
    scheme: Option<String>,

    /// Harmonic-oscillator frequency, as "n" or "n/d".
    #[arg(long)]
    nu: Option<String>,

    /// Fermi-oscillator level spacing, as "n" or "n/d".
    #[arg(long)]
    epsilon0: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Numeric,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the model registry.
    Models,
    /// Exact expansion of a prior with rational coefficients.
    Expand {
        #[command(flatten)]
        target: ModelArgs,
        /// Truncation order: every coefficient below β^order is exact.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
    },
    /// Jeffreys / Bayes-Laplace classification near β = 0.
    Classify {
        #[command(flatten)]
        target: ModelArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Series)]
        method: MethodArg,
    },
    /// Tabulate ω(β) on an evenly spaced grid.
    PriorTable {
        #[command(flatten)]
        target: ModelArgs,
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long)]
        points: usize,
        /// Order of the series behind the truncation indicator.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
        /// Write CSV (beta, omega, truncation_indicator).
        #[arg(long)]
        csv: bool,
    },
    /// Normalization and moments of a prior on (0, ∞).
    Moments {
        #[command(flatten)]
        target: ModelArgs,
    },
    /// Check every published claim against the engine and numeric oracles.
    Verify {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
        /// Absolute tolerance for numeric identities.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

/// Process exit codes.
const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome { text, code }) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("thermoprior: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn resolve(args: &ModelArgs) -> Result<(ThermalModel, Scheme), Error> {
    let mut params = ModelParams::default();
    let parse = |flag: &str, s: &str| -> Result<Rational, Error> {
        parse_rational(s).ok_or_else(|| Error::Usage(format!("--{flag}: '{s}' is not a rational")))
    };
    if let Some(s) = &args.nu {
        params.nu = parse("nu", s)?;
    }
    if let Some(s) = &args.epsilon0 {
        params.epsilon0 = parse("epsilon0", s)?;
    }
    let model = lookup(&args.model)?.with_params(params)?;
    let scheme = match &args.scheme {
        Some(s) => s.parse()?,
        None => model.primary_scheme(),
    };
    if !model.supports(scheme) {
        return Err(Error::Usage(format!(
            "model {} has no {scheme} prior",
            model.name()
        )));
    }
    Ok((model, scheme))
}

fn model_parameters(model: &ThermalModel, scheme: Scheme) -> serde_json::Value {
    json!({
        "model": model.name(),
        "scheme": scheme,
        "nu": format_rational(&model.params().nu),
        "epsilon0": format_rational(&model.params().epsilon0),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Models => models(cli.json),
        Command::Expand { target, order } => expand(cli.json, target, *order),
        Command::Classify { target, method } => classify(cli.json, target, *method),
        Command::PriorTable {
            target,
            beta_min,
            beta_max,
            points,
            order,
            csv,
        } => prior_table(cli.json, target, (*beta_min, *beta_max, *points), *order, *csv),
        Command::Moments { target } => moments(cli.json, target),
        Command::Verify { order, tol } => verify(cli.json, *order, *tol),
    }
}

#[derive(Serialize)]
struct ModelRow {
    id: &'static str,
    label: String,
    family: String,
    dims: String,
    degrees_of_freedom: Option<u32>,
    schemes: Vec<Scheme>,
    expected: String,
    hamiltonian: Option<String>,
}

fn models(as_json: bool) -> Result<Outcome, Error> {
    let rows: Vec<ModelRow> = registry()
        .iter()
        .map(|m| ModelRow {
            id: m.name(),
            label: m.id().label(),
            family: m.family().to_string(),
            dims: m.dims().to_string(),
            degrees_of_freedom: m.degrees_of_freedom(),
            schemes: m.schemes(),
            expected: m.expected().verdict.to_string(),
            hamiltonian: m.hamiltonian().map(|h| h.to_string()),
        })
        .collect();
    if as_json {
        return Ok(Outcome::ok(Envelope::new("models", json!({}), &rows).render()?));
    }
    let mut out = format!(
        "{:<4} {:<27} {:<20} {:<9} {:<4} {:<17} {}\n",
        "", "id", "family", "dims", "dof", "schemes", "expected"
    );
    for r in &rows {
        let schemes: Vec<&str> = r.schemes.iter().map(|s| s.name()).collect();
        out += &format!(
            "{:<4} {:<27} {:<20} {:<9} {:<4} {:<17} {}\n",
            r.label,
            r.id,
            r.family,
            r.dims,
            r.degrees_of_freedom.map_or("-".into(), |d| d.to_string()),
            schemes.join(","),
            r.expected
        );
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct TermRow {
    exponent: i64,
    coefficient: String,
    value: f64,
}

fn expand(as_json: bool, target: &ModelArgs, order: i64) -> Result<Outcome, Error> {
    let (model, scheme) = resolve(target)?;
    let p = prior_expansion(&model, scheme, order)?;
    let terms: Vec<TermRow> = p
        .expansion
        .unit()
        .terms()
        .map(|(k, _)| {
            let c = p.expansion.coeff(k).expect("stored term");
            TermRow {
                exponent: k,
                coefficient: c.to_string(),
                value: c.to_f64(),
            }
        })
        .collect();
    if as_json {
        let mut params = model_parameters(&model, scheme);
        params["order"] = json!(order);
        let result = json!({
            "factor": p.expansion.factor(),
            "unit": p.expansion.unit(),
            "terms": terms,
            "order": p.order,
        });
        return Ok(Outcome::ok(Envelope::new("expand", params, &result).render()?));
    }
    let mut out = format!(
        "{} ({scheme}): ω(β) = {} + O(β^{order})\n",
        model.name(),
        join_terms(&terms)
    );
    for t in &terms {
        out += &format!("{:>4}  {:<28} {}\n", t.exponent, t.coefficient, sig12(t.value));
    }
    Ok(Outcome::ok(out))
}

/// `a β^i + b β^j - …`, folding a leading minus into the separator.
fn join_terms(terms: &[TermRow]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let (neg, body) = match t.coefficient.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.coefficient.as_str()),
        };
        out += match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out += &format!("{body} β^{}", t.exponent);
    }
    out
}

fn classify(as_json: bool, target: &ModelArgs, method: MethodArg) -> Result<Outcome, Error> {
    let (model, scheme) = resolve(target)?;
    let result: ClassificationResult = match method {
        MethodArg::Series => classify_series(&prior_expansion(&model, scheme, DEFAULT_ORDER)?),
        MethodArg::Numeric => classify_numeric(&model, scheme)?,
    };
    if as_json {
        let mut params = model_parameters(&model, scheme);
        params["method"] = json!(match method {
            MethodArg::Series => "series",
            MethodArg::Numeric => "numeric",
        });
        return Ok(Outcome::ok(Envelope::new("classify", params, &result).render()?));
    }
    let detail = match (&result.leading, result.slope) {
        (Some(c), _) => format!("leading {c}"),
        (None, Some(s)) => format!("slope {s:.6}, leading ≈ {}", sig12(result.leading_value)),
        (None, None) => String::new(),
    };
    Ok(Outcome::ok(format!("{}, {detail}\n", result.verdict)))
}

#[derive(Serialize)]
struct TableRow {
    beta: f64,
    omega: f64,
    truncation_indicator: f64,
}

fn prior_table(
    as_json: bool,
    target: &ModelArgs,
    (lo, hi, n): (f64, f64, usize),
    order: i64,
    csv: bool,
) -> Result<Outcome, Error> {
    let (model, scheme) = resolve(target)?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 || (n == 1 && hi != lo) {
        return Err(Error::Usage(format!(
            "need 0 < beta-min <= beta-max and points >= 1 (points = 1 only when min = max); got [{lo}, {hi}] with {n}"
        )));
    }
    let series = prior_expansion(&model, scheme, order)?.expansion;
    let rows = (0..n)
        .map(|i| {
            let beta = if n == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            Ok(TableRow {
                beta,
                omega: model.omega_eval(beta, scheme)?,
                truncation_indicator: series.eval(beta)?.truncation,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    if as_json {
        let mut params = model_parameters(&model, scheme);
        params["beta_min"] = json!(lo);
        params["beta_max"] = json!(hi);
        params["points"] = json!(n);
        params["order"] = json!(order);
        return Ok(Outcome::ok(Envelope::new("prior-table", params, &rows).render()?));
    }
    if csv {
        let mut w = ::csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.write_record([
                output::float17(r.beta),
                output::float17(r.omega),
                output::float17(r.truncation_indicator),
            ])
            .map_err(|e| Error::Usage(e.to_string()))?;
        }
        let body = w.into_inner().map_err(|e| Error::Usage(e.to_string()))?;
        let text = String::from_utf8(body).expect("csv output is UTF-8");
        return Ok(Outcome::ok(format!("beta,omega,truncation_indicator\n{text}")));
    }
    let mut out = format!("{:<20} {:<20} {}\n", "beta", "omega", "truncation_indicator");
    for r in &rows {
        out += &format!(
            "{:<20} {:<20} {}\n",
            sig12(r.beta),
            sig12(r.omega),
            sig12(r.truncation_indicator)
        );
    }
    Ok(Outcome::ok(out))
}

fn moments(as_json: bool, target: &ModelArgs) -> Result<Outcome, Error> {
    let (model, scheme) = resolve(target)?;
    let m = prior_moments(&model, scheme)?;
    if as_json {
        let params = model_parameters(&model, scheme);
        return Ok(Outcome::ok(Envelope::new("moments", params, &m).render()?));
    }
    let mut out = format!("{} ({scheme})\n", model.name());
    match m.divergence {
        Some(d) => {
            let at = match d {
                thermoprior::schemes::Divergence::AtZero => "β = 0",
                thermoprior::schemes::Divergence::AtInfinity => "β = ∞",
            };
            out += &format!("improper: ∫ω diverges at {at}\n");
        }
        None => {
            let f = |x: Option<f64>| x.map_or("-".into(), sig12);
            out += &format!("normalization  {}\n", f(m.normalization));
            out += &format!("mean           {}\n", f(m.mean));
            out += &format!("second moment  {}\n", f(m.second_moment));
        }
    }
    Ok(Outcome::ok(out))
}

fn verify(as_json: bool, order: i64, tol: f64) -> Result<Outcome, Error> {
    let report = run_verification(order, tol)?;
    let code = if report.has_oracle_mismatch() { EXIT_MISMATCH } else { 0 };
    if as_json {
        let params = json!({ "order": order, "tol": tol });
        let text = Envelope::new("verify", params, &report).render()?;
        return Ok(Outcome { text, code });
    }
    let mut out = String::new();
    for r in &report.rows {
        let status = match r.status {
            Status::Match => "match",
            Status::PaperDiscrepancy => "paper-discrepancy",
            Status::OracleMismatch => "ORACLE-MISMATCH",
        };
        out += &format!("{:<22} {:<18} engine: {}\n", r.claim, status, r.engine);
        out += &format!("{:<41} oracle: {}\n", "", r.oracle);
        out += &format!("{:<41} paper:  {}\n", "", r.paper);
    }
    out += &format!(
        "\n{} claims: {} match, {} paper-discrepancy, {} oracle-mismatch\n",
        report.rows.len(),
        report.count(Status::Match),
        report.count(Status::PaperDiscrepancy),
        report.count(Status::OracleMismatch)
    );
    Ok(Outcome { text: out, code })
}
