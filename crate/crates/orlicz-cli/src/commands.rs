//! Subcommand definitions and handlers.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orlicz::counterexample::{build_rho, verify_counterexample, BuildPolicy, PiecewiseRho};
use orlicz::criteria::{
    condition_bounded_product, condition_curvature_limit, condition_derivative_profile,
    decreasing_quotient, lp_threshold, operator_algebra_certificate, splitting_bound,
    CriterionReport, Verdict,
};
use orlicz::function::DiscreteFunction;
use orlicz::lattice::{parse_cocycle_spec, parse_weight_spec, Weight};
use orlicz::norms::{luxemburg_norm, orlicz_norm, weighted_norm, NormKind};
use orlicz::twist::twisted_convolve;
use orlicz::young::{growth_class, pair_for, parse_young_spec};

use crate::report::{envelope, Tolerances};

/// Error wrapper mapping failures onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Computation(orlicz::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Computation(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Io(_) => 74,
            CliError::Computation(_) => 70,
        }
    }
}

impl From<orlicz::Error> for CliError {
    fn from(e: orlicz::Error) -> Self {
        match e {
            orlicz::Error::Param(_) | orlicz::Error::BadSpec(_) => CliError::Usage(e.to_string()),
            other => CliError::Computation(other),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

type CliResult = Result<u8, CliError>;

#[derive(Parser)]
#[command(
    name = "orlicz",
    version,
    about = "Orlicz norms and twisted convolution on Z^d"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a Young function from the catalog.
    Young {
        #[command(subcommand)]
        action: YoungAction,
    },
    /// Compute a norm of a discrete function.
    Norm(NormArgs),
    /// Twisted convolution of two discrete function files.
    Conv(ConvArgs),
    /// Run a criterion check; exit code reflects the verdict.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Build or verify the slow-growth counterexample profile.
    Counterexample {
        #[command(subcommand)]
        action: CounterexampleAction,
    },
    /// Evaluate a check over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum YoungAction {
    /// Print values, derivative, conjugate samples and the growth class.
    Show {
        /// Catalog spec, e.g. `power:2`, `xlog`, `sum:power:2+power:3`.
        #[arg(long)]
        phi: String,
        /// Sample points (comma separated).
        #[arg(long, default_value = "0,0.5,1,2,5")]
        points: String,
    },
}

#[derive(Args)]
struct NormArgs {
    /// Young function spec.
    #[arg(long)]
    phi: String,
    /// Input DiscreteFunction file.
    #[arg(long)]
    input: PathBuf,
    /// Optional weight spec; the norm is taken of `f * w`.
    #[arg(long)]
    weight: Option<String>,
    /// Which norm to compute.
    #[arg(long, value_enum, default_value_t = NormKindArg::Luxemburg)]
    kind: NormKindArg,
    /// Write the full report here (the value itself goes to stdout).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormKindArg {
    Luxemburg,
    Orlicz,
}

#[derive(Args)]
struct ConvArgs {
    /// Cocycle spec, e.g. `heisenberg:0.5`, `coboundary:poly:1`, `trivial`.
    #[arg(long)]
    cocycle: String,
    /// Left factor file.
    #[arg(long)]
    f: PathBuf,
    /// Right factor file.
    #[arg(long)]
    g: PathBuf,
    /// Output file for the convolution.
    #[arg(short, long)]
    output: PathBuf,
    /// Optional report file (written as JSON; also printed to stdout).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Decreasing-quotient splitting inequality for sigma = exp(rho).
    Lemma {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 500)]
        n: u64,
    },
    /// Splitting bound w(s+t)/(w(s)w(t)) <= u(tau s) + u(tau t).
    Thm32 {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 200)]
        radius: u64,
    },
    /// Membership conditions for the splitting profile.
    Thm33 {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        phi: String,
        #[arg(short, long, default_value_t = 1)]
        dim: u32,
        #[arg(long, value_enum, default_value_t = ConditionArg::Any)]
        condition: ConditionArg,
    },
    /// Quadratic-minorant growth classification of a Young function.
    Growth {
        #[arg(long)]
        phi: String,
        #[arg(long, value_enum, default_value_t = RegimeArg::Discrete)]
        regime: RegimeArg,
    },
    /// Certificate for the operator-algebra hypotheses.
    OperatorAlgebra {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        weight: String,
        #[arg(short, long, default_value_t = 1)]
        dim: u32,
    },
    /// Closed-form thresholds for weighted p-norm algebras.
    LpThreshold {
        #[arg(short, long)]
        dim: u32,
        #[arg(short, long)]
        p: f64,
        #[arg(long)]
        beta: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    I,
    Ii,
    Iii,
    /// Holds if any of the three conditions holds.
    Any,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Compact,
    Discrete,
    Noncompact,
}

#[derive(Subcommand)]
enum CounterexampleAction {
    /// Build the profile and write it as JSON.
    Build {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        segments: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// Anchor cap for the admissibility search.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Verify a profile file and print the five-part report.
    Verify {
        file: PathBuf,
        #[arg(long)]
        horizon: u64,
        /// Enumeration cap for integer-sampled checks.
        #[arg(long, default_value_t = 1_000_000)]
        enum_cap: u64,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Which check to sweep.
    #[arg(long, value_enum)]
    target: SweepTarget,
    #[arg(long)]
    beta_from: f64,
    #[arg(long)]
    beta_to: f64,
    #[arg(long)]
    beta_step: f64,
    #[arg(short, long, default_value_t = 1)]
    dim: u32,
    /// Exponent for lp-threshold rows.
    #[arg(short, long, default_value_t = 2.0)]
    p: f64,
    /// Young function for certificate / condition rows.
    #[arg(long, default_value = "power:2")]
    phi: String,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    format: SweepFormat,
    /// Accepted for interface uniformity; sweeps are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepTarget {
    LpThreshold,
    OperatorAlgebra,
    Thm33Iii,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    /// Structured text (JSON).
    #[value(alias = "structured-text")]
    Json,
}

pub fn run(cli: Cli) -> CliResult {
    let tol = Tolerances::from_env();
    match cli.command {
        Command::Young { action } => young_show(action, &tol),
        Command::Norm(args) => norm(args, &tol),
        Command::Conv(args) => conv(args, &tol),
        Command::Check { which } => check(which, &tol),
        Command::Counterexample { action } => counterexample(action, &tol),
        Command::Sweep(args) => sweep(args, &tol),
    }
}

fn read_function(path: &Path) -> Result<DiscreteFunction, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn young_show(action: YoungAction, tol: &Tolerances) -> CliResult {
    let YoungAction::Show { phi, points } = action;
    let phi = parse_young_spec(&phi)?;
    let pair = pair_for(&phi);
    let xs: Result<Vec<f64>, CliError> = points
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad sample point `{p}`")))
        })
        .collect();
    let xs = xs?;
    #[derive(Serialize)]
    struct Sample {
        x: f64,
        phi: f64,
        derivative: f64,
        conjugate: f64,
    }
    #[derive(Serialize)]
    struct Show {
        phi: orlicz::young::YoungSpec,
        pair_provenance: orlicz::young::PairProvenance,
        growth: orlicz::young::GrowthReport,
        samples: Vec<Sample>,
    }
    let report = Show {
        phi: phi.spec(),
        pair_provenance: pair.provenance,
        growth: growth_class(&phi)?,
        samples: xs
            .into_iter()
            .map(|x| Sample {
                x,
                phi: phi.evaluate(x),
                derivative: phi.derivative(x),
                conjugate: pair.psi.evaluate(x),
            })
            .collect(),
    };
    println!("{}", envelope("young show", tol, &report));
    Ok(0)
}

fn norm(args: NormArgs, tol: &Tolerances) -> CliResult {
    let phi = parse_young_spec(&args.phi)?;
    let f = read_function(&args.input)?;
    let kind = match args.kind {
        NormKindArg::Luxemburg => NormKind::Luxemburg,
        NormKindArg::Orlicz => NormKind::Orlicz,
    };
    let value = match &args.weight {
        Some(wspec) => {
            let w = parse_weight_spec(wspec)?;
            weighted_norm(&phi, &f, &w, kind)?
        }
        None => match kind {
            NormKind::Luxemburg => luxemburg_norm(&phi, &f)?,
            NormKind::Orlicz => orlicz_norm(&phi, &f)?,
        },
    };
    println!("{value}");
    if let Some(path) = &args.report {
        #[derive(Serialize)]
        struct NormReport<'a> {
            norm: f64,
            kind: &'a str,
            phi: &'a str,
            weight: Option<&'a str>,
            support: usize,
        }
        let rep = NormReport {
            norm: value,
            kind: match kind {
                NormKind::Luxemburg => "luxemburg",
                NormKind::Orlicz => "orlicz",
            },
            phi: phi.name(),
            weight: args.weight.as_deref(),
            support: f.support_size(),
        };
        write_text(path, &envelope("norm", tol, &rep))?;
    }
    Ok(0)
}

fn conv(args: ConvArgs, tol: &Tolerances) -> CliResult {
    let omega = parse_cocycle_spec(&args.cocycle)?;
    let f = read_function(&args.f)?;
    let g = read_function(&args.g)?;
    let out = twisted_convolve(&omega, &f, &g)?;
    write_text(
        &args.output,
        &serde_json::to_string_pretty(&out.result).expect("serializable function"),
    )?;

    // residual diagnostics over the participating supports
    let zero = orlicz::lattice::LatticePoint::zero(f.dim());
    let mut normalization = 0.0f64;
    for (s, _) in f.iter().chain(g.iter()) {
        let a = (omega.evaluate(s, &zero) - num_complex_one()).norm();
        let b = (omega.evaluate(&zero, s) - num_complex_one()).norm();
        normalization = normalization.max(a).max(b);
    }
    let mut identity = 0.0f64;
    for (r, _) in f.iter().take(8) {
        for (s, _) in g.iter().take(8) {
            for (t, _) in f.iter().take(8) {
                let lhs = omega.evaluate(r, s) * omega.evaluate(&r.add(s), t);
                let rhs = omega.evaluate(s, t) * omega.evaluate(r, &s.add(t));
                identity = identity.max((lhs - rhs).norm());
            }
        }
    }

    #[derive(Serialize)]
    struct ConvReport<'a> {
        cocycle: &'a str,
        flops: u64,
        support_f: usize,
        support_g: usize,
        support_out: usize,
        normalization_residual: f64,
        identity_residual_sampled: f64,
    }
    let rep = ConvReport {
        cocycle: &out.cocycle_id,
        flops: out.flops,
        support_f: f.support_size(),
        support_g: g.support_size(),
        support_out: out.result.support_size(),
        normalization_residual: normalization,
        identity_residual_sampled: identity,
    };
    let text = envelope("conv", tol, &rep);
    println!("{text}");
    if let Some(path) = &args.report {
        write_text(path, &text)?;
    }
    Ok(0)
}

fn num_complex_one() -> orlicz::Complex64 {
    orlicz::Complex64::new(1.0, 0.0)
}

fn print_criterion(report: &CriterionReport, tol: &Tolerances) -> u8 {
    println!("{}", envelope(&report.criterion, tol, report));
    report.verdict.exit_code() as u8
}

fn check(which: CheckCommand, tol: &Tolerances) -> CliResult {
    let policy = tol.series_policy();
    let report = match which {
        CheckCommand::Lemma { weight, n } => {
            let w = parse_weight_spec(&weight)?;
            let rep = decreasing_quotient(move |k| w.log_at_radius(k), n);
            CriterionReport::new("lemma", rep.verdict, &rep)
        }
        CheckCommand::Thm32 { weight, radius } => {
            let w = parse_weight_spec(&weight)?;
            let rep = splitting_bound(&w, radius)?;
            CriterionReport::new("thm32", rep.verdict, &rep)
        }
        CheckCommand::Thm33 {
            weight,
            phi,
            dim,
            condition,
        } => {
            let w = parse_weight_spec(&weight)?;
            let phi = parse_young_spec(&phi)?;
            let psi = pair_for(&phi).psi;
            match condition {
                ConditionArg::I => {
                    let rep = condition_bounded_product(&w, &psi, dim, &policy);
                    CriterionReport::new("thm33.i", rep.verdict, &rep)
                }
                ConditionArg::Ii => {
                    let rep = condition_derivative_profile(&w, &psi, dim, &policy);
                    CriterionReport::new("thm33.ii", rep.verdict, &rep)
                }
                ConditionArg::Iii => {
                    let rep = condition_curvature_limit(&w, &psi, dim)?;
                    CriterionReport::new("thm33.iii", rep.verdict, &rep)
                }
                ConditionArg::Any => {
                    let i = condition_bounded_product(&w, &psi, dim, &policy);
                    let ii = condition_derivative_profile(&w, &psi, dim, &policy);
                    let iii = condition_curvature_limit(&w, &psi, dim)?;
                    let verdicts = [i.verdict, ii.verdict, iii.verdict];
                    let combined = if verdicts.contains(&Verdict::Holds) {
                        Verdict::Holds
                    } else if verdicts.iter().all(|v| *v == Verdict::Fails) {
                        Verdict::Fails
                    } else {
                        Verdict::Inconclusive
                    };
                    #[derive(Serialize)]
                    struct All {
                        i: orlicz::criteria::ConditionIReport,
                        ii: orlicz::criteria::ConditionIiReport,
                        iii: orlicz::criteria::ConditionIiiReport,
                    }
                    CriterionReport::new("thm33.any", combined, &All { i, ii, iii })
                }
            }
        }
        CheckCommand::Growth { phi, regime } => {
            let phi = parse_young_spec(&phi)?;
            let rep = growth_class(&phi)?;
            let witness = match regime {
                RegimeArg::Compact => &rep.satisfies_compact,
                RegimeArg::Discrete => &rep.satisfies_discrete,
                RegimeArg::Noncompact => &rep.satisfies_noncompact,
            };
            let verdict = match witness.status {
                orlicz::young::RegimeStatus::Holds => Verdict::Holds,
                orlicz::young::RegimeStatus::Fails => Verdict::Fails,
                orlicz::young::RegimeStatus::Inconclusive => Verdict::Inconclusive,
            };
            CriterionReport::new("growth", verdict, &rep)
        }
        CheckCommand::OperatorAlgebra { phi, weight, dim } => {
            let phi = parse_young_spec(&phi)?;
            let w = parse_weight_spec(&weight)?;
            let rep = operator_algebra_certificate(&phi, &w, dim, &policy)?;
            CriterionReport::new("operator-algebra", rep.verdict, &rep)
        }
        CheckCommand::LpThreshold { dim, p, beta } => {
            let rep = lp_threshold(dim, p, beta)?;
            let verdict = if rep.banach_algebra && rep.operator_algebra_claimed {
                Verdict::Holds
            } else {
                Verdict::Fails
            };
            CriterionReport::new("lp-threshold", verdict, &rep)
        }
    };
    Ok(print_criterion(&report, tol))
}

fn counterexample(action: CounterexampleAction, tol: &Tolerances) -> CliResult {
    match action {
        CounterexampleAction::Build {
            n1,
            segments,
            output,
            cap,
        } => {
            let policy = match cap {
                Some(anchor_cap) => BuildPolicy { anchor_cap },
                None => BuildPolicy::default(),
            };
            let (rho, log) = build_rho(n1, segments, &policy)?;
            write_text(
                &output,
                &serde_json::to_string_pretty(&rho).expect("serializable profile"),
            )?;
            #[derive(Serialize)]
            struct BuildReport<'a> {
                anchors: &'a [u64],
                junctions: &'a [f64],
                touch_points: &'a [f64],
                candidates_inspected: usize,
            }
            let rep = BuildReport {
                anchors: &rho.anchors,
                junctions: &rho.junctions,
                touch_points: &rho.touch_points,
                candidates_inspected: log.searches.iter().map(|s| s.tried.len()).sum(),
            };
            println!("{}", envelope("counterexample build", tol, &rep));
            Ok(0)
        }
        CounterexampleAction::Verify {
            file,
            horizon,
            enum_cap,
        } => {
            let text = fs::read_to_string(&file).map_err(|e| io_err(&file, e))?;
            let rho: PiecewiseRho = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
            match verify_counterexample(&rho, horizon, enum_cap) {
                Ok(rep) => {
                    println!("{}", envelope("counterexample verify", tol, &rep));
                    Ok(0)
                }
                Err(orlicz::Error::VerifyFailed { part, at, detail }) => {
                    eprintln!("verification failed: part ({part}) at {at}: {detail}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

#[derive(Serialize)]
struct SweepRow {
    beta: f64,
    dim: u32,
    verdict: String,
    detail: String,
}

fn sweep(args: SweepArgs, tol: &Tolerances) -> CliResult {
    let _ = args.seed; // deterministic: accepted for interface uniformity
    if args.beta_step.is_nan() || args.beta_step <= 0.0 || args.beta_to < args.beta_from {
        return Err(CliError::Usage("empty sweep grid".into()));
    }
    let mut betas = Vec::new();
    let mut i = 0u32;
    loop {
        // snap accumulated grid points back onto the decimal lattice
        let b = ((args.beta_from + f64::from(i) * args.beta_step) * 1e10).round() / 1e10;
        if b > args.beta_to + args.beta_step * 0.5 {
            break;
        }
        betas.push(b);
        i += 1;
    }
    if betas.is_empty() {
        return Err(CliError::Usage("empty sweep grid".into()));
    }

    let policy = tol.series_policy();
    let phi = parse_young_spec(&args.phi)?;
    let psi = pair_for(&phi).psi;
    let mut rows = Vec::new();
    let mut any_inconclusive = false;
    for &beta in &betas {
        let (verdict, detail) = match args.target {
            SweepTarget::LpThreshold => {
                let rep = lp_threshold(args.dim, args.p, beta)?;
                (
                    if rep.banach_algebra { "holds" } else { "fails" }.to_string(),
                    format!(
                        "banach={}, operator={}, q={}",
                        rep.banach_algebra, rep.operator_algebra_claimed, rep.q
                    ),
                )
            }
            SweepTarget::OperatorAlgebra => {
                let w = Weight::poly(beta)?;
                let rep = operator_algebra_certificate(&phi, &w, args.dim, &policy)?;
                (
                    verdict_label(rep.verdict).to_string(),
                    format!("series={:?}", rep.u_square_series.outcome),
                )
            }
            SweepTarget::Thm33Iii => {
                let w = Weight::poly(beta)?;
                let rep = condition_curvature_limit(&w, &psi, args.dim)?;
                (
                    verdict_label(rep.verdict).to_string(),
                    format!("limit={:?}, threshold={}", rep.limit, rep.threshold),
                )
            }
        };
        if verdict == "inconclusive" {
            any_inconclusive = true;
        }
        rows.push(SweepRow {
            beta,
            dim: args.dim,
            verdict,
            detail,
        });
    }

    let text = match args.format {
        SweepFormat::Csv => {
            let mut out = String::new();
            out.push_str("# sweep: one row per grid point\n");
            out.push_str(&format!(
                "# target={}, dim={}, p={}, phi={}, root_tol={}\n",
                target_label(args.target),
                args.dim,
                args.p,
                phi.name(),
                tol.root_tol,
            ));
            out.push_str("# columns: beta,dim,verdict,detail\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},\"{}\"\n",
                    r.beta, r.dim, r.verdict, r.detail
                ));
            }
            out
        }
        SweepFormat::Json => envelope("sweep", tol, &rows),
    };
    write_text(&args.output, &text)?;
    println!("wrote {} rows to {}", rows.len(), args.output.display());
    Ok(if any_inconclusive { 2 } else { 0 })
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn target_label(t: SweepTarget) -> &'static str {
    match t {
        SweepTarget::LpThreshold => "lp-threshold",
        SweepTarget::OperatorAlgebra => "operator-algebra",
        SweepTarget::Thm33Iii => "thm33-iii",
    }
}
