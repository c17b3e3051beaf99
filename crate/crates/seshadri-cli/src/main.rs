mod report;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use report::Report;
use seshadri::{
    builtin, certify_lower_bound, classify_multi, classify_single, epsilon_upper, kuechle_scan,
    load_surface, min_quotient_over_catalog, nagata_biran_table, seshadri_quotient, validate,
    CatalogMinimum, Certificate, DiagnosticLevel, EpsilonKind, MultiplicityVector, RadicalRational,
    SurfaceModel,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "seshadri",
    version,
    about = "Exact Seshadri-constant bounds, certificates and fibration verdicts \
             for surfaces presented by their intersection lattices"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the certifier (falls back to SESHADRI_JOBS, then 1)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EpsKindArg {
    Exact,
    Upper,
    Lower,
}

impl From<EpsKindArg> for EpsilonKind {
    fn from(value: EpsKindArg) -> Self {
        match value {
            EpsKindArg::Exact => EpsilonKind::ClaimedExact,
            EpsKindArg::Upper => EpsilonKind::WitnessedUpperBound,
            EpsKindArg::Lower => EpsilonKind::CertifiedLowerBound,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact upper bound √(L²/r)
    UpperBound {
        #[arg(long = "L2")]
        l2: Option<BigInt>,
        /// Built-in name (P2, cubic, scroll(r)) or a surface JSON file
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        r: u64,
    },
    /// Seshadri quotient L·C / Σmᵢ, directly or minimized over a catalog
    Quotient {
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        r: Option<u64>,
        /// Degree L·C for a direct quotient
        #[arg(long)]
        lc: Option<BigInt>,
        /// Multiplicities, e.g. --m 2,1
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u64>>,
    },
    /// Certify ε ≥ t at very general points, or report the surviving cases
    Certify {
        #[arg(long = "L2")]
        l2: Option<BigInt>,
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        r: u64,
        /// Target, as `p/q` or `p/q*sqrt(s)`
        #[arg(long)]
        t: String,
    },
    /// Classify an estimate against the fibration thresholds
    Classify {
        #[arg(long = "L2")]
        l2: Option<BigInt>,
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        r: u64,
        /// Estimate, as `p/q` or `p/q*sqrt(s)`
        #[arg(long)]
        eps: Option<String>,
        /// Use the catalog minimum as a witnessed upper estimate
        #[arg(long)]
        from_catalog: bool,
        /// How the estimate was obtained
        #[arg(long, value_enum, default_value_t = EpsKindArg::Exact)]
        eps_kind: EpsKindArg,
    },
    /// Exhaustively verify the numerical inequality over a range
    KuechleScan {
        #[arg(long)]
        r_max: u64,
        #[arg(long)]
        m_max: u64,
    },
    /// Print a built-in surface model
    Catalog { name: String },
    /// Validate a surface description or re-validate a certificate
    Validate { file: PathBuf },
    /// Asymptotic lower-bound table for fibration-free surfaces
    NagataTable {
        #[arg(long = "L2")]
        l2: BigInt,
        /// Point range, e.g. 2..10
        #[arg(long)]
        r: String,
        /// Emit CSV instead of a report
        #[arg(long)]
        csv: bool,
    },
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 2,
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("SESHADRI_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match run(cli.command, cli.format, jobs.unwrap_or(1)) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn resolve_surface(spec: &str) -> Result<SurfaceModel, Failure> {
    match builtin(spec) {
        Ok(model) => Ok(model),
        Err(builtin_err) => {
            if Path::new(spec).is_file() {
                let text = std::fs::read_to_string(spec)
                    .map_err(|e| Failure::usage(format!("cannot read {spec}: {e}")))?;
                Ok(load_surface(&text)?)
            } else {
                Err(Failure::usage(builtin_err.to_string()))
            }
        }
    }
}

/// The surface's L², plus its name for the report echo.
fn resolve_l2(
    l2: Option<BigInt>,
    surface: Option<String>,
) -> Result<(BigInt, serde_json::Value), Failure> {
    match (l2, surface) {
        (Some(l2), None) => {
            let inputs = serde_json::json!({ "L2": l2.to_string() });
            Ok((l2, inputs))
        }
        (None, Some(spec)) => {
            let model = resolve_surface(&spec)?;
            let l2 = model.l_squared();
            let inputs = serde_json::json!({ "surface": model.name(), "L2": l2.to_string() });
            Ok((l2, inputs))
        }
        (Some(_), Some(_)) => Err(Failure::usage("give either --L2 or --surface, not both")),
        (None, None) => Err(Failure::usage("one of --L2 or --surface is required")),
    }
}

fn parse_value(text: &str, what: &str) -> Result<RadicalRational, Failure> {
    RadicalRational::from_str(text)
        .map_err(|e| Failure::usage(format!("cannot parse {what} {text:?}: {e}")))
}

fn run(command: Command, format: Format, jobs: usize) -> Result<ExitCode, Failure> {
    match command {
        Command::UpperBound { l2, surface, r } => {
            let (l2, inputs) = resolve_l2(l2, surface)?;
            let upper = epsilon_upper(&l2, r)?;
            let report = Report::upper_bound(inputs, r, &upper);
            emit(&report, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient { surface, r, lc, m } => match (surface, lc, m) {
            (Some(spec), None, None) => {
                let r = r.ok_or_else(|| Failure::usage("--r is required with --surface"))?;
                let model = resolve_surface(&spec)?;
                let minimum = min_quotient_over_catalog(&model, r)?;
                let report = Report::catalog_minimum(&model, r, &minimum);
                emit(&report, format);
                Ok(ExitCode::SUCCESS)
            }
            (None, Some(lc), Some(m)) => {
                let mults = MultiplicityVector::new(m)?;
                let quotient = seshadri_quotient(&lc, &mults)?;
                let report = Report::direct_quotient(&lc, &mults, &quotient);
                emit(&report, format);
                Ok(ExitCode::SUCCESS)
            }
            _ => Err(Failure::usage(
                "use either --surface (with --r) or --lc together with --m",
            )),
        },
        Command::Certify { l2, surface, r, t } => {
            let (l2, inputs) = resolve_l2(l2, surface)?;
            let target = parse_value(&t, "target")?;
            let outcome = certify_lower_bound(&l2, r, &target, jobs)?;
            let certified = outcome.is_certified();
            let report = Report::certify(inputs, r, &target, &outcome);
            emit(&report, format);
            if certified {
                Ok(ExitCode::SUCCESS)
            } else {
                // not certified is a result, not a usage error
                Ok(ExitCode::from(1))
            }
        }
        Command::Classify {
            l2,
            surface,
            r,
            eps,
            from_catalog,
            eps_kind,
        } => {
            let (epsilon, kind, inputs) = if from_catalog {
                let spec =
                    surface.ok_or_else(|| Failure::usage("--from-catalog requires --surface"))?;
                if eps.is_some() {
                    return Err(Failure::usage("give either --eps or --from-catalog"));
                }
                let model = resolve_surface(&spec)?;
                let minimum = min_quotient_over_catalog(&model, r)?;
                let inputs = serde_json::json!({
                    "surface": model.name(),
                    "L2": model.l_squared().to_string(),
                    "estimate_source": "catalog minimum",
                });
                let epsilon = match &minimum {
                    CatalogMinimum::Witness(w) => {
                        RadicalRational::from_rational(w.quotient.clone())
                    }
                    CatalogMinimum::Maximal { epsilon_upper } => epsilon_upper.clone(),
                };
                (epsilon, EpsilonKind::WitnessedUpperBound, inputs)
            } else {
                let text =
                    eps.ok_or_else(|| Failure::usage("--eps is required without --from-catalog"))?;
                let epsilon = parse_value(&text, "estimate")?;
                let (_, inputs) = resolve_l2(l2.clone(), surface.clone())?;
                (epsilon, eps_kind.into(), inputs)
            };
            let l2 = match inputs.get("L2").and_then(|v| v.as_str()) {
                Some(text) => BigInt::from_str(text).expect("echoed L2 is an integer"),
                None => unreachable!("inputs always carry L2"),
            };
            let verdict = if r == 1 {
                classify_single(&epsilon, &l2, kind)?
            } else {
                classify_multi(&epsilon, &l2, r, kind)?
            };
            let report = Report::classify(inputs, &verdict);
            emit(&report, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::KuechleScan { r_max, m_max } => {
            let scan = kuechle_scan(r_max, m_max)?;
            let clean = scan.violations.is_empty();
            let report = Report::kuechle(&scan);
            emit(&report, format);
            if clean {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Catalog { name } => {
            let model = builtin(&name)?;
            let report = Report::catalog(&model);
            emit(&report, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
            // a certificate re-validates; anything else is a surface description
            if let Ok(certificate) = serde_json::from_str::<Certificate>(&text) {
                let cases = certificate.revalidate().map_err(|defect| Failure {
                    message: defect.to_string(),
                    code: 1,
                })?;
                let report = Report::certificate_ok(&certificate, cases);
                emit(&report, format);
                return Ok(ExitCode::SUCCESS);
            }
            let model = load_surface(&text)?;
            let diagnostics = validate(&model);
            let ok = diagnostics.iter().all(|d| d.level != DiagnosticLevel::Fail);
            let report = Report::diagnostics(&model, &diagnostics);
            emit(&report, format);
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::NagataTable { l2, r, csv } => {
            let (from, to) = parse_range(&r)?;
            let table = nagata_biran_table(&l2, from, to)?;
            if csv {
                print!("{}", table.to_csv());
            } else {
                let report = Report::nagata(&table);
                emit(&report, format);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_range(text: &str) -> Result<(u64, u64), Failure> {
    if let Some((from, to)) = text.split_once("..") {
        let from = from
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad range start in {text:?}")))?;
        let to = to
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad range end in {text:?}")))?;
        Ok((from, to))
    } else {
        let single = text
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad point range {text:?}; use A..B")))?;
        Ok((single, single))
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
}
