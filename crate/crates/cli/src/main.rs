//! `svlab`: command line front end to the Siegel–Veech constant library.
//!
//! Exit codes: 0 on success, 1 when a check fails or a computation errors,
//! 2 on bad usage, 3 when an exact formula was requested but none exists.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use svlab::asymptotics::{asym_special_families, generate_table, render_table, Multiplicity, SpecialFamily, TableFormat, TableParams};
use svlab::engine::{sv_distinct_total, sv_hyperelliptic_exact, sv_loop_total, AsymptoticVolumes, HypFamily, HyperellipticVolumes, SvValue, VolumeProvider};
use svlab::lemmas::{lemma_report, LemmaId, LemmaSize};
use svlab::numbers::float::{to_decimal_string, PRECISION_ENV};
use svlab::numbers::DEFAULT_PRECISION;
use svlab::siegel::siegel_average;
use svlab::strata::{volume_component_asymptotic, volume_exact_special, ComponentId, Stratum, VolumeValue};
use svlab::{acceptance, Error, PiLaurent};

#[derive(Parser)]
#[command(name = "svlab", version, about = "Siegel-Veech constants of strata of translation surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Bits used for the decimal expansion of exact values.
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VolumeMode {
    /// Exact where a closed form exists, large-genus otherwise.
    Auto,
    Exact,
    Asymptotic,
}

#[derive(Subcommand)]
enum Command {
    /// Masur-Veech volume of a stratum or component, e.g. "H(4,2)^odd".
    Volume {
        #[arg(long)]
        stratum: String,
        #[arg(long, value_enum, default_value_t = VolumeMode::Auto)]
        mode: VolumeMode,
    },
    /// A Siegel-Veech constant: a named family, or zeros of an explicit stratum.
    Sv {
        /// One of the named families (see `--family help`).
        #[arg(long, conflicts_with = "stratum")]
        family: Option<String>,
        /// Explicit stratum; with --z1 alone the constant counts loops.
        #[arg(long)]
        stratum: Option<String>,
        #[arg(long, default_value_t = 0)]
        z1: usize,
        #[arg(long)]
        z2: Option<usize>,
        /// Multiplicity, or "any".
        #[arg(long, default_value = "1")]
        p: String,
        #[arg(long, default_value_t = 10)]
        g: u64,
        /// Require an exact value instead of the large-genus one.
        #[arg(long)]
        exact: bool,
    },
    /// The lookup table of closed forms at genus g.
    Table {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 4)]
        m1: u64,
        #[arg(long, default_value_t = 2)]
        m2: u64,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// One of the combinatorial lemma checks.
    Lemma {
        /// factorial-comparison, product-binomials, ingredient, sum-constant,
        /// zeta-sum, double-factorial, series, cancelling-factorials, error-term
        id: String,
        #[arg(long, default_value_t = 4)]
        max_p: usize,
        #[arg(long, default_value_t = 8)]
        max_part: u64,
        #[arg(long, default_value_t = 3)]
        max_r: u64,
        /// Genus, or the series cut-off.
        #[arg(long, default_value_t = 10_000)]
        g: u64,
    },
    /// Monte Carlo check of the Siegel formula.
    Siegel {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 30.0)]
        radius: f64,
        #[arg(long, default_value_t = acceptance::SIEGEL_SEED)]
        seed: u64,
        /// Count primitive vectors; the target becomes πL²/ζ(2).
        #[arg(long)]
        primitive: bool,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::NoExactFormula(_) => (3, "no_exact_formula"),
            Error::VolumeUnavailable(_) => (3, "volume_unavailable"),
            Error::Parse { .. } => (2, "parse"),
            Error::InvalidStratum(_) => (2, "invalid_stratum"),
            Error::InvalidComponent { .. } => (2, "invalid_component"),
            Error::Precondition(_) => (2, "precondition"),
            _ => (1, "computation"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "usage", message: message.into() }
}

/// Printed output and whether the command's checks passed.
struct Output {
    body: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{}", out.body);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ok = |body: String| Ok(Output { body, passed: true });
    match &cli.command {
        Command::Volume { stratum, mode } => ok(volume(cli, stratum, *mode)?),
        Command::Sv { family, stratum, z1, z2, p, g, exact } => {
            ok(sv(cli, family.as_deref(), stratum.as_deref(), *z1, *z2, p, *g, *exact)?)
        }
        Command::Table { g, m1, m2, p } => {
            let rows = generate_table(*g, TableParams { m1: *m1, m2: *m2, p: *p })?;
            let format = match cli.format {
                Format::Json => TableFormat::Json,
                Format::Csv | Format::Text => TableFormat::Csv,
            };
            ok(render_table(&rows, format)?.trim_end().to_string())
        }
        Command::Lemma { id, max_p, max_part, max_r, g } => {
            let lemma = LemmaId::from_name(id).ok_or_else(|| {
                let names: Vec<_> = LemmaId::ALL.iter().map(|l| l.name()).collect();
                usage(format!("unknown lemma {id:?}; choose one of {}", names.join(", ")))
            })?;
            let report = lemma_report(lemma, LemmaSize { max_p: *max_p, max_part: *max_part, max_r: *max_r, g: *g })?;
            let passed = report.get("passed").and_then(Value::as_bool).unwrap_or(true);
            let body = json!({ "lemma": lemma.name(), "report": report });
            Ok(Output { body: render_json(cli, &body)?, passed })
        }
        Command::Siegel { samples, radius, seed, primitive } => {
            let r = siegel_average(*samples, *radius, *seed, *primitive)?;
            ok(render_json(cli, &serde_json::to_value(&r).expect("serialisable"))?)
        }
        Command::Selftest { only } => {
            let results = match only {
                Some(id) => vec![acceptance::run_criterion(*id)?],
                None => acceptance::run_all()?,
            };
            let passed = results.iter().all(|r| r.passed);
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&results).expect("serialisable"),
                _ => {
                    let mut lines: Vec<String> = results.iter().map(|r| r.to_string()).collect();
                    let n = results.iter().filter(|r| r.passed).count();
                    lines.push(format!("{n}/{} criteria passed", results.len()));
                    lines.join("\n")
                }
            };
            Ok(Output { body, passed })
        }
    }
}

fn render_json(cli: &Cli, v: &Value) -> Result<String, Failure> {
    match cli.format {
        Format::Csv => Err(usage("this command has no CSV output; use --format json")),
        _ => Ok(serde_json::to_string_pretty(v).expect("serialisable")),
    }
}

/// Decimal expansion of an exact value at the requested precision.
fn decimal(v: &PiLaurent, precision: usize) -> String {
    to_decimal_string(&v.to_float(precision.max(16)))
}

fn emit(cli: &Cli, text: String, fields: Value) -> Result<String, Failure> {
    match cli.format {
        Format::Text => Ok(text),
        Format::Json => Ok(serde_json::to_string_pretty(&fields).expect("serialisable")),
        Format::Csv => {
            let obj = fields.as_object().expect("object");
            let mut w = csv::Writer::from_writer(Vec::new());
            let cell = |v: &Value| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record(obj.keys()).and_then(|_| w.write_record(obj.values().map(cell))).map_err(|e| usage(e.to_string()))?;
            Ok(String::from_utf8(w.into_inner().expect("flush")).expect("utf8").trim_end().to_string())
        }
    }
}

fn volume(cli: &Cli, text: &str, mode: VolumeMode) -> Result<String, Failure> {
    let stratum: Stratum = text.parse()?;
    let (sig, comp) = (&stratum.signature, stratum.component);
    let v = match mode {
        VolumeMode::Exact => volume_exact_special(sig, comp)?,
        VolumeMode::Asymptotic => volume_component_asymptotic(sig, comp)?,
        VolumeMode::Auto => match volume_exact_special(sig, comp) {
            Err(Error::NoExactFormula(_)) => volume_component_asymptotic(sig, comp)?,
            other => other?,
        },
    };
    let value = match &v {
        VolumeValue::Exact(x) | VolumeValue::Leading { value: x, .. } => x.to_string(),
        VolumeValue::LeadingFloat { .. } => v.render(),
    };
    let dec = v.pi_laurent().map(|x| decimal(x, cli.precision));
    let text_line = match &v {
        VolumeValue::Exact(x) => format!("{x} (exact) = {}", v.to_f64()),
        _ => format!("{} = {}", v.render(), v.to_f64()),
    };
    emit(
        cli,
        text_line,
        json!({
            "stratum": stratum.to_string(),
            "value": value,
            "float": v.to_f64(),
            "decimal": dec,
            "error_class": v.error_class().to_string(),
        }),
    )
}

fn parse_multiplicity(p: &str) -> Result<Multiplicity, Failure> {
    if p == "any" {
        return Ok(Multiplicity::Any);
    }
    match p.parse::<u64>() {
        Ok(n) if n > 0 => Ok(Multiplicity::Exactly(n)),
        _ => Err(usage(format!("multiplicity must be a positive integer or \"any\", got {p:?}"))),
    }
}

fn hyp_family(f: SpecialFamily) -> Option<HypFamily> {
    match f {
        SpecialFamily::HypMinimalLoops => Some(HypFamily::LoopsMinimal),
        SpecialFamily::HypTwoEqualDistinct => Some(HypFamily::DistinctTwoEqual),
        SpecialFamily::HypTwoEqualLoops => Some(HypFamily::LoopsTwoEqual),
        _ => None,
    }
}

fn sv_fields(label: String, p: &str, g: u64, v: &SvValue, cli: &Cli) -> Value {
    json!({
        "constant": label,
        "p": p,
        "g": g,
        "value": v.to_string(),
        "exact": v.value.to_string(),
        "float": v.to_f64(),
        "decimal": decimal(&v.value, cli.precision),
        "error_class": v.error.to_string(),
        "provenance": v.provenance.to_string(),
    })
}

#[allow(clippy::too_many_arguments)]
fn sv(
    cli: &Cli,
    family: Option<&str>,
    stratum: Option<&str>,
    z1: usize,
    z2: Option<usize>,
    p: &str,
    g: u64,
    exact: bool,
) -> Result<String, Failure> {
    let mult = parse_multiplicity(p)?;
    if let Some(name) = family {
        let fam = SpecialFamily::from_name(name).ok_or_else(|| {
            let names: Vec<_> = SpecialFamily::ALL.iter().map(|f| f.name()).collect();
            usage(format!("unknown family {name:?}; choose one of {}", names.join(", ")))
        })?;
        if exact {
            let hf = hyp_family(fam)
                .ok_or_else(|| Failure::from(Error::NoExactFormula(format!("{name} in genus {g}"))))?;
            let Multiplicity::Exactly(n) = mult else {
                return Err(Error::NoExactFormula(format!("{name} summed over all multiplicities")).into());
            };
            let v = sv_hyperelliptic_exact(&hf.stratum(g), hf, n as usize, None)?;
            return emit(cli, v.to_string(), sv_fields(name.to_string(), p, g, &v, cli));
        }
        let v = asym_special_families(fam, mult, g)?;
        let coefficient = v.coefficient.to_string();
        return emit(
            cli,
            v.to_string(),
            json!({
                "constant": name,
                "p": p,
                "g": g,
                "value": v.to_string(),
                "coefficient": coefficient,
                "g_power": v.g_power.to_string(),
                "float": v.leading_f64(g)?,
                "error_class": v.error.to_string(),
            }),
        );
    }
    let Some(text) = stratum else {
        return Err(usage("give either --family or --stratum"));
    };
    let stratum: Stratum = text.parse()?;
    if stratum.component != ComponentId::Whole {
        return Err(usage("components are only available through the named hyperelliptic families"));
    }
    let h = &stratum.signature;
    let Multiplicity::Exactly(n) = mult else {
        return Err(usage("explicit strata need a numeric multiplicity"));
    };
    let vol: &dyn VolumeProvider = if exact { &HyperellipticVolumes } else { &AsymptoticVolumes::default() };
    let (label, v) = match z2 {
        Some(z2) => (format!("{h} zeros {z1}->{z2}"), sv_distinct_total(h, z1, z2, n as usize, vol)?),
        None => (format!("{h} loops at zero {z1}"), sv_loop_total(h, z1, n as usize, vol)?),
    };
    if exact && !v.error.is_exact() {
        return Err(Error::NoExactFormula(label).into());
    }
    emit(cli, v.to_string(), sv_fields(label, p, h.genus(), &v, cli))
}
