//! `mirrorcalc` command-line front end.
//!
//! Every subcommand prints one report, as pretty JSON (default) or as a flat
//! two-column CSV of `path,value` rows. Exit codes: 0 on success, 2 on bad
//! arguments or unreadable input files, 1 on domain errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinatorics;
use crate::divisor::{self, FamilyData, FamilyJson, PointJson};
use crate::error::Error;
use crate::gw::{self, GwTable, GwTableJson};
use crate::lattice::{self, CubicLattice, LatticeJson, Matrix};
use crate::modular::{self, format_complex, parse_complex};
use crate::pseries::{format_rational, parse_rational, Rational};
use crate::quintic;

pub const ORDER_ENV: &str = "MIRRORCALC_ORDER";

#[derive(Debug, Parser)]
#[command(name = "mirrorcalc", version, about = "Exact mirror-quintic series, GW extraction, lattice covolumes and BCOV factors")]
pub struct Cli {
    /// Truncation order of series computations.
    #[arg(long, global = true, env = ORDER_ENV, default_value_t = quintic::DEFAULT_ORDER)]
    pub order: usize,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Period y0, mirror map q(x), its inverse x(q) and u(q) = q d/dq log x.
    MirrorMap,
    /// The genus-one log-derivative G(q) = q d/dq log F1.
    F1,
    /// Genus-0 invariants (pipeline or file) and the genus-1 invariants extracted from G.
    ExtractGw(ExtractGwArgs),
    /// The ODP coefficient delta(n, p), or a full row.
    Delta(DeltaArgs),
    /// L2 Gram matrix and covolume of a cubic lattice.
    Covolume(CovolumeArgs),
    /// FHSV covolume, volume and the constant Vol^-3 Vol_L2^-1 <H,H>^4.
    Fhsv(FhsvArgs),
    /// Eta/Delta q-expansions and the Petersson norm of Delta.
    Modular(ModularArgs),
    /// Exponents of the closed-form BCOV factor of a family over the psi-line.
    BcovFactor(BcovArgs),
}

#[derive(Debug, Args)]
pub struct ExtractGwArgs {
    /// JSON file `{"n0": {"1": "2875", ...}}` replacing the genus-0 pipeline.
    #[arg(long)]
    pub n0_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long, requires = "p", conflicts_with = "table")]
    pub n: Option<u32>,
    #[arg(long, requires = "n")]
    pub p: Option<u32>,
    /// Print delta(N, 0..=N).
    #[arg(long, value_name = "N")]
    pub table: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CovolumeArgs {
    #[arg(long)]
    pub lattice: PathBuf,
}

#[derive(Debug, Args)]
pub struct FhsvArgs {
    /// JSON file with the 10x10 Gram matrix of the Enriques-invariant lattice.
    #[arg(long)]
    pub gram: PathBuf,
    /// Coordinates of H, e.g. "[1,1,0,0,0,0,0,0,0,0]".
    #[arg(long)]
    pub h: String,
}

#[derive(Debug, Args)]
pub struct ModularArgs {
    /// Evaluate (Im tau)^12 |Delta(tau)|^2.
    #[arg(long, requires = "tau")]
    pub delta_norm: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    #[arg(long, default_value_t = 60)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct BcovArgs {
    /// Family JSON; points are {"root_of_unity":[n,k]}, {"value":"a+bi"} or "infinity".
    #[arg(long, required_unless_present = "quintic")]
    pub family: Option<PathBuf>,
    /// Use the built-in mirror quintic family.
    #[arg(long, conflicts_with = "family")]
    pub quintic: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub eval_at: Option<String>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: render(&report, cli.output),
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Domain(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn render(report: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["path", "value"]).expect("in-memory");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory");
            }
            String::from_utf8(w.into_inner().expect("in-memory")).expect("utf8")
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn execute(cli: &Cli) -> Result<Value, Failure> {
    let order = cli.order;
    match &cli.command {
        Command::MirrorMap => {
            let chart = quintic::mirror_map(order)?;
            Ok(json!({
                "order": order,
                "y0": to_value(&chart.y0.to_json()),
                "q_of_x": to_value(&chart.q_of_x.to_json()),
                "x_of_q": to_value(&chart.x_of_q.to_json()),
                "u_of_q": to_value(&chart.u_of_q.to_json()),
            }))
        }
        Command::F1 => {
            let chart = quintic::mirror_map(order.max(1))?;
            let g = quintic::f1_log_derivative(&chart)?.g.truncate(order);
            Ok(json!({ "order": order, "G": to_value(&g.to_json()) }))
        }
        Command::ExtractGw(args) => extract_gw(order, args),
        Command::Delta(args) => delta(args),
        Command::Covolume(args) => {
            let json: LatticeJson = read_json(&args.lattice)?;
            let lattice = CubicLattice::from_json(&json)?;
            Ok(to_value(&lattice.covolume()?.to_json()))
        }
        Command::Fhsv(args) => fhsv(args),
        Command::Modular(args) => modular_report(order, args),
        Command::BcovFactor(args) => bcov(args),
    }
}

fn extract_gw(order: usize, args: &ExtractGwArgs) -> Result<Value, Failure> {
    let chart = quintic::mirror_map(order)?;
    let g = quintic::f1_log_derivative(&chart)?.g;
    let (n0, instantons) = match &args.n0_file {
        Some(path) => {
            let table = GwTable::from_json(&read_json::<GwTableJson>(path)?)?;
            (table.n0, None)
        }
        None => {
            let table = gw::genus0_pipeline(&chart, order)?;
            (table.n0, table.instanton_n0)
        }
    };
    let mut table = gw::extract_n1(&g, &n0)?;
    table.instanton_n0 = instantons;
    Ok(to_value(&table.to_json()))
}

fn delta(args: &DeltaArgs) -> Result<Value, Failure> {
    match (args.n, args.p, args.table) {
        (Some(n), Some(p), None) => {
            let v = combinatorics::delta(n, p)?;
            Ok(json!({ "n": n, "p": p, "value": format_rational(&v) }))
        }
        (None, None, Some(n)) => {
            let row = combinatorics::delta_row(n)?;
            Ok(json!({ "n": n, "values": row.iter().map(format_rational).collect::<Vec<_>>() }))
        }
        _ => Err(Failure::Usage("delta needs either --n N --p P or --table N".into())),
    }
}

fn parse_int_matrix(v: &Value) -> Result<Matrix, Failure> {
    let bad = || Failure::Usage("gram must be a JSON array of rows of integers or \"p/q\" strings".into());
    let rows = v.get("gram").unwrap_or(v).as_array().ok_or_else(bad)?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| parse_number(x).ok_or_else(bad))
                .collect()
        })
        .collect()
}

fn parse_number(x: &Value) -> Option<Rational> {
    match x {
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        Value::String(s) => parse_rational(s).ok(),
        _ => None,
    }
}

fn fhsv(args: &FhsvArgs) -> Result<Value, Failure> {
    let a = parse_int_matrix(&read_json::<Value>(&args.gram)?)?;
    let h_json: Value = serde_json::from_str(&args.h)
        .map_err(|e| Failure::Usage(format!("--h must be a JSON array: {e}")))?;
    let h = h_json
        .as_array()
        .ok_or_else(|| Failure::Usage("--h must be a JSON array".into()))?
        .iter()
        .map(|x| parse_number(x).ok_or_else(|| Failure::Usage(format!("bad entry in --h: {x}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let gram = lattice::fhsv_covolume(&a, &h)?;
    let volume = lattice::fhsv_volume(&a, &h)?;
    let constant = lattice::fhsv_constant(&a, &h)?;
    Ok(json!({
        "gram": to_value(&gram.to_json().gram),
        "covolume": to_value(&gram.covolume.to_json()),
        "volume": to_value(&volume.to_json()),
        "constant": to_value(&constant.to_json()),
    }))
}

fn modular_report(order: usize, args: &ModularArgs) -> Result<Value, Failure> {
    if args.delta_norm {
        let tau_text = args.tau.as_deref().expect("clap enforces --tau");
        let tau = parse_complex(tau_text)?;
        let v = modular::petersson_delta(tau, args.terms)?;
        return Ok(to_value(&v));
    }
    Ok(json!({
        "order": order,
        "eta": to_value(&modular::eta_series(order).to_json()),
        "delta": to_value(&modular::delta_series(order.max(1))?.truncate(order).to_json()),
    }))
}

fn bcov(args: &BcovArgs) -> Result<Value, Failure> {
    let data = if args.quintic {
        FamilyData::mirror_quintic()
    } else {
        let path = args.family.as_ref().expect("clap enforces --family");
        FamilyData::from_json(&read_json::<FamilyJson>(path)?)?
    };
    let factor = divisor::assemble_factor(&data)?;
    let entries: Vec<Value> = factor
        .entries
        .iter()
        .map(|(p, e)| json!({ "point": to_value(&PointJson::from_point(p)), "exponent": format_rational(e) }))
        .collect();
    let mut report: BTreeMap<&str, Value> = BTreeMap::new();
    report.insert("entries", Value::Array(entries));
    report.insert("xi_power", json!(format_rational(&factor.xi_power)));
    report.insert("vector_field_power", json!(format_rational(&factor.vector_field_power)));
    report.insert("overall_root", json!(format_rational(&factor.overall_root)));
    report.insert("infinity_exponent", json!(format_rational(&factor.infinity_exponent())));
    if let Some(at) = &args.eval_at {
        let psi = parse_complex(at)?;
        let value = divisor::green_potential(&data, psi)?;
        report.insert("eval_at", json!(format_complex(psi)));
        report.insert("green_potential", json!(value));
    }
    Ok(to_value(&report))
}
