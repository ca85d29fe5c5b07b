//! Argument parsing, dispatch and report formatting for the `klr` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use klr_core::charcalc::{self, Character};
use klr_core::crystal::{self, CrystalError, CrystalGraph, Suite};
use klr_core::klr::{graded_dim_series, CyclotomicCaps, CyclotomicPresentation, Engine, KlrElement, KlrError};
use klr_core::{CartanDatum, DominantWeight, RawDatum, RootVector};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Datum(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Truncation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Datum(_) => "datum",
            CliError::Input(_) => "input",
            CliError::Cap(_) => "cap",
            CliError::Truncation(_) => "truncation",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Cap(_) | CliError::Truncation(_) => 2,
            _ => 1,
        }
    }

    /// `ERROR <code> <detail>` on one line.
    pub fn record(&self) -> String {
        let detail = self.to_string().replace(['\n', '\r'], " ");
        format!("ERROR {} {}", self.code(), detail)
    }
}

impl From<KlrError> for CliError {
    fn from(e: KlrError) -> Self {
        match e {
            KlrError::CapExceeded(m) => CliError::Cap(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CrystalError> for CliError {
    fn from(e: CrystalError) -> Self {
        match e {
            CrystalError::TruncationExceeded { .. } => CliError::Truncation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<charcalc::CharError> for CliError {
    fn from(e: charcalc::CharError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "klr", version, about = "KLR algebras, shuffle characters and crystals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan datum files.
    Datum {
        #[command(subcommand)]
        cmd: DatumCmd,
    },
    /// Characters in the quantum shuffle algebra.
    Char {
        #[command(subcommand)]
        cmd: CharCmd,
    },
    /// KLR algebras and their cyclotomic quotients.
    Klr {
        #[command(subcommand)]
        cmd: KlrCmd,
    },
    /// Crystals B(inf) and B(Lambda).
    Crystal {
        #[command(subcommand)]
        cmd: CrystalCmd,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Datum file: {"labels": [...], "bilinear": [[...]]}.
    #[arg(long)]
    pub datum: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DatumCmd {
    /// Check the datum axioms and print the Cartan matrix.
    Validate(Common),
}

#[derive(Debug, Subcommand)]
pub enum CharCmd {
    /// Character of the simple module of content c·i + j with ε_i = n.
    Simple {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        c: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Quantum shuffle product of two character files.
    Shuffle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// ε, ε^∨, wt, jump and φ^Λ of a simple module's character.
    Stats {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Σ_r (-1)^r e_i^{(c-r)} e_j e_i^{(r)} applied to a character.
    Serre {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        /// Operator degree; also the `c` of the simple character unless `--input` is given.
        #[arg(long)]
        c: u32,
        /// Apply to the simple character with ε_i = n.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        /// Apply to a character file instead.
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    /// Largest dot exponent tried when searching for nilpotency.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_dot: Option<u32>,
    /// Largest degree the closure may reach.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_degree: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum KlrCmd {
    /// Product of two element files in PBW normal form.
    Multiply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Graded dimension of 1_dst R(ν) 1_src through a degree.
    Dim {
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex labels.
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
        max_deg: i64,
    },
    /// Dimension of the cyclotomic quotient R^Λ(ν).
    CyclotomicDim {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Least k with x_r^k = 0 in R^Λ(ν).
    Nilpotency {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Strand (1-based); all strands if omitted.
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CrystalCmd {
    /// Generate B(inf) to a depth, or B(Lambda) with --lambda.
    Graph {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Depth of B(inf) (default 4) or depth cap of B(Lambda) (default 64).
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Weight multiplicities.
    Mult {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        depth: Option<u32>,
        /// C, KS, PSI, JUMP, EPSJUMP or PHI; all if omitted.
        #[arg(long)]
        suite: Vec<String>,
    },
}

const BINF_DEPTH: u32 = 4;
const BLAMBDA_DEPTH: u32 = 64;

fn default_depth(lambda: &Option<String>, depth: Option<u32>) -> u32 {
    depth.unwrap_or(if lambda.is_some() { BLAMBDA_DEPTH } else { BINF_DEPTH })
}

/// Result of a successful dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub warnings: Vec<String>,
    /// Set when the command ran but reports a failure (verification).
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            warnings: Vec::new(),
            failure: None,
        }
    }
}

impl Cli {
    pub fn output(&self) -> Option<&Path> {
        self.common().output.as_deref()
    }

    fn common(&self) -> &Common {
        match &self.command {
            Command::Datum { cmd: DatumCmd::Validate(c) } => c,
            Command::Char { cmd } => match cmd {
                CharCmd::Simple { common, .. }
                | CharCmd::Shuffle { common, .. }
                | CharCmd::Stats { common, .. }
                | CharCmd::Serre { common, .. } => common,
            },
            Command::Klr { cmd } => match cmd {
                KlrCmd::Multiply { common, .. }
                | KlrCmd::Dim { common, .. }
                | KlrCmd::CyclotomicDim { common, .. }
                | KlrCmd::Nilpotency { common, .. } => common,
            },
            Command::Crystal { cmd } => match cmd {
                CrystalCmd::Graph { common, .. } | CrystalCmd::Mult { common, .. } | CrystalCmd::Verify { common, .. } => common,
            },
        }
    }
}

pub fn load_datum(path: &Path) -> Result<CartanDatum, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let raw: RawDatum = serde_json::from_str(&text).map_err(|e| CliError::Datum(format!("{}: {e}", path.display())))?;
    CartanDatum::from_raw(raw).map_err(|e| CliError::Datum(e.to_string()))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--{flag}: {x:?} is not an integer")))
        })
        .collect()
}

pub fn parse_nu(d: &CartanDatum, s: &str) -> Result<RootVector, CliError> {
    d.parse_root_vector(&parse_list("nu", s)?)
        .map_err(|e| CliError::Usage(format!("--nu: {e}")))
}

pub fn parse_lambda(d: &CartanDatum, s: &str) -> Result<DominantWeight, CliError> {
    let nu = d
        .parse_root_vector(&parse_list("lambda", s)?)
        .map_err(|e| CliError::Usage(format!("--lambda: {e}")))?;
    Ok(DominantWeight(nu.0))
}

fn vertex(d: &CartanDatum, flag: &str, s: &str) -> Result<usize, CliError> {
    d.index_of(s).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn parse_word(d: &CartanDatum, flag: &str, s: &str) -> Result<Vec<u8>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|l| vertex(d, flag, l.trim()).map(|i| i as u8)).collect()
}

fn unsupported(format: Format, what: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for {what}").to_lowercase())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn nu_string(nu: &RootVector) -> String {
    nu.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn series_json(s: &BTreeMap<i64, u64>) -> Value {
    Value::Object(s.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn series_text(s: &BTreeMap<i64, u64>) -> String {
    s.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(";")
}

fn character_out(d: &CartanDatum, ch: &Character, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(ch.display(d)),
        Format::Json => Ok(pretty(&ch.to_json(d))),
        f => Err(unsupported(f, "characters")),
    }
}

fn caps(args: &CapArgs) -> CyclotomicCaps {
    let mut caps = CyclotomicCaps::from_env();
    if let Some(k) = args.max_dot {
        caps.max_dot_exponent = k;
    }
    if let Some(k) = args.max_degree {
        caps.max_degree = k;
    }
    caps
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let common = cli.common();
    let d = load_datum(&common.datum)?;
    let format = common.format;
    match &cli.command {
        Command::Datum { .. } => datum_validate(&d, format),
        Command::Char { cmd } => run_char(&d, cmd, format),
        Command::Klr { cmd } => run_klr(&d, cmd, format),
        Command::Crystal { cmd } => run_crystal(&d, cmd, format),
    }
}

fn datum_validate(d: &CartanDatum, format: Format) -> Result<Outcome, CliError> {
    let n = d.rank();
    let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d.cartan(i, j)).collect()).collect();
    let sym: Vec<i64> = (0..n).map(|i| d.d(i)).collect();
    let text = match format {
        Format::Text => {
            let mut s = format!("valid\nlabels {}\n", d.labels().join(" "));
            s.push_str("cartan\n");
            for row in &cartan {
                let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{}", r.join(" "));
            }
            let _ = write!(s, "finite {}", if d.is_finite_type() { "yes" } else { "no" });
            s
        }
        Format::Json => pretty(&json!({
            "valid": true,
            "labels": d.labels(),
            "bilinear": d.to_raw().bilinear,
            "cartan": cartan,
            "symmetrizer": sym,
            "finite": d.is_finite_type(),
        })),
        f => return Err(unsupported(f, "datum validate")),
    };
    Ok(Outcome::ok(text))
}

fn run_char(d: &CartanDatum, cmd: &CharCmd, format: Format) -> Result<Outcome, CliError> {
    let text = match cmd {
        CharCmd::Simple { i, j, c, n, .. } => {
            let ch = charcalc::char_simple_ci_j(d, vertex(d, "i", i)?, vertex(d, "j", j)?, *c, *n)?;
            character_out(d, &ch, format)?
        }
        CharCmd::Shuffle { left, right, .. } => {
            let f = Character::from_json(d, &read_json(left)?)?;
            let g = Character::from_json(d, &read_json(right)?)?;
            character_out(d, &charcalc::shuffle(d, &f, &g), format)?
        }
        CharCmd::Stats { input, lambda, .. } => {
            let ch = Character::from_json(d, &read_json(input)?)?;
            let lam = lambda.as_deref().map(|s| parse_lambda(d, s)).transpose()?;
            let s = charcalc::char_stats(d, &ch, lam.as_ref())?;
            match format {
                Format::Text => {
                    let mut out = String::from("vertex eps eps_vee wt jump phi_lambda");
                    for k in 0..d.rank() {
                        let phi = s.phi_lambda.as_ref().map_or("-".to_string(), |p| p[k].to_string());
                        let _ = write!(
                            out,
                            "\n{} {} {} {} {} {}",
                            d.label(k),
                            s.eps[k],
                            s.eps_vee[k],
                            s.wt[k],
                            s.jump[k],
                            phi
                        );
                    }
                    out
                }
                Format::Json => {
                    let per: serde_json::Map<String, Value> = (0..d.rank())
                        .map(|k| {
                            (
                                d.label(k).to_string(),
                                json!({
                                    "eps": s.eps[k],
                                    "eps_vee": s.eps_vee[k],
                                    "wt": s.wt[k],
                                    "jump": s.jump[k],
                                    "phi_lambda": s.phi_lambda.as_ref().map(|p| p[k]),
                                }),
                            )
                        })
                        .collect();
                    pretty(&Value::Object(per))
                }
                Format::Csv => {
                    let mut out = String::from("vertex,eps,eps_vee,wt,jump,phi_lambda");
                    for k in 0..d.rank() {
                        let phi = s.phi_lambda.as_ref().map_or(String::new(), |p| p[k].to_string());
                        let _ = write!(out, "\n{},{},{},{},{},{}", d.label(k), s.eps[k], s.eps_vee[k], s.wt[k], s.jump[k], phi);
                    }
                    out
                }
                f => return Err(unsupported(f, "char stats")),
            }
        }
        CharCmd::Serre { i, j, c, n, input, .. } => {
            let (iv, jv) = (vertex(d, "i", i)?, vertex(d, "j", j)?);
            let ch = match (input, n) {
                (Some(path), _) => Character::from_json(d, &read_json(path)?)?,
                (None, Some(n)) => charcalc::char_simple_ci_j(d, iv, jv, *c, *n)?,
                (None, None) => return Err(CliError::Usage("char serre needs --n or --input".into())),
            };
            character_out(d, &charcalc::serre_apply(d, &ch, iv, jv, *c)?, format)?
        }
    };
    Ok(Outcome::ok(text))
}

fn load_element(e: &Engine, path: &Path) -> Result<KlrElement, CliError> {
    let (nu, terms) = KlrElement::parse_json_terms(e.datum(), &read_json(path)?)?;
    Ok(e.element_from_terms(nu, &terms))
}

fn run_klr(d: &CartanDatum, cmd: &KlrCmd, format: Format) -> Result<Outcome, CliError> {
    let engine = Engine::new(d);
    let text = match cmd {
        KlrCmd::Multiply { left, right, .. } => {
            let a = load_element(&engine, left)?;
            let b = load_element(&engine, right)?;
            let ab = engine.multiply(&a, &b)?;
            match format {
                Format::Text => ab.display(d),
                Format::Json => pretty(&ab.to_json(d)),
                f => return Err(unsupported(f, "klr multiply")),
            }
        }
        KlrCmd::Dim { src, dst, nu, max_deg, .. } => {
            let src = parse_word(d, "src", src)?;
            let dst = parse_word(d, "dst", dst)?;
            let content = |w: &[u8]| charcalc::content(d.rank(), &w.iter().map(|&x| x as usize).collect::<Vec<_>>());
            if content(&src) != content(&dst) {
                return Err(CliError::Usage("--src and --dst have different contents".into()));
            }
            if let Some(nu) = nu {
                if parse_nu(d, nu)? != content(&src) {
                    return Err(CliError::Usage("--nu does not match the content of --src".into()));
                }
            }
            let s = graded_dim_series(d, &src, &dst, *max_deg);
            match format {
                Format::Text => s.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join("\n"),
                Format::Json => pretty(&series_json(&s)),
                Format::Csv => {
                    let mut out = String::from("degree,dim");
                    for (k, v) in &s {
                        let _ = write!(out, "\n{k},{v}");
                    }
                    out
                }
                f => return Err(unsupported(f, "klr dim")),
            }
        }
        KlrCmd::CyclotomicDim { lambda, nu, caps: c, .. } => {
            let lam = parse_lambda(d, lambda)?;
            let nu = parse_nu(d, nu)?;
            let p = CyclotomicPresentation::build(&engine, &nu, &lam, caps(c))?;
            let graded = p.graded_dim();
            match format {
                Format::Text => p.dim().to_string(),
                Format::Csv => format!(
                    "nu,lambda,dim,graded_dim\n{},{},{},{}",
                    nu_string(&nu),
                    nu_string(&RootVector(lam.0.clone())),
                    p.dim(),
                    series_text(&graded)
                ),
                Format::Json => pretty(&json!({
                    "nu": nu.0,
                    "lambda": lam.0,
                    "dim": p.dim(),
                    "graded_dim": series_json(&graded),
                })),
                f => return Err(unsupported(f, "klr cyclotomic-dim")),
            }
        }
        KlrCmd::Nilpotency { lambda, nu, r, caps: c, .. } => {
            let lam = parse_lambda(d, lambda)?;
            let nu = parse_nu(d, nu)?;
            let m = nu.height() as usize;
            let strands: Vec<usize> = match r {
                Some(0) => return Err(CliError::Usage("--r is 1-based".into())),
                Some(r) if *r > m => return Err(CliError::Usage(format!("--r {r} exceeds {m} strands"))),
                Some(r) => vec![r - 1],
                None => (0..m).collect(),
            };
            let p = CyclotomicPresentation::build(&engine, &nu, &lam, caps(c))?;
            let values = strands
                .iter()
                .map(|&s| p.dot_nilpotency(s).map(|k| (s + 1, k)))
                .collect::<Result<Vec<_>, _>>()?;
            match (format, r) {
                (Format::Text, Some(_)) => values[0].1.to_string(),
                (Format::Text, None) => values.iter().map(|(s, k)| format!("x{s} {k}")).collect::<Vec<_>>().join("\n"),
                (Format::Json, _) => pretty(&Value::Object(
                    values.iter().map(|(s, k)| (s.to_string(), json!(k))).collect(),
                )),
                (Format::Csv, _) => {
                    let mut out = String::from("strand,nilpotency");
                    for (s, k) in &values {
                        let _ = write!(out, "\n{s},{k}");
                    }
                    out
                }
                (f, _) => return Err(unsupported(f, "klr nilpotency")),
            }
        }
    };
    Ok(Outcome::ok(text))
}

fn build_graph(d: &CartanDatum, lambda: Option<&str>, depth: u32) -> Result<(CrystalGraph, Vec<String>), CliError> {
    match lambda {
        None => Ok((CrystalGraph::binf(d, depth)?, Vec::new())),
        Some(l) => {
            let lam = parse_lambda(d, l)?;
            let g = CrystalGraph::blambda(d, &lam, depth)?;
            let mut warnings = Vec::new();
            if !g.complete {
                warnings.push(format!("WARNING incomplete B(Lambda) truncated at depth {depth}"));
            }
            Ok((g, warnings))
        }
    }
}

fn run_crystal(d: &CartanDatum, cmd: &CrystalCmd, format: Format) -> Result<Outcome, CliError> {
    match cmd {
        CrystalCmd::Graph { lambda, depth, .. } => {
            let (g, warnings) = build_graph(d, lambda.as_deref(), default_depth(lambda, *depth))?;
            let text = match format {
                Format::Text | Format::Dot => crystal::output::to_dot(&g),
                Format::Json => pretty(&crystal::output::to_json(&g)),
                Format::Csv => crystal::output::multiplicities_csv(&g),
            };
            Ok(Outcome {
                text,
                warnings,
                failure: None,
            })
        }
        CrystalCmd::Mult { lambda, nu, depth, .. } => {
            let nu = nu.as_deref().map(|s| parse_nu(d, s)).transpose()?;
            let depth = match (depth, &nu, lambda) {
                (Some(k), _, _) => *k,
                (None, Some(nu), None) => nu.height(),
                (None, None, None) => return Err(CliError::Usage("B(inf) multiplicities need --nu or --depth".into())),
                (None, _, Some(_)) => BLAMBDA_DEPTH,
            };
            if let (Some(nu), None) = (&nu, lambda) {
                if nu.height() > depth {
                    return Err(CliError::Usage(format!("--depth {depth} is below the height of --nu")));
                }
            }
            let (g, warnings) = build_graph(d, lambda.as_deref(), depth)?;
            let text = match (&nu, format) {
                (Some(nu), Format::Text) => g.multiplicity(nu).to_string(),
                (Some(nu), Format::Json) => pretty(&json!({"nu": nu.0, "count": g.multiplicity(nu)})),
                (Some(nu), Format::Csv) => format!("weight_coords,count\n{},{}", nu_string(nu), g.multiplicity(nu)),
                (None, Format::Text | Format::Csv) => crystal::output::multiplicities_csv(&g),
                (None, Format::Json) => pretty(&Value::Array(
                    g.weight_multiplicities()
                        .iter()
                        .map(|(nu, c)| json!({"nu": nu.0, "count": c}))
                        .collect(),
                )),
                (_, f) => return Err(unsupported(f, "crystal mult")),
            };
            Ok(Outcome {
                text,
                warnings,
                failure: None,
            })
        }
        CrystalCmd::Verify { lambda, depth, suite, .. } => {
            let suites: Vec<Suite> = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite
                    .iter()
                    .flat_map(|s| s.split(','))
                    .map(|s| s.trim().parse::<Suite>().map_err(|e| CliError::Usage(format!("--suite: {e}"))))
                    .collect::<Result<_, _>>()?
            };
            let (g, warnings) = build_graph(d, lambda.as_deref(), default_depth(lambda, *depth))?;
            let mut reports = Vec::new();
            for s in suites {
                reports.push(crystal::verify(&g, s)?);
            }
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed())
                .map(|r| format!("{} ({} violations)", r.suite, r.violations.len()))
                .collect();
            let text = match format {
                Format::Text => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
                Format::Json => pretty(&Value::Array(
                    reports
                        .iter()
                        .map(|r| {
                            json!({
                                "suite": r.suite.name(),
                                "passed": r.passed(),
                                "checks": r.checks,
                                "violations": r.violations.iter().map(|v| json!({
                                    "check": v.check, "node": v.node, "detail": v.detail,
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect(),
                )),
                f => return Err(unsupported(f, "crystal verify")),
            };
            Ok(Outcome {
                text,
                warnings,
                failure: (!failed.is_empty()).then(|| format!("failed suites: {}", failed.join(", "))),
            })
        }
    }
}
