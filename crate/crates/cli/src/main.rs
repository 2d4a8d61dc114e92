use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use freecurve::analysis::{analyze, Analysis, AnalysisOptions};
use freecurve::arith::{Rational, DEFAULT_SEED};
use freecurve::error::{AnalysisError, CurveError};
use freecurve::families::{self, CurveSpec, FamilyParams};
use freecurve::freeness::{CurveContext, SaturationMode};
use freecurve::milnor::{syzygy_basis_in_degree, CurveInput, FieldMode, ProfileDiagnostics, ProfileOptions};
use freecurve::parser::{parse_expression, ParseDiagnostic};
use freecurve::tripoly::TriPoly;
use freecurve::verify::{self, Status, Suite, VerifyOptions};

#[derive(Parser)]
#[command(name = "freecurve", version, about = "Milnor algebra invariants and freeness of plane curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function, thresholds, freeness verdict and saturation defects.
    Analyze(AnalyzeArgs),
    /// Reproduce the recorded values of every curve family.
    VerifyPaper(VerifyArgs),
    /// Exact basis of the relations among the partial derivatives in one degree.
    Syzygies(SyzygyArgs),
    /// List or generate catalogue curves.
    Families {
        #[command(subcommand)]
        action: FamiliesCmd,
    },
}

#[derive(Args, Clone)]
struct Source {
    /// Polynomial in x, y, z, e.g. "(y*z+x^2)^2*y - x^5".
    #[arg(long, conflicts_with = "family")]
    poly: Option<String>,
    /// Homogenize an inhomogeneous polynomial to this degree.
    #[arg(long, requires = "poly")]
    affine_degree: Option<u32>,
    /// Catalogue id (see `families list`).
    #[arg(long)]
    family: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long)]
    which: Option<String>,
    /// Comma-separated rational coefficients.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Qq,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Saturation {
    Formula,
    Direct,
    Both,
}

#[derive(Args)]
struct Output {
    /// Force JSON output (default when stdout is not a terminal).
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "auto")]
    field: Field,
    #[arg(long, value_enum, default_value = "formula")]
    saturation: Saturation,
    /// Last degree of the Hilbert function to compute.
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run (repeatable); all when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Extend the default ranges to the larger published ones.
    #[arg(long)]
    stretch: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SyzygyArgs {
    #[command(flatten)]
    source: Source,
    /// Coefficient degree of the relations.
    #[arg(long)]
    degree: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum FamiliesCmd {
    /// Print the catalogue.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Generate one member: canonical polynomial plus JSON metadata.
    Gen {
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Write the polynomial here and the metadata to `<out>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure with its exit code: 1 for bad input, 2 for internal inconsistency.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 1, err: e.into() }
    }
}

fn inconsistency(err: anyhow::Error) -> Failure {
    Failure { code: 2, err }
}

fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| anyhow::anyhow!("bad rational `{s}`: {e}"))
}

impl ParamArgs {
    fn to_params(&self) -> anyhow::Result<FamilyParams> {
        let opt = |v: &Option<String>| v.as_deref().map(parse_rational).transpose();
        Ok(FamilyParams {
            d: self.d,
            k: self.k,
            j: self.j,
            a: opt(&self.a)?,
            b: opt(&self.b)?,
            c: opt(&self.c)?,
            which: self.which.clone(),
            coeffs: self
                .coeffs
                .as_deref()
                .map(|s| s.split(',').map(parse_rational).collect::<anyhow::Result<Vec<_>>>())
                .transpose()?,
        })
    }
}

fn render_diagnostic(input: &str, d: &ParseDiagnostic) -> String {
    format!("{d}\n  {input}\n  {}^", " ".repeat(input[..d.position.min(input.len())].chars().count()))
}

/// Resolves the source to a polynomial plus optional family metadata.
fn resolve(src: &Source) -> Result<(TriPoly, Option<CurveSpec>), Failure> {
    match (&src.poly, &src.family) {
        (Some(text), None) => {
            let p = parse_expression(text).map_err(|d| anyhow::anyhow!("{}", render_diagnostic(text, &d)))?;
            if p.is_zero() {
                return Err(anyhow::anyhow!("the zero polynomial does not define a curve").into());
            }
            let p = match src.affine_degree {
                Some(d) => p.homogenize(d).context("cannot homogenize")?,
                None if !p.is_homogeneous() => {
                    return Err(anyhow::anyhow!(
                        "polynomial is not homogeneous; pass --affine-degree D to homogenize"
                    )
                    .into())
                }
                None => p,
            };
            Ok((p, None))
        }
        (None, Some(id)) => {
            let spec = families::generate(id, &src.params.to_params()?)?;
            Ok((spec.f.clone(), Some(spec)))
        }
        _ => Err(anyhow::anyhow!("give exactly one of --poly or --family").into()),
    }
}

fn curve_input(f: TriPoly) -> Result<CurveInput, Failure> {
    CurveInput::new(f).map_err(curve_failure)
}

fn curve_failure(e: CurveError) -> Failure {
    match e {
        CurveError::Soundness(_) => inconsistency(e.into()),
        _ => e.into(),
    }
}

fn use_json(o: &Output) -> bool {
    o.json || !std::io::stdout().is_terminal()
}

fn emit<T: Serialize>(o: &Output, value: &T, table: impl FnOnce() -> String) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(path) = &o.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if use_json(o) {
        write_stdout(&format!("{text}\n"));
    } else {
        write_stdout(&table().to_string());
    }
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    f: String,
    d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'a CurveSpec>,
    profile: &'a freecurve::milnor::MilnorProfile,
    freeness: &'a freecurve::freeness::FreenessReport,
    diagnostics: &'a ProfileDiagnostics,
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), Failure> {
    let (f, spec) = resolve(&a.source)?;
    let c = curve_input(f)?;
    if c.degree() < 3 {
        return Err(anyhow::anyhow!("degree {} is too small; need d >= 3", c.degree()).into());
    }
    let opts = AnalysisOptions {
        profile: ProfileOptions {
            field: match a.field {
                Field::Qq => FieldMode::Exact,
                Field::Auto => FieldMode::Auto,
            },
            seed: a.seed,
            kmax: a.kmax,
            ..Default::default()
        },
        saturation: match a.saturation {
            Saturation::Formula => SaturationMode::Formula,
            Saturation::Direct => SaturationMode::Direct,
            Saturation::Both => SaturationMode::Both,
        },
    };
    let ctx = spec.as_ref().map(CurveContext::from).unwrap_or_default();
    let an = analyze(&c, &ctx, &opts).map_err(|e: AnalysisError| {
        if e.is_inconsistency() {
            inconsistency(e.into())
        } else {
            e.into()
        }
    })?;
    let out = AnalyzeOutput {
        f: c.f().to_string(),
        d: c.degree(),
        family: spec.as_ref(),
        profile: &an.profile,
        freeness: &an.report,
        diagnostics: &an.profile.diagnostics,
    };
    emit(&a.output, &out, || analysis_table(&c, &an))
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn analysis_table(c: &CurveInput, an: &Analysis) -> String {
    let (p, r) = (&an.profile, &an.report);
    let mut s = String::new();
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    s += &format!("f      = {}\n", c.f());
    s += &format!("d = {}  T = {}  tau = {}\n", p.d, p.t, p.tau);
    s += &format!("m(f)   : {}\n", join(&p.m));
    s += &format!("m(f_s) : {}\n", join(&p.m_smooth));
    s += &format!("ar(f)  : {}\n", join(&p.ar));
    s += &format!("er(f)  : {}\n", join(&p.er));
    s += &format!("ct = {}  st = {}  mdr = {}\n", p.ct, p.st, p.mdr);
    s += &format!(
        "free = {}  (balance {}, midpoint {})  exponents = ({}, {})  Delta = {}\n",
        r.free,
        r.criterion_ii,
        r.criterion_iii,
        opt(r.d1),
        opt(r.d2),
        r.delta
    );
    let defects = join(r.defects.entries.iter().map(|e| e.n.map_or("?".to_string(), |n| n.to_string())));
    s += &format!("defects n_0..n_T : {defects}\n");
    s += &format!(
        "rigid = {}  ct + st = T: {}\n",
        r.rigid.map_or("uncomputed".into(), |b| b.to_string()),
        r.conj10.holds
    );
    if let Some(e) = &r.euler {
        s += &format!("E(C) = {}  E(U) = {}  mu = {}  rational cuspidal consistent = {}\n", e.ec, e.eu, e.mu, e.cuspidal_consistent);
    }
    for n in &r.notes {
        s += &format!("note: {n}\n");
    }
    s
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let suites = if a.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suites
            .iter()
            .map(|s| {
                Suite::from_name(s).ok_or_else(|| {
                    let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                    anyhow::anyhow!("unknown suite `{s}`; known suites: {}", names.join(", "))
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?
    };
    let out = verify::run(&suites, &VerifyOptions { stretch: a.stretch, seed: a.seed });
    emit(&a.output, &out, || {
        let mut s = String::new();
        for c in &out.claims {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Discrepancy => "NOTE",
            };
            s += &format!("{tag} {:<48} expected {} | computed {} [{:.0} ms]\n", c.id, c.expected, c.computed, c.runtime_ms);
            s += &format!("     {}\n", c.citation);
        }
        let m = &out.summary;
        s += &format!(
            "{} claims: {} pass, {} fail, {} discrepancies; exact vs modular rank on {} matrices, {} mismatches\n",
            m.total, m.pass, m.fail, m.discrepancy, out.cross_oracle.matrices, out.cross_oracle.mismatches
        );
        s
    })?;
    if out.failed() {
        return Err(inconsistency(anyhow::anyhow!("{} claim(s) failed", out.summary.fail)));
    }
    Ok(())
}

#[derive(Serialize)]
struct SyzygyOutput {
    f: String,
    degree: u32,
    dimension: usize,
    relations: Vec<[String; 3]>,
}

fn cmd_syzygies(a: SyzygyArgs) -> Result<(), Failure> {
    let (f, _) = resolve(&a.source)?;
    let c = curve_input(f)?;
    let basis = syzygy_basis_in_degree(&c, a.degree as i64).map_err(curve_failure)?;
    let out = SyzygyOutput {
        f: c.f().to_string(),
        degree: a.degree,
        dimension: basis.len(),
        relations: basis.iter().map(|s| s.clone().map(|p| p.to_string())).collect(),
    };
    emit(&a.output, &out, || {
        let mut s = format!("relations of degree {}: dimension {}\n", out.degree, out.dimension);
        for [x, y, z] in &out.relations {
            s += &format!("  ({x}) f_x + ({y}) f_y + ({z}) f_z = 0\n");
        }
        s
    })
}

fn cmd_families(action: FamiliesCmd) -> Result<(), Failure> {
    match action {
        FamiliesCmd::List { json } => {
            let cat = families::catalogue();
            if json || !std::io::stdout().is_terminal() {
                write_stdout(&format!("{}\n", serde_json::to_string_pretty(&cat)?));
            } else {
                for f in cat {
                    write_stdout(&format!("{:<12} {:<44} {}\n", f.id, f.parameters, f.description));
                }
            }
        }
        FamiliesCmd::Gen { id, params, out, json } => {
            let spec = families::generate(&id, &params.to_params()?)?;
            let meta = serde_json::to_string_pretty(&spec)?;
            match out {
                Some(path) => {
                    fs::write(&path, format!("{}\n", spec.f)).with_context(|| format!("writing {}", path.display()))?;
                    let mut m = path.clone().into_os_string();
                    m.push(".json");
                    fs::write(&m, &meta).with_context(|| format!("writing {}", PathBuf::from(&m).display()))?;
                }
                None if json => write_stdout(&format!("{meta}\n")),
                None => write_stdout(&format!("{}\n", spec.f)),
            }
        }
    }
    Ok(())
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_stdout(s: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::VerifyPaper(a) => cmd_verify(a),
        Cmd::Syzygies(a) => cmd_syzygies(a),
        Cmd::Families { action } => cmd_families(action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let kind = if f.code == 2 { "inconsistency" } else { "error" };
            eprintln!("{kind}: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
