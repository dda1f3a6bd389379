//! Command-line front end.
//!
//! Exit codes: 0 when the checked property holds, 1 when verification fails,
//! 2 for usage, parse and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::constructions::power::{norm_sequence, NormDirection};
use crate::constructions::{Construction, LineSet};
use crate::cyclo::CycloNumber;
use crate::error::Error;
use crate::io::{set_to_csv, GeneratedDocument, LoadedSet, VectorSetFile, WireScalar};
use crate::linalg::CVector;
use crate::scalar::{Conductor, Scalar, ScalarMode};
use crate::verify::{
    check_equiangular_partial, check_sic, diagonal_extension_sweep, SweepResult,
    VerificationReport,
};

pub const CONDUCTOR_ENV: &str = "SICPOVM_CONDUCTOR";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sicpovm", version, about = "Build and certify SIC-POVMs in dimensions 2 and 3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named construction and verify it.
    Generate(GenerateArgs),
    /// Verify a vector-set file.
    Verify(VerifyArgs),
    /// Print the integer squared norms of M^j v0 walking out from the centre.
    Sequence(SequenceArgs),
    /// Search diagonal extensions of a d=3 triangular basis.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_construction(s: &str) -> Result<Construction, String> {
    s.parse::<Construction>().map_err(|_| {
        let names: Vec<&str> = Construction::ALL.iter().map(|c| c.name()).collect();
        format!("unknown construction '{s}' (expected one of {})", names.join(", "))
    })
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got '{s}'")),
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_parser = parse_construction)]
    pub name: Construction,
    /// Arithmetic; defaults to exact, or to the fiducial file's mode.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value = "1e-10", value_parser = parse_tolerance)]
    pub tolerance: f64,
    /// Fiducial vector file for the Weyl constructions.
    #[arg(long)]
    pub fiducial: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Arithmetic; exact needs an exact file.
    #[arg(long, value_enum, default_value_t = ModeArg::Float)]
    pub mode: ModeArg,
    #[arg(long, default_value = "1e-10", value_parser = parse_tolerance)]
    pub tolerance: f64,
    /// Check pairwise equiangularity without requiring d^2 vectors.
    #[arg(long)]
    pub partial: bool,
    /// Target |<u,v>| for partial checks (default 1/sqrt(d+1)).
    #[arg(long, requires = "partial")]
    pub target_angle: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SequenceArgs {
    #[arg(value_parser = clap::value_parser!(u64).range(1..=64))]
    pub count: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// File holding the three basis vectors.
    pub path: PathBuf,
    #[arg(long, default_value_t = 360, value_parser = clap::value_parser!(u64).range(90..=4096))]
    pub resolution: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Errors that end a command with a given exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VerificationFailed { .. } => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn conductor_from_env() -> std::result::Result<Conductor, Failure> {
    match std::env::var(CONDUCTOR_ENV) {
        Err(_) => Ok(Conductor::DEFAULT),
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(n) if n > 0 => Ok(Conductor(n)),
            _ => Err(usage(format!("{CONDUCTOR_ENV} must be a positive integer, got '{s}'"))),
        },
    }
}

fn read_set_file(path: &Path) -> std::result::Result<LoadedSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(VectorSetFile::parse(&text)?.load()?)
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn mode_text(mode: &ScalarMode) -> String {
    match mode {
        ScalarMode::Float => "float".into(),
        ScalarMode::Exact { conductor } => format!("exact, conductor {conductor}"),
    }
}

fn report_pretty(label: &str, r: &VerificationReport) -> String {
    format!(
        "label: {label}\nvectors: {} in dimension {} ({})\ntarget |<u,v>|^2: {:?}\n\
         max norm violation: {:e}\nmax angle violation: {:e}\ntolerance: {:e}\npass: {}\n",
        r.n_vectors,
        r.dim,
        mode_text(&r.mode),
        r.target,
        r.max_norm_violation,
        r.max_angle_violation,
        r.tolerance,
        r.pass
    )
}

fn vectors_pretty(set: &LineSet<Complex64>) -> String {
    let mut out = String::new();
    for (k, v) in set.vectors.iter().enumerate() {
        let entries: Vec<String> = v.iter().map(|z| format!("{:+.12}{:+.12}i", z.re, z.im)).collect();
        out.push_str(&format!("v{k} = ({})\n", entries.join(", ")));
    }
    out
}

fn report_csv(r: &VerificationReport) -> String {
    let mut out = String::from("j,k,residual\n");
    if let Some(pp) = &r.per_pair {
        for (j, row) in pp.iter().enumerate() {
            for (k, v) in row.iter().enumerate().skip(j) {
                out.push_str(&format!("{j},{k},{v:?}\n"));
            }
        }
    }
    out
}

fn exit_for(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

struct Generated {
    file: VectorSetFile,
    report: VerificationReport,
    float: LineSet<Complex64>,
}

fn generate_in<S: WireScalar>(
    ctx: &S::Context,
    construction: Construction,
    fiducial: Option<CVector<S>>,
    tol: f64,
) -> std::result::Result<Generated, Failure> {
    let set = construction.build(ctx, fiducial.as_ref())?;
    let report = check_sic(&set, tol)?;
    Ok(Generated {
        file: VectorSetFile::from_set(ctx, &set)?,
        report,
        float: set.embed(),
    })
}

fn single_vector<S: Scalar>(set: &LineSet<S>, dim: usize) -> std::result::Result<CVector<S>, Failure> {
    if set.len() != 1 || set.dim != dim {
        return Err(usage(format!(
            "fiducial file must hold one vector of dimension {dim}, found {} of dimension {}",
            set.len(),
            set.dim
        )));
    }
    Ok(set.vectors[0].clone())
}

fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> CmdResult {
    let c = args.name;
    let fiducial = match (&args.fiducial, c.needs_fiducial()) {
        (Some(path), true) => Some(read_set_file(path)?),
        (None, true) => return Err(usage(format!("{c} requires --fiducial"))),
        (_, false) => None,
    };
    let mode = args.mode.unwrap_or(match &fiducial {
        Some(LoadedSet::Float(_)) => ModeArg::Float,
        _ => ModeArg::Exact,
    });
    let g = match mode {
        ModeArg::Float => {
            let f = fiducial
                .as_ref()
                .map(|l| single_vector(&l.to_float(), c.dim()))
                .transpose()?;
            generate_in::<Complex64>(&(), c, f, args.tolerance)?
        }
        ModeArg::Exact => {
            let ctx = conductor_from_env()?;
            let f = match &fiducial {
                None => None,
                Some(LoadedSet::Float(_)) => {
                    return Err(usage("a float fiducial cannot seed an exact construction"))
                }
                Some(LoadedSet::Exact(s, _)) => {
                    let v = single_vector(s, c.dim())?;
                    let lifted = v
                        .iter()
                        .map(|z| z.lift(ctx.0))
                        .collect::<crate::error::Result<Vec<CycloNumber>>>()?;
                    Some(CVector::new(lifted))
                }
            };
            generate_in::<CycloNumber>(&ctx, c, f, args.tolerance)?
        }
    };
    let text = match args.output.format {
        Format::Json => to_json(&GeneratedDocument {
            set: &g.file,
            report: &g.report,
        }),
        Format::Csv => set_to_csv(&g.float),
        Format::Pretty => format!(
            "{}{}",
            vectors_pretty(&g.float),
            report_pretty(&g.file.label, &g.report)
        ),
    };
    emit(&args.output, &text, stdout)?;
    Ok(exit_for(g.report.pass))
}

fn verify_set<S: Scalar>(
    ctx: &S::Context,
    set: &LineSet<S>,
    args: &VerifyArgs,
) -> std::result::Result<VerificationReport, Failure> {
    Ok(if args.partial {
        check_equiangular_partial(ctx, set, args.tolerance, args.target_angle.map(|a| a * a))?
    } else {
        check_sic(set, args.tolerance)?
    })
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> CmdResult {
    let loaded = read_set_file(&args.path)?;
    let (report, label) = match (args.mode, &loaded) {
        (ModeArg::Float, l) => {
            let s = l.to_float();
            (verify_set(&(), &s, args)?, s.label)
        }
        (ModeArg::Exact, LoadedSet::Exact(s, ctx)) => (verify_set(ctx, s, args)?, s.label.clone()),
        (ModeArg::Exact, LoadedSet::Float(_)) => {
            return Err(usage("exact verification needs an exact file"))
        }
    };
    let text = match args.output.format {
        Format::Json => to_json(&report),
        Format::Csv => report_csv(&report),
        Format::Pretty => report_pretty(&label, &report),
    };
    emit(&args.output, &text, stdout)?;
    Ok(exit_for(report.pass))
}

fn cmd_sequence(args: &SequenceArgs, stdout: &mut dyn Write) -> CmdResult {
    let ctx = conductor_from_env()?;
    let terms = norm_sequence::<CycloNumber>(&ctx, NormDirection::Forward, args.count as usize)?;
    let text = match args.output.format {
        Format::Json => to_json(&terms),
        Format::Csv => {
            let mut s = String::from("index,term\n");
            for (k, t) in terms.iter().enumerate() {
                s.push_str(&format!("{k},{t}\n"));
            }
            s
        }
        Format::Pretty => {
            let parts: Vec<String> = terms.iter().map(u64::to_string).collect();
            format!("{}\n", parts.join(", "))
        }
    };
    emit(&args.output, &text, stdout)?;
    Ok(EXIT_PASS)
}

fn sweep_pretty(r: &SweepResult) -> String {
    format!(
        "resolution: {}\nbest xi: e^{{i {:?}}}\nbest zeta: e^{{i {:?}}}\nmin max violation: {:e}\n",
        r.grid_resolution, r.best_xi_angle, r.best_zeta_angle, r.min_max_violation
    )
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CmdResult {
    let set = read_set_file(&args.path)?.to_float();
    let result = diagonal_extension_sweep(&set.vectors, args.resolution as usize)?;
    let text = match args.output.format {
        Format::Json => to_json(&result),
        Format::Csv => format!(
            "grid_resolution,best_xi_angle,best_zeta_angle,min_max_violation\n{},{:?},{:?},{:?}\n",
            result.grid_resolution,
            result.best_xi_angle,
            result.best_zeta_angle,
            result.min_max_violation
        ),
        Format::Pretty => sweep_pretty(&result),
    };
    emit(&args.output, &text, stdout)?;
    Ok(EXIT_PASS)
}

/// Parse `args` (including the program name) and run the command, returning
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_PASS
            };
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Sequence(a) => cmd_sequence(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["sicpovm"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sequence_json() {
        let (code, out, _) = run_capture(&["sequence", "5"]);
        assert_eq!(code, 0);
        let terms: Vec<u64> = serde_json::from_str(&out).unwrap();
        assert_eq!(terms, vec![1, 1, 2, 3, 5]);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["sequence", "0"]).0, 2);
        assert_eq!(run_capture(&["sequence", "65"]).0, 2);
        assert_eq!(run_capture(&["generate", "power-d5"]).0, 2);
        assert_eq!(run_capture(&["generate", "weyl-d2"]).0, 2);
        assert_eq!(run_capture(&["generate", "power-d2", "--tolerance", "-1"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
    }

    #[test]
    fn generate_pretty_reports_pass() {
        let (code, out, _) = run_capture(&["generate", "bicyclic-d2", "--format", "pretty"]);
        assert_eq!(code, 0);
        assert!(out.contains("pass: true"));
    }
}
