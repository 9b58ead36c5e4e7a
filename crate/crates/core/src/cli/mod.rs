//! Command-line surface. Handlers write their reports to a caller-supplied
//! sink and return the process exit status:
//! 0 success, 1 usage or parse error, 2 uncorrectable word, 3 internal error.

pub mod formats;
pub mod simulate;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::{build_check_matrix_direct, build_check_matrix_lfsr, Code, CodeSpec, RhoCheck};
use crate::decoder::{DecodeError, Decoder};
use crate::error::Error;
use crate::galois::{FieldParams, TowerField};
use crate::gilbert::{brute_force_min_degree_weight, gilbert_search, SearchOptions};
use crate::orbits::{check_orbit_count_bounds, LocationSet};
use crate::polyring::{format_symbols, parse_symbols, PolyRing};

use formats::{format_word_file, format_word_line, parse_symbol_line, CodeSpecFile, HEADER};
use simulate::{simulate, SimulationConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNCORRECTABLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "orbitcode",
    version,
    about = "Orbit-indexed Reed-Solomon codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(short)]
    pub p: u32,
    /// q = p^k.
    #[arg(short, default_value_t = 1)]
    pub k: u32,
    /// Extension degree, prime to q.
    #[arg(short)]
    pub m: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixMethod {
    Direct,
    Lfsr,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field and location-set summary.
    Params(FieldArgs),
    /// List the orbits as "rep size members...".
    Orbits(FieldArgs),
    /// Write a code-spec file.
    MakeSpec {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        t: usize,
        /// rho as comma-separated F-symbols, low to high.
        #[arg(long, default_value = "1")]
        rho: String,
        /// Non-default defining polynomial (residues mod p, low to high).
        #[arg(long)]
        fieldpoly: Option<String>,
        /// Accept rho with zeros on the unit group.
        #[arg(long)]
        no_rho_check: bool,
    },
    /// Dump the check matrix.
    Matrix {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        method: MatrixMethod,
    },
    /// Encode a message file into a word file.
    Encode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        message: PathBuf,
    },
    /// Decode a word file.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Seeded encode/corrupt/decode trials.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Largest planted error degree-weight.
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow degrees beyond the decoding radius.
        #[arg(long)]
        stress: bool,
    },
    /// Search for an irreducible g whose code beats the Gilbert threshold.
    SearchG {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        t: usize,
        /// Worker threads for the candidate fan-out.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Test every candidate instead of stopping at the first winner.
        #[arg(long)]
        all: bool,
        /// Skip the brute-force audit of the winner.
        #[arg(long)]
        no_audit: bool,
    },
    /// Rank, dimension and brute-force distances of a code.
    Audit {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Uncorrectable,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Internal(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Uncorrectable) => EXIT_UNCORRECTABLE,
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Params(f) => cmd_params(f, out),
        Command::Orbits(f) => cmd_orbits(f, out),
        Command::MakeSpec {
            field,
            t,
            rho,
            fieldpoly,
            no_rho_check,
        } => cmd_make_spec(field, *t, rho, fieldpoly.as_deref(), *no_rho_check, out),
        Command::Matrix { spec, method } => cmd_matrix(spec, *method, out),
        Command::Encode { spec, message } => cmd_encode(spec, message, out),
        Command::Decode { spec, word } => cmd_decode(spec, word, out),
        Command::Simulate {
            spec,
            trials,
            degree,
            seed,
            stress,
        } => cmd_simulate(spec, *trials, *degree, *seed, *stress, out),
        Command::SearchG {
            field,
            t,
            jobs,
            all,
            no_audit,
        } => {
            let opts = SearchOptions {
                exhaustive: *all,
                jobs: *jobs,
                audit: !*no_audit,
            };
            cmd_search_g(field, *t, opts, out)
        }
        Command::Audit { spec } => cmd_audit(spec, out),
    }
}

fn params_of(f: &FieldArgs) -> Result<FieldParams, Failure> {
    Ok(FieldParams::new(f.p, f.k, f.m)?)
}

fn load_spec(path: &Path) -> Result<CodeSpec, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(CodeSpecFile::parse(&text)?.to_spec()?)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_params(f: &FieldArgs, out: &mut dyn Write) -> CmdResult {
    let params = params_of(f)?;
    let field = TowerField::new(params)?;
    let locations = LocationSet::enumerate(&params);
    let bounds = check_orbit_count_bounds(&params)?;
    if bounds.count != locations.len().into() {
        return Err(Failure::Internal(format!(
            "closed form gives {} orbits, enumeration {}",
            bounds.count,
            locations.len()
        )));
    }
    writeln!(out, "{HEADER}")?;
    writeln!(
        out,
        "p={}\nk={}\nm={}\nq={}",
        params.p(),
        params.k(),
        params.m(),
        params.q()
    )?;
    writeln!(out, "units={}", params.n_units())?;
    writeln!(out, "fieldpoly={}", format_symbols(field.defining_poly()))?;
    writeln!(out, "orbits={}", locations.len())?;
    writeln!(out, "orbits_closed_form={}", bounds.count)?;
    writeln!(out, "lower_bound_holds={}", bounds.lower_holds)?;
    writeln!(out, "upper_bound_holds={}", bounds.upper_holds)?;
    Ok(())
}

fn cmd_orbits(f: &FieldArgs, out: &mut dyn Write) -> CmdResult {
    let params = params_of(f)?;
    for orbit in LocationSet::enumerate(&params).orbits() {
        let members: Vec<String> = orbit.members().iter().map(u32::to_string).collect();
        writeln!(
            out,
            "{} {} {}",
            orbit.rep(),
            orbit.size(),
            members.join(" ")
        )?;
    }
    Ok(())
}

fn cmd_make_spec(
    f: &FieldArgs,
    t: usize,
    rho: &str,
    fieldpoly: Option<&str>,
    no_rho_check: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let params = params_of(f)?;
    let (field, overridden) = match fieldpoly {
        Some(text) => {
            let residues = parse_symbols(text)?;
            let field = TowerField::with_defining_poly(params, &residues)?;
            let default = TowerField::new(params)?;
            let differs = default.defining_poly() != field.defining_poly();
            (field, differs)
        }
        None => (TowerField::new(params)?, false),
    };
    let field = Arc::new(field);
    let rho = PolyRing::new(&field).from_symbols(&parse_symbols(rho)?)?;
    let check = if no_rho_check {
        RhoCheck::Skip
    } else {
        RhoCheck::Enforce
    };
    let spec = CodeSpec::new(field, t, rho, check)?;
    write!(
        out,
        "{}",
        CodeSpecFile::from_spec(&spec, overridden).serialize()
    )?;
    Ok(())
}

fn cmd_matrix(path: &Path, method: MatrixMethod, out: &mut dyn Write) -> CmdResult {
    let spec = load_spec(path)?;
    let h = match method {
        MatrixMethod::Direct => build_check_matrix_direct(&spec)?,
        MatrixMethod::Lfsr => build_check_matrix_lfsr(&spec)?,
    };
    write!(out, "{}", h.dump(spec.field()))?;
    Ok(())
}

fn cmd_encode(spec_path: &Path, message: &Path, out: &mut dyn Write) -> CmdResult {
    let code = Code::new(load_spec(spec_path)?)?;
    let field = code.spec.field();
    let symbols = parse_symbol_line(&read(message)?, field.q(), code.dimension())?;
    let message: Vec<_> = symbols
        .iter()
        .map(|&s| field.subfield_element(s as u64))
        .collect::<Result<_, _>>()?;
    let word = code.encode(&message)?;
    if !code.is_codeword(&word)? {
        return Err(Failure::Internal(
            "encoded word has nonzero syndrome".into(),
        ));
    }
    write!(out, "{}", format_word_file(field, &word))?;
    Ok(())
}

fn cmd_decode(spec_path: &Path, word: &Path, out: &mut dyn Write) -> CmdResult {
    let decoder = Decoder::new(Code::new(load_spec(spec_path)?)?);
    let spec = &decoder.code.spec;
    let field = spec.field();
    let received = formats::parse_word_file(&read(word)?, field, spec.length())?;
    writeln!(out, "{HEADER}")?;
    match decoder.decode(&received) {
        Ok(decoded) => {
            let status = if decoded.error.support.is_empty() {
                "ok"
            } else {
                "corrected"
            };
            let reps: Vec<u32> = decoded
                .error
                .support
                .iter()
                .map(|&l| spec.locations().get(l).rep())
                .collect();
            let values: Vec<u32> = decoded
                .error
                .values
                .iter()
                .map(|&v| field.subfield_index(v).expect("in F"))
                .collect();
            writeln!(out, "status={status}")?;
            writeln!(out, "support={}", format_word_line(&reps))?;
            writeln!(out, "values={}", format_word_line(&values))?;
            writeln!(
                out,
                "corrected={}",
                format_word_line(&decoded.codeword.symbols(field))
            )?;
            Ok(())
        }
        Err(DecodeError::Uncorrectable { stage, detail }) => {
            writeln!(out, "status=uncorrectable")?;
            writeln!(out, "stage={stage}")?;
            writeln!(out, "detail={detail}")?;
            Err(Failure::Uncorrectable)
        }
        Err(e @ DecodeError::LengthMismatch { .. }) => Err(Failure::Usage(e.to_string())),
    }
}

fn cmd_simulate(
    spec_path: &Path,
    trials: u64,
    degree: usize,
    seed: u64,
    stress: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let decoder = Decoder::new(Code::new(load_spec(spec_path)?)?);
    let cfg = SimulationConfig {
        trials,
        max_degree: degree,
        seed,
        stress,
    };
    let summary = simulate(&decoder, cfg)?;
    writeln!(out, "{HEADER}")?;
    writeln!(out, "mode={}", if stress { "stress" } else { "guaranteed" })?;
    writeln!(out, "seed={seed}\ntrials={trials}\ndegree={degree}")?;
    writeln!(out, "generator=chacha8")?;
    for line in &summary.transcript {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "successes={}", summary.successes)?;
    writeln!(out, "failures={}", summary.failures)?;
    writeln!(out, "miscorrections={}", summary.miscorrections)?;
    if !stress && summary.successes != summary.trials {
        return Err(Failure::Internal(format!(
            "{} of {} trials failed within the decoding radius",
            summary.trials - summary.successes,
            summary.trials
        )));
    }
    Ok(())
}

fn cmd_search_g(f: &FieldArgs, t: usize, opts: SearchOptions, out: &mut dyn Write) -> CmdResult {
    let params = params_of(f)?;
    let field = Arc::new(TowerField::new(params)?);
    let locations = Arc::new(LocationSet::enumerate(&params));
    let (threshold, report) = gilbert_search(&field, &locations, t, opts)?;
    let ring = PolyRing::new(&field);
    writeln!(out, "{HEADER}")?;
    writeln!(out, "q={}\nm={}\nt={}", report.q, report.m, report.t)?;
    writeln!(out, "threshold={}", threshold.threshold)?;
    writeln!(out, "D={}", report.d)?;
    writeln!(out, "sum_at_D={}", threshold.sum_at_d)?;
    writeln!(out, "sum_at_D_plus_1={}", threshold.sum_at_d_plus_1)?;
    for c in &report.candidates {
        let g = format_symbols(&ring.to_symbols(&c.g));
        match c.bad_degrees.first() {
            Some(e) => writeln!(out, "g={g} bad_at_degree={e}")?,
            None => writeln!(out, "g={g} OK")?,
        }
    }
    for b in &report.bad_counts {
        writeln!(
            out,
            "bad_count degree={} count={} bound={}",
            b.degree, b.count, b.bound
        )?;
    }
    let winner = report
        .winner
        .as_ref()
        .expect("gilbert_search guarantees a winner");
    writeln!(out, "winner={}", format_symbols(&ring.to_symbols(winner)))?;
    match report.audit {
        Some(a) => {
            writeln!(out, "audit_min_degree_weight={}", fmt_opt(a.degree))?;
            writeln!(out, "audit_min_hamming_weight={}", fmt_opt(a.hamming))?;
        }
        None => writeln!(out, "audit=skipped")?,
    }
    Ok(())
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

fn cmd_audit(path: &Path, out: &mut dyn Write) -> CmdResult {
    let code = Code::new(load_spec(path)?)?;
    let spec = &code.spec;
    let len = spec.length();
    let t = spec.t();
    let m = spec.field().m() as usize;
    let weights = brute_force_min_degree_weight(spec, &code.h)?;
    let dim_floor = len as i64 - t as i64;
    let hamming_floor = (t + 1).div_ceil(m);
    writeln!(out, "{HEADER}")?;
    writeln!(out, "length={len}\nt={t}")?;
    writeln!(
        out,
        "rank={}\ndimension={}",
        code.generator.rank,
        code.dimension()
    )?;
    writeln!(out, "dimension_floor={dim_floor}")?;
    writeln!(
        out,
        "dimension_bound_holds={}",
        code.dimension() as i64 >= dim_floor
    )?;
    writeln!(out, "min_degree_weight={}", fmt_opt(weights.degree))?;
    writeln!(out, "min_hamming_weight={}", fmt_opt(weights.hamming))?;
    writeln!(out, "distance_guarantee={}", spec.distance_guarantee())?;
    writeln!(
        out,
        "degree_bound_holds={}",
        weights.degree.is_none_or(|d| d > t)
    )?;
    writeln!(out, "hamming_floor={hamming_floor}")?;
    writeln!(
        out,
        "hamming_bound_holds={}",
        weights.hamming.is_none_or(|h| h >= hamming_floor)
    )?;
    Ok(())
}
