//! Command-line front end. Exit codes: 0 all checks pass, 1 a verification
//! or computation failure, 2 a usage error.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::field::Field;
use crate::niho::{niho_count, y_exp_for_shift};
use crate::poly;
use crate::report::{to_json, NihoCountJson, SpectrumJson};
use crate::sequences::{
    m_sequence, theorem1_decimation, theorem2_decimation, DecimationKind, DecimationParams,
};
use crate::verify::verify;
use crate::correlation::{self, SpectrumReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "niho-corr", version, about = "Cross-correlation spectra of p-ary m-sequences and their Niho-type decimations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value distribution of C_d(tau) over all shifts
    Spectrum(SpectrumArgs),
    /// Run the direct and Niho paths and check every applicable claim
    Verify(VerifyArgs),
    /// Solution counts on the unit circle for one shift
    NihoCount(NihoCountArgs),
    /// First primitive polynomial in enumeration order
    FindPoly(FindPolyArgs),
    /// Write one period of the (decimated) m-sequence, one symbol per line
    DumpSeq(DumpSeqArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Odd prime characteristic
    #[arg(long)]
    pub p: u64,
    /// Half degree; the field is GF(p^(2m))
    #[arg(long, conflicts_with = "n")]
    pub m: Option<u32>,
    /// Field degree, for fields of odd degree
    #[arg(long)]
    pub n: Option<u32>,
    /// Primitive polynomial, "x^6+x^5+2" or "[2,0,0,0,0,1,1]"
    #[arg(long)]
    pub poly: Option<String>,
    /// Worker threads, 0 = all cores
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Decimation; defaults to the selected theorem's d
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long, value_enum, default_value = "2")]
    pub theorem: Theorem,
    #[arg(long, value_enum, default_value = "table")]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum)]
    pub theorem: Theorem,
}

#[derive(Debug, Args)]
pub struct NihoCountArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Niho-type decimation; defaults to the selected theorem's d
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long, value_enum, default_value = "2")]
    pub theorem: Theorem,
    /// Shift tau in [0, p^n-2]
    #[arg(long)]
    pub tau: u64,
}

#[derive(Debug, Args)]
pub struct FindPolyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, conflicts_with = "n")]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_enum, default_value = "table")]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DumpSeqArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Decimation applied to the m-sequence
    #[arg(long, default_value_t = 1)]
    pub d: u64,
}

enum Failure {
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn degree(p: u64, m: Option<u32>, n: Option<u32>) -> Result<u32, Failure> {
    if p < 3 {
        return Err(Failure::Usage(format!("p = {p} must be an odd prime")));
    }
    match (m, n) {
        (Some(m), None) if m >= 1 => Ok(2 * m),
        (None, Some(n)) if n >= 1 => Ok(n),
        _ => Err(Failure::Usage("give --m (n = 2m) or --n, at least 1".into())),
    }
}

fn build_field(args: &FieldArgs) -> Result<Field, Failure> {
    let n = degree(args.p, args.m, args.n)?;
    let field = match &args.poly {
        Some(text) => Field::new(args.p, n, poly::parse(text, args.p)?)?,
        None => Field::with_default_poly(args.p, n)?,
    };
    Ok(field)
}

fn default_d(field: &Field, theorem: Theorem) -> Result<u64, Failure> {
    let m = field
        .half_degree()
        .ok_or_else(|| Failure::Usage("theorem decimations need an even degree; pass --d".into()))?;
    Ok(match theorem {
        Theorem::One => theorem1_decimation(field.p(), m)?,
        Theorem::Two => theorem2_decimation(field.p(), m)?,
    })
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

pub fn format_table(r: &SpectrumReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p={} n={} d={} s={} gcd={} kind={} poly={}",
        r.p,
        r.n,
        r.dec.d,
        r.dec.s.map_or("-".to_string(), |s| s.to_string()),
        r.dec.g,
        r.dec.kind,
        poly::format_human(&r.poly)
    )
    .unwrap();
    writeln!(out, "{:>12} {:>6} {:>12}", "value", "N", "occurrences").unwrap();
    for (&v, &c) in &r.distribution {
        let nsol = r
            .solution_count_for(v)
            .map_or("-".to_string(), |j| j.to_string());
        writeln!(out, "{v:>12} {nsol:>6} {c:>12}").unwrap();
    }
    writeln!(out, "total {} shifts, peak |C| = {}", r.total_count(), r.peak_magnitude).unwrap();
    if !r.non_integer_shifts.is_empty() {
        writeln!(out, "{} shifts with non-integer values", r.non_integer_shifts.len()).unwrap();
    }
    out
}

pub fn format_csv(r: &SpectrumReport) -> String {
    let mut out = String::from("value,count\n");
    for (v, c) in &r.distribution {
        writeln!(out, "{v},{c}").unwrap();
    }
    out
}

fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let field = build_field(&a.field)?;
    let d = match a.d {
        Some(d) => d,
        None => default_d(&field, a.theorem)?,
    };
    let dec = DecimationParams::for_field(&field, d)?;
    let report = with_threads(a.field.threads, || correlation::spectrum(&field, dec))?;
    let text = match a.output {
        Output::Table => format_table(&report),
        Output::Json => to_json(&SpectrumJson::from(&report)) + "\n",
        Output::Csv => format_csv(&report),
    };
    out.write_all(text.as_bytes()).map_err(|e| Failure::Other(e.to_string()))?;
    let failed = report.predicted_set_ok == Some(false)
        || (dec.kind == DecimationKind::Theorem2 && !report.bound_satisfied);
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let field = build_field(&a.field)?;
    let d = default_d(&field, a.theorem)?;
    let dec = DecimationParams::for_field(&field, d)?;
    let v = with_threads(a.field.threads, || verify(&field, dec))?;
    let mut text = format!(
        "verify theorem {} p={} m={} d={} s={} poly={}\n",
        match a.theorem {
            Theorem::One => 1,
            Theorem::Two => 2,
        },
        field.p(),
        dec.m.unwrap_or(0),
        d,
        dec.s.unwrap_or(0),
        poly::format_human(field.poly())
    );
    for c in &v.checks {
        writeln!(text, "{} {:<24} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
    writeln!(
        text,
        "{} distinct values observed: {:?}",
        v.direct.distribution.len(),
        v.direct.distribution
    )
    .unwrap();
    writeln!(text, "{}", if v.passed() { "ALL PASS" } else { "VERIFICATION FAILED" }).unwrap();
    out.write_all(text.as_bytes()).map_err(|e| Failure::Other(e.to_string()))?;
    Ok(if v.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_niho_count(a: &NihoCountArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let field = build_field(&a.field)?;
    let d = match a.d {
        Some(d) => d,
        None => default_d(&field, a.theorem)?,
    };
    let dec = DecimationParams::for_field(&field, d)?;
    if !dec.kind.is_niho() {
        return Err(Failure::Usage(format!("d = {d} is not of Niho type")));
    }
    if a.tau >= field.order() {
        return Err(Failure::Usage(format!("tau must be below {}", field.order())));
    }
    let count = niho_count(&field, &dec, y_exp_for_shift(field.order(), a.tau))?;
    let pm = dec.pm().expect("Niho type");
    let text = to_json(&NihoCountJson::new(a.tau, &count, pm)) + "\n";
    out.write_all(text.as_bytes()).map_err(|e| Failure::Other(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_find_poly(a: &FindPolyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let n = degree(a.p, a.m, a.n)?;
    let f = crate::field::find_primitive_poly(a.p, n)?;
    let text = match a.output {
        Output::Json => format!(
            "{}\n",
            serde_json::json!({ "p": a.p, "n": n, "poly": f, "human": poly::format_human(&f) })
        ),
        _ => format!("{}\n{}\n", poly::format_human(&f), poly::format_list(&f)),
    };
    out.write_all(text.as_bytes()).map_err(|e| Failure::Other(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_dump_seq(a: &DumpSeqArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let field = build_field(&a.field)?;
    let mut seq = m_sequence(&field);
    if a.d != 1 {
        seq = seq.decimate(a.d)?;
    }
    seq.write_to(out).map_err(|e| Failure::Other(e.to_string()))?;
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing reports to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::NihoCount(a) => cmd_niho_count(a, out),
        Command::FindPoly(a) => cmd_find_poly(a, out),
        Command::DumpSeq(a) => cmd_dump_seq(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Other(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAIL
        }
    }
}
