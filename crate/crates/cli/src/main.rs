//! `dpz`: build and check H-polar cylinder certificates on degree-2 Du Val
//! del Pezzo surfaces.

mod error;
mod files;
mod selfcheck;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dpz_core::{bl_divisor, format_rational};
use dpz_cylinder::{construct, select_case, verify_certificate};
use dpz_dynkin::{special_curve_search, ClassKind, Dp2Lattice, PatternKind};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::files::{
    classes, read_json, to_pretty, AmpleSpecFile, CertificateFile, ChainSpecFile, FibrationSpec,
    SurfaceSpecFile,
};

#[derive(Parser)]
#[command(
    name = "dpz",
    version,
    about = "H-polar cylinder certificates for Du Val del Pezzo surfaces of degree 2"
)]
struct Cli {
    /// Machine-readable output, including errors.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a surface file and report its fibration data and case.
    Validate {
        #[arg(short = 'i', long = "surface")]
        surface: PathBuf,
    },
    /// Build a self-verified certificate for an ample divisor.
    Construct {
        #[arg(short = 'i', long = "surface")]
        surface: PathBuf,
        #[arg(short = 'H', long = "ample")]
        ample: PathBuf,
        /// Write the certificate here instead of stdout.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Run the four certificate checks.
    Verify {
        #[arg(short = 'i', long = "surface")]
        surface: PathBuf,
        #[arg(short = 'H', long = "ample")]
        ample: PathBuf,
        #[arg(short = 'c', long = "cert")]
        cert: PathBuf,
    },
    /// Print the self-intersections of the chain divisors for n = 1..7.
    Table1,
    /// List the (−1)-classes or roots of the degree-2 lattice as [d, x1, …, x7].
    Enumerate { kind: EnumerateKind },
    /// Find the (−1)-class pattern next to an A_n chain.
    SearchSpecial {
        #[arg(short = 'i', long = "chain")]
        chain: PathBuf,
    },
    /// Run the invariant suite on seeded random instances.
    Selfcheck {
        /// Overridden by the DPZ_SEED environment variable.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random certificates per case.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateKind {
    MinusOne,
    Root,
}

/// What a successful command prints and its exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

fn validate(surface: &Path) -> Result<Output, CliError> {
    let spec: SurfaceSpecFile = read_json(surface)?;
    let s = spec.resolve()?;
    let (case, note) = match select_case(&s.model) {
        Ok(c) => (Some(c), None),
        Err(e) => (s.template_case, Some(e.to_string())),
    };
    let mut v = json!({
        "fibration": FibrationSpec::from(&s.data),
        "k2": s.data.k2(),
        "case": case.map(|c| c.to_string()),
    });
    if let Some(n) = &note {
        v["note"] = json!(n);
    }
    let text = to_pretty(&v);
    Ok(Output::ok(text, v))
}

fn run_construct(surface: &Path, ample: &Path, out: Option<&Path>) -> Result<Output, CliError> {
    let s = read_json::<SurfaceSpecFile>(surface)?.resolve()?;
    let h = read_json::<AmpleSpecFile>(ample)?.to_input()?;
    let cert = construct(&s.model, &h)?;
    let file = CertificateFile::from(&cert);
    let body = to_pretty(&file);
    match out {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let text = format!(
                "case {}, {}, ε = {}: wrote {}\n",
                file.case,
                file.kind,
                file.epsilon,
                path.display()
            );
            Ok(Output::ok(
                text,
                json!({ "written": path.display().to_string(), "case": file.case, "kind": file.kind }),
            ))
        }
        None => Ok(Output::ok(
            body,
            serde_json::to_value(&file).expect("serializable"),
        )),
    }
}

fn run_verify(surface: &Path, ample: &Path, cert: &Path) -> Result<Output, CliError> {
    let s = read_json::<SurfaceSpecFile>(surface)?.resolve()?;
    let h = read_json::<AmpleSpecFile>(ample)?.to_input()?;
    let cert = read_json::<CertificateFile>(cert)?.to_certificate()?;
    let report = verify_certificate(&s.model, &h, &cert)?;
    let mut text = String::new();
    for o in &report.outcomes {
        text += &format!(
            "{}: {} ({})\n",
            o.check,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let checks: Vec<Value> = report
        .outcomes
        .iter()
        .map(|o| json!({ "check": o.check.id(), "pass": o.pass, "detail": o.detail }))
        .collect();
    let failed: Vec<&str> = report.failures().iter().map(|o| o.check.id()).collect();
    let v = json!({ "passed": report.passed(), "failed": failed, "checks": checks });
    Ok(Output {
        text,
        json: v,
        code: if report.passed() { 0 } else { 1 },
    })
}

fn table1() -> Result<Output, CliError> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for n in 1..=7 {
        let entries: Vec<String> = (1..=n)
            .map(|l| Ok(format_rational(&bl_divisor(n, l)?.self_int)))
            .collect::<Result<_, CliError>>()?;
        text += &format!("n={n}: {}\n", entries.join(" "));
        for (l, e) in entries.iter().enumerate() {
            rows.push(json!({ "n": n, "l": l + 1, "value": e }));
        }
    }
    Ok(Output::ok(text, Value::Array(rows)))
}

fn enumerate(kind: EnumerateKind) -> Output {
    let kind = match kind {
        EnumerateKind::MinusOne => ClassKind::MinusOne,
        EnumerateKind::Root => ClassKind::Root,
    };
    let list: Vec<[i64; 8]> = Dp2Lattice
        .enumerate_classes(kind)
        .iter()
        .map(|c| *c.coords())
        .collect();
    let v = json!(list);
    Output::ok(to_pretty(&v), v)
}

fn search_special(chain: &Path) -> Result<Output, CliError> {
    let spec: ChainSpecFile = read_json(chain)?;
    let p = special_curve_search(&classes(&spec.chain), &classes(&spec.extra_roots))?;
    let kind = match p.kind {
        PatternKind::A => "A",
        PatternKind::B => "B",
        PatternKind::C => "C",
    };
    let witnesses: Vec<[i64; 8]> = p.witnesses.iter().map(|c| *c.coords()).collect();
    let v = json!({
        "kind": kind,
        "witnesses": witnesses,
        "isolated_root": p.isolated_root.map(|c| *c.coords()),
    });
    Ok(Output::ok(to_pretty(&v), v))
}

fn run_selfcheck(seed: u64, count: usize) -> Result<Output, CliError> {
    let seed = match std::env::var("DPZ_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("DPZ_SEED is not an integer: `{s}`")))?,
        Err(_) => seed,
    };
    let lines = selfcheck::run(seed, count);
    let mut text = format!("seed {seed}\n");
    for l in &lines {
        text += &format!(
            "{}: {} ({})\n",
            l.name,
            if l.pass { "PASS" } else { "FAIL" },
            l.detail
        );
    }
    let passed = lines.iter().all(|l| l.pass);
    let v = json!({ "seed": seed, "passed": passed, "checks": lines });
    Ok(Output {
        text,
        json: v,
        code: if passed { 0 } else { 1 },
    })
}

fn dispatch(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Validate { surface } => validate(surface),
        Command::Construct {
            surface,
            ample,
            out,
        } => run_construct(surface, ample, out.as_deref()),
        Command::Verify {
            surface,
            ample,
            cert,
        } => run_verify(surface, ample, cert),
        Command::Table1 => table1(),
        Command::Enumerate { kind } => Ok(enumerate(*kind)),
        Command::SearchSpecial { chain } => search_special(chain),
        Command::Selfcheck { seed, count } => run_selfcheck(*seed, *count),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                print!("{}", to_pretty(&out.json));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                print!("{}", to_pretty(&e.to_json()));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
