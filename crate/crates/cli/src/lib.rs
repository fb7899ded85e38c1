//! Command-line front-end for parking-game cost sharing.
//!
//! Exit codes: 0 success, 1 domain error (for example a tuple that is not a
//! parking function), 2 usage or parse error.

pub mod args;
pub mod bench;
pub mod commands;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use parkgame_core::limits::RESOURCE_CAP_ENV;
use parkgame_core::{
    count_parking_functions, count_weakly_increasing, enumerate_parking_functions, Limits,
    SupermodularCheck,
};

use args::{Cli, Command, FamilyArgs, ProfileArgs};
use commands::{parse_coalition, run_profile, ProfileCommand};
use input::{parse_document, RawProfile};
use output::{Format, ResultDocument};

pub use input::{parse_profile, InputError, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Standard streams, injectable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the program on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, io: Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let sink = if code == EXIT_OK {
                &mut *io.stdout
            } else {
                &mut *io.stderr
            };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let Io {
        stdin,
        stdout,
        stderr,
    } = io;
    let result =
        limits_from_env().and_then(|limits| dispatch(cli.command, &limits, stdin, stdout, stderr));
    let _ = stdout.flush();
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    match std::env::var(RESOURCE_CAP_ENV) {
        Err(_) => Ok(Limits::default()),
        Ok(v) => v.trim().parse::<u128>().map(Limits::uniform).map_err(|_| {
            Failure::Usage(format!(
                "{RESOURCE_CAP_ENV} must be a nonnegative integer, got '{v}'"
            ))
        }),
    }
}

fn dispatch(
    command: Command,
    limits: &Limits,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let (cmd, input) = match command {
        Command::Check(input) => (ProfileCommand::Check, input),
        Command::Displacement(input) => (ProfileCommand::Displacement, input),
        Command::Characteristic { input, coalition } => {
            let cars = coalition
                .as_deref()
                .map(parse_coalition)
                .transpose()
                .map_err(Failure::Usage)?;
            (ProfileCommand::Characteristic(cars), input)
        }
        Command::Shapley { input, method } => (ProfileCommand::Shapley(method), input),
        Command::Supermodular { input, all_pairs } => {
            let mode = if all_pairs {
                SupermodularCheck::AllPairs
            } else {
                SupermodularCheck::Covers
            };
            (ProfileCommand::Supermodular(mode), input)
        }
        Command::Leastcore(input) => (ProfileCommand::LeastCore, input),
        Command::Enumerate { family, count_only } => {
            return enumerate(&family, count_only, limits, stdout)
        }
        Command::Count { family } => return count(&family, stdout),
        Command::Bench(args) => {
            bench::run(&args, limits, stdout).map_err(|e| match e.downcast::<io::Error>() {
                Ok(e) => Failure::Io(*e),
                Err(e) => Failure::Domain(e.to_string()),
            })?;
            return Ok(EXIT_OK);
        }
    };
    let raws = read_profiles(&input, stdin)?;
    run_batch(&cmd, &input, &raws, limits, stdout, stderr)
}

fn read_profiles(input: &ProfileArgs, stdin: &mut dyn Read) -> Result<Vec<RawProfile>, Failure> {
    let (text, source) = match (&input.prefs, &input.file) {
        (Some(prefs), _) => (prefs.clone(), "--prefs".to_string()),
        (None, Some(path)) if path.as_os_str() != "-" => {
            let bytes =
                fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let text = String::from_utf8(bytes).map_err(|_| {
                Failure::Usage(format!("{}: input is not valid UTF-8", path.display()))
            })?;
            (text, path.display().to_string())
        }
        _ => {
            let mut bytes = Vec::new();
            stdin.read_to_end(&mut bytes)?;
            let text = String::from_utf8(bytes)
                .map_err(|_| Failure::Usage("standard input is not valid UTF-8".into()))?;
            (text, "<stdin>".to_string())
        }
    };
    if input.prefs.is_some() && text.lines().filter(|l| !l.trim().is_empty()).count() > 1 {
        return Err(Failure::Usage(
            "--prefs takes a single tuple; use --file for batches".into(),
        ));
    }
    let raws = parse_document(&text).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    if raws.is_empty() {
        return Err(Failure::Usage(format!(
            "{source}: no preference tuple found"
        )));
    }
    Ok(raws)
}

/// One document per input line, in input order. Domain errors are reported
/// per line and make the exit code 1 without stopping the batch.
fn run_batch(
    cmd: &ProfileCommand,
    input: &ProfileArgs,
    raws: &[RawProfile],
    limits: &Limits,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    let batch = raws.len() > 1;
    for (k, raw) in raws.iter().enumerate() {
        let start = Instant::now();
        let outcome = raw
            .validate(input.m)
            .and_then(|p| run_profile(cmd, &p, limits));
        let name = match &raw.label {
            Some(label) => format!("line {} ({label})", raw.line),
            None => format!("line {}", raw.line),
        };
        match outcome {
            Ok(report) => match input.format {
                Format::Json => report.doc.write_json(stdout)?,
                Format::Table => {
                    if batch {
                        if k > 0 {
                            writeln!(stdout)?;
                        }
                        writeln!(stdout, "# {name}: {}", prefs_text(raw, input.m))?;
                    }
                    stdout.write_all(report.text.as_bytes())?;
                }
            },
            Err(e) => {
                code = EXIT_DOMAIN;
                writeln!(stderr, "error: {name}: {e}")?;
                if input.format == Format::Json {
                    let mut doc = ResultDocument::new(
                        cmd.name(),
                        raw.prefs.len(),
                        raw.resolved_spots(input.m),
                        &raw.prefs,
                    )
                    .timed(start.elapsed());
                    doc.status = format!("error: {e}");
                    doc.write_json(stdout)?;
                }
            }
        }
    }
    Ok(code)
}

fn prefs_text(raw: &RawProfile, default_m: Option<usize>) -> String {
    let entries: Vec<String> = raw.prefs.iter().map(u32::to_string).collect();
    let m = raw.resolved_spots(default_m);
    if m == raw.prefs.len() {
        entries.join(",")
    } else {
        format!("{} m={m}", entries.join(","))
    }
}

fn enumerate(
    family: &FamilyArgs,
    count_only: bool,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let m = family.m.unwrap_or(family.n);
    let start = Instant::now();
    let iter = enumerate_parking_functions(family.n, m, family.weakly_increasing, limits)
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let method = family
        .weakly_increasing
        .then(|| "weakly-increasing".to_string());
    if count_only {
        let total = iter.count();
        let mut doc = ResultDocument::new("enumerate", family.n, m, &[])
            .with_values([total])
            .timed(start.elapsed());
        doc.method = method;
        match family.format {
            Format::Json => doc.write_json(out)?,
            Format::Table => writeln!(out, "{total}")?,
        }
        return Ok(EXIT_OK);
    }
    let mut last = Instant::now();
    for p in iter {
        match family.format {
            Format::Json => {
                let mut doc =
                    ResultDocument::new("enumerate", family.n, m, p.prefs()).timed(last.elapsed());
                doc.method = method.clone();
                doc.write_json(out)?;
                last = Instant::now();
            }
            Format::Table => {
                let entries: Vec<String> = p.prefs().iter().map(u32::to_string).collect();
                writeln!(out, "{}", entries.join(","))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn count(family: &FamilyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = family.m.unwrap_or(family.n);
    let start = Instant::now();
    let total = if family.weakly_increasing {
        count_weakly_increasing(family.n, m)
    } else {
        count_parking_functions(family.n, m)
    }
    .map_err(|e| Failure::Domain(e.to_string()))?;
    let mut doc = ResultDocument::new("count", family.n, m, &[])
        .with_values([&total])
        .timed(start.elapsed());
    doc.method = family
        .weakly_increasing
        .then(|| "weakly-increasing".to_string());
    match family.format {
        Format::Json => doc.write_json(out)?,
        Format::Table => writeln!(out, "{total}")?,
    }
    Ok(EXIT_OK)
}
