use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mzv_closed_forms::MzvQuery;
use padic_mzv::config::{Cli, Command, Format, Job};
use padic_mzv::output::{ValueOut, VerifyReport};
use padic_mzv::{suites, table, CliError};

fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for l in lines {
        // A closed pipe is not worth a panic.
        if writeln!(out, "{l}").is_err() {
            return;
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn compute(job: &Job) -> Result<(), CliError> {
    let word = job.word()?;
    let v = job.engine().compute(&MzvQuery::new(job.opts.base, word.clone()))?;
    let out = ValueOut::new(&job.ring, job.opts.base, &word, &v);
    emit(&[match job.opts.format {
        Format::Json => json(&out),
        Format::Text => out.text(),
    }]);
    if v.certified_digits < job.opts.threshold {
        return Err(CliError::Uncertified(format!(
            "{} certified digits < threshold {}",
            v.certified_digits, job.opts.threshold
        )));
    }
    Ok(())
}

fn table(job: &Job) -> Result<(), CliError> {
    let rows = table::table_rows(job)?;
    emit(
        &rows
            .iter()
            .map(|r| match job.opts.format {
                Format::Json => json(r),
                Format::Text => r.text(),
            })
            .collect::<Vec<_>>(),
    );
    let weak = rows.iter().filter(|r| r.value.certified_digits < job.opts.threshold).count();
    if weak > 0 {
        return Err(CliError::Uncertified(format!("{weak} rows below {} certified digits", job.opts.threshold)));
    }
    Ok(())
}

fn verify(job: &Job) -> Result<(), CliError> {
    let chosen = suites::select(&job.opts.suite)?;
    let reports = chosen.iter().map(|s| suites::run(job, s)).collect();
    let report = VerifyReport::new(job.opts.p, job.opts.m, job.opts.threshold, reports);
    emit(&[match job.opts.format {
        Format::Json => json(&report),
        Format::Text => report.text(),
    }]);
    match &report.first_failure {
        Some((suite, c)) => Err(CliError::Verify(format!("{suite}: {} ({})", c.name, c.detail))),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let res = Job::new(cli.opts).and_then(|job| match cli.command {
        Command::Compute => compute(&job),
        Command::Table => table(&job),
        Command::Verify => verify(&job),
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("padic-mzv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
