use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

/// One output record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub command: String,
    pub subject: String,
    pub result: String,
    pub status: Status,
    pub data: Value,
}

impl Record {
    pub fn new(command: &str, subject: impl Into<String>, result: impl Into<String>, status: Status, data: Value) -> Self {
        Record {
            command: command.into(),
            subject: subject.into(),
            result: result.into(),
            status,
            data,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputMode {
    #[default]
    Text,
    #[value(name = "json")]
    JsonLines,
}

/// Exit status: 1 if anything failed, else 2 if anything is unknown.
pub fn exit_code(records: &[Record]) -> i32 {
    if records.iter().any(|r| r.status == Status::Fail) {
        1
    } else if records.iter().any(|r| r.status == Status::Unknown) {
        2
    } else {
        0
    }
}

/// Writes the records; json-lines objects carry the tool version and seed.
pub fn emit_report(out: &mut impl Write, records: &[Record], mode: OutputMode, seed: u64) -> std::io::Result<()> {
    match mode {
        OutputMode::JsonLines => {
            for r in records {
                let line = json!({
                    "tool": "intstar",
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": seed,
                    "command": r.command,
                    "subject": r.subject,
                    "result": r.result,
                    "status": r.status,
                    "data": r.data,
                });
                writeln!(out, "{line}")?;
            }
        }
        OutputMode::Text => {
            if records.is_empty() {
                return Ok(());
            }
            let w0 = records.iter().map(|r| r.command.chars().count()).max().unwrap_or(0);
            let w1 = records.iter().map(|r| r.subject.chars().count()).max().unwrap_or(0);
            for r in records {
                let pad0 = w0 - r.command.chars().count();
                let pad1 = w1 - r.subject.chars().count();
                writeln!(
                    out,
                    "{}{}  {}{}  {}",
                    r.command,
                    " ".repeat(pad0),
                    r.subject,
                    " ".repeat(pad1),
                    r.result
                )?;
            }
            writeln!(out, "# intstar {} seed {seed}", env!("CARGO_PKG_VERSION"))?;
        }
    }
    Ok(())
}
