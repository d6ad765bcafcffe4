//! Human-readable lines, JSON envelopes and exit codes.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde_json::{json, Value};

use resbench_core::Error;

pub const SCHEMA: u32 = 1;

/// What a subcommand produced.
pub struct Outcome {
    pub command: &'static str,
    pub lines: Vec<String>,
    pub data: Value,
    pub pass: bool,
}

impl Outcome {
    pub fn new(command: &'static str, data: Value) -> Self {
        Outcome { command, lines: Vec::new(), data, pass: true }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    /// Records an assertion; a failure makes the process exit with code 1.
    pub fn check(&mut self, id: &str, ok: bool, detail: impl AsRef<str>) -> bool {
        let tag = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!("[{tag}] {id}: {}", detail.as_ref()));
        self.pass &= ok;
        ok
    }

    pub fn envelope(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "pass": self.pass,
            "result": self.data,
        })
    }
}

pub fn write_json(path: &Path, outcome: &Outcome) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(&outcome.envelope())?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// 2 for bad input, 3 for an exceeded cap, 1 otherwise.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(UsageError(_)) = e.downcast_ref::<UsageError>() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        Some(Error::Parse(_))
        | Some(Error::InvalidArgument(_))
        | Some(Error::InvalidSymbol(_))
        | Some(Error::AmbiguousSymbol(_))
        | Some(Error::NotRegular { .. }) => 2,
        _ => 1,
    }
}

/// Invalid command-line input detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}
