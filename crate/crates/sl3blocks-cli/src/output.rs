use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A finished subcommand: a human-readable body, a structured result and
/// the overall verdict.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub text: String,
    pub passed: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    config: &'a Value,
    passed: bool,
    result: &'a Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let env = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: self.command,
                    config: &self.config,
                    passed: self.passed,
                    result: &self.result,
                };
                let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}
