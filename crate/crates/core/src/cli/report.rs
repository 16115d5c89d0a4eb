//! Report envelope shared by every subcommand, and its CSV / JSON encodings.

use std::collections::BTreeMap;
use std::io::Write;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever columns or envelope fields change meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_NAME: &str = "sextic-freud";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub timestamp: String,
    pub columns: Vec<String>,
    /// Every cell is a decimal string.
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, Value>,
}

impl ReportEnvelope {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config: BTreeMap::new(),
            timestamp: report_timestamp(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn set_summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    /// Overall verdict for verification commands, absent otherwise.
    pub fn pass(&self) -> Option<bool> {
        self.summary.get("pass").and_then(Value::as_bool)
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Comment preamble (`#` lines), then a header row, then data rows.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = out;
        writeln!(out, "# {} {} schema={} command={}", self.tool, self.version, self.schema, self.command)?;
        writeln!(out, "# timestamp={}", self.timestamp)?;
        for (k, v) in &self.config {
            writeln!(out, "# config.{k}={v}")?;
        }
        for (k, v) in &self.summary {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(out, "# summary.{k}={text}")?;
        }
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = self.to_json();
                s.push('\n');
                s
            }
        }
    }
}

/// Reads the data rows of a CSV report back (comment lines skipped).
pub fn read_csv_rows(text: &str) -> csv::Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<csv::Result<_>>()?;
    Ok((header, rows))
}

/// Current UTC time, or `SOURCE_DATE_EPOCH` when set, for reproducible output.
pub fn report_timestamp() -> String {
    let fixed = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    fixed.unwrap_or_else(Utc::now).to_rfc3339_opts(SecondsFormat::Secs, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportEnvelope {
        let mut env = ReportEnvelope::new("moments", &["j", "mu_j"]);
        env.timestamp = "2000-01-01T00:00:00Z".into();
        env.config.insert("t1".into(), "-1".into());
        env.push_row(vec!["0".into(), "1.5e0".into()]);
        env.push_row(vec!["1".into(), "0".into()]);
        env.set_summary("pass", true);
        env
    }

    #[test]
    fn json_round_trip() {
        let env = sample();
        let text = env.to_json();
        let back = ReportEnvelope::from_json(&text).unwrap();
        assert_eq!(back, env);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.pass(), Some(true));
    }

    #[test]
    fn csv_layout() {
        let text = sample().to_csv();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# sextic-freud "));
        assert!(text.contains("# config.t1=-1\n"));
        assert!(text.contains("\nj,mu_j\n0,1.5e0\n1,0\n"));
        let (header, rows) = read_csv_rows(&text).unwrap();
        assert_eq!(header, vec!["j", "mu_j"]);
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
