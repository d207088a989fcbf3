//! Report envelopes shared by every subcommand, in JSON and CSV form.

use std::collections::BTreeMap;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    Infeasible,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Solved => 0,
            Status::Infeasible => 1,
            Status::Unknown => 2,
        }
    }
}

/// One command run. `outcome` carries the module result verbatim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    pub summary: String,
    pub nodes: Option<u64>,
    pub verified: Option<bool>,
    pub outcome: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, status: Status, summary: impl Into<String>, outcome: impl Serialize) -> Result<Report> {
        Ok(Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            status,
            summary: summary.into(),
            nodes: None,
            verified: None,
            outcome: serde_json::to_value(outcome)?,
            wall_ms: None,
        })
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn nodes(mut self, nodes: u64) -> Self {
        self.nodes = Some(nodes);
        self
    }

    pub fn verified(mut self, verified: bool) -> Self {
        self.verified = Some(verified);
        self
    }
}

/// `command,inputs,status,summary,nodes,verified,wall_ms`
#[derive(Serialize)]
struct ReportRow<'a> {
    command: &'a str,
    inputs: String,
    status: Status,
    summary: &'a str,
    nodes: Option<u64>,
    verified: Option<bool>,
    wall_ms: Option<f64>,
}

pub fn joined_inputs(inputs: &BTreeMap<String, String>) -> String {
    inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn to_json(value: &impl Serialize) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => csv_rows([ReportRow {
            command: &report.command,
            inputs: joined_inputs(&report.inputs),
            status: report.status,
            summary: &report.summary,
            nodes: report.nodes,
            verified: report.verified,
            wall_ms: report.wall_ms,
        }]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_fixed_header() {
        let r = Report::new("copies", Status::Solved, "30", serde_json::json!({"count": 30})).unwrap().input("input", "k5.txt");
        let text = render(&r, Format::Csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("command,inputs,status,summary,nodes,verified,wall_ms"));
        assert_eq!(lines.next(), Some("copies,input=k5.txt,solved,30,,,"));
    }

    #[test]
    fn json_omits_wall_time_unless_set() {
        let r = Report::new("tile", Status::Infeasible, "", Value::Null).unwrap();
        assert!(!to_json(&r).unwrap().contains("wall_ms"));
        assert_eq!(Status::Unknown.exit_code(), 2);
    }
}
