//! The report document shared by every subcommand.

use serde::Serialize;
use serde_json::Value;

use qgauge_core::qpres::{Outcome, VerificationReport};

pub const TOOL: &str = "qgauge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Verified,
    Computed,
    RefutedAtNormalForm,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "Verified",
            Status::Computed => "Computed",
            Status::RefutedAtNormalForm => "RefutedAtNormalForm",
            Status::Unknown => "Unknown",
        }
    }
}

impl From<Outcome> for Status {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Verified => Status::Verified,
            Outcome::RefutedAtNormalForm => Status::RefutedAtNormalForm,
            Outcome::Unknown => Status::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub id: String,
    pub status: Status,
    pub steps: usize,
    /// Extra per-item fields, flattened into the JSON object.
    #[serde(flatten)]
    pub data: serde_json::Map<String, Value>,
}

impl Item {
    pub fn new(id: impl Into<String>, status: Status) -> Self {
        Item { id: id.into(), status, steps: 0, data: serde_json::Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.data.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub computed: usize,
    pub refuted: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub task: String,
    pub inputs: Value,
    pub items: Vec<Item>,
    pub summary: Summary,
    /// Results keyed by name, e.g. the Milnor assembly of a tower.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub results: Value,
    pub provenance: Vec<String>,
}

impl Report {
    pub fn new(task: &str, inputs: Value, mut items: Vec<Item>) -> Self {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary { total: items.len(), ..Summary::default() };
        for it in &items {
            match it.status {
                Status::Verified => summary.verified += 1,
                Status::Computed => summary.computed += 1,
                Status::RefutedAtNormalForm => summary.refuted += 1,
                Status::Unknown => summary.unknown += 1,
            }
        }
        Report {
            tool: TOOL,
            version: VERSION,
            task: task.to_string(),
            inputs,
            items,
            summary,
            results: Value::Null,
            provenance: Vec::new(),
        }
    }

    /// Keeps the item order given, for tables indexed by level.
    pub fn ordered(task: &str, inputs: Value, items: Vec<Item>) -> Self {
        let mut r = Self::new(task, inputs, Vec::new());
        r.summary.total = items.len();
        for it in &items {
            match it.status {
                Status::Verified => r.summary.verified += 1,
                Status::Computed => r.summary.computed += 1,
                Status::RefutedAtNormalForm => r.summary.refuted += 1,
                Status::Unknown => r.summary.unknown += 1,
            }
        }
        r.items = items;
        r
    }

    pub fn from_verification(v: &VerificationReport, inputs: Value) -> Self {
        let items = v
            .items
            .iter()
            .map(|it| {
                let mut item = Item::new(it.id.clone(), it.status.into());
                item.steps = it.steps;
                if let Some(ok) = it.certificate_replayed {
                    item = item.with("certificate_replayed", ok);
                }
                if let Some(n) = &it.note {
                    item = item.with("note", n.clone());
                }
                item
            })
            .collect();
        Self::new(&v.task, inputs, items)
    }

    /// 1 when anything was refuted, else 2 when anything is unknown, else 0.
    pub fn exit_status(&self) -> i32 {
        if self.summary.refuted > 0 {
            1
        } else if self.summary.unknown > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Generic text rendering: one line per item, then the summary.
    pub fn to_text(&self) -> String {
        let mut out = format!("task: {}\n", self.task);
        let width = self.items.iter().map(|i| i.id.len()).max().unwrap_or(2).max(2);
        for it in &self.items {
            out.push_str(&format!("  {:<width$}  {:<20} steps={}", it.id, it.status.as_str(), it.steps));
            if let Some(Value::Bool(ok)) = it.data.get("certificate_replayed") {
                out.push_str(if *ok { " replay=ok" } else { " replay=FAILED" });
            }
            if let Some(Value::String(n)) = it.data.get("note") {
                out.push_str(&format!("  ({})", n));
            }
            out.push('\n');
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        if s.computed > 0 {
            format!("summary: {} computed, {} Unknown", s.computed, s.unknown)
        } else {
            format!(
                "summary: {}/{} Verified, {} RefutedAtNormalForm, {} Unknown",
                s.verified, s.total, s.refuted, s.unknown
            )
        }
    }
}

/// Left-aligned ASCII table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            width[k] = width[k].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().enumerate().map(|(k, c)| format!("{:<w$}", c, w = width[k])).collect();
        format!("  {}\n", s.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
