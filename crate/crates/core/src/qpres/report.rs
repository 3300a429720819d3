use std::fmt;

use serde::Serialize;

/// Three-valued verification outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Outcome {
    Verified,
    RefutedAtNormalForm,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Verified => "Verified",
            Outcome::RefutedAtNormalForm => "RefutedAtNormalForm",
            Outcome::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub id: String,
    pub status: Outcome,
    pub steps: usize,
    /// Whether the reduction certificate was replayed successfully.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_replayed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportItem {
    pub fn new(id: impl Into<String>, status: Outcome, steps: usize) -> Self {
        ReportItem { id: id.into(), status, steps, certificate_replayed: None, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub refuted: usize,
    pub unknown: usize,
}

/// Result of a verification suite. Items are sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub task: String,
    pub levels: Vec<usize>,
    pub items: Vec<ReportItem>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(task: &str, levels: Vec<usize>, mut items: Vec<ReportItem>) -> Self {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary { total: items.len(), ..Summary::default() };
        for it in &items {
            match it.status {
                Outcome::Verified => summary.verified += 1,
                Outcome::RefutedAtNormalForm => summary.refuted += 1,
                Outcome::Unknown => summary.unknown += 1,
            }
        }
        VerificationReport { task: task.to_string(), levels, items, summary }
    }

    pub fn all_verified(&self) -> bool {
        self.summary.verified == self.summary.total
    }

    pub fn item(&self, id: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.id == id)
    }

    /// Merges several reports under a new task name.
    pub fn merge(task: &str, reports: Vec<VerificationReport>) -> Self {
        let mut levels: Vec<usize> = reports.iter().flat_map(|r| r.levels.clone()).collect();
        levels.sort_unstable();
        levels.dedup();
        let items = reports.into_iter().flat_map(|r| r.items).collect();
        Self::new(task, levels, items)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels = self.levels.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        writeln!(f, "task: {}  levels: {}", self.task, levels)?;
        let width = self.items.iter().map(|i| i.id.len()).max().unwrap_or(2).max(2);
        for it in &self.items {
            write!(f, "  {:<width$}  {:<20} steps={}", it.id, it.status.to_string(), it.steps)?;
            if let Some(ok) = it.certificate_replayed {
                write!(f, " replay={}", if ok { "ok" } else { "FAILED" })?;
            }
            if let Some(n) = &it.note {
                write!(f, "  ({})", n)?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "summary: {}/{} Verified, {} RefutedAtNormalForm, {} Unknown",
            self.summary.verified, self.summary.total, self.summary.refuted, self.summary.unknown
        )
    }
}
