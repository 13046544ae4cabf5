//! Structured verification results.
//!
//! Every checker in this crate returns a [`Report`] rather than a boolean:
//! a list of per-case verdicts with rendered witnesses for failures, so a
//! caller (the command-line tool in particular) can show *which* index
//! broke and what the two sides evaluated to.
//!
//! The distinction carried by [`CheckClass`] matters for exit codes. Some
//! checks test identities that must hold for every family (violations mean
//! the implementation is broken); others test properties a family may
//! simply lack — the symmetry condition, the multiplicative-inverse
//! condition. A failed property is a finding, not an error.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check's hypothesis is not satisfied, so the conclusion is not
    /// being claimed — e.g. an odd-vanishing test on a family that fails
    /// the inverse condition it presupposes.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckClass {
    /// A proved identity: any failure is a defect somewhere.
    Identity,
    /// A condition a family may or may not satisfy; failure is informative.
    Property,
}

#[derive(Clone, Debug)]
pub struct CheckItem {
    /// What was checked, e.g. `n=4` or `n=4, k=2`.
    pub label: String,
    pub verdict: Verdict,
    /// For failures: the two sides (or the residual) in rendered form.
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub class: CheckClass,
    pub items: Vec<CheckItem>,
    /// Free-form remarks: hypothesis status, orders used, caveats.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>, class: CheckClass) -> Self {
        Report {
            title: title.into(),
            class,
            items: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            verdict: Verdict::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, label: impl Into<String>, witness: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
        });
    }

    pub fn not_applicable(&mut self, label: impl Into<String>, why: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            verdict: Verdict::NotApplicable,
            witness: Some(why.into()),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.verdict != Verdict::Fail)
    }

    /// `Fail` if anything failed; `NotApplicable` if nothing was actually
    /// claimed; `Pass` otherwise.
    pub fn overall(&self) -> Verdict {
        if self.items.iter().any(|i| i.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if !self.items.is_empty()
            && self
                .items
                .iter()
                .all(|i| i.verdict == Verdict::NotApplicable)
        {
            Verdict::NotApplicable
        } else {
            Verdict::Pass
        }
    }

    /// Indices (labels) of failing items.
    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items
            .iter()
            .filter(|i| i.verdict == Verdict::Fail)
            .collect()
    }

    /// Multi-line human-readable form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {}",
            self.title,
            match self.overall() {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::NotApplicable => "NOT APPLICABLE",
            }
        );
        for item in &self.items {
            match &item.witness {
                Some(w) => {
                    let _ = writeln!(out, "  {}: {} — {}", item.label, item.verdict.as_str(), w);
                }
                None => {
                    let _ = writeln!(out, "  {}: {}", item.label, item.verdict.as_str());
                }
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        out
    }

    /// Deterministic JSON rendering (insertion order preserved by hand).
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"title\":");
        out.push_str(&json_string(&self.title));
        out.push_str(",\"class\":");
        out.push_str(match self.class {
            CheckClass::Identity => "\"identity\"",
            CheckClass::Property => "\"property\"",
        });
        out.push_str(",\"overall\":");
        out.push_str(&json_string(self.overall().as_str()));
        out.push_str(",\"items\":[");
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"label\":");
            out.push_str(&json_string(&item.label));
            out.push_str(",\"verdict\":");
            out.push_str(&json_string(item.verdict.as_str()));
            if let Some(w) = &item.witness {
                out.push_str(",\"witness\":");
                out.push_str(&json_string(w));
            }
            out.push('}');
        }
        out.push_str("],\"notes\":[");
        for (i, note) in self.notes.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&json_string(note));
        }
        out.push_str("]}");
        out
    }
}

/// Quote and escape a string for JSON output.
pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
