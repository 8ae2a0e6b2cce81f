//! Verification reports: one entry per checked identity.

use std::fmt;

/// How many failing instances are kept verbatim per entry.
const KEPT_FAILURES: usize = 8;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Entry {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub failures: Vec<String>,
}

impl Entry {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub entries: Vec<Entry>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), ..Default::default() }
    }

    /// Returns the entry with this name, creating it in insertion order.
    pub fn entry(&mut self, name: &str) -> &mut Entry {
        let pos = match self.entries.iter().position(|e| e.name == name) {
            Some(p) => p,
            None => {
                self.entries.push(Entry { name: name.to_string(), ..Default::default() });
                self.entries.len() - 1
            }
        };
        &mut self.entries[pos]
    }

    /// Records one checked instance. `detail` is only evaluated on failure.
    pub fn record(&mut self, name: &str, ok: bool, residual: f64, detail: impl FnOnce() -> String) {
        let e = self.entry(name);
        e.checked += 1;
        if residual.is_nan() || residual > e.max_residual {
            e.max_residual = residual;
        }
        if !ok {
            e.failed += 1;
            if e.failures.len() < KEPT_FAILURES {
                e.failures.push(detail());
            }
        }
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(Entry::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Names of entries with at least one failure.
    pub fn failing(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.passed()).map(|e| e.name.as_str()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.max_residual).fold(0.0, f64::max)
    }

    /// Appends the entries of another report, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            e.name = format!("{prefix}{}", e.name);
            self.entries.push(e);
        }
        self.warnings.extend(other.warnings);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for e in &self.entries {
            writeln!(
                f,
                "[{}] {}: checked={} failed={} max_residual={:.3e}",
                if e.passed() { "PASS" } else { "FAIL" },
                e.name,
                e.checked,
                e.failed,
                e.max_residual
            )?;
            for d in &e.failures {
                writeln!(f, "    at {d}")?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        writeln!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
