//! Certificate reports: ordered pass/fail entries with witnesses.

/// One verified property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    /// Stable tag locating the property in the theory.
    pub anchor: String,
    pub passed: bool,
    /// First counterexample found, and how many cases failed in total.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateReport {
    pub tool_version: String,
    pub spec_digest: Option<String>,
    pub window: Vec<String>,
    pub entries: Vec<CheckEntry>,
    /// Informational lines that do not affect pass/fail.
    pub notes: Vec<String>,
}

/// Collects failures for one check and turns them into an entry.
#[derive(Debug, Default)]
pub struct Failures {
    first: Option<String>,
    count: usize,
}

impl Failures {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, witness: impl FnOnce() -> String) {
        if self.first.is_none() {
            self.first = Some(witness());
        }
        self.count += 1;
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.record(witness);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn witness(&self) -> Option<String> {
        self.first.as_ref().map(|w| {
            if self.count > 1 {
                format!("{w} (and {} more)", self.count - 1)
            } else {
                w.clone()
            }
        })
    }
}

impl CertificateReport {
    pub fn new(window: Vec<String>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            window,
            ..Self::default()
        }
    }

    pub fn push(&mut self, name: &str, anchor: &str, failures: Failures) {
        self.entries.push(CheckEntry {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: failures.is_empty(),
            witness: failures.witness(),
        });
    }

    pub fn push_result(&mut self, name: &str, anchor: &str, witness: Option<String>) {
        self.entries.push(CheckEntry {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Appends another report's entries under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: CertificateReport) {
        for mut e in other.entries {
            if !prefix.is_empty() {
                e.name = format!("{prefix}: {}", e.name);
            }
            self.entries.push(e);
        }
        self.notes.extend(other.notes.into_iter().map(|n| {
            if prefix.is_empty() {
                n
            } else {
                format!("{prefix}: {n}")
            }
        }));
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Whether every entry whose name contains `fragment` passed (and at least one exists).
    pub fn passed_matching(&self, fragment: &str) -> bool {
        let mut any = false;
        for e in self.entries.iter().filter(|e| e.name.contains(fragment)) {
            any = true;
            if !e.passed {
                return false;
            }
        }
        any
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_keep_first_witness_and_count() {
        let mut f = Failures::new();
        f.check(true, || unreachable!());
        f.record(|| "a".into());
        f.record(|| "b".into());
        assert_eq!(f.witness().unwrap(), "a (and 1 more)");
        let mut r = CertificateReport::new(vec![]);
        r.push("x", "tag", f);
        r.push("y", "tag", Failures::new());
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.passed_matching("y"));
        assert!(!r.passed_matching("x"));
        assert!(!r.passed_matching("zzz"));
    }
}
