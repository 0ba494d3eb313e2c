//! Deterministic text and structured renderings of certificate reports.

use mha_core::report::CertificateReport;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
struct EntryView<'a> {
    name: &'a str,
    anchor: &'a str,
    passed: bool,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportView<'a> {
    tool_version: &'a str,
    spec_digest: Option<&'a str>,
    window: &'a [String],
    entries: Vec<EntryView<'a>>,
    notes: &'a [String],
    checks: usize,
    failed: usize,
}

fn view(r: &CertificateReport) -> ReportView<'_> {
    ReportView {
        tool_version: &r.tool_version,
        spec_digest: r.spec_digest.as_deref(),
        window: &r.window,
        entries: r
            .entries
            .iter()
            .map(|e| EntryView {
                name: &e.name,
                anchor: &e.anchor,
                passed: e.passed,
                witness: e.witness.as_deref(),
            })
            .collect(),
        notes: &r.notes,
        checks: r.entries.len(),
        failed: r.failures().count(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of the report content; the report carries no timestamps.
pub fn digest(r: &CertificateReport) -> String {
    sha256_hex(
        serde_json::to_string(&view(r))
            .expect("report serializes")
            .as_bytes(),
    )
}

#[derive(Serialize)]
struct Structured<'a> {
    #[serde(flatten)]
    report: ReportView<'a>,
    digest: String,
}

pub fn structured(r: &CertificateReport) -> String {
    let mut s = serde_json::to_string_pretty(&Structured {
        report: view(r),
        digest: digest(r),
    })
    .expect("report serializes");
    s.push('\n');
    s
}

pub fn text(r: &CertificateReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("mha {}\n", r.tool_version));
    if let Some(d) = &r.spec_digest {
        out.push_str(&format!("spec digest: {d}\n"));
    }
    for line in &r.window {
        out.push_str(&format!("window: {line}\n"));
    }
    for e in &r.entries {
        let mark = if e.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("[{mark}] {} ({})", e.name, e.anchor));
        if let Some(w) = &e.witness {
            out.push_str(&format!(": {w}"));
        }
        out.push('\n');
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    let failed = r.failures().count();
    out.push_str(&format!(
        "{} checks, {failed} failed: {}\n",
        r.entries.len(),
        if failed == 0 { "PASS" } else { "FAIL" }
    ));
    out.push_str(&format!("report digest: {}\n", digest(r)));
    out
}
