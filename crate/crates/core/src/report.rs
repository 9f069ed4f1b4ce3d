//! Claim records and their table / JSON / CSV renderings.

use std::fmt::Write as _;

use serde::ser::{Serialize, Serializer};
use serde::Serialize as DeriveSerialize;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, DeriveSerialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the published argument being reproduced.
    Paper,
    /// Follows from other pinned values or from an independent computation.
    Derived,
    /// Holds by construction.
    Trivial,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Paper => "paper",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

/// Strength of a computed value.
///
/// A rank observed modulo `p` at an integer specialization bounds the
/// characteristic-zero generic rank from below, so maximal rank is a proof;
/// a rank deficiency is only evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, DeriveSerialize)]
pub enum CertificateKind {
    #[serde(rename = "proof-mod-p-specialization")]
    Proof,
    #[serde(rename = "evidence")]
    Evidence,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::Proof => "proof-mod-p-specialization",
            CertificateKind::Evidence => "evidence",
        }
    }

    pub fn from_maximal_rank(maximal: bool) -> Self {
        if maximal {
            CertificateKind::Proof
        } else {
            CertificateKind::Evidence
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Int(i64),
    Bool(bool),
    List(Vec<i64>),
}

impl ClaimValue {
    fn render(&self) -> String {
        match self {
            ClaimValue::Int(x) => x.to_string(),
            ClaimValue::Bool(b) => b.to_string(),
            ClaimValue::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(" "))
            }
        }
    }
}

impl From<usize> for ClaimValue {
    fn from(x: usize) -> Self {
        ClaimValue::Int(x as i64)
    }
}

impl From<i64> for ClaimValue {
    fn from(x: i64) -> Self {
        ClaimValue::Int(x)
    }
}

impl From<bool> for ClaimValue {
    fn from(b: bool) -> Self {
        ClaimValue::Bool(b)
    }
}

impl From<Vec<usize>> for ClaimValue {
    fn from(v: Vec<usize>) -> Self {
        ClaimValue::List(v.into_iter().map(|x| x as i64).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Equals(ClaimValue),
    AtLeast(i64),
    /// Value is recorded without a pass/fail judgment.
    Unpinned,
}

impl Expectation {
    pub fn is_pinned(&self) -> bool {
        !matches!(self, Expectation::Unpinned)
    }

    pub fn accepts(&self, computed: &ClaimValue) -> bool {
        match (self, computed) {
            (Expectation::Equals(v), c) => v == c,
            (Expectation::AtLeast(lo), ClaimValue::Int(x)) => x >= lo,
            (Expectation::AtLeast(_), _) => false,
            (Expectation::Unpinned, _) => true,
        }
    }

    fn render(&self) -> String {
        match self {
            Expectation::Equals(v) => v.render(),
            Expectation::AtLeast(lo) => format!(">= {lo}"),
            Expectation::Unpinned => String::new(),
        }
    }
}

impl Serialize for Expectation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Expectation::Equals(v) => v.serialize(s),
            Expectation::AtLeast(lo) => s.serialize_str(&format!(">= {lo}")),
            Expectation::Unpinned => s.serialize_none(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, DeriveSerialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Unpinned value, reported only.
    Recorded,
    /// Failed for the requested seed but passed after re-seeding.
    UnluckySpecialization,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Recorded => "recorded",
            Verdict::UnluckySpecialization => "unlucky-specialization",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub paper_anchor: String,
    pub provenance: Provenance,
    pub expected: Expectation,
    pub computed: ClaimValue,
    pub verdict: Verdict,
    pub certificate_kind: CertificateKind,
}

impl Claim {
    pub fn new(
        id: &str,
        description: &str,
        anchor: &str,
        provenance: Provenance,
        expected: Expectation,
        computed: impl Into<ClaimValue>,
        certificate_kind: CertificateKind,
    ) -> Self {
        let mut c = Claim {
            id: id.to_string(),
            description: description.to_string(),
            paper_anchor: anchor.to_string(),
            provenance,
            expected,
            computed: computed.into(),
            verdict: Verdict::Recorded,
            certificate_kind,
        };
        c.judge();
        c
    }

    /// Recomputes the verdict from the expectation and computed value.
    pub fn judge(&mut self) {
        self.verdict = if !self.expected.is_pinned() {
            Verdict::Recorded
        } else if self.expected.accepts(&self.computed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn passes(&self) -> bool {
        !self.verdict.is_failure()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct Meta {
    pub version: String,
    pub command: String,
    pub prime: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct ReportDocument {
    pub meta: Meta,
    pub claims: Vec<Claim>,
    pub exit_status: i32,
}

impl ReportDocument {
    pub fn new(command: &str, prime: u64, seed: u64, claims: Vec<Claim>) -> Self {
        let mut doc = ReportDocument {
            meta: Meta { version: env!("CARGO_PKG_VERSION").to_string(), command: command.to_string(), prime, seed },
            claims,
            exit_status: 0,
        };
        doc.refresh_status();
        doc
    }

    pub fn refresh_status(&mut self) {
        self.exit_status = i32::from(self.claims.iter().any(|c| !c.passes()));
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub const CSV_HEADER: &str = "id,description,paper_anchor,provenance,expected,computed,verdict,certificate_kind";

pub fn render_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(doc),
        Format::Table => render_table(doc),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in &doc.claims {
        let fields = [
            c.id.clone(),
            c.description.clone(),
            c.paper_anchor.clone(),
            c.provenance.as_str().to_string(),
            c.expected.render(),
            c.computed.render(),
            c.verdict.as_str().to_string(),
            c.certificate_kind.as_str().to_string(),
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn render_table(doc: &ReportDocument) -> String {
    let headers = ["id", "expected", "computed", "verdict", "certificate", "description"];
    let rows: Vec<[String; 6]> = doc
        .claims
        .iter()
        .map(|c| {
            [
                c.id.clone(),
                c.expected.render(),
                c.computed.render(),
                c.verdict.as_str().to_string(),
                c.certificate_kind.as_str().to_string(),
                c.description.clone(),
            ]
        })
        .collect();
    let mut widths = headers.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let _ =
        writeln!(out, "{} {} (prime {}, seed {})", doc.meta.command, doc.meta.version, doc.meta.prime, doc.meta.seed);
    let line = |cells: &[String]| -> String {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{cell:<w$}  ");
            }
        }
        s.trim_end().to_string()
    };
    out.push_str(&line(&headers.map(String::from)));
    out.push('\n');
    for r in &rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    let failed = doc.claims.iter().filter(|c| !c.passes()).count();
    let _ = writeln!(out, "{} claims, {failed} failed, exit status {}", doc.claims.len(), doc.exit_status);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportDocument {
        let claims = vec![
            Claim::new(
                "a",
                "first, with comma",
                "x",
                Provenance::Paper,
                Expectation::Equals(3usize.into()),
                3usize,
                CertificateKind::Proof,
            ),
            Claim::new(
                "b",
                "second",
                "y",
                Provenance::Derived,
                Expectation::AtLeast(28),
                28usize,
                CertificateKind::Proof,
            ),
            Claim::new(
                "c",
                "third",
                "z",
                Provenance::Derived,
                Expectation::Unpinned,
                84usize,
                CertificateKind::Evidence,
            ),
        ];
        ReportDocument::new("test", 7, 0, claims)
    }

    #[test]
    fn json_schema_keys() {
        let text = render_report(&sample(), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let top: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(top, ["claims", "exit_status", "meta"]);
        let claim: Vec<&String> = v["claims"][0].as_object().unwrap().keys().collect();
        assert_eq!(
            claim,
            ["certificate_kind", "computed", "description", "expected", "id", "paper_anchor", "provenance", "verdict"]
        );
        // emitted order is stable and follows the declaration order
        let meta = text.find("\"meta\"").unwrap();
        let claims = text.find("\"claims\"").unwrap();
        let status = text.find("\"exit_status\"").unwrap();
        assert!(meta < claims && claims < status);
        assert_eq!(v["claims"][1]["expected"], ">= 28");
        assert!(v["claims"][2]["expected"].is_null());
        assert_eq!(v["claims"][2]["verdict"], "recorded");
        assert_eq!(v["exit_status"], 0);
    }

    #[test]
    fn csv_rows() {
        let csv = render_report(&sample(), Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("a,\"first, with comma\",x,paper,3,3,pass,"));
    }

    #[test]
    fn failing_claim_sets_exit_status() {
        let mut doc = sample();
        doc.claims[0].expected = Expectation::Equals(4usize.into());
        doc.claims[0].judge();
        doc.refresh_status();
        assert_eq!(doc.exit_status, 1);
        assert!(render_report(&doc, Format::Table).contains("1 failed"));
    }
}
