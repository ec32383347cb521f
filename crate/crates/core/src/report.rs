//! Text renderings of classification reports and verification outcomes.
//! Every writer is deterministic: the same input gives the same bytes.

use std::fmt::Write as _;
use std::io;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{ClassRow, ClassificationReport};
use crate::error::Error;
use crate::verify::{Status, VerificationOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Unsupported(format!("unknown format {s:?}"))),
        }
    }
}

fn json_bytes(value: &impl Serialize) -> io::Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(io::Error::other)?;
    out.push(b'\n');
    Ok(out)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    rep: &'a str,
    members: String,
    wpe: String,
    pe: String,
    pha: String,
    ha: String,
    passoc: bool,
    assoc: bool,
}

impl<'a> From<&'a ClassRow> for CsvRow<'a> {
    fn from(r: &'a ClassRow) -> Self {
        CsvRow {
            rep: &r.rep,
            members: r.members.join(" "),
            wpe: r.wpe.join(" "),
            pe: r.pe.join(" "),
            pha: r.pha.join(" "),
            ha: r.ha.join(" "),
            passoc: r.passoc,
            assoc: r.assoc,
        }
    }
}

/// One JSON object per class, in report order.
pub fn classes_json(report: &ClassificationReport) -> io::Result<Vec<u8>> {
    json_bytes(&report.rows())
}

/// One CSV row per class; list fields are space separated.
pub fn classes_csv(report: &ClassificationReport) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in report.rows() {
        w.serialize(CsvRow::from(&row)).map_err(io::Error::other)?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

fn set_cell(codes: &[String]) -> String {
    format!("{{{}}}", codes.join(", "))
}

/// Numbered rows with the representative, its isomorphic copies and the
/// four α-sets.
pub fn classes_markdown(report: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "| item | rep | members | wpe | pe | pha | ha | passoc | assoc |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|");
    for (i, r) in report.rows().iter().enumerate() {
        let _ = writeln!(
            s,
            "| ({}) | {} | {} | {} | {} | {} | {} | {} | {} |",
            i + 1,
            r.rep,
            r.members.join(" ≅ "),
            set_cell(&r.wpe),
            set_cell(&r.pe),
            set_cell(&r.pha),
            set_cell(&r.ha),
            r.passoc,
            r.assoc
        );
    }
    s
}

pub fn write_classes(report: &ClassificationReport, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => classes_json(report),
        Format::Csv => classes_csv(report),
        Format::Markdown => Ok(classes_markdown(report).into_bytes()),
    }
}

fn escape_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

pub fn outcome_markdown(outcome: &VerificationOutcome) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} checks: {} match, {} mismatch\n",
        outcome.checks.len(),
        outcome.count(Status::Match),
        outcome.count(Status::Mismatch)
    );
    let _ = writeln!(
        s,
        "| status | section | subject | expected | computed | detail |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for c in &outcome.checks {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} |",
            c.status,
            c.section,
            escape_cell(&c.subject),
            escape_cell(&c.expected),
            escape_cell(&c.computed),
            escape_cell(c.detail.as_deref().unwrap_or(""))
        );
    }
    if !outcome.notes.is_empty() {
        let _ = writeln!(s, "\nNotes:\n");
        for n in &outcome.notes {
            let _ = writeln!(s, "- {n}");
        }
    }
    s
}

/// JSON or Markdown; CSV is not offered for outcomes.
pub fn write_outcome(outcome: &VerificationOutcome, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => json_bytes(outcome),
        Format::Markdown => Ok(outcome_markdown(outcome).into_bytes()),
        Format::Csv => Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "verification outcomes are written as json or markdown",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{classify, ClassifyOptions};

    fn report() -> ClassificationReport {
        classify(2, &ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn csv_layout() {
        let bytes = classes_csv(&report()).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "rep,members,wpe,pe,pha,ha,passoc,assoc"
        );
        assert_eq!(text.lines().count(), 46);
        assert!(text.contains("\n1221,1221 2112,"));
    }

    #[test]
    fn json_is_one_object_per_class() {
        let bytes = classes_json(&report()).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let rows = value.as_array().unwrap();
        assert_eq!(rows.len(), 45);
        let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["assoc", "ha", "members", "passoc", "pe", "pha", "rep", "wpe"]
        );
    }

    #[test]
    fn markdown_rows() {
        let md = classes_markdown(&report());
        assert_eq!(md.lines().count(), 47);
        assert!(md.contains("| 1221 | 1221 ≅ 2112 |"));
        assert!(md
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("| (1) | 3333 | 3333 |"));
    }

    #[test]
    fn outputs_are_repeatable() {
        let (a, b) = (report(), report());
        for f in [Format::Json, Format::Csv, Format::Markdown] {
            assert_eq!(write_classes(&a, f).unwrap(), write_classes(&b, f).unwrap());
        }
    }

    #[test]
    fn format_names() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!("xml".parse::<Format>().is_err());
    }
}
