//! Certification reports: batch evaluation over spectrum records and
//! serialization to JSON (lossless, re-parseable) and CSV (flat summary).

use serde::Deserialize;

use crate::certify::{certify_all, Certificate, ConditionId};
use crate::error::SpectrumError;
use crate::geometry::{
    eps0, eps1, eps2, eps_otal, expansion_base, mori_threshold, ratio_threshold,
};
use crate::jsonfmt::{fmt_f64, fmt_str};
use crate::spectrum::SpectrumRecord;

/// Crate version stamped into reports; fixed per build, no timestamps.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The genus-dependent threshold for one genus present in a report.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct GenusThreshold {
    pub genus: u32,
    pub eps_otal: f64,
}

/// Snapshot of every constant a report's verdicts depend on.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ConstantsSnapshot {
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub ratio_threshold: f64,
    pub mori_threshold: f64,
    pub b: f64,
    /// One entry per genus appearing in the report, ascending.
    pub eps_otal: Vec<GenusThreshold>,
}

impl ConstantsSnapshot {
    fn for_genera(mut genera: Vec<u32>) -> Self {
        genera.sort_unstable();
        genera.dedup();
        Self {
            eps0: eps0(),
            eps1: eps1(),
            eps2: eps2(),
            ratio_threshold: ratio_threshold(),
            mori_threshold: mori_threshold(),
            b: expansion_base(),
            eps_otal: genera
                .into_iter()
                .map(|g| GenusThreshold {
                    genus: g,
                    eps_otal: eps_otal(crate::geometry::Genus::new(g).expect("validated genus")),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct ReportSummary {
    pub records: usize,
    pub curves: usize,
    pub theorem1_passes: usize,
    pub theorem2_passes: usize,
}

/// One record together with one certificate per curve, in curve order.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RecordReport {
    pub manifold: SpectrumRecord,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub constants: ConstantsSnapshot,
    pub summary: ReportSummary,
    pub records: Vec<RecordReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Certifies every curve of every record, preserving record and curve order.
pub fn build_report(records: &[SpectrumRecord]) -> Report {
    let record_reports: Vec<RecordReport> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            records
                .par_iter()
                .map(|r| RecordReport {
                    manifold: r.clone(),
                    certificates: certify_all(&r.curves, r.genus),
                })
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            records
                .iter()
                .map(|r| RecordReport {
                    manifold: r.clone(),
                    certificates: certify_all(&r.curves, r.genus),
                })
                .collect()
        }
    };

    let curves = record_reports.iter().map(|r| r.certificates.len()).sum();
    let theorem1_passes = record_reports
        .iter()
        .flat_map(|r| &r.certificates)
        .filter(|c| c.theorem1_ok)
        .count();
    let theorem2_passes = record_reports
        .iter()
        .flat_map(|r| &r.certificates)
        .filter(|c| c.theorem2_ok)
        .count();

    Report {
        tool_version: TOOL_VERSION.to_string(),
        constants: ConstantsSnapshot::for_genera(records.iter().map(|r| r.genus.get()).collect()),
        summary: ReportSummary {
            records: records.len(),
            curves,
            theorem1_passes,
            theorem2_passes,
        },
        records: record_reports,
    }
}

/// Serializes a report. JSON output has fixed key order and 17-digit reals;
/// CSV output has one row per (record, curve) pair.
pub fn emit_report(report: &Report, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => emit_json(report).into_bytes(),
        ReportFormat::Csv => emit_csv(report).into_bytes(),
    }
}

/// Reads back a JSON report produced by [`emit_report`].
pub fn parse_report(bytes: &[u8]) -> Result<Report, SpectrumError> {
    serde_json::from_slice(bytes).map_err(|e| {
        if e.is_data() {
            SpectrumError::Schema {
                message: e.to_string(),
            }
        } else {
            SpectrumError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })
}

fn push_opt_f64(out: &mut String, v: Option<f64>) {
    match v {
        Some(v) => out.push_str(&fmt_f64(v)),
        None => out.push_str("null"),
    }
}

/// One certificate as a standalone JSON document, same conventions as the
/// report emitter.
pub fn certificate_to_json(cert: &Certificate) -> String {
    let mut out = certificate_json(cert, "");
    out.push('\n');
    out
}

pub(crate) fn certificate_json(cert: &Certificate, indent: &str) -> String {
    let mut out = String::new();
    let pad = |n: usize| " ".repeat(n);
    out.push_str("{\n");
    out.push_str(&format!(
        "{indent}{}\"input\": {{\"ell\": {}, \"theta\": {}}},\n",
        pad(2),
        fmt_f64(cert.input.ell()),
        fmt_f64(cert.input.theta())
    ));
    out.push_str(&format!(
        "{indent}{}\"genus\": {},\n",
        pad(2),
        cert.genus.get()
    ));
    match &cert.tube {
        Some(t) => out.push_str(&format!(
            "{indent}{}\"tube\": {{\"kappa\": {}, \"radius_r0\": {}, \
             \"meridian_disk_area\": {}, \"boundary_area\": {}}},\n",
            pad(2),
            fmt_f64(t.kappa),
            fmt_f64(t.radius_r0),
            fmt_f64(t.meridian_disk_area),
            fmt_f64(t.boundary_area)
        )),
        None => out.push_str(&format!("{indent}{}\"tube\": null,\n", pad(2))),
    }
    out.push_str(&format!("{indent}{}\"annulus_area\": ", pad(2)));
    push_opt_f64(&mut out, cert.annulus_area);
    out.push_str(",\n");
    out.push_str(&format!("{indent}{}\"conditions\": [\n", pad(2)));
    for (i, c) in cert.conditions.iter().enumerate() {
        out.push_str(&format!(
            "{indent}{}{{\"id\": \"{}\", \"holds\": {}, \"lhs\": {}, \"rhs\": {}, \"margin\": {}}}{}\n",
            pad(4),
            c.id.as_str(),
            c.holds,
            fmt_f64(c.lhs),
            fmt_f64(c.rhs),
            fmt_f64(c.margin),
            if i + 1 < cert.conditions.len() { "," } else { "" }
        ));
    }
    out.push_str(&format!("{indent}{}],\n", pad(2)));
    out.push_str(&format!(
        "{indent}{}\"theorem1_ok\": {},\n",
        pad(2),
        cert.theorem1_ok
    ));
    out.push_str(&format!(
        "{indent}{}\"theorem2_ok\": {},\n",
        pad(2),
        cert.theorem2_ok
    ));
    out.push_str(&format!(
        "{indent}{}\"area_comparison_ok\": {},\n",
        pad(2),
        cert.area_comparison_ok
    ));
    out.push_str(&format!(
        "{indent}{}\"separation_ok\": {},\n",
        pad(2),
        cert.separation_ok
    ));
    out.push_str(&format!(
        "{indent}{}\"a_parameter\": {},\n",
        pad(2),
        fmt_f64(cert.a_parameter)
    ));
    out.push_str(&format!(
        "{indent}{}\"unstable_helicoid\": {},\n",
        pad(2),
        cert.unstable_helicoid
    ));
    out.push_str(&format!("{indent}{}\"paper_conclusions\": [", pad(2)));
    for (i, s) in cert.paper_conclusions.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&fmt_str(s));
    }
    out.push_str("]\n");
    out.push_str(&format!("{indent}}}"));
    out
}

fn emit_json(report: &Report) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"tool_version\": {},\n",
        fmt_str(&report.tool_version)
    ));

    let c = &report.constants;
    out.push_str("  \"constants\": {\n");
    out.push_str(&format!("    \"eps0\": {},\n", fmt_f64(c.eps0)));
    out.push_str(&format!("    \"eps1\": {},\n", fmt_f64(c.eps1)));
    out.push_str(&format!("    \"eps2\": {},\n", fmt_f64(c.eps2)));
    out.push_str(&format!(
        "    \"ratio_threshold\": {},\n",
        fmt_f64(c.ratio_threshold)
    ));
    out.push_str(&format!(
        "    \"mori_threshold\": {},\n",
        fmt_f64(c.mori_threshold)
    ));
    out.push_str(&format!("    \"b\": {},\n", fmt_f64(c.b)));
    out.push_str("    \"eps_otal\": [");
    for (i, t) in c.eps_otal.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!(
            "{{\"genus\": {}, \"eps_otal\": {}}}",
            t.genus,
            fmt_f64(t.eps_otal)
        ));
    }
    out.push_str("]\n  },\n");

    let s = &report.summary;
    out.push_str(&format!(
        "  \"summary\": {{\"records\": {}, \"curves\": {}, \"theorem1_passes\": {}, \
         \"theorem2_passes\": {}}},\n",
        s.records, s.curves, s.theorem1_passes, s.theorem2_passes
    ));

    out.push_str("  \"records\": [");
    for (ri, r) in report.records.iter().enumerate() {
        if ri > 0 {
            out.push(',');
        }
        out.push_str("\n    {\n      \"manifold\": {\n");
        out.push_str(&format!(
            "        \"name\": {},\n",
            fmt_str(&r.manifold.name)
        ));
        out.push_str(&format!("        \"genus\": {},\n", r.manifold.genus.get()));
        out.push_str("        \"volume\": ");
        push_opt_f64(&mut out, r.manifold.volume);
        out.push_str(",\n        \"curves\": [");
        for (ci, cl) in r.manifold.curves.iter().enumerate() {
            if ci > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!(
                "{{\"ell\": {}, \"theta\": {}}}",
                fmt_f64(cl.ell()),
                fmt_f64(cl.theta())
            ));
        }
        out.push_str("],\n        \"source\": ");
        match &r.manifold.source {
            Some(src) => out.push_str(&fmt_str(src)),
            None => out.push_str("null"),
        }
        out.push_str("\n      },\n      \"certificates\": [\n        ");
        for (ci, cert) in r.certificates.iter().enumerate() {
            if ci > 0 {
                out.push_str(",\n        ");
            }
            out.push_str(&certificate_json(cert, "        "));
        }
        out.push_str("\n      ]\n    }");
    }
    if report.records.is_empty() {
        out.push_str("]\n}\n");
    } else {
        out.push_str("\n  ]\n}\n");
    }
    out
}

/// RFC 4180 quoting: fields containing commas, quotes, or newlines are
/// wrapped in double quotes with inner quotes doubled.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_csv(report: &Report) -> String {
    let mut out = String::from(
        "name,genus,volume,ell,theta,ratio,r0,boundary_area,annulus_area,\
         theorem1_ok,theorem2_ok,min_margin\n",
    );
    for r in &report.records {
        for cert in &r.certificates {
            let ratio = cert
                .condition(ConditionId::RatioAboveThreshold)
                .map(|c| c.lhs)
                .unwrap_or(f64::NAN);
            out.push_str(&csv_field(&r.manifold.name));
            out.push(',');
            out.push_str(&r.manifold.genus.get().to_string());
            out.push(',');
            if let Some(v) = r.manifold.volume {
                out.push_str(&fmt_f64(v));
            }
            out.push(',');
            out.push_str(&fmt_f64(cert.input.ell()));
            out.push(',');
            out.push_str(&fmt_f64(cert.input.theta()));
            out.push(',');
            out.push_str(&fmt_f64(ratio));
            out.push(',');
            if let Some(t) = &cert.tube {
                out.push_str(&fmt_f64(t.radius_r0));
                out.push(',');
                out.push_str(&fmt_f64(t.boundary_area));
                out.push(',');
                if let Some(a) = cert.annulus_area {
                    out.push_str(&fmt_f64(a));
                }
            } else {
                out.push_str(",,");
            }
            out.push(',');
            out.push_str(if cert.theorem1_ok { "true" } else { "false" });
            out.push(',');
            out.push_str(if cert.theorem2_ok { "true" } else { "false" });
            out.push(',');
            out.push_str(&fmt_f64(cert.min_margin()));
            out.push('\n');
        }
    }
    out
}
