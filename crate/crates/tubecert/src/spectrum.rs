//! Length-spectrum ingestion: the native record format, the one-line complex
//! length grammar used by spectrum tools, and the built-in example dataset.

use once_cell::sync::Lazy;
use regex::Regex;
use serde::Deserialize;

use crate::error::SpectrumError;
use crate::geometry::{ComplexLength, Genus};
use crate::jsonfmt::{fmt_f64, fmt_str};

/// One manifold's worth of spectrum data.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SpectrumRecord {
    pub name: String,
    pub genus: Genus,
    /// Hyperbolic volume, informational only (used to identify manifolds).
    pub volume: Option<f64>,
    pub curves: Vec<ComplexLength>,
    /// Free-form provenance (tool, monodromy word, spectrum cutoff).
    pub source: Option<String>,
}

#[derive(Deserialize)]
struct RawRecord {
    name: String,
    genus: i64,
    #[serde(default)]
    volume: Option<f64>,
    curves: Vec<RawCurve>,
    #[serde(default)]
    source: Option<String>,
}

#[derive(Deserialize)]
struct RawCurve {
    ell: f64,
    theta: f64,
}

fn classify_json_error(e: serde_json::Error) -> SpectrumError {
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
}

/// Parses the native spectrum format: a UTF-8 JSON array of records with
/// required fields `name`, `genus`, `curves[].ell`, `curves[].theta` and
/// optional `volume`, `source`. Twist angles are normalized on ingest.
pub fn parse_native(bytes: &[u8]) -> Result<Vec<SpectrumRecord>, SpectrumError> {
    let raw: Vec<RawRecord> = serde_json::from_slice(bytes).map_err(classify_json_error)?;
    let mut records = Vec::with_capacity(raw.len());
    for (index, r) in raw.into_iter().enumerate() {
        let context = format!("record {} ({:?})", index, r.name);
        let genus = u32::try_from(r.genus)
            .ok()
            .and_then(|v| Genus::new(v).ok())
            .ok_or_else(|| SpectrumError::Value {
                context: context.clone(),
                message: format!("genus {} is not an integer >= 2", r.genus),
            })?;
        if let Some(v) = r.volume {
            if !v.is_finite() || v < 0.0 {
                return Err(SpectrumError::Value {
                    context,
                    message: format!("volume {v} must be finite and >= 0"),
                });
            }
        }
        if r.curves.is_empty() {
            return Err(SpectrumError::Schema {
                message: format!("{context}: curves must be non-empty"),
            });
        }
        let mut curves = Vec::with_capacity(r.curves.len());
        for (ci, c) in r.curves.iter().enumerate() {
            let cl = ComplexLength::new(c.ell, c.theta).map_err(|e| SpectrumError::Value {
                context: format!("{context}, curve {ci}"),
                message: e.to_string(),
            })?;
            curves.push(cl);
        }
        records.push(SpectrumRecord {
            name: r.name,
            genus,
            volume: r.volume,
            curves,
            source: r.source,
        });
    }
    Ok(records)
}

/// Emits records in the native format with 17-digit reals, suitable for
/// exact re-ingestion by [`parse_native`].
pub fn emit_native(records: &[SpectrumRecord]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str("  {\n");
        out.push_str(&format!("    \"name\": {},\n", fmt_str(&r.name)));
        out.push_str(&format!("    \"genus\": {},\n", r.genus.get()));
        match r.volume {
            Some(v) => out.push_str(&format!("    \"volume\": {},\n", fmt_f64(v))),
            None => out.push_str("    \"volume\": null,\n"),
        }
        out.push_str("    \"curves\": [\n");
        for (ci, c) in r.curves.iter().enumerate() {
            out.push_str(&format!(
                "      {{\"ell\": {}, \"theta\": {}}}{}\n",
                fmt_f64(c.ell()),
                fmt_f64(c.theta()),
                if ci + 1 < r.curves.len() { "," } else { "" }
            ));
        }
        out.push_str("    ],\n");
        match &r.source {
            Some(s) => out.push_str(&format!("    \"source\": {}\n", fmt_str(s))),
            None => out.push_str("    \"source\": null\n"),
        }
        out.push_str(if i + 1 < records.len() {
            "  },\n"
        } else {
            "  }\n"
        });
    }
    out.push_str("]\n");
    out
}

static COMPLEX_LENGTH_LINE: Lazy<Regex> = Lazy::new(|| {
    // Optional multiplicity, REAL, sign, REAL, imaginary unit, trailing junk.
    Regex::new(
        r"(?x)^\s*
          (?:\d+\s+)?
          ([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
          \s*([+-])\s*
          ((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
          \s*\*?\s*
          (?:[iI]|sqrt\(\s*-\s*1\s*\))
          (?:[\s,;].*)?$",
    )
    .expect("static regex compiles")
});

/// Parses one complex-length line such as `0.0155 + 0.32441*I` or
/// `0.002362+0.140781i`, with an optional leading multiplicity and trailing
/// annotations. The twist angle is normalized into [-pi, pi).
pub fn parse_complex_length_line(line: &str) -> Result<ComplexLength, SpectrumError> {
    // Unicode minus and radical forms are folded before matching.
    let normalized = line
        .replace('\u{2212}', "-")
        .replace("\u{221a}-1", "sqrt(-1)");
    let caps = COMPLEX_LENGTH_LINE
        .captures(&normalized)
        .ok_or_else(|| SpectrumError::Parse {
            line: 1,
            column: 1,
            message: format!("not a complex length line: {line:?}"),
        })?;
    let ell: f64 = caps[1].parse().map_err(|_| SpectrumError::Parse {
        line: 1,
        column: 1,
        message: format!("unreadable real part in {line:?}"),
    })?;
    let magnitude: f64 = caps[3].parse().map_err(|_| SpectrumError::Parse {
        line: 1,
        column: 1,
        message: format!("unreadable twist in {line:?}"),
    })?;
    let theta = if &caps[2] == "-" {
        -magnitude
    } else {
        magnitude
    };
    ComplexLength::new(ell, theta).map_err(|e| SpectrumError::Value {
        context: format!("complex length line {line:?}"),
        message: e.to_string(),
    })
}

/// The six bundled example manifolds: surface bundles produced with Twister
/// and measured with SnapPy. Each record stores exactly the printed curve;
/// the spectrum position of that curve was not recorded by the tool run, as
/// noted in `source`.
pub fn builtin_fixtures() -> Vec<SpectrumRecord> {
    let fixture = |name: &str, genus, volume, ell, theta, word: &str| SpectrumRecord {
        name: name.to_string(),
        genus: Genus::new(genus).expect("fixture genus >= 2"),
        volume: Some(volume),
        curves: vec![ComplexLength::new(ell, theta).expect("fixture curve is valid")],
        source: Some(format!(
            "twister+snappy: bundle({word}), length_spectrum(0.5), printed entry \
             (position in spectrum unstated)"
        )),
    };
    vec![
        fixture(
            "s2_bundle_b8_cdea",
            2,
            7.991423345,
            0.1055786,
            0.84482566,
            "'b'*8 + 'cdea' on S_2",
        ),
        fixture(
            "s2_bundle_b20_cdea",
            2,
            8.13375,
            0.0155,
            0.32441,
            "'b'*20 + 'cdea' on S_2",
        ),
        fixture(
            "s2_bundle_b25_cdea",
            2,
            8.142725,
            0.0098,
            0.25794,
            "'b'*25 + 'cdea' on S_2",
        ),
        fixture(
            "s3_bundle_b1x25",
            3,
            10.4279753942543,
            0.00784,
            0.2561,
            "'b1'*25 + 'a0b2b3b4b5c' on S_3",
        ),
        fixture(
            "s3_bundle_b1x40",
            3,
            10.4355474,
            0.00302,
            0.158958,
            "'b1'*40 + 'a0b2b3b4b5c' on S_3",
        ),
        fixture(
            "s4_bundle_b1x45",
            4,
            11.511256,
            0.002362,
            0.140781,
            "'b1'*45 + 'a0b2b3b4b5b6b7c' on S_4",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixtures_have_expected_shape() {
        let f = builtin_fixtures();
        assert_eq!(f.len(), 6);
        let genera: Vec<u32> = f.iter().map(|r| r.genus.get()).collect();
        assert_eq!(genera, [2, 2, 2, 3, 3, 4]);
        assert_eq!(f[1].volume, Some(8.13375));
        assert_eq!(f[0].curves[0].ell(), 0.1055786);
        assert_eq!(f[0].curves[0].theta(), 0.84482566);
        assert_eq!(f[5].genus.get(), 4);
        for r in &f {
            assert!(r.source.as_deref().unwrap().contains("unstated"));
        }
    }

    #[test]
    fn native_round_trip_preserves_fixtures() {
        let records = builtin_fixtures();
        let text = emit_native(&records);
        let parsed = parse_native(text.as_bytes()).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn bundled_asset_matches_builtin_fixtures() {
        let bytes = include_bytes!("../assets/fixtures.json");
        let parsed = parse_native(bytes).unwrap();
        assert_eq!(parsed, builtin_fixtures());
    }

    #[test]
    fn parse_native_normalizes_theta() {
        let text = r#"[{"name":"m","genus":2,"curves":[{"ell":0.01,"theta":3.5}]}]"#;
        let records = parse_native(text.as_bytes()).unwrap();
        let theta = records[0].curves[0].theta();
        assert!((theta - (3.5 - 2.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert!((theta + 2.7832).abs() < 1e-4);
    }

    #[test]
    fn parse_native_error_taxonomy() {
        // Syntax error carries position.
        match parse_native(b"[{\"name\": }]") {
            Err(SpectrumError::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        // Missing required field.
        assert!(matches!(
            parse_native(br#"[{"name":"m","curves":[{"ell":0.01,"theta":0.0}]}]"#),
            Err(SpectrumError::Schema { .. })
        ));
        // Empty curve list.
        assert!(matches!(
            parse_native(br#"[{"name":"m","genus":2,"curves":[]}]"#),
            Err(SpectrumError::Schema { .. })
        ));
        // Genus below 2.
        assert!(matches!(
            parse_native(br#"[{"name":"m","genus":1,"curves":[{"ell":0.01,"theta":0.0}]}]"#),
            Err(SpectrumError::Value { .. })
        ));
        // Non-positive length.
        assert!(matches!(
            parse_native(br#"[{"name":"m","genus":2,"curves":[{"ell":-0.01,"theta":0.0}]}]"#),
            Err(SpectrumError::Value { .. })
        ));
        // Empty document is fine.
        assert_eq!(parse_native(b"[]").unwrap(), vec![]);
    }

    #[test]
    fn complex_length_line_examples() {
        let c = parse_complex_length_line("0.0155 + 0.32441*I").unwrap();
        assert_eq!((c.ell(), c.theta()), (0.0155, 0.32441));
        let c = parse_complex_length_line("0.002362+0.140781i").unwrap();
        assert_eq!((c.ell(), c.theta()), (0.002362, 0.140781));
        let c = parse_complex_length_line("0.01 - 0.25*I").unwrap();
        assert_eq!((c.ell(), c.theta()), (0.01, -0.25));
    }

    #[test]
    fn complex_length_line_variants() {
        let c = parse_complex_length_line("2 0.0155 + 0.32441*I  torus boundary").unwrap();
        assert_eq!((c.ell(), c.theta()), (0.0155, 0.32441));
        let c = parse_complex_length_line("0.0155 + 0.32441 sqrt(-1)").unwrap();
        assert_eq!(c.theta(), 0.32441);
        let c = parse_complex_length_line("0.0155 + 0.32441 \u{221a}\u{2212}1").unwrap();
        assert_eq!(c.theta(), 0.32441);
        let c = parse_complex_length_line("1e-2 + 2.5e-1 I").unwrap();
        assert_eq!((c.ell(), c.theta()), (0.01, 0.25));
    }

    #[test]
    fn complex_length_line_failures() {
        assert!(matches!(
            parse_complex_length_line("not a length"),
            Err(SpectrumError::Parse { .. })
        ));
        assert!(matches!(
            parse_complex_length_line("0.01 + 0.25"),
            Err(SpectrumError::Parse { .. })
        ));
        // Grammar matches but the value is out of domain.
        assert!(matches!(
            parse_complex_length_line("-0.01 + 0.25*I"),
            Err(SpectrumError::Value { .. })
        ));
        assert!(matches!(
            parse_complex_length_line("0 + 0.25*I"),
            Err(SpectrumError::Value { .. })
        ));
    }

    proptest! {
        #[test]
        fn prop_native_round_trip(
            ells in proptest::collection::vec(1e-9f64..10.0, 1..8),
            thetas in proptest::collection::vec(-3.0f64..3.0, 8),
            volume in proptest::option::of(0f64..100.0),
            name in "[a-zA-Z0-9_ \"\\\\]{0,12}",
        ) {
            let curves: Vec<ComplexLength> = ells
                .iter()
                .zip(&thetas)
                .map(|(&e, &t)| ComplexLength::new(e, t).unwrap())
                .collect();
            let record = SpectrumRecord {
                name,
                genus: Genus::new(2).unwrap(),
                volume,
                curves,
                source: None,
            };
            let parsed =
                parse_native(emit_native(std::slice::from_ref(&record)).as_bytes()).unwrap();
            prop_assert_eq!(parsed, vec![record]);
        }

        #[test]
        fn prop_line_parser_never_panics(line in "\\PC{0,60}") {
            let _ = parse_complex_length_line(&line);
        }
    }
}
