//! Minimal JSON emission helpers.
//!
//! Reports are emitted by hand so that key order is fixed and every real is
//! printed with 17 significant digits, which round-trips binary64 exactly.
//! Parsing goes through serde_json as usual.

/// Formats a finite f64 with 17 significant digits.
pub(crate) fn fmt_f64(v: f64) -> String {
    debug_assert!(v.is_finite());
    format!("{v:.16e}")
}

/// Escapes a string for inclusion in a JSON document, including the quotes.
pub(crate) fn fmt_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
