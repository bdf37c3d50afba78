use std::fmt::Write as _;

use netphonon::sweep::{Cell, SweepRow};

/// Formats with 12 significant digits, switching to scientific notation
/// outside `[1e-6, 1e6)`.
pub fn number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if !(1e-6..1e6).contains(&a) {
        let s = format!("{v:.11e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent present");
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let magnitude = a.log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding can carry into a new leading digit; the extra decimal is harmless
    trim_zeros(&s).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn cell(c: Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Real(v) => number(v),
        Cell::Flag(b) => b.to_string(),
    }
}

pub fn csv<R: SweepRow>(rows: &[R]) -> String {
    let mut out = R::COLUMNS.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.cells().into_iter().map(cell).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}
