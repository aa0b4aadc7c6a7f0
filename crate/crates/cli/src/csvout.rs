//! Deterministic CSV emission.
//!
//! Floats are printed with 12 significant digits in scientific notation so
//! identical configurations produce byte-identical files. Each file starts
//! with a `# config-hash:` provenance comment followed by the header row.

use std::fmt::Write as _;

/// One CSV cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }
}

/// 12 significant digits, scientific, `.` decimal separator.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{v:.11e}")
    }
}

/// Render a complete CSV document.
pub fn render(config_hash: &str, header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# config-hash: {config_hash}");
    let _ = writeln!(out, "{}", header.join(","));
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let rendered: Vec<String> = row.iter().map(Cell::render).collect();
        let _ = writeln!(out, "{}", rendered.join(","));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width_significant() {
        assert_eq!(format_float(0.05794353490281014), "5.79435349028e-2");
        assert_eq!(format_float(1.0), "1.00000000000e0");
        assert_eq!(format_float(-2.5e-13), "-2.50000000000e-13");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn document_layout() {
        let doc = render("abcd", &["a", "b"], &[vec![Cell::Int(1), Cell::Bool(true)]]);
        let lines: Vec<&str> = doc.lines().collect();
        assert_eq!(lines[0], "# config-hash: abcd");
        assert_eq!(lines[1], "a,b");
        assert_eq!(lines[2], "1,true");
    }
}
