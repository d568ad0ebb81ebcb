use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use discreta::{Error, JordanDecomposition, Result};

const CELL: i64 = 10;

/// Renders the bounding box of the circuit, one square per lattice cell:
/// circuit points black, interior gray, everything else outlined only.
/// Rows run top (largest y) to bottom, cells left to right.
pub fn render(d: &JordanDecomposition) -> String {
    let min_x = d.circuit.iter().map(|p| p.x).min().unwrap_or(0);
    let max_x = d.circuit.iter().map(|p| p.x).max().unwrap_or(0);
    let min_y = d.circuit.iter().map(|p| p.y).min().unwrap_or(0);
    let max_y = d.circuit.iter().map(|p| p.y).max().unwrap_or(0);
    let (w, h) = ((max_x - min_x + 1) * CELL, (max_y - min_y + 1) * CELL);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    for y in (min_y..=max_y).rev() {
        for x in min_x..=max_x {
            let p = (x, y).into();
            let fill = if d.circuit.contains(&p) {
                "black"
            } else if d.interior.contains(&p) {
                "gray"
            } else {
                "none"
            };
            let _ = writeln!(
                out,
                r##"  <rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#999999" data-cell="{x},{y}"/>"##,
                (x - min_x) * CELL,
                (max_y - y) * CELL,
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit(d: &JordanDecomposition, path: &Path) -> Result<()> {
    fs::write(path, render(d)).map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}
