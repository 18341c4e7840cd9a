//! Text rendering of Tor tables: columns `p` ascending to 0, rows `q`
//! descending, `q` in a right gutter, a rule, then the column labels.

use toric_tor::{Coefficients, GradedPiece, TorTable};

/// `Z^2+Z_2`, `F_2^3`, `Q`, or `0`.
pub fn format_piece(k: Coefficients, piece: &GradedPiece) -> String {
    let mut parts = Vec::new();
    let name = k.to_string();
    match piece.free_rank {
        0 => {}
        1 => parts.push(name.clone()),
        r => parts.push(format!("{name}^{r}")),
    }
    // group equal torsion orders
    let mut i = 0;
    while i < piece.torsion.len() {
        let d = &piece.torsion[i];
        let mut j = i;
        while j < piece.torsion.len() && &piece.torsion[j] == d {
            j += 1;
        }
        let count = j - i;
        parts.push(if count == 1 { format!("{name}_{d}") } else { format!("{name}_{d}^{count}") });
        i = j;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

pub fn render_table(table: &TorTable) -> String {
    let p_min = table.entries.keys().map(|&(p, _)| p).min().unwrap_or(0).min(0);
    let q_max = table.entries.keys().map(|&(_, q)| q).max().unwrap_or(0).max(0);
    let columns: Vec<i64> = (p_min..=0).collect();
    let rows: Vec<i64> = (0..=q_max).rev().filter(|q| q % 2 == 0).collect();
    let cell = |p: i64, q: i64| table.entries.get(&(p, q)).map(|g| format_piece(table.coefficients, g)).unwrap_or_default();
    let widths: Vec<usize> = columns
        .iter()
        .map(|&p| rows.iter().map(|&q| cell(p, q).len()).chain([p.to_string().len()]).max().unwrap_or(1))
        .collect();
    let gutter = q_max.to_string().len();
    let line = |cells: Vec<String>| {
        cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = String::new();
    for &q in &rows {
        let body = line(columns.iter().map(|&p| cell(p, q)).collect());
        out.push_str(&format!("{body} | {q:>gutter$}\n"));
    }
    let body_width: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    out.push_str(&format!("{}-+-{}\n", "-".repeat(body_width), "-".repeat(gutter)));
    out.push_str(line(columns.iter().map(|p| p.to_string()).collect()).trim_end());
    out.push('\n');
    out
}
