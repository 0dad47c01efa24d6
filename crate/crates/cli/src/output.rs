//! Report rendering. The TSV writers are byte-stable: identical inputs
//! produce identical output, with no locale or platform variation.

use mirror_count_core::cone::Ray;
use mirror_count_core::matrix::RatMatrix;
use mirror_count_core::rat::{format_rat, Rat};

/// Machine-readable prediction listing: two comment lines for the
/// run parameters, then one `d<TAB>count` line per degree.
pub fn predictions_tsv(kappa: &Rat, truncation: usize, counts: &[(u32, Rat)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# kappa = {}\n", format_rat(kappa)));
    out.push_str(&format!("# truncation = {truncation}\n"));
    for (d, n) in counts {
        out.push_str(&format!("{d}\t{}\n", format_rat(n)));
    }
    out
}

pub fn predictions_pretty(
    name: &str,
    kappa: &Rat,
    truncation: usize,
    counts: &[(u32, Rat)],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("model {name}: kappa = {}, truncation = {truncation}\n", format_rat(kappa)));
    if counts.is_empty() {
        out.push_str("no instanton corrections\n");
        return out;
    }
    let width = counts.iter().map(|(d, _)| d.to_string().len()).max().unwrap_or(1);
    for (d, n) in counts {
        out.push_str(&format!("  n_{d:<width$} = {}\n", format_rat(n)));
    }
    out
}

/// Ray listing `x y` per line, optionally with the slope appended.
pub fn rays_listing(rays: &[Ray], slopes: bool) -> String {
    let mut out = String::new();
    for r in rays {
        if slopes {
            out.push_str(&format!("{} {}\t{}\n", r.x(), r.y(), r.slope_string()));
        } else {
            out.push_str(&format!("{} {}\n", r.x(), r.y()));
        }
    }
    out
}

pub fn matrix_lines(m: &RatMatrix, indent: &str) -> String {
    let mut cells = vec![Vec::with_capacity(m.cols()); m.rows()];
    let mut widths = vec![0usize; m.cols()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = format_rat(m.at(i, j));
            widths[j] = widths[j].max(s.len());
            cells[i].push(s);
        }
    }
    let mut out = String::new();
    for row in &cells {
        out.push_str(indent);
        out.push('[');
        for (j, s) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{s:>width$}", width = widths[j]));
        }
        out.push_str("]\n");
    }
    out
}
