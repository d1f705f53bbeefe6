use std::collections::HashSet;

use serde::Serialize;

use crate::gf2::BitMatrix;

/// Outcome of checking the strict-availability conditions on a parity-check
/// matrix. Violations are reported as 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictCheckReport {
    pub pass: bool,
    pub rows: usize,
    pub cols: usize,
    pub r: usize,
    pub t: usize,
    /// Rows whose weight differs from `r+1`.
    pub row_weight_violations: Vec<usize>,
    /// Columns whose weight differs from `t`.
    pub column_weight_violations: Vec<usize>,
    /// Row pairs sharing two or more coordinates.
    pub intersection_violations: Vec<(usize, usize)>,
    /// `m(r+1) = nt`.
    pub balance_ok: bool,
}

pub fn check_strict_availability(h: &BitMatrix, r: usize, t: usize) -> StrictCheckReport {
    let row_weight_violations: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row_weight(i) != r + 1)
        .collect();
    let column_weight_violations: Vec<usize> = h
        .column_weights()
        .iter()
        .enumerate()
        .filter(|&(_, &w)| w != t)
        .map(|(j, _)| j)
        .collect();

    // Two rows meet twice exactly when the same pair of rows passes through
    // two different columns.
    let columns: Vec<Vec<usize>> = {
        let mut c = vec![Vec::new(); h.cols()];
        for i in 0..h.rows() {
            for j in h.row_support(i) {
                c[j].push(i);
            }
        }
        c
    };
    let mut seen = HashSet::new();
    let mut flagged = HashSet::new();
    for through in &columns {
        for (x, &a) in through.iter().enumerate() {
            for &b in &through[x + 1..] {
                if !seen.insert((a, b)) {
                    flagged.insert((a, b));
                }
            }
        }
    }
    let mut intersection_violations: Vec<(usize, usize)> = flagged.into_iter().collect();
    intersection_violations.sort_unstable();

    let balance_ok = h.rows() * (r + 1) == h.cols() * t;
    let pass = balance_ok
        && row_weight_violations.is_empty()
        && column_weight_violations.is_empty()
        && intersection_violations.is_empty();
    StrictCheckReport {
        pass,
        rows: h.rows(),
        cols: h.cols(),
        r,
        t,
        row_weight_violations,
        column_weight_violations,
        intersection_violations,
        balance_ok,
    }
}
