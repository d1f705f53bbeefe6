use serde::Serialize;

use crate::gf2::BitMatrix;

/// Per-column result of the repair-group search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvailabilityReport {
    pub pass: bool,
    pub r: usize,
    pub t: usize,
    pub column_ok: Vec<bool>,
    /// For each satisfied column, `t` rows of weight at most `r+1` that
    /// pairwise meet only in that column.
    pub witnesses: Vec<Option<Vec<usize>>>,
    pub failing_columns: Vec<usize>,
}

/// Searches every column for `t` rows through it of weight at most `r+1`
/// whose supports pairwise intersect exactly in that column.
pub fn check_availability(h: &BitMatrix, r: usize, t: usize) -> AvailabilityReport {
    let mut column_ok = Vec::with_capacity(h.cols());
    let mut witnesses = Vec::with_capacity(h.cols());
    for j in 0..h.cols() {
        let mut candidates: Vec<usize> = h
            .rows_through(j)
            .into_iter()
            .filter(|&i| h.row_weight(i) <= r + 1)
            .collect();
        // Identical rows can never both be used.
        candidates.sort_by(|&a, &b| h.row(a).cmp(h.row(b)).then(a.cmp(&b)));
        candidates.dedup_by(|a, b| h.row(*a) == h.row(*b));
        candidates.sort_unstable();
        let found = find_group(h, &candidates, t);
        column_ok.push(found.is_some());
        witnesses.push(found);
    }
    let failing_columns: Vec<usize> = (0..h.cols()).filter(|&j| !column_ok[j]).collect();
    AvailabilityReport {
        pass: failing_columns.is_empty(),
        r,
        t,
        column_ok,
        witnesses,
        failing_columns,
    }
}

fn find_group(h: &BitMatrix, candidates: &[usize], t: usize) -> Option<Vec<usize>> {
    let c = candidates.len();
    // compatible[a][b]: the two rows share only the column under test.
    let compatible: Vec<Vec<bool>> = (0..c)
        .map(|a| {
            (0..c)
                .map(|b| a != b && h.row_intersection(candidates[a], candidates[b]) == 1)
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(t);
    fn extend(compatible: &[Vec<bool>], from: usize, t: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == t {
            return true;
        }
        let c = compatible.len();
        if c - from < t - chosen.len() {
            return false;
        }
        for x in from..c {
            if chosen.iter().all(|&y| compatible[x][y]) {
                chosen.push(x);
                if extend(compatible, x + 1, t, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(&compatible, 0, t, &mut chosen)
        .then(|| chosen.into_iter().map(|x| candidates[x]).collect())
}
