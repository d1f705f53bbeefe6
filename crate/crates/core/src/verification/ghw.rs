use serde::Serialize;

use crate::code::AvailabilityCode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};
use crate::weights::for_each_codeword;

/// Largest dual dimension enumerated.
pub const DUAL_DIMENSION_LIMIT: usize = 20;
/// Largest subspace dimension searched.
pub const MAX_GHW_ORDER: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GhwResult {
    pub i: usize,
    pub d_i_dual: usize,
}

fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

fn union_weight(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x | y).count_ones() as usize)
        .sum()
}

/// Union support of `i` independent rows of `h` picked greedily; an upper
/// bound on `d_i` of the row space.
fn greedy_upper_bound(h: &BitMatrix, i: usize) -> usize {
    let mut union = vec![0u64; h.stride()];
    let mut picked = BitMatrix::zeros(0, h.cols());
    for _ in 0..i {
        let best = (0..h.rows())
            .filter(|&row| {
                let mut trial = picked.clone();
                trial.push_row(h.row(row));
                trial.rank() == trial.rows()
            })
            .min_by_key(|&row| union_weight(&union, h.row(row)));
        match best {
            Some(row) => {
                or_into(&mut union, h.row(row));
                picked.push_row(h.row(row));
            }
            None => return h.cols(),
        }
    }
    gf2::weight(&union)
}

/// Exact `d_i` of the dual code: the smallest support of an `i`-dimensional
/// subspace of the row space of `H`.
///
/// Every vector of an optimal subspace has weight at most its support size,
/// so only dual codewords lighter than the best known value are candidates.
/// A depth-first search over independent candidate tuples, pruned on the
/// running union size, then finds the optimum.
pub fn dual_ghw_bruteforce(code: &AvailabilityCode, i: usize) -> Result<GhwResult> {
    if i == 0 || i > MAX_GHW_ORDER {
        return Err(Error::InvalidParameter(format!(
            "GHW order i={i} must lie in 1..={MAX_GHW_ORDER}"
        )));
    }
    let basis = code.h().row_space_basis();
    let dim = basis.rows();
    if dim > DUAL_DIMENSION_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "dual dimension {dim} exceeds the GHW limit {DUAL_DIMENSION_LIMIT}"
        )));
    }
    if i > dim {
        return Err(Error::InvalidParameter(format!(
            "dual code has dimension {dim} < i={i}"
        )));
    }
    let mut best = greedy_upper_bound(&basis, i).min(greedy_upper_bound(code.h(), i));

    let mut candidates: Vec<(usize, Vec<u64>)> = Vec::new();
    for_each_codeword(&basis, DUAL_DIMENSION_LIMIT, |w| {
        let wt = gf2::weight(w);
        if wt > 0 && wt < best {
            candidates.push((wt, w.to_vec()));
        }
    })?;
    candidates.sort();

    struct Search<'a> {
        candidates: &'a [(usize, Vec<u64>)],
        i: usize,
        best: usize,
    }
    impl Search<'_> {
        fn run(&mut self, from: usize, span: &mut Vec<Vec<u64>>, union: &[u64], depth: usize) {
            if depth == self.i {
                self.best = self.best.min(gf2::weight(union));
                return;
            }
            for x in from..self.candidates.len() {
                let (wt, v) = &self.candidates[x];
                if *wt >= self.best {
                    break;
                }
                if union_weight(union, v) >= self.best || span.iter().any(|s| s == v) {
                    continue;
                }
                let mut next_union = union.to_vec();
                or_into(&mut next_union, v);
                let old = span.len();
                for k in 0..old {
                    let mut sum = span[k].clone();
                    gf2::xor_into(&mut sum, v);
                    span.push(sum);
                }
                span.push(v.clone());
                self.run(x + 1, span, &next_union, depth + 1);
                span.truncate(old);
            }
        }
    }
    let mut search = Search {
        candidates: &candidates,
        i,
        best,
    };
    search.run(0, &mut Vec::new(), &vec![0u64; basis.stride()], 0);
    best = search.best;
    Ok(GhwResult { i, d_i_dual: best })
}
