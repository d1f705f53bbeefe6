//! Greedy covering of the parity checks of a strict-availability code.
//!
//! Starting from one coordinate, the procedure repeatedly picks the
//! coordinate that lies in the most already-collected checks while still
//! having an uncollected check, and collects every check through it. Each
//! step collects a check avoiding all earlier picks, so the picked set `S`
//! indexes independent checks and `k <= n - |S|`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::AvailabilityCode;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Lowest coordinate index among the maximisers.
    Deterministic,
    /// Uniform choice among the maximisers from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    /// Picked coordinates in order (0-based).
    pub sigma: Vec<usize>,
    /// Number of checks collected at each step.
    pub g: Vec<usize>,
    /// `n - |S|`, an upper bound on the dimension.
    pub final_bound: usize,
    /// The Tanner graph had more than one component reachable from the
    /// checks, so the search restarted at least once.
    pub disconnected: bool,
    /// Step indices (0-based) at which a new component was entered.
    pub component_starts: Vec<usize>,
}

pub fn greedy_cover(
    code: &AvailabilityCode,
    seed: usize,
    tie_break: TieBreak,
) -> Result<GreedyTrace> {
    let h = code.h();
    let n = h.cols();
    if seed >= n {
        return Err(Error::InvalidParameter(format!(
            "seed coordinate {seed} out of range for n={n}"
        )));
    }
    let through: Vec<Vec<usize>> = (0..n).map(|j| h.rows_through(j)).collect();
    let supports: Vec<Vec<usize>> = (0..h.rows()).map(|i| h.row_support(i)).collect();
    let coverable = supports.iter().filter(|s| !s.is_empty()).count();

    let mut rng = match tie_break {
        TieBreak::Random(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        TieBreak::Deterministic => None,
    };
    let mut in_s = vec![false; n];
    let mut collected = vec![false; h.rows()];
    // covered[j] = number of collected checks through j.
    let mut covered = vec![0usize; n];
    let mut total = 0;
    let mut trace = GreedyTrace {
        sigma: Vec::new(),
        g: Vec::new(),
        final_bound: n,
        disconnected: false,
        component_starts: vec![0],
    };

    let mut pick =
        |j: usize, in_s: &mut Vec<bool>, trace: &mut GreedyTrace, covered: &mut Vec<usize>| {
            in_s[j] = true;
            let mut added = 0;
            for &row in &through[j] {
                if !collected[row] {
                    collected[row] = true;
                    added += 1;
                    for &x in &supports[row] {
                        covered[x] += 1;
                    }
                }
            }
            trace.sigma.push(j);
            trace.g.push(added);
            added
        };

    if through[seed].is_empty() {
        return Err(Error::InvalidParameter(format!(
            "seed coordinate {seed} lies in no parity check"
        )));
    }
    total += pick(seed, &mut in_s, &mut trace, &mut covered);

    while total < coverable {
        // Score |D_j| for coordinates that still have an uncollected check.
        let open = |j: usize| !in_s[j] && covered[j] < through[j].len();
        let best = (0..n).filter(|&j| open(j)).map(|j| covered[j]).max();
        let Some(best) = best else { break };
        let mut ties: Vec<usize> = (0..n).filter(|&j| open(j) && covered[j] == best).collect();
        if best == 0 {
            trace.disconnected = true;
            trace.component_starts.push(trace.sigma.len());
        }
        let j = match rng.as_mut() {
            Some(rng) => {
                ties.shuffle(rng);
                ties[0]
            }
            None => ties[0],
        };
        total += pick(j, &mut in_s, &mut trace, &mut covered);
    }
    trace.final_bound = n - trace.sigma.len();
    Ok(trace)
}
