use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial_i, krawtchouk_unchecked};
use crate::error::{Error, Result};
use crate::lp::simplex::Sense;

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<BigRational>,
    pub sense: Sense,
    pub rhs: BigRational,
}

impl Constraint {
    /// Whether `x` satisfies the row exactly.
    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// Linear program over the weight distribution `A_{t+1}, ..., A_n` of a
/// code with locality `r` and `t` disjoint repair groups per coordinate.
/// Nonnegativity of the variables is implicit. The objective is
/// `1 + sum A_i`, the number of codewords.
#[derive(Clone, Debug, PartialEq)]
pub struct LpModel {
    pub q: u64,
    pub n: u64,
    pub r: u64,
    pub t: u64,
    /// Number of parity checks `nt/(r+1)`.
    pub m: u64,
    pub strengthened: bool,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModelCounts {
    pub variables: usize,
    pub dual_rows: usize,
    pub structural_rows: usize,
    pub upper_rows: usize,
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

impl LpModel {
    pub fn num_vars(&self) -> usize {
        (self.n - self.t) as usize
    }

    /// Weight carried by variable `v`.
    pub fn weight_of(&self, v: usize) -> u64 {
        self.t + 1 + v as u64
    }

    pub fn constraint(&self, label: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.label == label)
    }

    pub fn counts(&self) -> ModelCounts {
        let mut c = ModelCounts {
            variables: self.num_vars(),
            ..Default::default()
        };
        for row in &self.constraints {
            if row.label.starts_with("dual_") {
                c.dual_rows += 1;
            } else if row.label.starts_with("upper_") {
                c.upper_rows += 1;
            } else {
                c.structural_rows += 1;
            }
        }
        c
    }

    /// Projects a full distribution `A_0..A_n` onto the model variables,
    /// rejecting nonzero weight in `1..=t`.
    pub fn point_from_distribution(&self, a: &[BigInt]) -> Result<Vec<BigRational>> {
        if a.len() != self.n as usize + 1 {
            return Err(Error::InvalidParameter(format!(
                "distribution has {} entries, expected {}",
                a.len(),
                self.n + 1
            )));
        }
        if let Some(i) = (1..=self.t as usize).find(|&i| !a[i].is_zero()) {
            return Err(Error::InvalidDistribution(format!(
                "A_{i} = {} but weights 1..={} must be absent",
                a[i], self.t
            )));
        }
        Ok(a[self.t as usize + 1..].iter().cloned().map(int).collect())
    }

    /// Labels of the rows violated by `x` (nonnegativity included).
    pub fn violations(&self, x: &[BigRational]) -> Vec<String> {
        let mut out: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(i, _)| format!("nonneg_{}", self.weight_of(i)))
            .collect();
        out.extend(
            self.constraints
                .iter()
                .filter(|c| !c.holds(x))
                .map(|c| c.label.clone()),
        );
        out
    }
}

/// Assembles the model.
///
/// Rows, with `K_j` the Krawtchouk polynomials and `m = nt/(r+1)`:
/// * `dual_j` for `j = 0..=n`: `sum A_i K_j(i) >= -(q-1)^j C(n,j)`, i.e. the
///   dual distribution is nonnegative.
/// * `local_checks`: the dual has at least `m` words of weight `r+1`,
///   written in terms of `A`.
/// * `pair_sums_2r` (only when `r > 2`): sums of two checks meeting in one
///   coordinate give `n C(t,2)` distinct dual words of weight `2r`.
/// * `pair_sums_2r2` (only when `r >= 2`): sums of two disjoint checks give
///   `C(m,2) - n C(t,2)` distinct dual words of weight `2r+2`.
/// * `upper_i` with `strengthen`: `A_i <= (q-1)^i C(n,i)`.
pub fn build_lp(q: u64, n: u64, r: u64, t: u64, strengthen: bool) -> Result<LpModel> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q={q} must be at least 2")));
    }
    if r == 0 || t == 0 {
        return Err(Error::InvalidParameter("r and t must be positive".into()));
    }
    // n = t is allowed: no weight survives and the model has no variables.
    if n < t {
        return Err(Error::InvalidParameter(format!(
            "n={n} must be at least t={t}"
        )));
    }
    if n > 512 {
        return Err(Error::InvalidParameter(format!(
            "n={n} exceeds the supported length 512"
        )));
    }
    if !(n * t).is_multiple_of(r + 1) {
        return Err(Error::Divisibility(format!(
            "r+1={} does not divide nt={}",
            r + 1,
            n * t
        )));
    }
    let m = n * t / (r + 1);
    let weights: Vec<u64> = (t + 1..=n).collect();
    let qm1 = BigInt::from(q - 1);
    let ball = |j: u64| -> BigInt { num_traits::pow(qm1.clone(), j as usize) * binomial_i(n, j) };
    let kraw = |j: u64| -> Vec<BigInt> {
        weights
            .iter()
            .map(|&i| krawtchouk_unchecked(q, n, j, i))
            .collect()
    };

    let mut constraints = Vec::new();
    for j in 0..=n {
        constraints.push(Constraint {
            label: format!("dual_{j}"),
            coeffs: kraw(j).into_iter().map(int).collect(),
            sense: Sense::Ge,
            rhs: int(-ball(j)),
        });
    }

    // |C| B_w = sum_i A_i K_w(i) with |C| = 1 + sum A_i, so B_w >= c becomes
    // sum A_i (c - K_w(i)) <= K_w(0) - c.
    let at_least = |label: &str, w: u64, c: BigInt| Constraint {
        label: label.to_string(),
        coeffs: kraw(w).into_iter().map(|k| int(&c - k)).collect(),
        sense: Sense::Le,
        rhs: int(ball(w) - &c),
    };
    let m_big = BigInt::from(m);
    let meeting_pairs = BigInt::from(n) * binomial_i(t, 2);
    constraints.push(at_least("local_checks", r + 1, m_big.clone()));
    if r > 2 {
        constraints.push(at_least("pair_sums_2r", 2 * r, meeting_pairs.clone()));
    }
    if r >= 2 {
        let disjoint_pairs = binomial_i(m, 2) - &meeting_pairs;
        constraints.push(at_least("pair_sums_2r2", 2 * r + 2, disjoint_pairs));
    }

    if strengthen {
        for (v, &i) in weights.iter().enumerate() {
            let mut coeffs = vec![BigRational::zero(); weights.len()];
            coeffs[v] = int(1);
            constraints.push(Constraint {
                label: format!("upper_{i}"),
                coeffs,
                sense: Sense::Le,
                rhs: int(ball(i)),
            });
        }
    }

    Ok(LpModel {
        q,
        n,
        r,
        t,
        m,
        strengthened: strengthen,
        constraints,
    })
}
