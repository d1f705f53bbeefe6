use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::rate::prime_value;
use super::{ceil_div, ceil_ratio, checked_param, floor_div};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ProfileVariant {
    Simple,
    MDelta { m: i64, delta: i64 },
    Linear,
}

/// Upper bounds `e_1..e_b` on the generalized Hamming weights of the dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhwBoundProfile {
    pub n: i64,
    pub r: i64,
    pub t: Option<i64>,
    #[serde(flatten)]
    pub variant: ProfileVariant,
    pub b: usize,
    pub e: Vec<i64>,
    /// Per-step reductions of the `(M, delta)` recursion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<i64>>,
}

impl GhwBoundProfile {
    /// `e_i` for 1-based `i`.
    pub fn e(&self, i: usize) -> i64 {
        self.e[i - 1]
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.e.windows(2).all(|w| w[0] <= w[1])
    }
}

/// `b = ceil(n(1 - R'(r,t)))`, `e_b = n`, and
/// `e_{i-1} = min(e_i, e_i - ceil(2 e_i / i) + r + 1)` down to `i = 2`.
pub fn ghw_profile_simple(n: u64, r: u64, t: u64) -> Result<GhwBoundProfile> {
    let (n, r, t) = (
        checked_param("n", n)?,
        checked_param("r", r)?,
        checked_param("t", t)?,
    );
    if r < 1 || t < 2 {
        return Err(Error::InvalidParameter(format!(
            "profile needs r >= 1 and t >= 2, got r={r}, t={t}"
        )));
    }
    if n < r + 1 {
        return Err(Error::InvalidParameter(format!(
            "profile needs n >= r+1, got n={n}, r={r}"
        )));
    }
    let b = ceil_ratio(
        &(BigRational::from_integer(n.into()) * (BigRational::one() - prime_value(r, t))),
    );
    let b = b.max(1) as usize;
    let mut e = vec![0i64; b];
    e[b - 1] = n;
    for i in (2..=b).rev() {
        let ei = e[i - 1];
        e[i - 2] = ei.min(ei - ceil_div(2 * ei, i as i64) + r + 1);
    }
    Ok(GhwBoundProfile {
        n,
        r,
        t: Some(t),
        variant: ProfileVariant::Simple,
        b,
        e,
        j: None,
    })
}

/// The `(M, delta)` recursion: `e_1 = r+1`, then `e_i = e_{i-1} + r + 1 - J_i`
/// with `J_i` chosen by the four-case rule on `F = n - e_{i-1}` and
/// `r + 1 - J_{i-1}`. Entries are clamped at `n`, and `J_i` at `r+1` so the
/// profile never decreases.
pub fn ghw_profile_m_delta(n: u64, r: u64, m: u64, delta: u64) -> Result<GhwBoundProfile> {
    let (n, r, m, delta) = (
        checked_param("n", n)?,
        checked_param("r", r)?,
        checked_param("M", m)?,
        checked_param("delta", delta)?,
    );
    if m < 1 || r < 1 {
        return Err(Error::InvalidParameter(format!(
            "profile needs M >= 1 and r >= 1, got M={m}, r={r}"
        )));
    }
    if n < r + 1 {
        return Err(Error::InvalidParameter(format!(
            "profile needs n >= r+1, got n={n}, r={r}"
        )));
    }
    let mut e = vec![r + 1];
    let mut js = vec![0i64];
    for i in 2..=m {
        let prev = *e.last().unwrap();
        let j_prev = *js.last().unwrap();
        let f = n - prev;
        let rem = m - i + 1;
        let j1 = r + 1 - floor_div(delta * f, rem);
        let floor = if r + 1 - j_prev >= 2 { 1 } else { 0 };
        let ji = if f >= m {
            let j2 = ceil_div(2 * prev - (i - 1) - (i - 1) * (r + 1), rem);
            j1.max(j2).max(floor)
        } else {
            j1.max(floor)
        };
        let ji = ji.min(r + 1);
        e.push((prev + r + 1 - ji).min(n));
        js.push(ji);
    }
    Ok(GhwBoundProfile {
        n,
        r,
        t: None,
        variant: ProfileVariant::MDelta { m, delta },
        b: m as usize,
        e,
        j: Some(js),
    })
}

/// `e_i = i r + 1` for every `i` with `i r + 1 <= n`.
pub fn ghw_profile_linear(n: u64, r: u64) -> Result<GhwBoundProfile> {
    let (n, r) = (checked_param("n", n)?, checked_param("r", r)?);
    if r < 1 || n < r + 1 {
        return Err(Error::InvalidParameter(format!(
            "profile needs r >= 1 and n >= r+1, got n={n}, r={r}"
        )));
    }
    let e: Vec<i64> = (1..).map(|i| i * r + 1).take_while(|&x| x <= n).collect();
    Ok(GhwBoundProfile {
        n,
        r,
        t: None,
        variant: ProfileVariant::Linear,
        b: e.len(),
        e,
        j: None,
    })
}
