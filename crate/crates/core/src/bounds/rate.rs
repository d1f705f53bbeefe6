use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use serde_json::json;

use super::{
    ceil_div, checked_param, floor_div, is_unit_interval, product, ratio, BoundKind, BoundResult,
};
use crate::error::{Error, Result};

fn require_positive(name: &str, v: u64) -> Result<i64> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be at least 1"
        )));
    }
    checked_param(name, v)
}

pub(crate) fn tamo_barg_value(r: i64, t: i64) -> BigRational {
    product((1..=t).map(|j| ratio(j * r, j * r + 1)))
}

/// `1 / prod_{j=1..t} (1 + 1/(jr))`.
pub fn rate_tamo_barg(r: u64, t: u64) -> Result<BoundResult> {
    let (r, t) = (require_positive("r", r)?, require_positive("t", t)?);
    Ok(BoundResult::exact(
        "tamo_barg",
        BoundKind::Rate,
        &[("r", r), ("t", t)],
        tamo_barg_value(r, t),
    ))
}

pub(crate) fn prime_value(r: i64, t: i64) -> BigRational {
    match t {
        2 => ratio(r, r + 2),
        3 => ratio(r * r, (r + 1) * (r + 1)),
        _ => tamo_barg_value(r, t),
    }
}

/// The piecewise selector `R'(r,t)`: `r/(r+2)` at `t = 2`, `r^2/(r+1)^2` at
/// `t = 3`, and the product bound beyond.
pub fn rate_prime(r: u64, t: u64) -> Result<BoundResult> {
    let r = require_positive("r", r)?;
    let t = checked_param("t", t)?;
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "the rate selector needs t >= 2, got t={t}"
        )));
    }
    Ok(BoundResult::exact(
        "rate_prime",
        BoundKind::Rate,
        &[("r", r), ("t", t)],
        prime_value(r, t),
    ))
}

/// Intermediate quantities of the greedy `t = 3` bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyDiagnostics {
    pub m: i64,
    pub l1_prime: i64,
    pub l2: i64,
    pub l1: i64,
}

/// Rate bound for strict `t = 3` codes from the greedy covering argument.
pub fn rate_greedy_t3(n: u64, r: u64) -> Result<(BoundResult, GreedyDiagnostics)> {
    let (n, r) = (require_positive("n", n)?, require_positive("r", r)?);
    if (3 * n) % (r + 1) != 0 {
        return Err(Error::Divisibility(format!(
            "r+1 = {} does not divide 3n = {}",
            r + 1,
            3 * n
        )));
    }
    let m = 3 * n / (r + 1);
    // ceil((2r-1)m/(3(r+2)) - 1/(r+2) - 1) over the common denominator 3(r+2).
    let l1_prime = ceil_div((2 * r - 1) * m - 3 - 3 * (r + 2), 3 * (r + 2));
    let l2 = floor_div(m - 3 - l1_prime, 2);
    let l1 = m - 3 - 2 * l2;
    let value = BigRational::one() - ratio(3 * (1 + l1 + l2), (r + 1) * (3 + l1 + 2 * l2));
    let diag = GreedyDiagnostics {
        m,
        l1_prime,
        l2,
        l1,
    };
    let res = BoundResult::exact(
        "greedy_t3",
        BoundKind::Rate,
        &[("n", n), ("r", r), ("t", 3)],
        value,
    )
    .with_diagnostics(json!(diag));
    Ok((res, diag))
}

/// One step of the transpose recursion
/// `R(r,t) <= 1 - t/(r+1) + t/(r+1) * R(t-1, r+1)`.
pub fn rate_transpose_step(r: u64, t: u64, inner: &BigRational) -> Result<BigRational> {
    let (r, t) = (require_positive("r", r)?, require_positive("t", t)?);
    if !is_unit_interval(inner) {
        return Err(Error::InvalidParameter(format!(
            "inner rate bound {inner} is outside [0, 1]"
        )));
    }
    let w = ratio(t, r + 1);
    Ok(BigRational::one() - &w + w * inner)
}

/// Transpose bound with the product bound on `R(t-1, r+1)` as inner value.
pub fn rate_transpose(r: u64, t: u64) -> Result<BoundResult> {
    let ri = require_positive("r", r)?;
    let ti = checked_param("t", t)?;
    if ti < 2 {
        return Err(Error::InvalidParameter(format!(
            "the transpose bound needs t >= 2, got t={ti}"
        )));
    }
    let inner = tamo_barg_value(ti - 1, ri + 1);
    let value = rate_transpose_step(r, t, &inner)?;
    Ok(BoundResult::exact(
        "transpose",
        BoundKind::Rate,
        &[("r", ri), ("t", ti)],
        value,
    ))
}

/// The achievable rate `r/(r+t)`.
pub fn rate_wzl_achievable(r: u64, t: u64) -> Result<BoundResult> {
    let (r, t) = (checked_param("r", r)?, checked_param("t", t)?);
    if r + t == 0 {
        return Err(Error::InvalidParameter(
            "r and t cannot both be zero".into(),
        ));
    }
    Ok(BoundResult::exact(
        "achievable_wzl",
        BoundKind::Rate,
        &[("r", r), ("t", t)],
        ratio(r, r + t),
    ))
}
