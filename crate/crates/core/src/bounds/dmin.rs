use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use super::profile::{ghw_profile_m_delta, ghw_profile_simple, GhwBoundProfile};
use super::rate::prime_value;
use super::{ceil_div, ceil_ratio, checked_param, floor_div, BoundKind, BoundResult};
use crate::error::{Error, Result};

/// `n - sum_{i=0..t} floor((k-1)/r^i)`, unclamped.
pub fn tamo_barg_distance(n: i64, k: i64, r: i64, t: i64) -> i64 {
    let mut power = 1i64;
    let mut sum = 0;
    for _ in 0..=t {
        sum += floor_div(k - 1, power);
        // Once r^i exceeds |k-1| every further term is 0 or -1.
        power = power.saturating_mul(r);
    }
    n - sum
}

/// `n - k + 2 - ceil((t(k-1)+1)/(t(r-1)+1))`, unclamped.
pub fn wang_distance(n: i64, k: i64, r: i64, t: i64) -> i64 {
    n - k + 2 - ceil_div(t * (k - 1) + 1, t * (r - 1) + 1)
}

fn distance_params(n: u64, k: u64, r: u64, t: u64) -> Result<(i64, i64, i64, i64)> {
    let (n, k, r, t) = (
        checked_param("n", n)?,
        checked_param("k", k)?,
        checked_param("r", r)?,
        checked_param("t", t)?,
    );
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok((n, k, r, t))
}

fn distance_result(name: &str, (n, k, r, t): (i64, i64, i64, i64), value: i64) -> BoundResult {
    BoundResult::integer(
        name,
        BoundKind::Distance,
        &[("n", n), ("k", k), ("r", r), ("t", t)],
        value.max(1),
    )
}

pub fn dmin_tamo_barg(n: u64, k: u64, r: u64, t: u64) -> Result<BoundResult> {
    let p = distance_params(n, k, r, t)?;
    Ok(distance_result(
        "tamo_barg_dmin",
        p,
        tamo_barg_distance(p.0, p.1, p.2, p.3),
    ))
}

pub fn dmin_wang(n: u64, k: u64, r: u64, t: u64) -> Result<BoundResult> {
    let p = distance_params(n, k, r, t)?;
    Ok(distance_result(
        "wang_dmin",
        p,
        wang_distance(p.0, p.1, p.2, p.3),
    ))
}

/// Minimum over the shortened points `(n - e_i, k + i - e_i)` for
/// `i in S = {i : e_i - i < k}` of `inner`, or `inner(n, k)` when `S` is empty.
fn shortening_value(
    (n, k, r, t): (i64, i64, i64, i64),
    profile: &GhwBoundProfile,
    inner: &dyn Fn(i64, i64, i64, i64) -> i64,
) -> (i64, Vec<usize>) {
    let s: Vec<usize> = (1..=profile.e.len())
        .filter(|&i| profile.e(i) - (i as i64) < k)
        .collect();
    let value = s
        .iter()
        .map(|&i| {
            let e = profile.e(i);
            inner(n - e, k + i as i64 - e, r, t)
        })
        .min()
        .unwrap_or_else(|| inner(n, k, r, t));
    (value.max(1), s)
}

/// Shortening bound driven by a GHW profile; `inner` bounds the distance of
/// the shortened code, typically [`tamo_barg_distance`].
pub fn dmin_shortening(
    n: u64,
    k: u64,
    r: u64,
    t: u64,
    profile: &GhwBoundProfile,
    inner: &dyn Fn(i64, i64, i64, i64) -> i64,
) -> Result<BoundResult> {
    let p = distance_params(n, k, r, t)?;
    if profile.n != p.0 || profile.r != p.2 || profile.t.is_some_and(|pt| pt != p.3) {
        return Err(Error::InvalidParameter(format!(
            "profile was computed for n={}, r={}, not n={}, r={}",
            profile.n, profile.r, p.0, p.2
        )));
    }
    let (value, s) = shortening_value(p, profile, inner);
    Ok(distance_result("shortening", p, value).with_diagnostics(json!({ "s": s, "e": profile.e })))
}

pub fn dmin_m_delta(n: u64, k: u64, r: u64, t: u64, m: u64, delta: u64) -> Result<BoundResult> {
    let p = distance_params(n, k, r, t)?;
    let profile = ghw_profile_m_delta(n, r, m, delta)?;
    let (value, s) = shortening_value(p, &profile, &tamo_barg_distance);
    let mut res =
        distance_result("m_delta", p, value).with_diagnostics(json!({ "s": s, "e": profile.e }));
    res.params.insert("M".into(), m.into());
    res.params.insert("delta".into(), delta.into());
    Ok(res)
}

/// Maximum of the `(M, delta)` bound over
/// `ceil(n(1 - R'(r,t))) <= M <= n - k`, `0 <= delta <= n - k`.
pub fn dmin_m_delta_max(n: u64, k: u64, r: u64, t: u64) -> Result<BoundResult> {
    let p = distance_params(n, k, r, t)?;
    if p.3 < 2 {
        return Err(Error::InvalidParameter(
            "the (M, delta) bound needs t >= 2".into(),
        ));
    }
    let (ni, ki, ri, ti) = p;
    let m_low = ceil_ratio(
        &(BigRational::from_integer(ni.into()) * (BigRational::one() - prime_value(ri, ti))),
    )
    .max(1);
    let m_high = ni - ki;
    if m_low > m_high {
        return Err(Error::NotApplicable(format!(
            "empty (M, delta) grid: ceil(n(1-R')) = {m_low} exceeds n-k = {m_high}"
        )));
    }
    let mut best: Option<(i64, i64, i64)> = None;
    for m in m_low..=m_high {
        for delta in 0..=m_high {
            let profile = ghw_profile_m_delta(n, r, m as u64, delta as u64)?;
            let (value, _) = shortening_value(p, &profile, &tamo_barg_distance);
            if best.is_none_or(|(v, _, _)| value > v) {
                best = Some((value, m, delta));
            }
        }
    }
    let (value, m, delta) = best.expect("grid is non-empty");
    Ok(distance_result("m_delta_max", p, value).with_diagnostics(
        json!({ "argmax": { "M": m, "delta": delta }, "m_range": [m_low, m_high] }),
    ))
}

/// The shortening bound with the simple profile and the product-form inner
/// bound.
pub fn dmin_shortening_simple(n: u64, k: u64, r: u64, t: u64) -> Result<BoundResult> {
    let profile = ghw_profile_simple(n, r, t)?;
    dmin_shortening(n, k, r, t, &profile, &tamo_barg_distance)
}
