//! The `t`-dimensional single-parity product code on the grid `[r+1]^t`.

use serde_json::json;

use crate::code::{AvailabilityCode, CodeKind};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

pub const MAX_LENGTH: usize = 4096;

/// One parity per axis-parallel line of the grid. Coordinates are mixed-radix
/// indices with axis 0 least significant; rows are grouped by axis.
pub fn product_code(r: usize, t: usize) -> Result<AvailabilityCode> {
    if r == 0 || t == 0 {
        return Err(Error::InvalidParameter(
            "product code needs r >= 1 and t >= 1".into(),
        ));
    }
    let s = r + 1;
    let n = u32::try_from(t)
        .ok()
        .and_then(|e| s.checked_pow(e))
        .filter(|&n| n <= MAX_LENGTH)
        .ok_or_else(|| Error::BudgetExceeded(format!("(r+1)^t = {s}^{t} exceeds {MAX_LENGTH}")))?;
    let mut supports = Vec::with_capacity(t * n / s);
    for axis in 0..t {
        let step = s.pow(axis as u32);
        // Line starts are the points whose digit on `axis` is zero.
        for base in (0..n).filter(|x| (x / step).is_multiple_of(s)) {
            supports.push((0..s).map(|d| base + d * step).collect::<Vec<_>>());
        }
    }
    let h = BitMatrix::from_supports(n, &supports);
    Ok(AvailabilityCode::new(h, r, t, CodeKind::Strict)
        .with_provenance("product", json!({ "r": r, "t": t })))
}
