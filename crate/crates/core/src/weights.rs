//! Weight distributions and the MacWilliams transform.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::code::AvailabilityCode;
use crate::combinatorics::krawtchouk_unchecked;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

/// Largest code dimension that may be enumerated exhaustively.
pub const ENUMERATION_LIMIT: usize = 28;

/// Visits every codeword spanned by the rows of `basis` in Gray-code order,
/// so consecutive codewords differ by one basis row. The zero word comes
/// first.
pub fn for_each_codeword(
    basis: &BitMatrix,
    limit: usize,
    mut visit: impl FnMut(&[u64]),
) -> Result<()> {
    let k = basis.rows();
    if k > limit {
        return Err(Error::DimensionTooLarge { k, limit });
    }
    let mut cur = vec![0u64; basis.stride()];
    visit(&cur);
    for i in 1u64..(1u64 << k) {
        let bit = i.trailing_zeros() as usize;
        gf2::xor_into(&mut cur, basis.row(bit));
        visit(&cur);
    }
    Ok(())
}

/// Histogram of Hamming weights over the span of `basis` (rows assumed
/// linearly independent).
pub fn weight_histogram(basis: &BitMatrix, limit: usize) -> Result<Vec<u64>> {
    let n = basis.cols();
    let mut counts = vec![0u64; n + 1];
    if basis.stride() == 1 {
        let k = basis.rows();
        if k > limit {
            return Err(Error::DimensionTooLarge { k, limit });
        }
        let rows: Vec<u64> = (0..k).map(|i| basis.row(i)[0]).collect();
        let mut cur = 0u64;
        counts[0] = 1;
        for i in 1u64..(1u64 << k) {
            cur ^= rows[i.trailing_zeros() as usize];
            counts[cur.count_ones() as usize] += 1;
        }
    } else {
        for_each_codeword(basis, limit, |w| counts[gf2::weight(w)] += 1)?;
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    n: usize,
    q: u64,
    #[serde(serialize_with = "decimal_strings")]
    a: Vec<BigUint>,
    #[serde(serialize_with = "optional_decimal_strings")]
    b: Option<Vec<BigUint>>,
}

// Counts can exceed 2^64, so they are written as decimal strings.
fn decimal_strings<S: serde::Serializer>(
    v: &[BigUint],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn optional_decimal_strings<S: serde::Serializer>(
    v: &Option<Vec<BigUint>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => decimal_strings(v, s),
        None => s.serialize_none(),
    }
}

fn exponent_of(mut value: BigUint, q: u64) -> Option<u32> {
    if value.is_zero() {
        return None;
    }
    let q = BigUint::from(q);
    let mut e = 0;
    while !value.is_one() {
        let (quot, rem) = value.div_rem(&q);
        if !rem.is_zero() {
            return None;
        }
        value = quot;
        e += 1;
    }
    Some(e)
}

impl WeightDistribution {
    /// Validates `A_0 = 1` and that the total is a power of `q`.
    pub fn new(q: u64, a: Vec<BigUint>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!(
                "alphabet size q={q} must be at least 2"
            )));
        }
        if a.is_empty() || !a[0].is_one() {
            return Err(Error::InvalidDistribution("A_0 must equal 1".into()));
        }
        let total: BigUint = a.iter().sum();
        if exponent_of(total.clone(), q).is_none() {
            return Err(Error::InvalidDistribution(format!(
                "total {total} is not a power of {q}"
            )));
        }
        Ok(WeightDistribution {
            n: a.len() - 1,
            q,
            a,
            b: None,
        })
    }

    pub fn from_counts(q: u64, counts: &[u64]) -> Result<Self> {
        Self::new(q, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a(&self) -> &[BigUint] {
        &self.a
    }

    pub fn b(&self) -> Option<&[BigUint]> {
        self.b.as_deref()
    }

    /// Number of codewords, `sum A_i`.
    pub fn size(&self) -> BigUint {
        self.a.iter().sum()
    }

    /// `log_q |C|`.
    pub fn dimension(&self) -> u32 {
        exponent_of(self.size(), self.q).expect("validated at construction")
    }

    /// Smallest nonzero weight, `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.a[i].is_zero())
    }

    /// The dual distribution as a fresh distribution (its `B` is this `A`).
    /// Requires the transform to have been applied.
    pub fn dual(&self) -> Option<WeightDistribution> {
        self.b.as_ref().map(|b| WeightDistribution {
            n: self.n,
            q: self.q,
            a: b.clone(),
            b: Some(self.a.clone()),
        })
    }

    /// Fills `B_j = (1/|C|) sum_i A_i K_j(i)`, rejecting inputs whose image is
    /// not a nonnegative integer vector.
    pub fn macwilliams_transform(&self) -> Result<WeightDistribution> {
        let size = BigInt::from(self.size());
        let n = self.n as u64;
        let mut b = Vec::with_capacity(self.n + 1);
        for j in 0..=n {
            let s: BigInt = self
                .a
                .iter()
                .enumerate()
                .filter(|(_, ai)| !ai.is_zero())
                .map(|(i, ai)| {
                    BigInt::from(ai.clone()) * krawtchouk_unchecked(self.q, n, j, i as u64)
                })
                .sum();
            let (quot, rem) = s.div_rem(&size);
            if !rem.is_zero() {
                return Err(Error::InvalidDistribution(format!(
                    "B_{j} = {s}/{size} is not an integer"
                )));
            }
            if quot.is_negative() {
                return Err(Error::InvalidDistribution(format!(
                    "B_{j} = {quot} is negative"
                )));
            }
            b.push(quot.to_biguint().expect("nonnegative"));
        }
        let out = WeightDistribution {
            n: self.n,
            q: self.q,
            a: self.a.clone(),
            b: Some(b),
        };
        debug_assert!(out.b.as_ref().unwrap()[0].is_one());
        Ok(out)
    }

    /// `A` as machine integers, when every entry fits.
    pub fn a_u64(&self) -> Option<Vec<u64>> {
        self.a.iter().map(ToPrimitive::to_u64).collect()
    }
}

/// Weight distribution of a binary code by exhaustive enumeration.
pub fn weight_distribution(code: &AvailabilityCode) -> Result<WeightDistribution> {
    let basis = code.generator();
    let counts = weight_histogram(&basis, ENUMERATION_LIMIT)?;
    WeightDistribution::from_counts(2, &counts)
}
