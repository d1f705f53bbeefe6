//! Exact binomial coefficients and Krawtchouk polynomials.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn binomial_i(n: u64, k: u64) -> BigInt {
    BigInt::from(binomial(n, k))
}

/// Krawtchouk polynomial `K_j(i)` for length `n` over an alphabet of size `q`:
/// `sum_a (-1)^a (q-1)^(j-a) C(i,a) C(n-i,j-a)`.
pub fn krawtchouk(q: u64, n: u64, j: u64, i: u64) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "alphabet size q={q} must be at least 2"
        )));
    }
    if j > n || i > n {
        return Err(Error::InvalidParameter(format!(
            "Krawtchouk arguments out of range: j={j}, i={i}, n={n}"
        )));
    }
    Ok(krawtchouk_unchecked(q, n, j, i))
}

/// The defining sum without range checks; degrees above `n` evaluate to zero.
pub(crate) fn krawtchouk_unchecked(q: u64, n: u64, j: u64, i: u64) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    let mut total = BigInt::zero();
    for a in 0..=j.min(i) {
        if j - a > n - i {
            continue;
        }
        let term = binomial_i(i, a)
            * binomial_i(n - i, j - a)
            * num_traits::pow(qm1.clone(), (j - a) as usize);
        if a % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for r in 1..=n {
            let prev = &rows[r - 1];
            let mut row = vec![BigUint::one(); r + 1];
            for c in 1..r {
                row[c] = &prev[c - 1] + &prev[c];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 7), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal(70);
        assert_eq!(tri[52][26], BigUint::from(495_918_532_948_104u64));
        for (n, row) in tri.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as u64), v, "C({n},{k})");
            }
        }
        assert_eq!(binomial(52, 26), BigUint::from(495_918_532_948_104u64));
    }

    #[test]
    fn krawtchouk_basic_values() {
        for q in 2..5 {
            for i in 0..=6 {
                assert_eq!(krawtchouk(q, 6, 0, i).unwrap(), BigInt::one());
            }
        }
        for j in 0..=9 {
            assert_eq!(krawtchouk(2, 9, j, 0).unwrap(), binomial_i(9, j));
        }
        assert_eq!(krawtchouk(2, 4, 1, 1).unwrap(), BigInt::from(2));
        for i in 0..=10i64 {
            assert_eq!(
                krawtchouk(2, 10, 1, i as u64).unwrap(),
                BigInt::from(10 - 2 * i)
            );
        }
    }

    #[test]
    fn krawtchouk_rejects_out_of_range() {
        assert!(krawtchouk(2, 4, 5, 0).is_err());
        assert!(krawtchouk(2, 4, 1, 5).is_err());
        assert!(krawtchouk(1, 4, 1, 1).is_err());
    }

    #[test]
    fn krawtchouk_orthogonality() {
        for q in 2..=4u64 {
            for n in 0..=24u64 {
                let k: Vec<Vec<BigInt>> = (0..=n)
                    .map(|j| (0..=n).map(|i| krawtchouk(q, n, j, i).unwrap()).collect())
                    .collect();
                let weights: Vec<BigInt> = (0..=n)
                    .map(|i| binomial_i(n, i) * num_traits::pow(BigInt::from(q - 1), i as usize))
                    .collect();
                let qn = num_traits::pow(BigInt::from(q), n as usize);
                for j in 0..=n as usize {
                    for l in 0..=n as usize {
                        let s: BigInt = (0..=n as usize)
                            .map(|i| &weights[i] * &k[j][i] * &k[l][i])
                            .sum();
                        let expected = if j == l {
                            &qn * &weights[j]
                        } else {
                            BigInt::zero()
                        };
                        assert_eq!(s, expected, "q={q} n={n} j={j} l={l}");
                    }
                }
            }
        }
    }
}
