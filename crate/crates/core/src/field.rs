//! Small finite fields GF(q), q a prime power up to 64, as lookup tables.
//!
//! Elements are labelled `0..q`. For prime `q` the label is the residue. For
//! `q = p^m` the label is the base-`p` encoding of the coefficient vector of a
//! polynomial reduced modulo a fixed Conway polynomial, so `0` and `1` are the
//! additive and multiplicative identities in every case.

use crate::error::{Error, Result};

/// Conway polynomials for the non-prime orders up to 64, coefficients from
/// the constant term upwards (monic).
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// Decomposes `q = p^m`, returning `(p, m)` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    q: u32,
    p: u32,
    degree: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        if q > 64 {
            return Err(Error::FieldTooLarge { q });
        }
        let (q, p) = (q as u32, p as u32);
        let digits = |mut x: u32| -> Vec<u32> {
            (0..m)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let label = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let modulus: &[u32] = if m == 1 {
            &[0, 1]
        } else {
            CONWAY
                .iter()
                .find(|(pp, mm, _)| *pp == p && *mm == m)
                .map(|(_, _, c)| *c)
                .expect("Conway polynomial table covers every prime power up to 64")
        };

        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = label(&sum) as u8;

                let mut prod = vec![0u32; 2 * m as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // Reduce modulo the monic polynomial from the top degree down.
                for deg in (m as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (k, &mc) in modulus.iter().enumerate() {
                        let idx = deg - m as usize + k;
                        prod[idx] = (prod[idx] + (p - c) * mc % p) % p;
                    }
                }
                mul[(a * q + b) as usize] = label(&prod[..m as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u8;
            }
        }
        Ok(FiniteField {
            q,
            p,
            degree: m,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Rank of a dense matrix (rows of element labels) over this field.
    pub fn rank(&self, rows: &[Vec<u8>]) -> usize {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_inv = self.inv(m[rank][c]).expect("nonzero pivot");
            for i in 0..m.len() {
                if i == rank || m[i][c] == 0 {
                    continue;
                }
                let factor = self.mul(m[i][c], pivot_inv);
                for j in 0..cols {
                    let v = self.mul(factor, m[rank][j]);
                    m[i][j] = self.sub(m[i][j], v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Matrix-vector product `A x`.
    pub fn apply(&self, a: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&r, &v)| self.add(acc, self.mul(r, v)))
            })
            .collect()
    }

    /// Vector in `F_q^len` with the given radix-`q` index, most significant
    /// coordinate first.
    pub fn vector_from_index(&self, mut index: usize, len: usize) -> Vec<u8> {
        let q = self.q as usize;
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        v
    }

    pub fn index_of_vector(&self, v: &[u8]) -> usize {
        v.iter()
            .fold(0, |acc, &d| acc * self.q as usize + d as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let els: Vec<u8> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={} a={a}", f.order());
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            check_axioms(&FiniteField::new(q).unwrap());
        }
    }

    #[test]
    fn larger_extension_fields_have_inverses() {
        for q in [25, 27, 32, 49, 64] {
            let f = FiniteField::new(q).unwrap();
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FiniteField::new(6), Err(Error::NotPrimePower { q: 6 }));
        assert_eq!(FiniteField::new(1), Err(Error::NotPrimePower { q: 1 }));
        assert_eq!(FiniteField::new(81), Err(Error::FieldTooLarge { q: 81 }));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(61), Some((61, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn dense_rank() {
        let f = FiniteField::new(3).unwrap();
        assert_eq!(f.rank(&[vec![1, 2], vec![2, 1]]), 1);
        assert_eq!(f.rank(&[vec![1, 0], vec![1, 1]]), 2);
        assert_eq!(f.rank(&[vec![0, 0]]), 0);
    }

    #[test]
    fn vector_indexing_round_trips() {
        let f = FiniteField::new(5).unwrap();
        for i in 0..125 {
            assert_eq!(f.index_of_vector(&f.vector_from_index(i, 3)), i);
        }
        assert_eq!(f.vector_from_index(7, 2), vec![1, 2]);
    }
}
