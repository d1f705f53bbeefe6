//! Codes from families of linear maps `F_q^{n1} -> F_q^{m1}`.
//!
//! Columns are the vectors `x` of `F_q^{n1}` in radix-`q` order. For each map
//! `A_i` and each `y` in `F_q^{m1}` there is one row whose support is the
//! fibre `{x : A_i x = y}`. Full-rank maps give fibres of size
//! `q^{n1-m1}`; pairwise full stacked rank makes fibres of distinct maps
//! meet in exactly one point.

use serde_json::json;

use crate::code::{AvailabilityCode, CodeKind};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::gf2::BitMatrix;

/// Largest block length `q^{n1}` accepted.
pub const MAX_LENGTH: usize = 4096;

/// A dense matrix over a finite field, rows of element labels.
pub type FieldMatrix = Vec<Vec<u8>>;

pub fn functional_code(
    field: &FiniteField,
    n1: usize,
    m1: usize,
    maps: &[FieldMatrix],
) -> Result<AvailabilityCode> {
    if m1 == 0 || m1 >= n1 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m1 < n1, got m1={m1}, n1={n1}"
        )));
    }
    if 2 * m1 < n1 {
        return Err(Error::InvalidParameter(format!(
            "need 2*m1 >= n1 so that two maps can have full stacked rank, got m1={m1}, n1={n1}"
        )));
    }
    if maps.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one map is required".into(),
        ));
    }
    let q = field.order() as usize;
    let n = q
        .checked_pow(n1 as u32)
        .filter(|&n| n <= MAX_LENGTH)
        .ok_or_else(|| Error::BudgetExceeded(format!("q^n1 = {q}^{n1} exceeds {MAX_LENGTH}")))?;

    for (i, a) in maps.iter().enumerate() {
        if a.len() != m1 || a.iter().any(|row| row.len() != n1) {
            return Err(Error::InvalidParameter(format!(
                "map A_{} must be {m1}x{n1}",
                i + 1
            )));
        }
        if a.iter().flatten().any(|&e| e as usize >= q) {
            return Err(Error::InvalidParameter(format!(
                "map A_{} has entries outside F_{q}",
                i + 1
            )));
        }
        let rank = field.rank(a);
        if rank != m1 {
            return Err(Error::FunctionalRank {
                index: i + 1,
                rank,
                expected: m1,
            });
        }
    }
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let stacked: FieldMatrix = maps[i].iter().chain(&maps[j]).cloned().collect();
            let rank = field.rank(&stacked);
            if rank != n1 {
                return Err(Error::FunctionalPairRank {
                    i: i + 1,
                    j: j + 1,
                    rank,
                    expected: n1,
                });
            }
        }
    }

    let fibres = q.pow(m1 as u32);
    let mut supports = vec![Vec::new(); maps.len() * fibres];
    for col in 0..n {
        let x = field.vector_from_index(col, n1);
        for (i, a) in maps.iter().enumerate() {
            let y = field.apply(a, &x);
            supports[i * fibres + field.index_of_vector(&y)].push(col);
        }
    }
    let h = BitMatrix::from_supports(n, &supports);
    let r = q.pow((n1 - m1) as u32) - 1;
    Ok(
        AvailabilityCode::new(h, r, maps.len(), CodeKind::Strict).with_provenance(
            "functional",
            json!({ "q": q, "n1": n1, "m1": m1, "t": maps.len(), "maps": maps }),
        ),
    )
}

/// `t` pairwise independent functionals on `F_q^2`: `[1 0]`, `[0 1]`, then
/// `[1 a]` for nonzero `a`.
pub fn projective_functionals(field: &FiniteField, t: usize) -> Result<Vec<FieldMatrix>> {
    let q = field.order() as usize;
    if t > q + 1 {
        return Err(Error::InvalidParameter(format!(
            "only q+1 = {} directions exist in F_{q}^2, asked for {t}",
            q + 1
        )));
    }
    let all = [vec![vec![1, 0]], vec![vec![0, 1]]]
        .into_iter()
        .chain((1..q as u8).map(|a| vec![vec![1, a]]));
    Ok(all.take(t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> BitMatrix {
        BitMatrix::from_supports(4, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])
    }

    #[test]
    fn binary_plane_is_k4() {
        let f = FiniteField::new(2).unwrap();
        let maps = projective_functionals(&f, 3).unwrap();
        assert_eq!(
            maps,
            vec![vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![1, 1]]]
        );
        let c = functional_code(&f, 2, 1, &maps).unwrap();
        assert_eq!((c.m(), c.n(), c.r(), c.t(), c.k()), (6, 4, 1, 3, 1));
        assert!(c.h().is_permutation_equivalent(&k4()));
    }

    #[test]
    fn ternary_affine_plane() {
        let f = FiniteField::new(3).unwrap();
        let maps = projective_functionals(&f, 4).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                let s: FieldMatrix = maps[i].iter().chain(&maps[j]).cloned().collect();
                assert_eq!(f.rank(&s), 2);
            }
        }
        let c = functional_code(&f, 2, 1, &maps).unwrap();
        assert_eq!((c.m(), c.n(), c.r()), (12, 9, 2));
        assert!(c.h().column_weights().iter().all(|&w| w == 4));
        assert!((0..12).all(|i| c.h().row_weight(i) == 3));
    }

    #[test]
    fn rank_failures_name_the_offender() {
        let f = FiniteField::new(2).unwrap();
        let zero = vec![vec![vec![1, 0]], vec![vec![0, 0]]];
        assert_eq!(
            functional_code(&f, 2, 1, &zero).unwrap_err(),
            Error::FunctionalRank {
                index: 2,
                rank: 0,
                expected: 1
            }
        );
        let parallel = vec![vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![0, 1]]];
        assert_eq!(
            functional_code(&f, 2, 1, &parallel).unwrap_err(),
            Error::FunctionalPairRank {
                i: 2,
                j: 3,
                rank: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn parameter_guards() {
        let f = FiniteField::new(2).unwrap();
        assert!(projective_functionals(&f, 4).is_err());
        let maps = projective_functionals(&f, 2).unwrap();
        assert!(functional_code(&f, 3, 1, &maps).is_err());
        assert!(functional_code(&f, 2, 2, &maps).is_err());
        let f4 = FiniteField::new(4).unwrap();
        let big: Vec<FieldMatrix> = vec![vec![vec![1; 7]; 4]];
        assert!(matches!(
            functional_code(&f4, 7, 4, &big),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn larger_dimension_maps() {
        // Two complementary coordinate projections of F_2^4 onto F_2^2.
        let f = FiniteField::new(2).unwrap();
        let a1 = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
        let a2 = vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]];
        let a3 = vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
        let c = functional_code(&f, 4, 2, &[a1, a2, a3]).unwrap();
        assert_eq!((c.n(), c.m(), c.r(), c.t()), (16, 12, 3, 3));
    }
}
