use std::fmt;

use serde::{Serialize, Serializer};

use crate::code::AvailabilityCode;
use crate::error::Result;
use crate::gf2;
use crate::weights::{for_each_codeword, ENUMERATION_LIMIT};

/// Minimum distance, with the zero code having no nonzero codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Exact minimum distance by enumerating all `2^k` codewords.
pub fn min_distance_bruteforce(code: &AvailabilityCode) -> Result<Distance> {
    let basis = code.generator();
    let k = basis.rows();
    if k == 0 {
        return Ok(Distance::Infinite);
    }
    let mut best = usize::MAX;
    if basis.stride() == 1 {
        if k > ENUMERATION_LIMIT {
            return Err(crate::Error::DimensionTooLarge {
                k,
                limit: ENUMERATION_LIMIT,
            });
        }
        let rows: Vec<u64> = (0..k).map(|i| basis.row(i)[0]).collect();
        let mut cur = 0u64;
        for i in 1u64..(1u64 << k) {
            cur ^= rows[i.trailing_zeros() as usize];
            best = best.min(cur.count_ones() as usize);
        }
    } else {
        for_each_codeword(&basis, ENUMERATION_LIMIT, |w| {
            let wt = gf2::weight(w);
            if wt > 0 {
                best = best.min(wt);
            }
        })?;
    }
    Ok(Distance::Finite(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeKind;
    use crate::gf2::BitMatrix;

    fn code(h: BitMatrix) -> AvailabilityCode {
        AvailabilityCode::new(h, 1, 1, CodeKind::General)
    }

    #[test]
    fn small_codes() {
        let rep = code(BitMatrix::from_supports(3, [[0, 1], [1, 2]]));
        assert_eq!(min_distance_bruteforce(&rep).unwrap(), Distance::Finite(3));
        let k4 = code(BitMatrix::from_supports(
            4,
            [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        ));
        assert_eq!(min_distance_bruteforce(&k4).unwrap(), Distance::Finite(4));
        assert_eq!(
            min_distance_bruteforce(&code(BitMatrix::identity(3))).unwrap(),
            Distance::Infinite
        );
    }

    #[test]
    fn wide_codes_use_the_general_path() {
        // Even-weight code of length 70.
        let h = BitMatrix::from_fn(1, 70, |_, _| true);
        assert_eq!(
            min_distance_bruteforce(&code(h)).unwrap_err().to_string(),
            "code dimension 69 exceeds the enumeration limit 28"
        );
        let h = BitMatrix::from_fn(60, 70, |i, j| j == i || j == i + 1 || (i == 59 && j > 59));
        let d = min_distance_bruteforce(&code(h)).unwrap();
        assert!(matches!(d, Distance::Finite(x) if x >= 2));
    }

    #[test]
    fn serializes_as_number_or_marker() {
        assert_eq!(serde_json::to_string(&Distance::Finite(4)).unwrap(), "4");
        assert_eq!(
            serde_json::to_string(&Distance::Infinite).unwrap(),
            "\"infinite\""
        );
        assert!(Distance::Finite(100) < Distance::Infinite);
    }
}
