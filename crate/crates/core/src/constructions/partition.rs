//! Recursive construction of many resolutions of `[n]`, `n = (r+1)^g`, into
//! blocks of size `r+1` such that blocks from different resolutions share at
//! most one point.
//!
//! Level `g` starts from the natural partition `{1..r+1}, {r+2..2(r+1)}, ...`.
//! Every partition of `[n/(r+1)]` from level `g-1` is then refined: each of
//! its blocks `{s_1..s_{r+1}}` selects `r+1` natural blocks, laid out as the
//! rows of an `(r+1)x(r+1)` array `U`, and for each square `S_j` with
//! `j = 1..=N+1` the cells of `U` carrying symbol `x` form one new block.
//! That yields `T(n) = f*T(n/(r+1)) + 1` partitions with `f = N(r+1) + 1`.

use serde::Serialize;
use serde_json::json;

use super::mols::{generate_mols, MolsSet};
use crate::code::{AvailabilityCode, CodeKind};
use crate::error::{Error, Result};
use crate::field::is_prime_power;
use crate::gf2::BitMatrix;

/// Largest ground set the family builder will produce.
pub const MAX_GROUND_SET: usize = 4096;

/// A list of partitions of `[n]` into blocks of equal size. Blocks hold
/// 1-based points in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionFamily {
    n: usize,
    block_size: usize,
    levels: u32,
    f: usize,
    partitions: Vec<Vec<Vec<usize>>>,
}

/// Result of checking the four intersection properties exhaustively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    /// Blocks inside every partition are pairwise disjoint.
    pub disjoint_within: bool,
    /// Blocks from distinct partitions share at most one point.
    pub cross_intersections_ok: bool,
    /// The number of partitions equals `(f^g - 1)/(f - 1)`.
    pub count_ok: bool,
    /// Every partition covers `[n]` with blocks of the declared size.
    pub covers: bool,
}

impl FamilyCheck {
    pub fn pass(&self) -> bool {
        self.disjoint_within && self.cross_intersections_ok && self.count_ok && self.covers
    }
}

impl PartitionFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[Vec<Vec<usize>>] {
        &self.partitions
    }

    /// `(f^g - 1)/(f - 1)`, or `g` when `f = 1`.
    pub fn expected_count(&self) -> usize {
        if self.f == 1 {
            return self.levels as usize;
        }
        (self.f.pow(self.levels) - 1) / (self.f - 1)
    }

    pub fn check(&self) -> FamilyCheck {
        let n = self.n;
        let mut disjoint_within = true;
        let mut covers = true;
        for p in &self.partitions {
            let mut seen = vec![false; n + 1];
            for b in p {
                if b.len() != self.block_size {
                    covers = false;
                }
                for &x in b {
                    if x == 0 || x > n {
                        covers = false;
                        continue;
                    }
                    if seen[x] {
                        disjoint_within = false;
                    }
                    seen[x] = true;
                }
            }
            if !seen[1..].iter().all(|&s| s) {
                covers = false;
            }
        }

        // For every pair of distinct partitions and every point, the pair of
        // blocks containing that point may not recur at another point.
        let owner: Vec<Vec<usize>> = self
            .partitions
            .iter()
            .map(|p| {
                let mut o = vec![usize::MAX; n + 1];
                for (bi, b) in p.iter().enumerate() {
                    for &x in b {
                        if x <= n {
                            o[x] = bi;
                        }
                    }
                }
                o
            })
            .collect();
        let blocks = n / self.block_size;
        let mut cross_intersections_ok = true;
        'outer: for a in 0..owner.len() {
            for b in a + 1..owner.len() {
                let mut hit = vec![false; blocks * blocks];
                for x in 1..=n {
                    let (ba, bb) = (owner[a][x], owner[b][x]);
                    if ba >= blocks || bb >= blocks {
                        continue;
                    }
                    let idx = ba * blocks + bb;
                    if hit[idx] {
                        cross_intersections_ok = false;
                        break 'outer;
                    }
                    hit[idx] = true;
                }
            }
        }

        FamilyCheck {
            disjoint_within,
            cross_intersections_ok,
            count_ok: self.len() == self.expected_count(),
            covers,
        }
    }
}

fn natural_partition(n: usize, s: usize) -> Vec<Vec<usize>> {
    (0..n / s)
        .map(|x| (x * s + 1..=(x + 1) * s).collect())
        .collect()
}

fn refine(
    level_n: usize,
    s: usize,
    mols: &MolsSet,
    sub: &[Vec<Vec<usize>>],
) -> Vec<Vec<Vec<usize>>> {
    let natural = natural_partition(level_n, s);
    let mut out = Vec::with_capacity(1 + sub.len() * mols.f());
    out.push(natural.clone());
    for sub_partition in sub {
        for j in 1..=mols.f() {
            let square = mols.square(j);
            let mut partition = Vec::with_capacity(level_n / s);
            for sub_block in sub_partition {
                // Row a of U is the natural block indexed by the a-th point
                // of the sub-block.
                let u: Vec<&Vec<usize>> =
                    sub_block.iter().map(|&sigma| &natural[sigma - 1]).collect();
                for x in 1..=s as u32 {
                    let mut block: Vec<usize> = (0..s)
                        .flat_map(|a| (0..s).map(move |b| (a, b)))
                        .filter(|&(a, b)| square.get(a, b) == x)
                        .map(|(a, b)| u[a][b])
                        .collect();
                    block.sort_unstable();
                    partition.push(block);
                }
            }
            out.push(partition);
        }
    }
    out
}

pub fn build_partition_family(r: usize, g: u32) -> Result<PartitionFamily> {
    if r == 0 || g == 0 {
        return Err(Error::InvalidParameter(
            "partition family needs r >= 1 and g >= 1".into(),
        ));
    }
    let s = r + 1;
    if !is_prime_power(s as u64) {
        return Err(Error::InvalidParameter(format!(
            "block size r+1 = {s} is not a prime power; no MOLS count is available for it"
        )));
    }
    let n = s
        .checked_pow(g)
        .filter(|&n| n <= MAX_GROUND_SET)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!("(r+1)^g = {s}^{g} exceeds {MAX_GROUND_SET}"))
        })?;
    let mols = generate_mols(s as u64)?;

    let mut family = vec![natural_partition(s, s)];
    let mut level_n = s;
    for _ in 1..g {
        level_n *= s;
        family = refine(level_n, s, &mols, &family);
    }
    debug_assert_eq!(level_n, n);
    Ok(PartitionFamily {
        n,
        block_size: s,
        levels: g,
        f: mols.f(),
        partitions: family,
    })
}

/// Parity-check matrix with one row per block of the chosen partitions.
/// `choice` lists 0-based partition indices; the default is the first `t`.
pub fn partition_code(
    family: &PartitionFamily,
    t: usize,
    choice: Option<&[usize]>,
) -> Result<AvailabilityCode> {
    if t > family.len() {
        return Err(Error::InvalidParameter(format!(
            "availability t={t} exceeds the {} partitions in the family",
            family.len()
        )));
    }
    let chosen: Vec<usize> = match choice {
        None => (0..t).collect(),
        Some(c) => {
            if c.len() != t {
                return Err(Error::InvalidParameter(format!(
                    "choice lists {} partitions, expected {t}",
                    c.len()
                )));
            }
            let mut sorted = c.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != t || sorted.last().is_some_and(|&m| m >= family.len()) {
                return Err(Error::InvalidParameter(
                    "choice must list distinct valid partition indices".into(),
                ));
            }
            c.to_vec()
        }
    };
    let supports = chosen
        .iter()
        .flat_map(|&i| family.partitions[i].iter())
        .map(|b| b.iter().map(|&x| x - 1).collect::<Vec<_>>());
    let h = BitMatrix::from_supports(family.n, supports);
    Ok(
        AvailabilityCode::new(h, family.block_size - 1, t, CodeKind::Strict).with_provenance(
            "partition",
            json!({ "r": family.block_size - 1, "g": family.levels, "t": t, "choice": chosen }),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_sets(p: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
        let mut v: Vec<Vec<Vec<usize>>> = p
            .iter()
            .map(|part| {
                let mut part = part.clone();
                part.sort();
                part
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn base_level() {
        let f = build_partition_family(1, 1).unwrap();
        assert_eq!(f.partitions(), &[vec![vec![1, 2]]]);
        assert!(f.check().pass());
    }

    #[test]
    fn r1_g2_gives_the_three_matchings_of_k4() {
        let f = build_partition_family(1, 2).unwrap();
        assert_eq!(f.partitions()[0], vec![vec![1, 2], vec![3, 4]]);
        let expected = vec![
            vec![vec![1, 2], vec![3, 4]],
            vec![vec![1, 3], vec![2, 4]],
            vec![vec![1, 4], vec![2, 3]],
        ];
        assert_eq!(as_sets(f.partitions()), expected);
        assert!(f.check().pass());
    }

    #[test]
    fn r2_g2_has_four_partitions() {
        let f = build_partition_family(2, 2).unwrap();
        assert_eq!(f.len(), 4);
        let c = f.check();
        assert!(c.pass(), "{c:?}");
    }

    #[test]
    fn counts_follow_the_recursion() {
        for g in 1..=4 {
            assert_eq!(build_partition_family(1, g).unwrap().len(), (1 << g) - 1);
        }
        assert_eq!(build_partition_family(3, 3).unwrap().len(), 21);
        assert_eq!(build_partition_family(4, 2).unwrap().len(), 6);
    }

    #[test]
    fn check_detects_broken_families() {
        let mut f = build_partition_family(1, 2).unwrap();
        f.partitions.push(f.partitions[1].clone());
        let c = f.check();
        assert!(!c.cross_intersections_ok && !c.count_ok);
        let mut f = build_partition_family(1, 2).unwrap();
        f.partitions[2] = vec![vec![1, 2], vec![2, 3]];
        let c = f.check();
        assert!(!c.disjoint_within && !c.covers);
    }

    #[test]
    fn guards() {
        assert!(build_partition_family(5, 1).is_err());
        assert!(build_partition_family(0, 1).is_err());
        assert!(matches!(
            build_partition_family(1, 13),
            Err(Error::BudgetExceeded(_))
        ));
        let f = build_partition_family(1, 2).unwrap();
        assert!(partition_code(&f, 4, None).is_err());
        assert!(partition_code(&f, 2, Some(&[0, 0])).is_err());
        assert!(partition_code(&f, 2, Some(&[0, 3])).is_err());
    }

    #[test]
    fn partition_codes_on_four_points() {
        let f = build_partition_family(1, 2).unwrap();
        let k4 = partition_code(&f, 3, None).unwrap();
        assert_eq!((k4.m(), k4.n(), k4.k()), (6, 4, 1));
        let two = partition_code(&f, 2, None).unwrap();
        assert_eq!((two.m(), two.k()), (4, 1));
        let one = partition_code(&f, 1, None).unwrap();
        assert_eq!(one.k(), 2);
        let chosen = partition_code(&f, 2, Some(&[2, 1])).unwrap();
        assert_eq!(
            chosen.h().row_support(0),
            f.partitions()[2][0]
                .iter()
                .map(|x| x - 1)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn single_partition_code_has_disjoint_parities() {
        let f = build_partition_family(2, 2).unwrap();
        let c = partition_code(&f, 1, None).unwrap();
        assert_eq!(c.k(), 9 - 3);
    }
}
