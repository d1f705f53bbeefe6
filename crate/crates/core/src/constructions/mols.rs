//! Mutually orthogonal Latin squares from the field construction
//! `L_a(i, j) = a*i + j`, plus the two auxiliary constant-row and
//! constant-column squares used by the partition recursion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FiniteField;

/// A square grid with symbols `1..=order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<Vec<u32>>,
    /// Constant-row or constant-column helper; not a Latin square.
    auxiliary: bool,
}

impl LatinSquare {
    pub fn new(grid: Vec<Vec<u32>>, auxiliary: bool) -> Result<Self> {
        let order = grid.len();
        if order == 0 || grid.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidParameter(
                "square grid must be non-empty and square".into(),
            ));
        }
        if grid.iter().flatten().any(|&s| s == 0 || s as usize > order) {
            return Err(Error::InvalidParameter(format!(
                "symbols must lie in 1..={order}"
            )));
        }
        let sq = LatinSquare {
            order,
            grid,
            auxiliary,
        };
        if !auxiliary && !sq.is_latin() {
            return Err(Error::InvalidParameter("grid is not a Latin square".into()));
        }
        Ok(sq)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_auxiliary(&self) -> bool {
        self.auxiliary
    }

    /// Symbol at row `a`, column `b` (0-based).
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.grid[a][b]
    }

    pub fn grid(&self) -> &[Vec<u32>] {
        &self.grid
    }

    /// Every symbol occurs once in each row and once in each column.
    pub fn is_latin(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n + 1];
        for i in 0..n {
            seen.fill(false);
            for j in 0..n {
                let s = self.grid[i][j] as usize;
                if seen[s] {
                    return false;
                }
                seen[s] = true;
            }
            seen.fill(false);
            for j in 0..n {
                let s = self.grid[j][i] as usize;
                if seen[s] {
                    return false;
                }
                seen[s] = true;
            }
        }
        true
    }

    /// Superposition yields all `order^2` ordered symbol pairs.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        if self.order != other.order {
            return false;
        }
        let n = self.order;
        let mut seen = vec![false; (n + 1) * (n + 1)];
        for i in 0..n {
            for j in 0..n {
                let idx = self.grid[i][j] as usize * (n + 1) + other.grid[i][j] as usize;
                if seen[idx] {
                    return false;
                }
                seen[idx] = true;
            }
        }
        true
    }
}

/// `S_0, S_1, ..., S_N, S_{N+1}` for a prime-power order `q`, with `N = q-1`.
#[derive(Clone, Debug, Serialize)]
pub struct MolsSet {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of genuine mutually orthogonal Latin squares, `N(q)`.
    pub fn count(&self) -> usize {
        self.squares.len() - 2
    }

    /// `f(q) = N(q) + 1`, the number of refinements per sub-partition.
    pub fn f(&self) -> usize {
        self.count() + 1
    }

    /// All squares in index order `S_0..=S_{N+1}`.
    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn square(&self, j: usize) -> &LatinSquare {
        &self.squares[j]
    }

    pub fn all_pairs_orthogonal(&self) -> bool {
        let s = &self.squares;
        (0..s.len()).all(|a| (a + 1..s.len()).all(|b| s[a].is_orthogonal_to(&s[b])))
    }
}

pub fn generate_mols(q: u64) -> Result<MolsSet> {
    let field = FiniteField::new(q).map_err(|e| match e {
        Error::NotPrimePower { q } => Error::InvalidParameter(format!(
            "Latin square order {q} is not a prime power; no MOLS count is available for it"
        )),
        other => other,
    })?;
    let n = q as usize;
    let mut squares = Vec::with_capacity(n + 1);
    squares.push(LatinSquare::new(
        (0..n).map(|i| vec![i as u32 + 1; n]).collect(),
        true,
    )?);
    for a in 1..n as u8 {
        let grid = (0..n as u8)
            .map(|i| {
                (0..n as u8)
                    .map(|j| field.add(field.mul(a, i), j) as u32 + 1)
                    .collect()
            })
            .collect();
        squares.push(LatinSquare::new(grid, false)?);
    }
    squares.push(LatinSquare::new(
        (0..n).map(|_| (1..=n as u32).collect()).collect(),
        true,
    )?);
    Ok(MolsSet { order: n, squares })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two() {
        let m = generate_mols(2).unwrap();
        assert_eq!(m.count(), 1);
        assert_eq!(m.square(1).grid(), &[vec![1, 2], vec![2, 1]]);
        assert_eq!(m.square(0).grid(), &[vec![1, 1], vec![2, 2]]);
        assert_eq!(m.square(2).grid(), &[vec![1, 2], vec![1, 2]]);
        assert!(m.square(0).is_auxiliary() && m.square(2).is_auxiliary());
        assert!(m.all_pairs_orthogonal());
    }

    #[test]
    fn order_three_superposition() {
        let m = generate_mols(3).unwrap();
        assert_eq!(m.count(), 2);
        let (a, b) = (m.square(1), m.square(2));
        let mut pairs: Vec<(u32, u32)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (a.get(i, j), b.get(i, j))))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 9);
    }

    #[test]
    fn prime_power_orders_are_complete_sets() {
        for q in [4, 5, 7, 8, 9] {
            let m = generate_mols(q).unwrap();
            assert_eq!(m.count(), q as usize - 1);
            assert!(m.squares()[1..=m.count()].iter().all(LatinSquare::is_latin));
            assert!(m.all_pairs_orthogonal(), "q={q}");
        }
    }

    #[test]
    fn non_prime_power_is_rejected() {
        let err = generate_mols(6).unwrap_err();
        assert!(err.to_string().contains("not a prime power"));
    }

    #[test]
    fn square_validation() {
        assert!(LatinSquare::new(vec![vec![1, 1], vec![2, 2]], false).is_err());
        assert!(LatinSquare::new(vec![vec![1, 3], vec![2, 1]], false).is_err());
        assert!(LatinSquare::new(vec![vec![1, 2]], false).is_err());
    }
}
