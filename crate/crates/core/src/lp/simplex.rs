//! Dense two-phase primal simplex with Bland's rule, generic over the
//! arithmetic so the same code runs in exact rationals and in `f64`.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic used by the solver.
pub trait Scalar: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(x: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Zero within the decision tolerance.
    fn is_zero(&self) -> bool;
    /// Structurally zero; used only to skip work.
    fn is_exact_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn less_than(&self, o: &Self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_ratio(x: &BigRational) -> Self {
        x.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn less_than(&self, o: &Self) -> bool {
        self < o
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Absolute tolerance of the floating-point mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(x: &BigRational) -> Self {
        ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive(&self) -> bool {
        *self > FLOAT_TOLERANCE
    }
    fn is_negative(&self) -> bool {
        *self < -FLOAT_TOLERANCE
    }
    fn less_than(&self, o: &Self) -> bool {
        *self < *o - FLOAT_TOLERANCE
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution<S> {
    pub status: LpStatus,
    /// Objective value `c.x` (without any constant offset); set when optimal.
    pub value: Option<S>,
    pub x: Vec<S>,
    pub pivots: usize,
}

/// `maximize c.x` subject to `rows` and `x >= 0`.
pub struct Problem<'a, S> {
    pub objective: &'a [S],
    pub rows: &'a [(Vec<S>, Sense, S)],
}

struct Tableau<S> {
    a: Vec<Vec<S>>,
    basis: Vec<usize>,
    obj: Vec<S>,
    /// Objective row before pricing out the basis.
    obj_base: Vec<S>,
    width: usize,
    banned: Vec<bool>,
    pivots: usize,
    limit: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self, i: usize) -> &S {
        &self.a[i][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        self.eliminate(row, col);
        self.basis[row] = col;
        self.pivots += 1;
    }

    fn eliminate(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            if !v.is_exact_zero() {
                *v = v.div(&p);
            }
        }
        let pivot_row = self.a[row].clone();
        let nonzero: Vec<usize> = (0..=self.width)
            .filter(|&j| !pivot_row[j].is_exact_zero())
            .collect();
        let eliminate = |target: &mut Vec<S>| {
            let f = target[col].clone();
            if f.is_exact_zero() {
                return;
            }
            for &j in &nonzero {
                target[j] = target[j].sub(&f.mul(&pivot_row[j]));
            }
            target[col] = S::zero();
        };
        for (i, r) in self.a.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.obj);
    }

    fn set_objective(&mut self, base: Vec<S>) {
        self.obj_base = base;
        self.price();
    }

    fn price(&mut self) {
        self.obj = self.obj_base.clone();
        for i in 0..self.a.len() {
            let f = self.obj[self.basis[i]].clone();
            if !f.is_exact_zero() {
                for j in 0..=self.width {
                    if !self.a[i][j].is_exact_zero() {
                        self.obj[j] = self.obj[j].sub(&f.mul(&self.a[i][j]));
                    }
                }
            }
        }
    }

    /// Runs primal simplex iterations with Bland's rule on the current
    /// objective row (entries are negated reduced costs).
    fn optimize(&mut self) -> Result<Step> {
        loop {
            let Some(enter) =
                (0..self.width).find(|&j| !self.banned[j] && self.obj[j].is_negative())
            else {
                return Ok(Step::Optimal);
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.a.len() {
                let coef = &self.a[i][enter];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i).div(coef);
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio.less_than(best)
                            || (!best.less_than(&ratio) && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Ok(Step::Unbounded);
            };
            if self.pivots >= self.limit {
                return Err(Error::IterationLimit { limit: self.limit });
            }
            self.pivot(row, enter);
        }
    }
}

pub const DEFAULT_PIVOT_LIMIT: usize = 100_000;

pub fn solve<S: Scalar>(problem: &Problem<'_, S>, pivot_limit: usize) -> Result<LpSolution<S>> {
    let nv = problem.objective.len();
    // Orient rows so every right-hand side is nonnegative.
    let rows: Vec<(Vec<S>, Sense, S)> = problem
        .rows
        .iter()
        .map(|(c, s, b)| {
            debug_assert_eq!(c.len(), nv);
            if b.is_negative() {
                let flipped = match s {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                (
                    c.iter().map(|v| S::zero().sub(v)).collect(),
                    flipped,
                    S::zero().sub(b),
                )
            } else {
                (c.clone(), *s, b.clone())
            }
        })
        .collect();

    let n_slack = rows.iter().filter(|(_, s, _)| *s != Sense::Eq).count();
    let n_art = rows.iter().filter(|(_, s, _)| *s != Sense::Le).count();
    let width = nv + n_slack + n_art;
    let mut a = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut slack, mut art) = (nv, nv + n_slack);
    let mut is_art = vec![false; width];
    for (coeffs, sense, b) in &rows {
        let mut row = vec![S::zero(); width + 1];
        row[..nv].clone_from_slice(coeffs);
        row[width] = b.clone();
        match sense {
            Sense::Le => {
                row[slack] = S::one();
                basis.push(slack);
                slack += 1;
            }
            Sense::Ge => {
                row[slack] = S::zero().sub(&S::one());
                slack += 1;
                row[art] = S::one();
                is_art[art] = true;
                basis.push(art);
                art += 1;
            }
            Sense::Eq => {
                row[art] = S::one();
                is_art[art] = true;
                basis.push(art);
                art += 1;
            }
        }
        a.push(row);
    }

    let mut tab = Tableau {
        a,
        basis,
        obj: vec![S::zero(); width + 1],
        obj_base: vec![S::zero(); width + 1],
        width,
        banned: vec![false; width],
        pivots: 0,
        limit: pivot_limit,
    };

    if n_art > 0 {
        // Phase one: maximise minus the sum of artificials.
        let base = (0..=width)
            .map(|j| {
                if j < width && is_art[j] {
                    S::one()
                } else {
                    S::zero()
                }
            })
            .collect();
        tab.set_objective(base);
        tab.optimize()?;
        if tab.obj[width].is_negative() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: None,
                x: Vec::new(),
                pivots: tab.pivots,
            });
        }
        // Drive artificials out of the basis. One that cannot leave sits on a
        // redundant row and stays at zero for the rest of the solve.
        for i in 0..tab.a.len() {
            if is_art[tab.basis[i]] {
                if let Some(j) = (0..width).find(|&j| !is_art[j] && !tab.a[i][j].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }
        tab.banned = is_art;
    }

    // Phase two.
    let mut base = vec![S::zero(); width + 1];
    for (j, c) in problem.objective.iter().enumerate() {
        base[j] = S::zero().sub(c);
    }
    tab.set_objective(base);
    match tab.optimize()? {
        Step::Unbounded => Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: None,
            x: Vec::new(),
            pivots: tab.pivots,
        }),
        Step::Optimal => {
            let mut x = vec![S::zero(); nv];
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < nv {
                    x[b] = tab.rhs(i).clone();
                }
            }
            Ok(LpSolution {
                status: LpStatus::Optimal,
                value: Some(tab.obj[width].clone()),
                x,
                pivots: tab.pivots,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }

    fn solve_exact(c: &[i64], rows: &[(&[i64], Sense, i64)]) -> LpSolution<BigRational> {
        let objective: Vec<BigRational> = c.iter().map(|&v| q(v)).collect();
        let rows: Vec<(Vec<BigRational>, Sense, BigRational)> = rows
            .iter()
            .map(|(a, s, b)| (a.iter().map(|&v| q(v)).collect(), *s, q(*b)))
            .collect();
        solve(
            &Problem {
                objective: &objective,
                rows: &rows,
            },
            DEFAULT_PIVOT_LIMIT,
        )
        .unwrap()
    }

    #[test]
    fn single_bound() {
        let s = solve_exact(&[1], &[(&[1], Sense::Le, 5)]);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, Some(q(5)));
    }

    #[test]
    fn box_constraints() {
        let s = solve_exact(&[1, 1], &[(&[1, 0], Sense::Le, 1), (&[0, 1], Sense::Le, 1)]);
        assert_eq!(s.value, Some(q(2)));
        assert_eq!(s.x, vec![q(1), q(1)]);
    }

    #[test]
    fn degenerate_redundant_rows_terminate() {
        // Many copies of the same face through a degenerate vertex.
        let rows = [
            (&[1, 1, 0][..], Sense::Le, 0),
            (&[1, 1, 0], Sense::Le, 0),
            (&[1, 0, 1], Sense::Le, 1),
            (&[1, 0, 1], Sense::Le, 1),
            (&[0, 1, 1], Sense::Eq, 1),
            (&[0, 1, 1], Sense::Eq, 1),
        ];
        let s = solve_exact(&[2, 1, 1], &rows);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, Some(q(1)));
    }

    #[test]
    fn beale_cycling_example() {
        // Classic instance on which the largest-coefficient rule cycles.
        let c = [
            BigRational::new(3.into(), 4.into()),
            q(-150),
            BigRational::new(1.into(), 50.into()),
            q(-6),
        ];
        let rows = vec![
            (
                vec![
                    BigRational::new(1.into(), 4.into()),
                    q(-60),
                    BigRational::new((-1).into(), 25.into()),
                    q(9),
                ],
                Sense::Le,
                q(0),
            ),
            (
                vec![
                    BigRational::new(1.into(), 2.into()),
                    q(-90),
                    BigRational::new((-1).into(), 50.into()),
                    q(3),
                ],
                Sense::Le,
                q(0),
            ),
            (vec![q(0), q(0), q(1), q(0)], Sense::Le, q(1)),
        ];
        let s = solve(
            &Problem {
                objective: &c,
                rows: &rows,
            },
            DEFAULT_PIVOT_LIMIT,
        )
        .unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, Some(BigRational::new(1.into(), 20.into())));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let s = solve_exact(&[1], &[(&[1], Sense::Le, 1), (&[1], Sense::Ge, 2)]);
        assert_eq!(s.status, LpStatus::Infeasible);
        let s = solve_exact(&[1, 0], &[(&[0, 1], Sense::Le, 1)]);
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn negative_rhs_and_equalities() {
        // x + y = 4, x - y >= -2  =>  max y = 3.
        let s = solve_exact(
            &[0, 1],
            &[(&[1, 1], Sense::Eq, 4), (&[1, -1], Sense::Ge, -2)],
        );
        assert_eq!(s.value, Some(q(3)));
    }

    #[test]
    fn float_mode_agrees() {
        let c = [3.0, 2.0];
        let rows = vec![
            (vec![1.0, 1.0], Sense::Le, 4.0),
            (vec![1.0, 3.0], Sense::Le, 6.0),
            (vec![1.0, 0.0], Sense::Le, 3.0),
        ];
        let s = solve(
            &Problem {
                objective: &c,
                rows: &rows,
            },
            DEFAULT_PIVOT_LIMIT,
        )
        .unwrap();
        assert!((s.value.unwrap() - 11.0).abs() < 1e-12);
    }

    #[test]
    fn iteration_limit_is_distinct() {
        let objective = vec![q(1), q(1)];
        let rows = vec![
            (vec![q(1), q(0)], Sense::Le, q(1)),
            (vec![q(0), q(1)], Sense::Le, q(1)),
        ];
        let err = solve(
            &Problem {
                objective: &objective,
                rows: &rows,
            },
            1,
        )
        .unwrap_err();
        assert_eq!(err, Error::IterationLimit { limit: 1 });
    }
}
