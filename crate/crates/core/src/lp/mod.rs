//! Linear-programming upper bound on the number of codewords of a code with
//! locality and availability, via the MacWilliams identities.

mod model;
pub mod simplex;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{format_ratio, BoundKind, BoundResult};
use crate::error::{Error, Result};

pub use model::{build_lp, Constraint, LpModel, ModelCounts};
pub use simplex::{LpStatus, Sense, DEFAULT_PIVOT_LIMIT, FLOAT_TOLERANCE};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpOptions {
    pub mode: SolverMode,
    pub strengthen: bool,
    pub pivot_limit: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            mode: SolverMode::Exact,
            strengthen: false,
            pivot_limit: DEFAULT_PIVOT_LIMIT,
        }
    }
}

/// Solution of an [`LpModel`]. `codewords` is the objective `1 + sum A_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub mode: SolverMode,
    pub codewords: Option<f64>,
    /// Set in exact mode when optimal.
    pub codewords_exact: Option<BigRational>,
    /// `A_{t+1}, ..., A_n` at the optimum.
    pub a: Vec<f64>,
    pub a_exact: Option<Vec<BigRational>>,
    pub pivots: usize,
}

pub fn solve_lp(model: &LpModel, mode: SolverMode, pivot_limit: usize) -> Result<LpSolution> {
    let nv = model.num_vars();
    let sol = match mode {
        SolverMode::Exact => {
            let objective = vec![BigRational::one(); nv];
            let rows: Vec<_> = model
                .constraints
                .iter()
                .map(|c| (c.coeffs.clone(), c.sense, c.rhs.clone()))
                .collect();
            let s = simplex::solve(
                &simplex::Problem {
                    objective: &objective,
                    rows: &rows,
                },
                pivot_limit,
            )?;
            let codewords_exact = s.value.map(|v| v + BigRational::one());
            LpSolution {
                status: s.status,
                mode,
                codewords: codewords_exact.as_ref().and_then(|v| v.to_f64()),
                codewords_exact,
                a: s.x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
                a_exact: (s.status == LpStatus::Optimal).then_some(s.x),
                pivots: s.pivots,
            }
        }
        SolverMode::Float => {
            let mut rows: Vec<_> = model.constraints.iter().map(normalized_row).collect();
            // Column equilibration: substitute x_j = y_j / s_j.
            let scale: Vec<f64> = (0..nv)
                .map(|j| {
                    let s = rows.iter().map(|(c, _, _)| c[j].abs()).fold(0.0, f64::max);
                    if s > 0.0 {
                        s
                    } else {
                        1.0
                    }
                })
                .collect();
            for (c, _, _) in rows.iter_mut() {
                for (v, s) in c.iter_mut().zip(&scale) {
                    *v /= s;
                }
            }
            let objective: Vec<f64> = scale.iter().map(|s| 1.0 / s).collect();
            let s = simplex::solve(
                &simplex::Problem {
                    objective: &objective,
                    rows: &rows,
                },
                pivot_limit,
            )?;
            let a: Vec<f64> = s.x.iter().zip(&scale).map(|(y, s)| y / s).collect();
            LpSolution {
                status: s.status,
                mode,
                codewords: (s.status == LpStatus::Optimal).then(|| 1.0 + a.iter().sum::<f64>()),
                codewords_exact: None,
                a,
                a_exact: None,
                pivots: s.pivots,
            }
        }
    };
    Ok(sol)
}

/// Scales a row so its largest coefficient (or right-hand side) has unit
/// magnitude before rounding to `f64`.
fn normalized_row(c: &Constraint) -> (Vec<f64>, Sense, f64) {
    let scale = c
        .coeffs
        .iter()
        .chain(std::iter::once(&c.rhs))
        .map(|v| v.abs())
        .max()
        .filter(|v| !v.is_zero())
        .unwrap_or_else(BigRational::one);
    let f = |v: &BigRational| (v / &scale).to_f64().unwrap_or(f64::NAN);
    (c.coeffs.iter().map(f).collect(), c.sense, f(&c.rhs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpBound {
    pub bound: BoundResult,
    pub solution: LpSolution,
}

/// `k <= log_q M` where `M` is the optimum of [`build_lp`].
///
/// The value is a real number, so the result carries no exact field; the
/// exact `M` (in exact mode) and the optimal vector are in the diagnostics.
pub fn lp_dimension_bound(q: u64, n: u64, r: u64, t: u64, opts: LpOptions) -> Result<LpBound> {
    let model = build_lp(q, n, r, t, opts.strengthen)?;
    let solution = solve_lp(&model, opts.mode, opts.pivot_limit)?;
    match solution.status {
        LpStatus::Infeasible => return Err(Error::NoCodeUnderRelaxation),
        LpStatus::Unbounded => return Err(Error::Unbounded),
        LpStatus::Optimal => {}
    }
    let m = solution.codewords.expect("optimal solution has a value");
    let value = match &solution.codewords_exact {
        Some(x) => ln_ratio(x) / (q as f64).ln(),
        None => m.ln() / (q as f64).ln(),
    };
    let a: serde_json::Map<String, serde_json::Value> = (0..model.num_vars())
        .map(|v| {
            let val = match &solution.a_exact {
                Some(e) => json!(format_ratio(&e[v])),
                None => json!(solution.a[v]),
            };
            (format!("A_{}", model.weight_of(v)), val)
        })
        .collect();
    let diagnostics = json!({
        "M": m,
        "M_exact": solution.codewords_exact.as_ref().map(format_ratio),
        "mode": opts.mode,
        "strengthened": opts.strengthen,
        "pivots": solution.pivots,
        "a": a,
    });
    let params = [("q", q), ("n", n), ("r", r), ("t", t)]
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let bound = BoundResult {
        name: "lp".into(),
        params,
        exact: None,
        value,
        kind: BoundKind::Dimension,
        diagnostics: Some(diagnostics),
    };
    Ok(LpBound { bound, solution })
}

/// Natural logarithm of a positive rational whose parts may exceed `f64`.
fn ln_ratio(x: &BigRational) -> f64 {
    debug_assert!(x.is_positive());
    let ln_big = |v: &num_bigint::BigInt| {
        let bits = v.bits();
        let shift = bits.saturating_sub(60);
        let top = (v >> shift).to_f64().unwrap_or(f64::NAN);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln_big(x.numer()) - ln_big(x.denom())
}
