//! CSV tables of the bound curves, one row per locality `r`.
//!
//! Each bound column `c` is followed by `c_exact` holding the `p/q` value
//! (empty for non-rational values), and every row ends with a `flag` cell
//! that is empty unless the row was skipped.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::thread;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::bounds::*;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::lp::{lp_dimension_bound, LpOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    Rate3,
    Rate4,
    Dmin3,
    Dmin3MDelta,
    Lp3,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::Rate3,
        FigureId::Rate4,
        FigureId::Dmin3,
        FigureId::Dmin3MDelta,
        FigureId::Lp3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Rate3 => "rate3",
            FigureId::Rate4 => "rate4",
            FigureId::Dmin3 => "dmin3",
            FigureId::Dmin3MDelta => "dmin3_mdelta",
            FigureId::Lp3 => "lp3",
        }
    }

    /// Default locality range.
    pub fn default_range(self) -> (u64, u64) {
        match self {
            FigureId::Rate3 | FigureId::Rate4 => (2, 20),
            FigureId::Dmin3 => (3, 15),
            FigureId::Dmin3MDelta => (3, 10),
            FigureId::Lp3 => (3, LP_DEFAULT_MAX_R),
        }
    }

    /// Bound columns, without `r`, the `_exact` companions and `flag`.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            FigureId::Rate3 => &["greedy_g115", "tamo_barg", "song_yue", "achievable_wzl"],
            FigureId::Rate4 => &["transpose", "tamo_barg", "achievable_wzl"],
            FigureId::Dmin3 => &["shortening_cor1", "tamo_barg_dmin", "wang_dmin"],
            FigureId::Dmin3MDelta => &[
                "shortening_cor1",
                "tamo_barg_dmin",
                "wang_dmin",
                "m_delta",
                "m_delta_max",
            ],
            FigureId::Lp3 => &["lp_bound_rate", "tamo_barg", "huang_griesmer"],
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown figure {s:?}")))
    }
}

/// Largest `r` solved for the LP figure unless the budget is raised.
pub const LP_DEFAULT_MAX_R: u64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub id: FigureId,
    pub r_min: u64,
    pub r_max: u64,
    /// Rows of the LP figure above this locality are skipped and flagged.
    pub lp_max_r: u64,
}

impl FigureSpec {
    pub fn new(id: FigureId) -> Self {
        let (r_min, r_max) = id.default_range();
        FigureSpec {
            id,
            r_min,
            r_max,
            lp_max_r: LP_DEFAULT_MAX_R,
        }
    }

    pub fn with_range(mut self, r_min: u64, r_max: u64) -> Self {
        self.r_min = r_min;
        self.r_max = r_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.r_min < 1 || self.r_max < self.r_min {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= rmin <= rmax, got rmin={}, rmax={}",
                self.r_min, self.r_max
            )));
        }
        if self.r_max > 1000 {
            return Err(Error::InvalidParameter(format!(
                "rmax={} exceeds 1000",
                self.r_max
            )));
        }
        Ok(())
    }
}

/// Cell value for one bound column.
#[derive(Clone, Debug, PartialEq)]
struct Cell {
    value: f64,
    exact: Option<BigRational>,
}

impl From<BoundResult> for Cell {
    fn from(b: BoundResult) -> Self {
        Cell {
            value: b.value,
            exact: b.exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureTable {
    pub id: FigureId,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl FigureTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let fail = |e: &dyn fmt::Display| Error::Output(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(|e| fail(&e))?;
        for row in &self.rows {
            w.write_record(row).map_err(|e| fail(&e))?;
        }
        w.flush().map_err(|e| fail(&e))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }
}

/// Formats with 12 significant digits, no exponent for moderate magnitudes
/// and no trailing zeros.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        let mantissa = format!("{x:.11e}");
        let (m, e) = mantissa.split_once('e').expect("exponent form");
        return format!("{}e{e}", trim_zeros(m));
    };
    trim_zeros(&s)
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn rate_of(k: i64, n: u64) -> Cell {
    let exact = BigRational::new(k.into(), (n as i64).into());
    Cell {
        value: exact.to_f64().unwrap_or(f64::NAN),
        exact: Some(exact),
    }
}

fn figure_n(r: u64) -> u64 {
    binomial(r + 3, 3).to_u64().expect("r is bounded")
}

fn figure_k(r: u64) -> u64 {
    r * (r + 1) * (r + 2) / 6
}

fn compute_row(spec: &FigureSpec, r: u64) -> Result<Vec<Cell>> {
    let cells = match spec.id {
        FigureId::Rate3 => vec![
            rate_greedy_t3(figure_n(r), r)?.0.into(),
            rate_tamo_barg(r, 3)?.into(),
            rate_prime(r, 3)?.into(),
            rate_wzl_achievable(r, 3)?.into(),
        ],
        FigureId::Rate4 => vec![
            rate_transpose(r, 4)?.into(),
            rate_tamo_barg(r, 4)?.into(),
            rate_wzl_achievable(r, 4)?.into(),
        ],
        FigureId::Dmin3 | FigureId::Dmin3MDelta => {
            let (n, k) = (figure_n(r), figure_k(r));
            let mut cells: Vec<Cell> = vec![
                dmin_shortening_simple(n, k, r, 3)?.into(),
                dmin_tamo_barg(n, k, r, 3)?.into(),
                dmin_wang(n, k, r, 3)?.into(),
            ];
            if spec.id == FigureId::Dmin3MDelta {
                cells.push(dmin_m_delta(n, k, r, 3, n - k, 3)?.into());
                cells.push(dmin_m_delta_max(n, k, r, 3)?.into());
            }
            cells
        }
        FigureId::Lp3 => {
            if r > spec.lp_max_r {
                return Err(Error::BudgetExceeded(format!(
                    "r={r} exceeds the LP budget r<={}",
                    spec.lp_max_r
                )));
            }
            let n = (r + 1) * (r + 1);
            let lp = lp_dimension_bound(2, n, r, 3, LpOptions::default())?;
            let huang = dim_huang(2, n, 4, r, 3, &k_opt_griesmer)?
                .as_integer()
                .expect("dimension bounds are integers");
            vec![
                Cell {
                    value: lp.bound.value / n as f64,
                    exact: None,
                },
                rate_tamo_barg(r, 3)?.into(),
                rate_of(huang, n),
            ]
        }
    };
    Ok(cells)
}

fn flag_for(err: &Error) -> String {
    match err {
        Error::BudgetExceeded(_) => format!("skipped: over budget ({err})"),
        _ => format!("skipped: {err}"),
    }
}

/// Computes every row of the figure. Rows are evaluated concurrently and
/// emitted in increasing `r`; a row whose bounds fail is kept with empty
/// cells and the reason in `flag`.
pub fn emit_figure_data(spec: &FigureSpec) -> Result<FigureTable> {
    spec.validate()?;
    let columns = spec.id.columns();
    let mut header = vec!["r".to_string()];
    for c in columns {
        header.push(c.to_string());
        header.push(format!("{c}_exact"));
    }
    header.push("flag".into());

    let rs: Vec<u64> = (spec.r_min..=spec.r_max).collect();
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(rs.len());
    let mut results: Vec<(u64, Result<Vec<Cell>>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let rs = &rs;
                scope.spawn(move || {
                    rs.iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|&r| (r, compute_row(spec, r)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("figure worker panicked"))
            .collect()
    });
    results.sort_by_key(|(r, _)| *r);

    let rows = results
        .into_iter()
        .map(|(r, cells)| {
            let mut row = vec![r.to_string()];
            match cells {
                Ok(cells) => {
                    for c in cells {
                        row.push(format_sig(c.value));
                        row.push(c.exact.as_ref().map(format_ratio).unwrap_or_default());
                    }
                    row.push(String::new());
                }
                Err(e) => {
                    row.extend(std::iter::repeat_n(String::new(), 2 * columns.len()));
                    row.push(flag_for(&e));
                }
            }
            row
        })
        .collect();
    Ok(FigureTable {
        id: spec.id,
        header,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(id: FigureId, r: u64) -> Vec<String> {
        let t = emit_figure_data(&FigureSpec::new(id).with_range(r, r)).unwrap();
        assert_eq!(t.rows.len(), 1);
        t.rows[0].clone()
    }

    #[test]
    fn rate3_first_row() {
        let row = single(FigureId::Rate3, 3);
        assert_eq!(row[0], "3");
        assert_eq!((row[1].as_str(), row[2].as_str()), ("0.55", "11/20"));
        // 162/280 in lowest terms.
        assert_eq!(row[4], "81/140");
        assert_eq!(row[3], "0.578571428571");
        assert_eq!(row[6], "9/16");
        assert_eq!(row[8], "1/2");
        assert_eq!(row.last().unwrap(), "");
    }

    #[test]
    fn rate4_coincidence() {
        let row = single(FigureId::Rate4, 3);
        assert_eq!(row[2], row[4]);
    }

    #[test]
    fn header_layout() {
        let t = emit_figure_data(&FigureSpec::new(FigureId::Dmin3MDelta).with_range(3, 4)).unwrap();
        assert_eq!(t.header.len(), 1 + 2 * 5 + 1);
        assert_eq!(t.header[1], "shortening_cor1");
        assert_eq!(t.header[2], "shortening_cor1_exact");
        assert_eq!(t.header.last().unwrap(), "flag");
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows.iter().all(|r| r.len() == t.header.len()));
    }

    #[test]
    fn lp_rows_over_budget_are_flagged() {
        let spec = FigureSpec {
            lp_max_r: 2,
            ..FigureSpec::new(FigureId::Lp3).with_range(2, 3)
        };
        let t = emit_figure_data(&spec).unwrap();
        assert_eq!(t.rows[0].last().unwrap(), "");
        assert!(t.rows[1]
            .last()
            .unwrap()
            .starts_with("skipped: over budget"));
        assert!(t.rows[1][1..t.rows[1].len() - 1]
            .iter()
            .all(String::is_empty));
        // The LP column has no rational form.
        assert_eq!(t.rows[0][2], "");
    }

    #[test]
    fn invalid_ranges() {
        assert!(emit_figure_data(&FigureSpec::new(FigureId::Rate3).with_range(0, 3)).is_err());
        assert!(emit_figure_data(&FigureSpec::new(FigureId::Rate3).with_range(5, 3)).is_err());
        assert!("rate5".parse::<FigureId>().is_err());
        assert_eq!(
            "dmin3_mdelta".parse::<FigureId>().unwrap(),
            FigureId::Dmin3MDelta
        );
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_sig(9.0), "9");
        assert_eq!(format_sig(123456.0), "123456");
        assert_eq!(format_sig(-1.25), "-1.25");
        assert_eq!(format_sig(1e-7), "1e-7");
        assert_eq!(format_sig(9.9999999999999), "10");
        assert_eq!(format_sig(1.5e15), "1.5e15");
    }
}
