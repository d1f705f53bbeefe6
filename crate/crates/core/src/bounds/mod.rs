//! Rate, minimum-distance and dimension bounds for codes with locality and
//! availability. All arithmetic is exact; floats appear only in
//! [`BoundResult::value`].

mod dimension;
mod dmin;
mod profile;
mod rate;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

pub use dimension::{dim_huang, k_opt_griesmer};
pub use dmin::{
    dmin_m_delta, dmin_m_delta_max, dmin_shortening, dmin_shortening_simple, dmin_tamo_barg,
    dmin_wang, tamo_barg_distance, wang_distance,
};
pub use profile::{
    ghw_profile_linear, ghw_profile_m_delta, ghw_profile_simple, GhwBoundProfile, ProfileVariant,
};
pub use rate::{
    rate_greedy_t3, rate_prime, rate_tamo_barg, rate_transpose, rate_transpose_step,
    rate_wzl_achievable, GreedyDiagnostics,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Rate,
    Distance,
    Dimension,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Rate => "rate",
            BoundKind::Distance => "distance",
            BoundKind::Dimension => "dimension",
        })
    }
}

/// A named bound value. `exact` is absent only for values that are not
/// rational, such as logarithms.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub name: String,
    pub params: Map<String, Value>,
    pub exact: Option<BigRational>,
    pub value: f64,
    pub kind: BoundKind,
    pub diagnostics: Option<Value>,
}

impl BoundResult {
    pub(crate) fn exact(
        name: &str,
        kind: BoundKind,
        params: &[(&str, i64)],
        value: BigRational,
    ) -> Self {
        BoundResult {
            name: name.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), Value::from(*v)))
                .collect(),
            value: to_f64(&value),
            exact: Some(value),
            kind,
            diagnostics: None,
        }
    }

    pub(crate) fn integer(name: &str, kind: BoundKind, params: &[(&str, i64)], value: i64) -> Self {
        Self::exact(name, kind, params, BigRational::from_integer(value.into()))
    }

    pub(crate) fn with_diagnostics(mut self, d: Value) -> Self {
        self.diagnostics = Some(d);
        self
    }

    /// The exact value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.exact
            .as_ref()
            .filter(|x| x.is_integer())
            .and_then(|x| x.to_integer().to_i64())
    }
}

/// `p/q` in lowest terms, with `q = 1` written out.
pub fn format_ratio(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl Serialize for BoundResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fields = if self.diagnostics.is_some() { 6 } else { 5 };
        let mut st = s.serialize_struct("BoundResult", fields)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("exact", &self.exact.as_ref().map(format_ratio))?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("kind", &self.kind)?;
        if let Some(d) = &self.diagnostics {
            st.serialize_field("diagnostics", d)?;
        }
        st.end()
    }
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}

pub(crate) fn ceil_ratio(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().expect("bound fits in i64")
}

pub(crate) fn checked_param(name: &str, v: u64) -> crate::Result<i64> {
    i64::try_from(v)
        .ok()
        .filter(|&v| v < (1 << 40))
        .ok_or_else(|| crate::Error::InvalidParameter(format!("{name}={v} is out of range")))
}

pub(crate) fn product<I: IntoIterator<Item = BigRational>>(it: I) -> BigRational {
    it.into_iter().fold(BigRational::one(), |acc, x| acc * x)
}

pub(crate) fn is_unit_interval(x: &BigRational) -> bool {
    *x >= BigRational::zero() && *x <= BigRational::one()
}
