use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    /// Every row has weight `r+1`, every column weight `t`, rows pairwise
    /// meet in at most one coordinate.
    Strict,
    General,
}

/// A binary code given as the null space of a parity-check matrix, together
/// with its declared locality `r` and availability `t`.
#[derive(Clone, Debug)]
pub struct AvailabilityCode {
    h: BitMatrix,
    r: usize,
    t: usize,
    kind: CodeKind,
    k: OnceLock<usize>,
    construction: String,
    parameters: Value,
}

/// JSON sidecar written next to a serialized parity-check matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeSidecar {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub t: usize,
    pub kind: CodeKind,
    pub k: usize,
    pub construction: String,
    pub parameters: Value,
}

impl AvailabilityCode {
    pub fn new(h: BitMatrix, r: usize, t: usize, kind: CodeKind) -> Self {
        AvailabilityCode {
            h,
            r,
            t,
            kind,
            k: OnceLock::new(),
            construction: "external".into(),
            parameters: Value::Null,
        }
    }

    pub fn with_provenance(mut self, construction: impl Into<String>, parameters: Value) -> Self {
        self.construction = construction.into();
        self.parameters = parameters;
        self
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    /// Dimension `n - rank(H)`, computed once.
    pub fn k(&self) -> usize {
        *self.k.get_or_init(|| self.n() - self.h.rank())
    }

    /// Rate `k/n` as a float; use [`k`](Self::k) and [`n`](Self::n) for exact work.
    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    /// Generator matrix: a basis of the null space of `H`.
    pub fn generator(&self) -> BitMatrix {
        let (rank, basis) = self.h.rank_and_nullspace();
        let _ = self.k.set(self.n() - rank);
        basis
    }

    pub fn sidecar(&self) -> CodeSidecar {
        CodeSidecar {
            n: self.n(),
            m: self.m(),
            r: self.r,
            t: self.t,
            kind: self.kind,
            k: self.k(),
            construction: self.construction.clone(),
            parameters: self.parameters.clone(),
        }
    }
}
