//! One binding-energy record per (method, state, α).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quantum::CouplingSign;
use crate::radial::RadialBasisSpec;

/// How a binding energy was obtained. Declaration order is output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "PERTURBATIVE")]
    Perturbative,
    #[serde(rename = "DIRAC")]
    Dirac,
    #[serde(rename = "KG")]
    Kg,
    #[serde(rename = "SQRT_SOLVER")]
    SqrtSolver,
    #[serde(rename = "NONREL")]
    Nonrel,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Perturbative, Method::Dirac, Method::Kg, Method::SqrtSolver, Method::Nonrel];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Perturbative => "PERTURBATIVE",
            Method::Dirac => "DIRAC",
            Method::Kg => "KG",
            Method::SqrtSolver => "SQRT_SOLVER",
            Method::Nonrel => "NONREL",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry<T> {
    pub method: Method,
    pub n: u32,
    pub l: u32,
    /// `None` for the spinless channel.
    pub two_j: Option<u32>,
    pub alpha: T,
    /// Total energy minus rest mass.
    pub binding: T,
    /// `|E(N_max) − E(N_prev)|` for basis solves; zero for closed forms and
    /// for single-size solves.
    pub convergence_estimate: T,
    pub sign: CouplingSign,
    pub basis: Option<RadialBasisSpec<T>>,
}

impl<T: Copy> SpectrumEntry<T> {
    pub fn closed_form(method: Method, n: u32, l: u32, two_j: Option<u32>, alpha: T, binding: T, zero: T, sign: CouplingSign) -> Self {
        Self { method, n, l, two_j, alpha, binding, convergence_estimate: zero, sign, basis: None }
    }

    /// Deterministic output ordering: method, n, 2j, l.
    pub fn sort_key(&self) -> (Method, u32, Option<u32>, u32) {
        (self.method, self.n, self.two_j, self.l)
    }
}

/// Sorts rows into the canonical output order.
pub fn sort_entries<T: Copy>(entries: &mut [SpectrumEntry<T>]) {
    entries.sort_by_key(|e| e.sort_key());
}
