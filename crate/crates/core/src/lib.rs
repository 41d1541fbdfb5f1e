//! Binding energies of the spin-½ square-root Coulomb Hamiltonian.
//!
//! Four independent routes to the same levels: the α⁴ perturbative formula,
//! the exact Dirac formula, the Klein-Gordon-like 2-spinor equation, and
//! direct spectral diagonalization of `√(m² + p² + c/r²) − α/r` per angular
//! channel. Everything is generic over [`scalar::Real`]; the aliases below
//! fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod angular;
pub mod error;
pub mod hydrogen;
pub mod perturbation;
pub mod quadrature;
pub mod quantum;
pub mod radial;
pub mod reference;
pub mod scalar;
pub mod solver;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use nalgebra;
pub use quantum::{Branch, CouplingSign, QuantumNumbers};
pub use scalar::Real;
pub use spectrum::Method;

pub type Params = hydrogen::PhysicalParams<f64>;
pub type Block = angular::AngularBlock<f64>;
pub type Field = angular::FieldConfig<f64>;
pub type BasisSpec = radial::RadialBasisSpec<f64>;
pub type Basis = radial::RadialBasis<f64>;
pub type Operator = radial::OperatorMatrix<f64>;
pub type Entry = spectrum::SpectrumEntry<f64>;
pub type Breakdown = perturbation::EnergyBreakdown<f64>;
pub type Budget = reference::CorrectionBudget<f64>;
pub type Channel = reference::KgChannel<f64>;
pub type Study = solver::ConvergenceStudy<f64>;
pub type Comparison = solver::Comparison<f64>;
