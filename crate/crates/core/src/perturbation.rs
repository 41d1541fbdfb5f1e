//! First-order perturbation analysis of the square-root Hamiltonian to
//! order α⁴.
//!
//! Expanding the square root and pushing `L² ∓ iα σ·ê_r − α²` through its
//! angular eigenvalues leaves the nonrelativistic Hamiltonian plus
//!
//! ```text
//! H₁ = −(1/2m)(p²/2m)² − (α²/2m)(l+½)/(j+½)/r² + (α²/2m)/r²
//! ```
//!
//! whose expectation value in the `|n l ½ j m⟩` states splits into a
//! kinetic part ΔE₁₀ and an angular part ΔE₁₁.

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::hydrogen::{energy_nonrel, expectation_inv_r, expectation_inv_r2, PhysicalParams};
use crate::quantum::{check_two_j, Branch, CouplingSign, QuantumNumbers};
use crate::scalar::Real;

/// Binding-energy decomposition of one state (rest mass excluded).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown<T> {
    pub e_n: T,
    pub delta_e10: T,
    pub delta_e11: T,
    pub total: T,
    pub qn: QuantumNumbers,
    pub sign: CouplingSign,
}

/// `ε_j` exact and truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonResult<T> {
    pub exact: T,
    pub approx: T,
    pub two_j: u32,
    pub alpha: T,
}

impl<T: Real> EpsilonResult<T> {
    pub fn new(two_j: u32, alpha: T) -> Result<Self> {
        Ok(Self { exact: epsilon_exact(two_j, alpha)?, approx: epsilon_approx(two_j, alpha)?, two_j, alpha })
    }
}

fn kappa<T: Real>(two_j: u32) -> T {
    T::half(two_j as i64 + 1)
}

/// `ε_j = (j+½) − √((j+½)² − α²)`, evaluated as `α² / ((j+½) + √(...))`.
pub fn epsilon_exact<T: Real>(two_j: u32, alpha: T) -> Result<T> {
    check_two_j(two_j)?;
    let k = kappa::<T>(two_j);
    if !(alpha >= T::zero()) || alpha >= k {
        bail!(Domain, "alpha = {alpha} outside [0, j + 1/2) for j = {two_j}/2");
    }
    let a2 = alpha * alpha;
    Ok(a2 / (k + (k * k - a2).sqrt()))
}

/// `ε_j ≈ α²/(2j+1)`.
pub fn epsilon_approx<T: Real>(two_j: u32, alpha: T) -> Result<T> {
    check_two_j(two_j)?;
    if !(alpha >= T::zero()) {
        bail!(Domain, "alpha must be non-negative, got {alpha}");
    }
    Ok(alpha * alpha / T::int(two_j as i64 + 1))
}

/// `λ = l − ε_j`.
pub fn lambda_value<T: Real>(l: u32, two_j: u32, alpha: T) -> Result<T> {
    Branch::of(l, two_j)?;
    Ok(T::int(l as i64) - epsilon_exact(two_j, alpha)?)
}

/// `λ(λ+1) ≈ l(l+1) − α²(l+½)/(j+½)`.
pub fn centrifugal_approx<T: Real>(l: u32, two_j: u32, alpha: T) -> Result<T> {
    Branch::of(l, two_j)?;
    let lf = T::int(l as i64);
    Ok(lf * (lf + T::one()) - alpha * alpha * (lf + T::of(0.5)) / kappa::<T>(two_j))
}

/// The two evaluations of ΔE₁₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticCorrection<T> {
    /// `−(1/2m)[E_n² − 2E_n⟨V⟩ + ⟨V²⟩]` from the radial moments.
    pub composed: T,
    /// `E_n (α²/n²)(n/(l+½) − ¾)`.
    pub closed: T,
}

impl<T: Real> KineticCorrection<T> {
    pub fn relative_gap(&self) -> T {
        ((self.composed - self.closed) / self.closed).abs()
    }
}

pub fn delta_e10_paths<T: Real>(n: u32, l: u32, params: &PhysicalParams<T>) -> Result<KineticCorrection<T>> {
    if l >= n {
        bail!(Argument, "l = {l} must be <= n - 1");
    }
    let (m, a) = (params.mass, params.alpha);
    let e_n = energy_nonrel(n, params)?;
    let v1 = -a * expectation_inv_r(n, params)?;
    let v2 = a * a * expectation_inv_r2(n, l, params)?;
    // (p²/2m)² = (H₀ − V)², so the cross term enters as −2E_n⟨V⟩
    let composed = -(e_n * e_n - T::of(2.0) * e_n * v1 + v2) / (T::of(2.0) * m);
    let nf = T::int(n as i64);
    let closed = e_n * (a * a / (nf * nf)) * (nf / (T::int(l as i64) + T::of(0.5)) - T::of(0.75));
    Ok(KineticCorrection { composed, closed })
}

/// ΔE₁₀, the `−p⁴/(8m³)` shift. Both routes are evaluated; a disagreement
/// beyond `1e-12` relative is reported as an error.
pub fn delta_e10<T: Real>(n: u32, l: u32, params: &PhysicalParams<T>) -> Result<T> {
    let paths = delta_e10_paths(n, l, params)?;
    if paths.relative_gap() > T::of(1e-12) {
        bail!(Consistency, "kinetic correction routes disagree: {} vs {}", paths.composed, paths.closed);
    }
    Ok(paths.closed)
}

/// ΔE₁₁ = `E_n (α²/n) [1/(j+½) − 1/(l+½)]`.
pub fn delta_e11<T: Real>(n: u32, l: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<T> {
    Branch::of(l, two_j)?;
    if l >= n {
        bail!(Argument, "l = {l} must be <= n - 1");
    }
    let e_n = energy_nonrel(n, params)?;
    let a2 = params.alpha * params.alpha;
    let nf = T::int(n as i64);
    Ok(e_n * (a2 / nf) * (T::one() / kappa::<T>(two_j) - T::one() / (T::int(l as i64) + T::of(0.5))))
}

/// Binding energy through order α⁴:
/// `E_n [1 − (α²/n²)(¾ − n/(j+½))]`.
pub fn energy_alpha4<T: Real>(n: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<T> {
    check_two_j(two_j)?;
    if n < 1 || two_j >= 2 * n {
        bail!(Argument, "j = {two_j}/2 out of range for n = {n}");
    }
    let e_n = energy_nonrel(n, params)?;
    let nf = T::int(n as i64);
    let a2 = params.alpha * params.alpha;
    Ok(e_n * (T::one() - a2 / (nf * nf) * (T::of(0.75) - nf / kappa::<T>(two_j))))
}

/// Shift of [`energy_alpha4`] relative to `E_n`.
pub fn alpha4_shift<T: Real>(n: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<T> {
    check_two_j(two_j)?;
    if n < 1 || two_j >= 2 * n {
        bail!(Argument, "j = {two_j}/2 out of range for n = {n}");
    }
    let e_n = energy_nonrel(n, params)?;
    let nf = T::int(n as i64);
    Ok(e_n * params.alpha * params.alpha / (nf * nf) * (nf / kappa::<T>(two_j) - T::of(0.75)))
}

/// Assembles E_n, ΔE₁₀ and ΔE₁₁ for one state.
///
/// `sign` is carried for bookkeeping only: neither correction depends on it.
pub fn breakdown<T: Real>(qn: QuantumNumbers, sign: CouplingSign, params: &PhysicalParams<T>) -> Result<EnergyBreakdown<T>> {
    let e_n = energy_nonrel(qn.n(), params)?;
    let delta_e10 = delta_e10(qn.n(), qn.l(), params)?;
    let delta_e11 = delta_e11(qn.n(), qn.l(), qn.two_j(), params)?;
    Ok(EnergyBreakdown { e_n, delta_e10, delta_e11, total: e_n + delta_e10 + delta_e11, qn, sign })
}
