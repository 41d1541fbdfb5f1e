//! Nonrelativistic hydrogen: energies, radial functions and radial moments.
//!
//! Every closed-form moment has a quadrature counterpart
//! ([`expectation_r_power_quadrature`]) that integrates the exact radial
//! density instead of using the formula.

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::quadrature::GaussLaguerre;
use crate::scalar::{ln_factorial_ratio, Real};

/// Particle mass and coupling in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams<T> {
    pub mass: T,
    pub alpha: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(mass: T, alpha: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            bail!(Argument, "mass must be positive and finite, got {mass}");
        }
        if !(alpha > T::zero() && alpha < T::one()) {
            bail!(Argument, "alpha must lie in (0, 1), got {alpha}");
        }
        Ok(Self { mass, alpha })
    }

    /// Same mass, different coupling.
    pub fn with_alpha(&self, alpha: T) -> Result<Self> {
        Self::new(self.mass, alpha)
    }
}

fn check_nl(n: u32, l: u32) -> Result<()> {
    if n < 1 {
        bail!(Argument, "n must be >= 1, got {n}");
    }
    if l >= n {
        bail!(Argument, "l = {l} must be <= n - 1 = {}", n - 1);
    }
    Ok(())
}

/// `a₀ = 1/(mα)`.
pub fn bohr_radius<T: Real>(params: &PhysicalParams<T>) -> T {
    T::one() / (params.mass * params.alpha)
}

/// `E_n = −mα²/(2n²)`.
pub fn energy_nonrel<T: Real>(n: u32, params: &PhysicalParams<T>) -> Result<T> {
    if n < 1 {
        bail!(Argument, "n must be >= 1, got {n}");
    }
    let nf = T::int(n as i64);
    Ok(-params.mass * params.alpha * params.alpha / (T::of(2.0) * nf * nf))
}

/// A bound hydrogenic radial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState<T> {
    pub n: u32,
    pub l: u32,
    pub params: PhysicalParams<T>,
}

impl<T: Real> RadialState<T> {
    pub fn new(n: u32, l: u32, params: PhysicalParams<T>) -> Result<Self> {
        check_nl(n, l)?;
        Ok(Self { n, l, params })
    }

    fn scale(&self) -> T {
        // r = (n a₀ / 2) ρ
        T::int(self.n as i64) * bohr_radius(&self.params) / T::of(2.0)
    }

    /// `ln` of the normalization constant of `R_{nl}` w.r.t. `ρ^l e^{−ρ/2} L(ρ)`.
    fn ln_norm(&self) -> T {
        let n = T::int(self.n as i64);
        let two_over = T::of(2.0) / (n * bohr_radius(&self.params));
        let half = T::of(0.5);
        // (n−l−1)! / (n+l)!
        let ln_fact = -ln_factorial_ratio::<T>(self.n + self.l, self.n - self.l - 1);
        T::of(1.5) * two_over.ln() + half * (ln_fact - (T::of(2.0) * n).ln())
    }

    /// `R_{nl}(r)`, positive as `r → 0⁺`.
    pub fn radial(&self, r: T) -> Result<T> {
        if !(r >= T::zero()) {
            bail!(Argument, "radius must be non-negative, got {r}");
        }
        let rho = r / self.scale();
        let poly = laguerre(self.n - self.l - 1, T::int(2 * self.l as i64 + 1), rho);
        Ok(self.ln_norm().exp() * (-rho / T::of(2.0)).exp() * rho.powi(self.l as i32) * poly)
    }
}

/// Plain three-term recurrence for `L_k^a(x)`; fine at hydrogenic sizes.
fn laguerre<T: Real>(k: u32, a: T, x: T) -> T {
    let mut prev = T::zero();
    let mut cur = T::one();
    for i in 0..k {
        let fi = T::int(i as i64);
        let next = ((T::of(2.0) * fi + T::one() + a - x) * cur - (fi + a) * prev) / (fi + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `R_{nl}(r)` as a free function.
pub fn radial_r<T: Real>(state: &RadialState<T>, r: T) -> Result<T> {
    state.radial(r)
}

/// `⟨1/r⟩ = 1/(a₀ n²)`.
pub fn expectation_inv_r<T: Real>(n: u32, params: &PhysicalParams<T>) -> Result<T> {
    if n < 1 {
        bail!(Argument, "n must be >= 1, got {n}");
    }
    let nf = T::int(n as i64);
    Ok(T::one() / (bohr_radius(params) * nf * nf))
}

/// `⟨1/r²⟩ = 1/(a₀² n³ (l + ½))`.
pub fn expectation_inv_r2<T: Real>(n: u32, l: u32, params: &PhysicalParams<T>) -> Result<T> {
    check_nl(n, l)?;
    let a0 = bohr_radius(params);
    let nf = T::int(n as i64);
    Ok(T::one() / (a0 * a0 * nf * nf * nf * (T::int(l as i64) + T::of(0.5))))
}

/// `⟨1/r³⟩ = 1/(a₀³ n³ l (l + ½)(l + 1))`, divergent for `l = 0`.
pub fn expectation_inv_r3<T: Real>(n: u32, l: u32, params: &PhysicalParams<T>) -> Result<T> {
    check_nl(n, l)?;
    if l == 0 {
        bail!(Domain, "<1/r^3> diverges for s-states");
    }
    let a0 = bohr_radius(params);
    let nf = T::int(n as i64);
    let lf = T::int(l as i64);
    Ok(T::one() / (a0 * a0 * a0 * nf * nf * nf * lf * (lf + T::of(0.5)) * (lf + T::one())))
}

/// `⟨r^k⟩` by Gauss-Laguerre quadrature of `R_{nl}² r^{2+k}`.
///
/// With `ρ = 2r/(n a₀)` the integrand is `ρ^{2l+2+k} e^{−ρ}` times a
/// polynomial of degree `2(n−l−1)`, integrated exactly by a rule with
/// `2n + |k| + 10` nodes.
pub fn expectation_r_power_quadrature<T: Real>(state: &RadialState<T>, k: i32) -> Result<T> {
    let exponent = 2 * state.l as i32 + 2 + k;
    if exponent <= -1 {
        bail!(Domain, "<r^{k}> diverges for l = {}", state.l);
    }
    let nodes = 2 * state.n as usize + k.unsigned_abs() as usize + 10;
    let rule = GaussLaguerre::new(nodes, T::int(exponent as i64))?;
    let a = T::int(2 * state.l as i64 + 1);
    let deg = state.n - state.l - 1;
    let integral = rule.integrate(|rho| {
        let p = laguerre(deg, a, rho);
        p * p
    });
    let scale = state.scale();
    let ln_prefactor = T::of(2.0) * state.ln_norm() + T::int(3 + k as i64) * scale.ln();
    Ok(ln_prefactor.exp() * integral)
}

/// Least-squares slope of `ln⟨r^k⟩` against `ln α`.
pub fn alpha_scaling_exponent<T: Real>(n: u32, l: u32, k: i32, mass: T, alpha_grid: &[T]) -> Result<T> {
    let mut distinct: Vec<T> = alpha_grid.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite alpha"));
    distinct.dedup();
    if distinct.len() < 3 {
        bail!(Argument, "need at least 3 distinct alpha values, got {}", distinct.len());
    }
    let mut pts = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let params = PhysicalParams::new(mass, alpha)?;
        let v = expectation_r_power_quadrature(&RadialState::new(n, l, params)?, k)?;
        pts.push((alpha.ln(), v.ln()));
    }
    let count = T::of(pts.len() as f64);
    let mx = pts.iter().fold(T::zero(), |s, p| s + p.0) / count;
    let my = pts.iter().fold(T::zero(), |s, p| s + p.1) / count;
    let (sxy, sxx) = pts.iter().fold((T::zero(), T::zero()), |(sxy, sxx), &(x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    Ok(sxy / sxx)
}

/// `|ψ_{n00}(0)|² = R_{n0}(0)² / (4π)`, from the radial function.
pub fn density_at_origin<T: Real>(n: u32, params: &PhysicalParams<T>) -> Result<T> {
    let r0 = RadialState::new(n, 0, *params)?.radial(T::zero())?;
    Ok(r0 * r0 / (T::of(4.0) * T::pi()))
}
