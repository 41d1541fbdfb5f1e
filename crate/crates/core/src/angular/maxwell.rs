//! Maxwell's equations in Pauli-matrix form, checked pointwise on analytic
//! field configurations:
//!
//! `(1 p̂₀ ∓ σ·p̂) Φ± = ±(ρ 1 ± σ·J)`, `Φ± = σ·(B ∓ iE)`, `p̂₀ = i∂_t`, `p̂ = −i∇`.

use nalgebra::Complex;

use super::pauli::{pauli_product, sigma_dot_complex, Mat2};
use crate::error::{bail, Result};
use crate::quantum::CouplingSign;
use crate::scalar::Real;

/// Field values and first derivatives at one space-time point.
///
/// `grad_e[a][b] = ∂_a E_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub e: [T; 3],
    pub b: [T; 3],
    pub de_dt: [T; 3],
    pub db_dt: [T; 3],
    pub grad_e: [[T; 3]; 3],
    pub grad_b: [[T; 3]; 3],
    pub rho: T,
    pub current: [T; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldConfig<T> {
    /// Point charge field `E = −α x / r³`, `B = 0`; source-free for `r > 0`.
    CoulombStatic { alpha: T },
    /// `E = A ε̂ cos(k·x − ωt)`, `B = k̂ × E`.
    VacuumPlaneWave { k: [T; 3], polarization: [T; 3], amplitude: T, omega: T },
}

fn dot<T: Real>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

impl<T: Real> FieldConfig<T> {
    pub fn coulomb(alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            bail!(Argument, "Coulomb coupling must be positive, got {alpha}");
        }
        Ok(FieldConfig::CoulombStatic { alpha })
    }

    /// Physical plane wave with `ω = |k|`.
    pub fn plane_wave(k: [T; 3], polarization: [T; 3], amplitude: T) -> Result<Self> {
        let kn = dot(k, k).sqrt();
        if !(kn > T::zero()) {
            bail!(Argument, "plane-wave vector must be nonzero");
        }
        let tol = T::of(1e-12);
        if (dot(polarization, polarization).sqrt() - T::one()).abs() > tol {
            bail!(Argument, "polarization must be a unit vector");
        }
        if dot(k, polarization).abs() > tol * kn {
            bail!(Argument, "polarization must be transverse, k·ε = {}", dot(k, polarization));
        }
        Ok(FieldConfig::VacuumPlaneWave { k, polarization, amplitude, omega: kn })
    }

    /// Plane wave whose frequency is scaled away from `|k|`: not a Maxwell
    /// solution, used as a negative control.
    pub fn detuned_plane_wave(k: [T; 3], polarization: [T; 3], amplitude: T, factor: T) -> Result<Self> {
        match Self::plane_wave(k, polarization, amplitude)? {
            FieldConfig::VacuumPlaneWave { k, polarization, amplitude, omega } => {
                Ok(FieldConfig::VacuumPlaneWave { k, polarization, amplitude, omega: omega * factor })
            }
            _ => unreachable!(),
        }
    }

    /// Fields at `point = (t, x, y, z)`.
    pub fn sample(&self, point: [T; 4]) -> Result<FieldSample<T>> {
        let zero3 = [T::zero(); 3];
        let x = [point[1], point[2], point[3]];
        match *self {
            FieldConfig::CoulombStatic { alpha } => {
                let r2 = dot(x, x);
                let r = r2.sqrt();
                if !(r > T::of(1e-150)) {
                    bail!(Domain, "Coulomb field is singular at the origin");
                }
                let r3 = r2 * r;
                let r5 = r3 * r2;
                let e = x.map(|xi| -alpha * xi / r3);
                let mut grad_e = [[T::zero(); 3]; 3];
                for a in 0..3 {
                    for b in 0..3 {
                        let delta = if a == b { T::one() / r3 } else { T::zero() };
                        grad_e[a][b] = -alpha * (delta - T::of(3.0) * x[a] * x[b] / r5);
                    }
                }
                Ok(FieldSample {
                    e,
                    b: zero3,
                    de_dt: zero3,
                    db_dt: zero3,
                    grad_e,
                    grad_b: [zero3; 3],
                    rho: T::zero(),
                    current: zero3,
                })
            }
            FieldConfig::VacuumPlaneWave { k, polarization, amplitude, omega } => {
                let kn = dot(k, k).sqrt();
                let khat = k.map(|c| c / kn);
                let bdir = cross(khat, polarization);
                let phase = dot(k, x) - omega * point[0];
                let (s, c) = (phase.sin(), phase.cos());
                let e = polarization.map(|p| amplitude * p * c);
                let b = bdir.map(|p| amplitude * p * c);
                let de_dt = polarization.map(|p| amplitude * p * omega * s);
                let db_dt = bdir.map(|p| amplitude * p * omega * s);
                let mut grad_e = [[T::zero(); 3]; 3];
                let mut grad_b = [[T::zero(); 3]; 3];
                for a in 0..3 {
                    for b_ in 0..3 {
                        grad_e[a][b_] = -amplitude * polarization[b_] * k[a] * s;
                        grad_b[a][b_] = -amplitude * bdir[b_] * k[a] * s;
                    }
                }
                Ok(FieldSample { e, b, de_dt, db_dt, grad_e, grad_b, rho: T::zero(), current: zero3 })
            }
        }
    }
}

/// `(1 p̂₀ ∓ σ·p̂)Φ± − [±(ρ 1 ± σ·J)]` at a space-time point.
///
/// The `σ_a σ_b` products come from [`pauli_product`], so the check also
/// exercises the Pauli product rule.
pub fn maxwell_pauli_residual<T: Real>(field: &FieldConfig<T>, sign: CouplingSign, point: [T; 4]) -> Result<Mat2<T>> {
    let f = field.sample(point)?;
    let s = T::int(sign.factor());
    let cz = |re: T, im: T| Complex::new(re, im);
    let i = cz(T::zero(), T::one());

    // F = B ∓ iE and its derivatives
    let dt_f: [Complex<T>; 3] = std::array::from_fn(|b| cz(f.db_dt[b], -s * f.de_dt[b]));
    let p0_phi = sigma_dot_complex(dt_f) * i;

    let mut sigma_p_phi = Mat2::<T>::zeros();
    for a in 0..3 {
        for b in 0..3 {
            let d = cz(f.grad_b[a][b], -s * f.grad_e[a][b]);
            sigma_p_phi += pauli_product::<T>(a + 1, b + 1)? * (d * -i);
        }
    }
    let lhs = p0_phi - sigma_p_phi * cz(s, T::zero());

    let j: [Complex<T>; 3] = f.current.map(|c| cz(s * c, T::zero()));
    let rhs = (Mat2::<T>::identity() * cz(f.rho, T::zero()) + sigma_dot_complex(j)) * cz(s, T::zero());
    Ok(lhs - rhs)
}

/// Deterministic low-discrepancy sample of space-time points in `[-L, L]^4`,
/// with the spatial part kept at least `min_radius` from the origin.
pub fn sample_points<T: Real>(count: usize, half_width: T, min_radius: T) -> Vec<[T; 4]> {
    // additive recurrence with generalized golden-ratio increments
    let g = 1.167_303_978_261_418_7_f64;
    let steps = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g), 1.0 / (g * g * g * g)];
    let mut out = Vec::with_capacity(count);
    let mut idx = 0u64;
    while out.len() < count {
        idx += 1;
        let p: [T; 4] = std::array::from_fn(|d| {
            let u = (0.5 + steps[d] * idx as f64).fract();
            half_width * T::of(2.0 * u - 1.0)
        });
        let r2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        if r2.sqrt() >= min_radius {
            out.push(p);
        }
    }
    out
}

/// Largest entry modulus of a residual.
pub fn residual_norm<T: Real>(m: &Mat2<T>) -> T {
    super::spinor::mat_diff(m, &Mat2::zeros())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_wave_is_source_free_solution() {
        let f = FieldConfig::plane_wave([0.3, -0.4, 1.2], [0.8, 0.6, 0.0], 1.0).unwrap();
        for p in sample_points::<f64>(20, 3.0, 0.0) {
            for s in CouplingSign::BOTH {
                let r = maxwell_pauli_residual(&f, s, p).unwrap();
                assert!(residual_norm(&r) < 1e-12);
            }
        }
    }

    #[test]
    fn coulomb_field_at_unit_radius() {
        let f = FieldConfig::coulomb(0.5).unwrap();
        for s in CouplingSign::BOTH {
            let r = maxwell_pauli_residual(&f, s, [0.0, 0.0, 0.0, 1.0]).unwrap();
            assert!(residual_norm(&r) < 1e-14);
        }
        assert!(maxwell_pauli_residual(&f, CouplingSign::Plus, [0.0; 4]).is_err());
    }

    #[test]
    fn detuned_wave_is_caught() {
        let f = FieldConfig::detuned_plane_wave([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], 1.0, 1.1).unwrap();
        let worst = sample_points::<f64>(50, 3.0, 0.0)
            .into_iter()
            .map(|p| residual_norm(&maxwell_pauli_residual(&f, CouplingSign::Plus, p).unwrap()))
            .fold(0.0, f64::max);
        assert!(worst > 1e-3);
    }

    #[test]
    fn invalid_plane_waves() {
        assert!(FieldConfig::plane_wave([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], 1.0).is_err());
        assert!(FieldConfig::plane_wave([0.0, 0.0, 1.0], [2.0, 0.0, 0.0], 1.0).is_err());
        assert!(FieldConfig::plane_wave([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], 1.0).is_err());
    }
}
