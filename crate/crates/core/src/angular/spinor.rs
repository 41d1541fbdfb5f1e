//! Spinor spherical harmonics and a sphere-quadrature evaluation of σ·ê_r
//! between coupled channels.

use nalgebra::{Complex, ComplexField};

use super::block::{AngularBlock, BlockLabel};
use super::clebsch::clebsch_gordan_half;
use super::pauli::{sigma_dot, Mat2};
use crate::error::{bail, Result};
use crate::quadrature::GaussLegendre;
use crate::quantum::{check_two_j, Branch};
use crate::scalar::Real;

/// `Y_l^m(θ, φ)` with Condon-Shortley phase, from `cos θ` and `φ`.
pub fn spherical_harmonic<T: Real>(l: u32, m: i32, cos_theta: T, phi: T) -> Complex<T> {
    let am = m.unsigned_abs();
    if am > l {
        return Complex::new(T::zero(), T::zero());
    }
    let x = cos_theta;
    let sin_theta = (T::one() - x * x).max(T::zero()).sqrt();
    let four_pi = T::of(4.0) * T::pi();

    // normalized P̄_m^m, then upward recurrence in l
    let mut pmm = T::one() / four_pi;
    for i in 1..=am {
        let fi = T::of(f64::from(i));
        pmm *= (T::of(2.0) * fi + T::one()) / (T::of(2.0) * fi);
    }
    let mut pmm = pmm.sqrt() * sin_theta.powi(am as i32);
    if am % 2 == 1 {
        pmm = -pmm;
    }
    let p = if l == am {
        pmm
    } else {
        let mf = T::of(f64::from(am));
        let mut prev = pmm;
        let mut cur = x * (T::of(2.0) * mf + T::of(3.0)).sqrt() * pmm;
        for ll in (am + 2)..=l {
            let lf = T::of(f64::from(ll));
            let a = ((T::of(4.0) * lf * lf - T::one()) / (lf * lf - mf * mf)).sqrt();
            let lp = lf - T::one();
            let a_prev = ((T::of(4.0) * lp * lp - T::one()) / (lp * lp - mf * mf)).sqrt();
            let next = a * (x * cur - prev / a_prev);
            prev = cur;
            cur = next;
        }
        cur
    };
    let angle = T::of(f64::from(am)) * phi;
    let y = Complex::new(p * angle.cos(), p * angle.sin());
    if m < 0 {
        let conj = y.conj();
        if am % 2 == 1 {
            -conj
        } else {
            conj
        }
    } else {
        y
    }
}

/// Two-component `Ω_{j l m}` as `[upper, lower]`.
pub fn spinor_harmonic<T: Real>(l: u32, two_j: u32, two_m: i32, cos_theta: T, phi: T) -> Result<[Complex<T>; 2]> {
    let mut out = [Complex::new(T::zero(), T::zero()); 2];
    for (slot, two_m_s) in [(0usize, 1i32), (1, -1)] {
        let two_ml = two_m - two_m_s;
        let m_l = two_ml / 2;
        if m_l.unsigned_abs() <= l {
            let cg: T = clebsch_gordan_half(l, m_l, two_m_s, two_j, two_m)?;
            out[slot] = spherical_harmonic(l, m_l, cos_theta, phi) * Complex::new(cg, T::zero());
        }
    }
    Ok(out)
}

/// σ·ê_r channel block integrated over the sphere, with an adequacy flag.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureBlock<T: Real> {
    pub block: AngularBlock<T>,
    pub grid_order: usize,
    /// Smallest Gauss-Legendre order that integrates the block exactly.
    pub required_order: usize,
    /// `false` means the result carries quadrature error.
    pub adequate: bool,
}

/// Minimum θ-grid order: integrands are polynomials of degree ≤ 2j + 2 in cos θ.
pub fn required_grid_order(two_j: u32) -> usize {
    (two_j as usize + 3).div_ceil(2) + 1
}

/// `⟨Ω_{j l' m}| σ·ê_r |Ω_{j l m}⟩` by Gauss-Legendre × trapezoid quadrature, at `m = ½`.
pub fn sigma_dot_er_quadrature<T: Real>(two_j: u32, grid_order: usize) -> Result<QuadratureBlock<T>> {
    sigma_dot_er_quadrature_at(two_j, 1, grid_order)
}

pub fn sigma_dot_er_quadrature_at<T: Real>(two_j: u32, two_m: i32, grid_order: usize) -> Result<QuadratureBlock<T>> {
    check_two_j(two_j)?;
    if two_m.unsigned_abs() > two_j || two_m.rem_euclid(2) != 1 {
        bail!(Argument, "m = {two_m}/2 invalid for j = {two_j}/2");
    }
    let legendre = GaussLegendre::<T>::new(grid_order)?;
    let n_phi = 2 * grid_order + 2;
    let dphi = T::of(2.0) * T::pi() / T::of(n_phi as f64);
    let ls = [Branch::Lower.l(two_j), Branch::Upper.l(two_j)];

    let mut acc = Mat2::<T>::zeros();
    for (&x, &w) in legendre.nodes.iter().zip(&legendre.weights) {
        let s = (T::one() - x * x).max(T::zero()).sqrt();
        for k in 0..n_phi {
            let phi = dphi * T::of(k as f64);
            let er = [s * phi.cos(), s * phi.sin(), x];
            let op = sigma_dot(er);
            let omegas = [
                spinor_harmonic(ls[0], two_j, two_m, x, phi)?,
                spinor_harmonic(ls[1], two_j, two_m, x, phi)?,
            ];
            let weight = Complex::new(w * dphi, T::zero());
            for a in 0..2 {
                for b in 0..2 {
                    let (bra, ket) = (&omegas[a], &omegas[b]);
                    let applied = [
                        op[(0, 0)] * ket[0] + op[(0, 1)] * ket[1],
                        op[(1, 0)] * ket[0] + op[(1, 1)] * ket[1],
                    ];
                    let value = bra[0].conj() * applied[0] + bra[1].conj() * applied[1];
                    acc[(a, b)] += value * weight;
                }
            }
        }
    }
    let required = required_grid_order(two_j);
    Ok(QuadratureBlock {
        block: AngularBlock::new(two_j, acc, BlockLabel::SigmaDotEr)?,
        grid_order,
        required_order: required,
        adequate: grid_order >= required,
    })
}

/// `⟨Ω_a|Ω_b⟩` over the sphere; used to check normalization of the harmonics.
pub fn spinor_overlap<T: Real>(two_j: u32, two_m: i32, grid_order: usize) -> Result<Mat2<T>> {
    let legendre = GaussLegendre::<T>::new(grid_order)?;
    let n_phi = 2 * grid_order + 2;
    let dphi = T::of(2.0) * T::pi() / T::of(n_phi as f64);
    let ls = [Branch::Lower.l(two_j), Branch::Upper.l(two_j)];
    let mut acc = Mat2::<T>::zeros();
    for (&x, &w) in legendre.nodes.iter().zip(&legendre.weights) {
        for k in 0..n_phi {
            let phi = dphi * T::of(k as f64);
            let o = [
                spinor_harmonic(ls[0], two_j, two_m, x, phi)?,
                spinor_harmonic(ls[1], two_j, two_m, x, phi)?,
            ];
            for a in 0..2 {
                for b in 0..2 {
                    let v = o[a][0].conj() * o[b][0] + o[a][1].conj() * o[b][1];
                    acc[(a, b)] += v * Complex::new(w * dphi, T::zero());
                }
            }
        }
    }
    Ok(acc)
}

/// Largest entrywise deviation between two 2×2 matrices.
pub(crate) fn mat_diff<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    (a - b).iter().fold(T::zero(), |m, z| m.max(ComplexField::abs(*z)))
}
