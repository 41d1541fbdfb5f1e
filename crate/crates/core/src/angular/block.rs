//! Angular operators restricted to the two-channel space at fixed `(j, m)`.
//!
//! Channel 0 is `l = j - 1/2`, channel 1 is `l = j + 1/2`. Every operator
//! the derivation needs (σ·L+1, σ·ê_r, Λ and Λ(Λ+1)) commutes with `J²`
//! and `J_z`, so on the spin-angular part it acts as a 2×2 matrix over
//! these channels, independent of `m`.

use std::ops::{Add, Mul, Sub};

use nalgebra::{Complex, ComplexField, Vector2};

use super::pauli::Mat2;
use crate::error::{bail, Result};
use crate::quantum::{check_two_j, Branch, CouplingSign};
use crate::scalar::Real;

/// Off-diagonal entry of σ·ê_r between the two channels.
///
/// Fixed by the Condon-Shortley spinor-harmonic phases; guarded by the
/// sphere-quadrature test in `spinor`.
pub const SIGMA_DOT_ER_OFFDIAG: i64 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockLabel {
    SigmaDotL,
    SigmaDotLPlusOne,
    SigmaDotEr,
    Lambda,
    /// `Λ(Λ+1) = L² ∓ iα σ·ê_r − α²`
    Numerator,
    Identity,
    /// Result of arithmetic on other blocks.
    Composite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularBlock<T: Real> {
    pub two_j: u32,
    pub entries: Mat2<T>,
    pub label: BlockLabel,
}

/// An eigenpair assigned to the channel its eigenvector overlaps most.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelEigen<T: Real> {
    pub branch: Branch,
    pub value: Complex<T>,
    pub vector: Vector2<Complex<T>>,
    /// `|v_branch|² / |v|²`
    pub overlap: T,
}

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `j + 1/2` as a scalar.
fn kappa<T: Real>(two_j: u32) -> T {
    T::half(two_j as i64 + 1)
}

fn check_alpha<T: Real>(two_j: u32, alpha: T) -> Result<()> {
    if !(alpha >= T::zero()) || !alpha.is_finite() {
        bail!(Domain, "coupling alpha must be finite and non-negative, got {alpha}");
    }
    if alpha >= kappa::<T>(two_j) {
        bail!(Domain, "alpha = {alpha} >= j + 1/2 = {}; Λ has complex spectrum", kappa::<T>(two_j));
    }
    Ok(())
}

impl<T: Real> AngularBlock<T> {
    pub fn new(two_j: u32, entries: Mat2<T>, label: BlockLabel) -> Result<Self> {
        check_two_j(two_j)?;
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            bail!(Numeric, "non-finite entry in angular block");
        }
        Ok(Self { two_j, entries, label })
    }

    pub fn identity(two_j: u32) -> Result<Self> {
        Self::new(two_j, Mat2::identity(), BlockLabel::Identity)
    }

    pub fn j(&self) -> T {
        T::half(self.two_j as i64)
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self { entries: self.entries * factor, label: BlockLabel::Composite, ..*self }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.entries - other.entries)
            .iter()
            .fold(T::zero(), |m, z| m.max(ComplexField::abs(*z)))
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, z| m.max(ComplexField::abs(*z)))
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries[(0, 0)] + self.entries[(1, 1)]
    }

    /// Both eigenpairs, ordered by channel (lower branch first).
    ///
    /// Assignment is by eigenvector overlap with the uncoupled channel basis,
    /// never by eigenvalue ordering.
    pub fn eigen_by_channel(&self) -> [ChannelEigen<T>; 2] {
        let m = &self.entries;
        let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let two = re(T::of(2.0));
        let half_diff = (a - d) / two;
        let disc = ComplexField::sqrt(half_diff * half_diff + b * c);
        let mean = (a + d) / two;
        let values = [mean + disc, mean - disc];

        let tiny = T::default_epsilon() * (self.max_abs() + T::one());
        let off_zero = ComplexField::abs(b) <= tiny && ComplexField::abs(c) <= tiny;
        let pairs: Vec<(Complex<T>, Vector2<Complex<T>>)> = if off_zero {
            vec![
                (a, Vector2::new(re(T::one()), re(T::zero()))),
                (d, Vector2::new(re(T::zero()), re(T::one()))),
            ]
        } else {
            values
                .iter()
                .map(|&mu| {
                    let v1 = Vector2::new(b, mu - a);
                    let v2 = Vector2::new(mu - d, c);
                    let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
                    (mu, v.unscale(v.norm()))
                })
                .collect()
        };

        let weight = |v: &Vector2<Complex<T>>, k: usize| {
            let p0 = v[0].norm_sqr();
            let p1 = v[1].norm_sqr();
            [p0, p1][k] / (p0 + p1)
        };
        let first_is_lower = weight(&pairs[0].1, 0) >= weight(&pairs[1].1, 0);
        let (lo, hi) = if first_is_lower { (pairs[0], pairs[1]) } else { (pairs[1], pairs[0]) };
        [
            ChannelEigen { branch: Branch::Lower, value: lo.0, vector: lo.1, overlap: weight(&lo.1, 0) },
            ChannelEigen { branch: Branch::Upper, value: hi.0, vector: hi.1, overlap: weight(&hi.1, 1) },
        ]
    }

    pub fn eigenvalue(&self, branch: Branch) -> Complex<T> {
        self.eigen_by_channel()[branch.index()].value
    }
}

impl<T: Real> Mul for AngularBlock<T> {
    type Output = AngularBlock<T>;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.two_j, rhs.two_j);
        AngularBlock { two_j: self.two_j, entries: self.entries * rhs.entries, label: BlockLabel::Composite }
    }
}

impl<T: Real> Add for AngularBlock<T> {
    type Output = AngularBlock<T>;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.two_j, rhs.two_j);
        AngularBlock { two_j: self.two_j, entries: self.entries + rhs.entries, label: BlockLabel::Composite }
    }
}

impl<T: Real> Sub for AngularBlock<T> {
    type Output = AngularBlock<T>;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.two_j, rhs.two_j);
        AngularBlock { two_j: self.two_j, entries: self.entries - rhs.entries, label: BlockLabel::Composite }
    }
}

/// `l (l + 1)` for each channel.
fn centrifugal_diag<T: Real>(two_j: u32) -> [T; 2] {
    [Branch::Lower, Branch::Upper].map(|b| {
        let l = b.l(two_j) as i64;
        T::int(l * (l + 1))
    })
}

/// σ·L = `diag(j − ½, −(j + 3/2))`.
pub fn sigma_dot_l_block<T: Real>(two_j: u32) -> Result<AngularBlock<T>> {
    check_two_j(two_j)?;
    let k = kappa::<T>(two_j);
    AngularBlock::new(
        two_j,
        Mat2::new(re(k - T::one()), re(T::zero()), re(T::zero()), re(-k - T::one())),
        BlockLabel::SigmaDotL,
    )
}

/// σ·L + 1 = `diag(+(j + ½), −(j + ½))`.
pub fn sigma_dot_l_plus_one_block<T: Real>(two_j: u32) -> Result<AngularBlock<T>> {
    check_two_j(two_j)?;
    let k = kappa::<T>(two_j);
    AngularBlock::new(
        two_j,
        Mat2::new(re(k), re(T::zero()), re(T::zero()), re(-k)),
        BlockLabel::SigmaDotLPlusOne,
    )
}

/// σ·ê_r: swaps the two channels with coefficient −1.
pub fn sigma_dot_er_block<T: Real>(two_j: u32) -> Result<AngularBlock<T>> {
    check_two_j(two_j)?;
    let off = re(T::int(SIGMA_DOT_ER_OFFDIAG));
    AngularBlock::new(two_j, Mat2::new(re(T::zero()), off, off, re(T::zero())), BlockLabel::SigmaDotEr)
}

/// `diag(l₁(l₁+1), l₂(l₂+1))`, the L² block.
pub fn l_squared_block<T: Real>(two_j: u32) -> Result<AngularBlock<T>> {
    check_two_j(two_j)?;
    let [a, b] = centrifugal_diag::<T>(two_j);
    AngularBlock::new(two_j, Mat2::new(re(a), re(T::zero()), re(T::zero()), re(b)), BlockLabel::Composite)
}

/// The `∓iα σ·ê_r` piece shared by Λ and its quadratic.
fn coupling_term<T: Real>(two_j: u32, alpha: T, sign: CouplingSign) -> Result<AngularBlock<T>> {
    let coeff = Complex::new(T::zero(), -T::int(sign.factor()) * alpha);
    Ok(sigma_dot_er_block::<T>(two_j)?.scale(coeff))
}

/// Λ = −(σ·L + 1) ∓ iα σ·ê_r.
pub fn lambda_block<T: Real>(two_j: u32, alpha: T, sign: CouplingSign) -> Result<AngularBlock<T>> {
    check_two_j(two_j)?;
    check_alpha(two_j, alpha)?;
    let base = sigma_dot_l_plus_one_block::<T>(two_j)?.scale(re(-T::one()));
    let mut out = base + coupling_term(two_j, alpha, sign)?;
    out.label = BlockLabel::Lambda;
    Ok(out)
}

/// Λ(Λ+1) = L² ∓ iα σ·ê_r − α², assembled from its parts.
pub fn numerator_block<T: Real>(two_j: u32, alpha: T, sign: CouplingSign) -> Result<AngularBlock<T>> {
    check_two_j(two_j)?;
    check_alpha(two_j, alpha)?;
    let shift = AngularBlock::<T>::identity(two_j)?.scale(re(-alpha * alpha));
    let mut out = l_squared_block::<T>(two_j)? + coupling_term(two_j, alpha, sign)? + shift;
    out.label = BlockLabel::Numerator;
    Ok(out)
}

/// Exact eigenvalue `λ(λ+1)` of the numerator block on the requested
/// channel, with the imaginary residue checked away.
pub fn numerator_eigenvalue<T: Real>(two_j: u32, alpha: T, sign: CouplingSign, branch: Branch) -> Result<T> {
    let ev = numerator_block(two_j, alpha, sign)?.eigenvalue(branch);
    let scale = ComplexField::abs(ev) + T::one();
    if ev.im.abs() > T::of(1e-12) * scale {
        bail!(Consistency, "numerator eigenvalue has imaginary part {}", ev.im);
    }
    Ok(ev.re)
}
