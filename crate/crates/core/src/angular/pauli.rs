//! Pauli matrices and their product rule.

use nalgebra::{Complex, Matrix2};

use crate::error::{bail, Result};
use crate::scalar::Real;

pub type Mat2<T> = Matrix2<Complex<T>>;

fn c<T: Real>(re: i64, im: i64) -> Complex<T> {
    Complex::new(T::int(re), T::int(im))
}

/// `σ_axis` for `axis ∈ {1, 2, 3}`.
pub fn sigma<T: Real>(axis: usize) -> Result<Mat2<T>> {
    Ok(match axis {
        1 => Matrix2::new(c(0, 0), c(1, 0), c(1, 0), c(0, 0)),
        2 => Matrix2::new(c(0, 0), c(0, -1), c(0, 1), c(0, 0)),
        3 => Matrix2::new(c(1, 0), c(0, 0), c(0, 0), c(-1, 0)),
        _ => bail!(Argument, "Pauli axis must be 1, 2 or 3, got {axis}"),
    })
}

/// Levi-Civita symbol on `{1, 2, 3}`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// `σ_k σ_j` by direct multiplication.
pub fn pauli_product<T: Real>(k: usize, j: usize) -> Result<Mat2<T>> {
    Ok(sigma::<T>(k)? * sigma::<T>(j)?)
}

/// `δ_kj 1 + i Σ_l ε_kjl σ_l`.
pub fn pauli_product_rule<T: Real>(k: usize, j: usize) -> Result<Mat2<T>> {
    sigma::<T>(k)?;
    sigma::<T>(j)?;
    let mut out = if k == j { Mat2::<T>::identity() } else { Mat2::<T>::zeros() };
    for l in 1..=3 {
        let eps = levi_civita(k, j, l);
        if eps != 0 {
            out += sigma::<T>(l)? * c::<T>(0, eps);
        }
    }
    Ok(out)
}

/// `σ·v` for a real 3-vector.
pub fn sigma_dot<T: Real>(v: [T; 3]) -> Mat2<T> {
    let re = |x: T| Complex::new(x, T::zero());
    Matrix2::new(
        re(v[2]),
        Complex::new(v[0], -v[1]),
        Complex::new(v[0], v[1]),
        re(-v[2]),
    )
}

/// `σ·v` for a complex 3-vector.
pub fn sigma_dot_complex<T: Real>(v: [Complex<T>; 3]) -> Mat2<T> {
    let i = c::<T>(0, 1);
    Matrix2::new(v[2], v[0] - i * v[1], v[0] + i * v[1], -v[2])
}
