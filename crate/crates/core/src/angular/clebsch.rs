//! Clebsch-Gordan coefficients for coupling orbital `l` with spin 1/2,
//! Condon-Shortley phases.

use nalgebra::DMatrix;

use crate::error::{bail, Result};
use crate::scalar::Real;

/// `⟨l m_l; ½ m_s | j m⟩` with half-integers passed doubled.
///
/// Returns exactly zero when `m ≠ m_l + m_s`.
pub fn clebsch_gordan_half<T: Real>(l: u32, m_l: i32, two_m_s: i32, two_j: u32, two_m: i32) -> Result<T> {
    if m_l.unsigned_abs() > l {
        bail!(Argument, "|m_l| = {} exceeds l = {l}", m_l.abs());
    }
    if two_m_s.abs() != 1 {
        bail!(Argument, "m_s must be +-1/2, got {two_m_s}/2");
    }
    if two_j != 2 * l + 1 && two_j + 1 != 2 * l {
        bail!(Argument, "j = {two_j}/2 not reachable from l = {l} and spin 1/2");
    }
    if two_m.unsigned_abs() > two_j || two_m.rem_euclid(2) != 1 {
        bail!(Argument, "m = {two_m}/2 invalid for j = {two_j}/2");
    }
    if 2 * m_l + two_m_s != two_m {
        return Ok(T::zero());
    }
    // (l ± m + 1/2) / (2l + 1), written with doubled m to stay integral
    let two_l = 2 * l as i64;
    let plus = T::int(two_l + two_m as i64 + 1) / T::int(2 * (two_l + 1));
    let minus = T::int(two_l - two_m as i64 + 1) / T::int(2 * (two_l + 1));
    let stretched = two_j == 2 * l + 1;
    Ok(match (stretched, two_m_s > 0) {
        (true, true) => plus.sqrt(),
        (true, false) => minus.sqrt(),
        (false, true) => -minus.sqrt(),
        (false, false) => plus.sqrt(),
    })
}

/// Index of `|m_l, m_s⟩` in the `2(2l+1)`-dimensional product basis.
///
/// Ordering: `m_l` ascending from `-l`, spin up before spin down.
pub fn product_index(l: u32, m_l: i32, two_m_s: i32) -> usize {
    ((m_l + l as i32) as usize) * 2 + usize::from(two_m_s < 0)
}

/// Coupled state `|l ½ j m⟩` expanded in the product basis.
pub fn coupled_vector<T: Real>(l: u32, two_j: u32, two_m: i32) -> Result<Vec<T>> {
    let dim = 2 * (2 * l as usize + 1);
    let mut v = vec![T::zero(); dim];
    for two_m_s in [1, -1] {
        let two_ml = two_m - two_m_s;
        let m_l = two_ml / 2;
        if m_l.unsigned_abs() <= l {
            v[product_index(l, m_l, two_m_s)] = clebsch_gordan_half(l, m_l, two_m_s, two_j, two_m)?;
        }
    }
    Ok(v)
}

/// `σ·L = σ_z L_z + σ_+ L_- / 2 + σ_- L_+ / 2` in the product basis.
pub fn sigma_dot_l_product<T: Real>(l: u32) -> DMatrix<T> {
    let dim = 2 * (2 * l as usize + 1);
    let li = l as i64;
    let mut m = DMatrix::<T>::zeros(dim, dim);
    for m_l in -(l as i32)..=(l as i32) {
        let up = product_index(l, m_l, 1);
        let down = product_index(l, m_l, -1);
        m[(up, up)] = T::int(m_l as i64);
        m[(down, down)] = -T::int(m_l as i64);
        // |m_l, ↑⟩ -> |m_l + 1, ↓⟩ via L_+ σ_-/2
        if m_l < l as i32 {
            let ml = m_l as i64;
            let amp = T::int(li * (li + 1) - ml * (ml + 1)).sqrt();
            let target = product_index(l, m_l + 1, -1);
            m[(target, up)] = amp;
            m[(up, target)] = amp;
        }
    }
    m
}
