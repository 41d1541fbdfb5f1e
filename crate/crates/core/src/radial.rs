//! Reduced-radial Laguerre basis and the operator matrices built on it.
//!
//! With `x = 2βr` and `a = 2ν + 2`, the basis functions are
//!
//! ```text
//! u_i(r) = √(2β) x^{ν+1} e^{−x/2} L̂_i^{(a)}(x),   L̂_i = L_i / √(Γ(i+a+1)/i!)
//! ```
//!
//! where `ν(ν+1) = c` is the centrifugal coefficient, so every function has
//! the small-r power of the `c/r²` channel. All matrix elements reduce to
//! integrals of polynomials against `x^{2ν} e^{−x}`, evaluated with one
//! Gauss-Laguerre rule of `3N + 20` nodes.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::quadrature::GaussLaguerre;
use crate::scalar::Real;

/// Gram condition numbers above this trigger a size reduction.
pub const MAX_GRAM_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialBasisSpec<T> {
    pub size: usize,
    /// β, inverse length.
    pub scale: T,
    /// `c` in `c/r²`.
    pub centrifugal: T,
    /// `ν = (−1 + √(1+4c))/2`.
    pub exponent: T,
}

impl<T: Real> RadialBasisSpec<T> {
    pub fn new(centrifugal: T, scale: T, size: usize) -> Result<Self> {
        let quarter = T::of(0.25);
        if !centrifugal.is_finite() || centrifugal < -quarter {
            bail!(Domain, "centrifugal coefficient {centrifugal} < -1/4: fall to the center");
        }
        if centrifugal == -quarter {
            bail!(Domain, "c = -1/4 puts the basis outside the domain of 1/r and 1/r^2");
        }
        if !(scale > T::zero()) || !scale.is_finite() {
            bail!(Argument, "basis scale must be positive, got {scale}");
        }
        if size < 2 {
            bail!(Argument, "basis size must be >= 2, got {size}");
        }
        Ok(Self { size, scale, centrifugal, exponent: exponent_for(centrifugal) })
    }

    /// Gauss-Laguerre node count used for this size.
    pub fn quadrature_nodes(&self) -> usize {
        3 * self.size + 20
    }
}

/// Small-r power ν solving `ν(ν+1) = c`, on the regular branch.
pub fn exponent_for<T: Real>(c: T) -> T {
    (-T::one() + (T::one() + T::of(4.0) * c).sqrt()) / T::of(2.0)
}

/// Rule matching a basis spec; shareable across β since it depends only on ν and N.
pub fn quadrature_rule<T: Real>(spec: &RadialBasisSpec<T>) -> Result<GaussLaguerre<T>> {
    GaussLaguerre::new(spec.quadrature_nodes(), T::of(2.0) * spec.exponent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorLabel {
    /// `p_r² + c/r²`
    P2,
    Coulomb,
    SqrtKinetic,
    Hamiltonian,
    Overlap,
}

/// Dense symmetric matrix in the orthonormalized basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    pub entries: DMatrix<T>,
    pub basis: RadialBasisSpec<T>,
    pub label: OperatorLabel,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(entries: DMatrix<T>, basis: RadialBasisSpec<T>, label: OperatorLabel) -> Self {
        Self { entries, basis, label }
    }

    /// `max|A − Aᵀ| / max|A|`.
    pub fn asymmetry(&self) -> T {
        let scale = self.entries.abs().max();
        if scale == T::zero() {
            return T::zero();
        }
        (&self.entries - self.entries.transpose()).abs().max() / scale
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<T> {
        sorted_eigenvalues(&self.entries)
    }
}

pub(crate) fn symmetrize<T: Real>(m: &DMatrix<T>) -> DMatrix<T> {
    (m + m.transpose()) * T::of(0.5)
}

pub(crate) fn sorted_eigenvalues<T: Real>(m: &DMatrix<T>) -> Vec<T> {
    let mut v: Vec<T> = symmetrize(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    v
}

/// Orthonormalized Laguerre basis with its quadrature tables.
#[derive(Debug, Clone)]
pub struct RadialBasis<T: Real> {
    pub spec: RadialBasisSpec<T>,
    /// `S^{-1/2}`, mapping raw functions to the orthonormal set.
    pub transform: DMatrix<T>,
    pub gram_condition: T,
    /// Set when the requested size was cut to keep the Gram matrix well conditioned.
    pub reduced_from: Option<usize>,
    /// Quadrature nodes `x_k`.
    nodes: Vec<T>,
    /// `√w_k L̂_i(x_k)`.
    values: DMatrix<T>,
    /// `√w_k (d/dx applied) ...`, see [`RadialBasis::derivative_table`].
    derivs: DMatrix<T>,
}

impl<T: Real> RadialBasis<T> {
    /// Builds the basis for centrifugal coefficient `c`, scale β and size N.
    pub fn new(c: T, beta: T, size: usize) -> Result<Self> {
        let spec = RadialBasisSpec::new(c, beta, size)?;
        let rule = quadrature_rule(&spec)?;
        Self::with_rule(spec, &rule)
    }

    /// Builds the basis with a precomputed rule (see [`quadrature_rule`]).
    pub fn with_rule(spec: RadialBasisSpec<T>, rule: &GaussLaguerre<T>) -> Result<Self> {
        let two_nu = T::of(2.0) * spec.exponent;
        if (rule.exponent - two_nu).abs() > T::of(1e-14) * (T::one() + two_nu.abs()) {
            bail!(Argument, "quadrature exponent {} does not match basis 2ν = {two_nu}", rule.exponent);
        }
        if rule.len() < spec.size + 1 {
            bail!(Argument, "quadrature rule too small for basis size {}", spec.size);
        }
        let mut size = spec.size;
        let requested = spec.size;
        loop {
            let trial = RadialBasisSpec { size, ..spec };
            let (values, derivs) = Self::tables(&trial, rule);
            let nodes = rule.nodes.clone();
            let scaled = scale_rows(&values, &nodes, |x| x);
            let gram = symmetrize(&(scaled.transpose() * &scaled));
            let eig = gram.clone().symmetric_eigen();
            let (lo, hi) = eig
                .eigenvalues
                .iter()
                .fold((T::max_value().expect("bounded"), T::zero()), |(lo, hi), &v| (lo.min(v), hi.max(v)));
            let condition = if lo > T::zero() { hi / lo } else { T::max_value().expect("bounded") };
            if condition > T::of(MAX_GRAM_CONDITION) && size > 2 {
                size -= 1;
                continue;
            }
            if !(lo > T::zero()) {
                bail!(Numeric, "Gram matrix is singular");
            }
            let inv_sqrt = eig.eigenvalues.map(|v| T::one() / v.sqrt());
            let transform = symmetrize(&(&eig.eigenvectors * DMatrix::from_diagonal(&inv_sqrt) * eig.eigenvectors.transpose()));
            return Ok(Self {
                spec: trial,
                transform,
                gram_condition: condition,
                reduced_from: (size != requested).then_some(requested),
                nodes,
                values,
                derivs,
            });
        }
    }

    /// `√w L̂_i` and `√w [(ν+1 − x/2) L̂_i + x L̂_i']` at every node.
    fn tables(spec: &RadialBasisSpec<T>, rule: &GaussLaguerre<T>) -> (DMatrix<T>, DMatrix<T>) {
        let a = T::of(2.0) * spec.exponent + T::of(2.0);
        let values = rule.scaled_laguerre_table(a, spec.size);
        let mut derivs = DMatrix::<T>::zeros(rule.len(), spec.size);
        for (k, &x) in rule.nodes.iter().enumerate() {
            for i in 0..spec.size {
                let fi = T::of(i as f64);
                // x L̂_i' = i L̂_i − √(i(i+a)) L̂_{i−1}
                let mut v = (spec.exponent + T::one() - x / T::of(2.0) + fi) * values[(k, i)];
                if i > 0 {
                    v -= (fi * (fi + a)).sqrt() * values[(k, i - 1)];
                }
                derivs[(k, i)] = v;
            }
        }
        (values, derivs)
    }

    pub fn size(&self) -> usize {
        self.spec.size
    }

    fn to_orthonormal(&self, raw: &DMatrix<T>) -> DMatrix<T> {
        symmetrize(&(&self.transform * raw * &self.transform))
    }

    /// Overlap of the orthonormalized set; identity up to rounding.
    pub fn overlap(&self) -> OperatorMatrix<T> {
        let scaled = scale_rows(&self.values, &self.nodes, |x| x);
        let raw = scaled.transpose() * scaled;
        OperatorMatrix::new(self.to_orthonormal(&raw), self.spec, OperatorLabel::Overlap)
    }

    /// `⟨u_i| −d²/dr² + c/r² |u_k⟩`.
    pub fn p2_matrix(&self) -> Result<OperatorMatrix<T>> {
        let beta = self.spec.scale;
        let grad = self.derivs.transpose() * &self.derivs;
        let inv_sq = self.values.transpose() * &self.values;
        let raw = (grad + inv_sq * self.spec.centrifugal) * (T::of(4.0) * beta * beta);
        check_finite(&raw)?;
        Ok(OperatorMatrix::new(self.to_orthonormal(&raw), self.spec, OperatorLabel::P2))
    }

    /// `⟨u_i| 1/r |u_k⟩`.
    pub fn inverse_r_matrix(&self) -> Result<DMatrix<T>> {
        let scaled = scale_rows(&self.values, &self.nodes, |x| x.sqrt());
        let raw = scaled.transpose() * scaled * (T::of(2.0) * self.spec.scale);
        check_finite(&raw)?;
        Ok(self.to_orthonormal(&raw))
    }

    /// `⟨u_i| −α/r |u_k⟩`.
    pub fn coulomb_matrix(&self, alpha: T) -> Result<OperatorMatrix<T>> {
        Ok(OperatorMatrix::new(self.inverse_r_matrix()? * -alpha, self.spec, OperatorLabel::Coulomb))
    }

    /// Orthonormal basis functions' coefficient vector evaluated at `r`.
    ///
    /// Returns `u_i(r)` for the orthonormalized set; intended for plotting
    /// and overlap diagnostics, not for matrix assembly.
    pub fn evaluate(&self, r: T) -> DVector<T> {
        let x = T::of(2.0) * self.spec.scale * r;
        let a = T::of(2.0) * self.spec.exponent + T::of(2.0);
        let mut raw = DVector::<T>::zeros(self.size());
        let mut prev = T::zero();
        let mut cur = T::one();
        let mut log_h = crate::scalar::ln_gamma(a + T::one());
        let prefactor = (T::of(2.0) * self.spec.scale).sqrt() * x.powf(self.spec.exponent + T::one()) * (-x / T::of(2.0)).exp();
        for i in 0..self.size() {
            if i > 0 {
                let fi = T::of((i - 1) as f64);
                let next = ((T::of(2.0) * fi + T::one() + a - x) * cur - (fi + a) * prev) / (fi + T::one());
                prev = cur;
                cur = next;
                log_h += ((fi + a + T::one()) / (fi + T::one())).ln();
            }
            raw[i] = prefactor * cur * (-log_h / T::of(2.0)).exp();
        }
        &self.transform * raw
    }
}

fn scale_rows<T: Real, F: Fn(T) -> T>(m: &DMatrix<T>, nodes: &[T], f: F) -> DMatrix<T> {
    let mut out = m.clone();
    for (k, &x) in nodes.iter().enumerate() {
        let s = f(x);
        out.row_mut(k).scale_mut(s);
    }
    out
}

fn check_finite<T: Real>(m: &DMatrix<T>) -> Result<()> {
    if m.iter().any(|v| !v.is_finite()) {
        bail!(Numeric, "non-finite matrix element; basis scale out of range");
    }
    Ok(())
}

/// `√(m² + P)` by symmetric eigendecomposition.
pub fn sqrt_operator<T: Real>(p2: &OperatorMatrix<T>, mass: T) -> Result<OperatorMatrix<T>> {
    let eig = symmetrize(&p2.entries).symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let mut roots = eig.eigenvalues.clone();
    for v in roots.iter_mut() {
        if *v < -T::of(1e-10) * scale {
            bail!(Consistency, "operand of the square root has eigenvalue {} < 0", *v);
        }
        *v = (mass * mass + v.max(T::zero())).sqrt();
    }
    let out = &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.transpose();
    Ok(OperatorMatrix::new(symmetrize(&out), p2.basis, OperatorLabel::SqrtKinetic))
}

/// `√(m² + P) + V`.
pub fn sqrt_hamiltonian<T: Real>(basis: &RadialBasis<T>, mass: T, alpha: T) -> Result<OperatorMatrix<T>> {
    let kinetic = sqrt_operator(&basis.p2_matrix()?, mass)?;
    let potential = basis.coulomb_matrix(alpha)?;
    Ok(OperatorMatrix::new(kinetic.entries + potential.entries, basis.spec, OperatorLabel::Hamiltonian))
}

/// `P/(2m) + V`, the nonrelativistic radial Hamiltonian.
pub fn schrodinger_hamiltonian<T: Real>(basis: &RadialBasis<T>, mass: T, alpha: T) -> Result<OperatorMatrix<T>> {
    let p2 = basis.p2_matrix()?;
    let potential = basis.coulomb_matrix(alpha)?;
    Ok(OperatorMatrix::new(p2.entries / (T::of(2.0) * mass) + potential.entries, basis.spec, OperatorLabel::Hamiltonian))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_examples() {
        assert_eq!(RadialBasisSpec::<f64>::new(0.0, 1.0, 4).unwrap().exponent, 0.0);
        assert!((RadialBasisSpec::<f64>::new(2.0, 1.0, 4).unwrap().exponent - 1.0).abs() < 1e-15);
        let c = 1.0 - 0.75f64.sqrt();
        let nu = RadialBasisSpec::<f64>::new(c, 1.0, 4).unwrap().exponent;
        // mpmath: 0.119656837463737951
        assert!((nu - 0.119_656_837_463_737_95).abs() < 1e-15);
        assert!(RadialBasisSpec::<f64>::new(-0.3, 1.0, 4).is_err());
        assert!(RadialBasisSpec::<f64>::new(0.0, 0.0, 4).is_err());
        assert!(RadialBasisSpec::<f64>::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn single_function_integrals() {
        // u₀ = 2r e^{−r}: ∫u'² = 1, ∫u²/r = 1
        let basis = RadialBasis::<f64>::new(0.0, 1.0, 2).unwrap();
        let p2 = basis.p2_matrix().unwrap();
        assert!((p2.entries[(0, 0)] - 1.0).abs() < 1e-13);
        let v = basis.coulomb_matrix(1.0).unwrap();
        assert!((v.entries[(0, 0)] + 1.0).abs() < 1e-13);
    }

    #[test]
    fn orthonormal_and_symmetric() {
        for c in [0.0, 2.0, 0.1339746, -0.2] {
            let basis = RadialBasis::<f64>::new(c, 0.7, 40).unwrap();
            let s = basis.overlap();
            assert!((s.entries - DMatrix::<f64>::identity(40, 40)).abs().max() < 1e-12);
            let p2 = basis.p2_matrix().unwrap();
            assert!(p2.asymmetry() < 1e-13);
            assert!(p2.eigenvalues()[0] >= 0.0);
            let v = basis.coulomb_matrix(0.3).unwrap();
            assert!((0..40).all(|i| v.entries[(i, i)] < 0.0));
            assert!(v.eigenvalues()[39] < 0.0);
        }
    }

    #[test]
    fn coulomb_is_linear_in_alpha() {
        let basis = RadialBasis::<f64>::new(2.0, 0.5, 10).unwrap();
        let a = basis.coulomb_matrix(0.1).unwrap().entries;
        let b = basis.coulomb_matrix(0.3).unwrap().entries;
        assert!((b - a * 3.0).abs().max() < 1e-14);
    }

    #[test]
    fn nonrelativistic_hydrogen_levels() {
        for l in 0..3u32 {
            let c = f64::from(l * (l + 1));
            let basis = RadialBasis::<f64>::new(c, 0.5, 60).unwrap();
            let h = schrodinger_hamiltonian(&basis, 1.0, 1.0).unwrap();
            let ev = h.eigenvalues();
            for (k, e) in ev.iter().take(3).enumerate() {
                let n = f64::from(l) + 1.0 + k as f64;
                assert!((e + 0.5 / (n * n)).abs() < 1e-8, "l={l} k={k} {e}");
            }
        }
    }

    #[test]
    fn sqrt_operator_spectral_mapping() {
        let basis = RadialBasis::<f64>::new(0.5, 0.3, 50).unwrap();
        let p2 = basis.p2_matrix().unwrap();
        let root = sqrt_operator(&p2, 1.0).unwrap();
        let square = &root.entries * &root.entries;
        let target = DMatrix::<f64>::identity(50, 50) + &p2.entries;
        let rel = (square - &target).abs().max() / target.abs().max();
        assert!(rel < 1e-11, "{rel}");
        assert!(root.eigenvalues()[0] >= 1.0 - 1e-12);
        let zero = OperatorMatrix::new(DMatrix::<f64>::zeros(3, 3), basis.spec, OperatorLabel::P2);
        let id = sqrt_operator(&zero, 2.0).unwrap();
        assert_eq!(id.entries, DMatrix::<f64>::identity(3, 3) * 2.0);
    }

    #[test]
    fn negative_operand_rejected() {
        let basis = RadialBasis::<f64>::new(0.0, 1.0, 3).unwrap();
        let bad = OperatorMatrix::new(DMatrix::<f64>::identity(3, 3) * -1.0, basis.spec, OperatorLabel::P2);
        assert!(matches!(sqrt_operator(&bad, 1.0), Err(crate::Error::Consistency(_))));
    }

    #[test]
    fn evaluated_functions_are_normalized() {
        let basis = RadialBasis::<f64>::new(2.0, 1.0, 5).unwrap();
        // crude trapezoid in r
        let h = 1e-3;
        let mut acc = 0.0;
        for k in 1..40_000 {
            let u = basis.evaluate(k as f64 * h);
            acc += u[3] * u[3] * h;
        }
        assert!((acc - 1.0).abs() < 1e-6);
    }
}
