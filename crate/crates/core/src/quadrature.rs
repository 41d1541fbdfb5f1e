//! Gauss quadrature rules.
//!
//! Gauss-Laguerre weights are kept as natural logs: for the node counts the
//! radial solver uses (several hundred) the outer weights underflow `f64`
//! long before the polynomial values they multiply stop mattering.

use nalgebra::DMatrix;

use crate::error::{bail, Result};
use crate::scalar::{ln_gamma, ln_gamma_ratio, Real};

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            bail!(Argument, "Gauss-Legendre rule needs at least one node");
        }
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::of(n as f64);
        let tol = T::default_epsilon() * T::of(4.0);
        for i in 0..n.div_ceil(2) {
            // Chebyshev-like initial guess, then Newton on P_n.
            let mut z = (T::pi() * (T::of(i as f64) + T::of(0.75)) / (nf + T::of(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= tol {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, z);
            dp = if d.is_finite() { d } else { dp };
            let w = T::of(2.0) / ((T::one() - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(Self { nodes, weights })
    }

    /// Integrates `f` over `[-1, 1]`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes.iter().zip(&self.weights).fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::of(k as f64);
        let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::of(n as f64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Generalized Gauss-Laguerre rule for `∫₀^∞ x^a e^{-x} f(x) dx`.
#[derive(Debug, Clone)]
pub struct GaussLaguerre<T> {
    /// Exponent `a > -1` of the weight.
    pub exponent: T,
    pub nodes: Vec<T>,
    /// `ln w_k`.
    pub log_weights: Vec<T>,
}

/// Renormalization threshold for scaled three-term recurrences: a power of
/// two near the fourth root of the largest finite value, so rescaling is exact.
fn rescale<T: Real>() -> T {
    let bits = T::max_value().expect("bounded").log2() / T::of(4.0);
    T::of(2.0).powf(bits.floor())
}

/// `L_n^a(x)` and `L_{n-1}^a(x)` as `(mantissa_n, mantissa_{n-1}, ln_scale)`.
fn laguerre_scaled<T: Real>(n: usize, a: T, x: T) -> (T, T, T) {
    let big = rescale::<T>();
    let mut log_scale = T::zero();
    let mut prev = T::zero();
    let mut cur = T::one();
    for i in 0..n {
        let fi = T::of(i as f64);
        let next = ((T::of(2.0) * fi + T::one() + a - x) * cur - (fi + a) * prev) / (fi + T::one());
        prev = cur;
        cur = next;
        if cur.abs() > big {
            cur /= big;
            prev /= big;
            log_scale += big.ln();
        }
    }
    (cur, prev, log_scale)
}

impl<T: Real> GaussLaguerre<T> {
    pub fn new(n: usize, exponent: T) -> Result<Self> {
        if n == 0 {
            bail!(Argument, "Gauss-Laguerre rule needs at least one node");
        }
        if !(exponent > -T::one()) || !exponent.is_finite() {
            bail!(Domain, "Gauss-Laguerre exponent must exceed -1, got {exponent}");
        }
        let a = exponent;
        // Golub-Welsch eigenvalues as starting points.
        let jacobi = DMatrix::<T>::from_fn(n, n, |i, k| {
            let fi = T::of(i as f64);
            if i == k {
                T::of(2.0) * fi + a + T::one()
            } else if i + 1 == k {
                ((fi + T::one()) * (fi + T::one() + a)).sqrt()
            } else if k + 1 == i {
                (fi * (fi + a)).sqrt()
            } else {
                T::zero()
            }
        });
        let mut guesses: Vec<T> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        guesses.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));

        let nf = T::of(n as f64);
        let log_norm = ln_gamma_ratio(n, a);
        let mut nodes = Vec::with_capacity(n);
        let mut log_weights = Vec::with_capacity(n);
        for mut x in guesses {
            if !(x > T::zero()) {
                bail!(Numeric, "non-positive Laguerre node {x}");
            }
            for _ in 0..8 {
                let (p, q, _) = laguerre_scaled(n, a, x);
                let dp = (nf * p - (nf + a) * q) / x;
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= T::default_epsilon() * x.abs() {
                    break;
                }
            }
            let (p, q, s) = laguerre_scaled(n, a, x);
            let dp = (nf * p - (nf + a) * q) / x;
            let lw = log_norm - x.ln() - T::of(2.0) * (dp.abs().ln() + s);
            if !lw.is_finite() {
                bail!(Numeric, "non-finite Laguerre weight at node {x}");
            }
            nodes.push(x);
            log_weights.push(lw);
        }
        Ok(Self { exponent, nodes, log_weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `x^a e^{-x} f(x)`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.log_weights)
            .fold(T::zero(), |acc, (&x, &lw)| acc + lw.exp() * f(x))
    }

    /// Values `√w_k · p̂_i(x_k)` of the orthonormal Laguerre polynomials
    /// `p̂_i = L_i^b / √h_i`, `h_i = Γ(i+b+1)/i!`, for `i < count`.
    ///
    /// Row `k` is the node, column `i` the degree. The polynomial family
    /// exponent `b` is independent of the rule's own weight exponent.
    pub fn scaled_laguerre_table(&self, b: T, count: usize) -> DMatrix<T> {
        let big = rescale::<T>();
        let mut table = DMatrix::<T>::zeros(self.len(), count);
        for (k, (&x, &lw)) in self.nodes.iter().zip(&self.log_weights).enumerate() {
            let mut log_scale = T::of(0.5) * lw;
            let mut log_h = ln_gamma(b + T::one());
            let mut prev = T::zero();
            let mut cur = T::one();
            for i in 0..count {
                if i > 0 {
                    let fi = T::of((i - 1) as f64);
                    let next =
                        ((T::of(2.0) * fi + T::one() + b - x) * cur - (fi + b) * prev) / (fi + T::one());
                    prev = cur;
                    cur = next;
                    log_h += ((fi + b + T::one()) / (fi + T::one())).ln();
                    if cur.abs() > big {
                        cur /= big;
                        prev /= big;
                        log_scale += big.ln();
                    }
                }
                table[(k, i)] = cur * (log_scale - T::of(0.5) * log_h).exp();
            }
        }
        table
    }
}
