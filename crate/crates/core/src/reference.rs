//! Independent reference spectra: the exact Dirac formula, the correction
//! budget of the Pauli-reduced Dirac Hamiltonian, and the Klein-Gordon-like
//! 2-spinor equation `(E − V)² ψ± = (m² + p² ± iσ·eE) ψ±`.

use crate::angular::numerator_eigenvalue;
use crate::error::{bail, Result};
use crate::hydrogen::{density_at_origin, expectation_inv_r3, PhysicalParams};
use crate::perturbation::{alpha4_shift, delta_e10, energy_alpha4, epsilon_exact, lambda_value};
use crate::quantum::{Branch, CouplingSign};
use crate::radial::{sorted_eigenvalues, RadialBasis};
use crate::scalar::Real;

fn check_nj(n: u32, two_j: u32) -> Result<()> {
    crate::quantum::check_two_j(two_j)?;
    if n < 1 || two_j >= 2 * n {
        bail!(Argument, "j = {two_j}/2 out of range for n = {n}");
    }
    Ok(())
}

/// `m / √(1 + x)` minus `m`, without cancellation.
fn binding_from_ratio<T: Real>(mass: T, x: T) -> T {
    let root = (T::one() + x).sqrt();
    -mass * x / (root * (T::one() + root))
}

/// Total Dirac energy `m / √(1 + α²/(n − ε_j)²)`.
pub fn dirac_energy<T: Real>(n: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<T> {
    check_nj(n, two_j)?;
    let big_n = T::int(n as i64) - epsilon_exact(two_j, params.alpha)?;
    Ok(params.mass / (T::one() + params.alpha * params.alpha / (big_n * big_n)).sqrt())
}

/// Dirac energy minus rest mass, evaluated without cancellation.
pub fn dirac_binding<T: Real>(n: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<T> {
    check_nj(n, two_j)?;
    let big_n = T::int(n as i64) - epsilon_exact(two_j, params.alpha)?;
    Ok(binding_from_ratio(params.mass, params.alpha * params.alpha / (big_n * big_n)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracCheck<T> {
    pub binding: T,
    /// `binding − energy_alpha4`.
    pub deviation: T,
}

pub fn dirac_binding_alpha4_check<T: Real>(n: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<DiracCheck<T>> {
    let binding = dirac_binding(n, two_j, params)?;
    Ok(DiracCheck { binding, deviation: binding - energy_alpha4(n, two_j, params)? })
}

/// Expectation values of the three α⁴ terms of the Pauli-reduced Dirac Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionBudget<T> {
    pub kinetic: T,
    /// Contact term, s-states only.
    pub darwin: T,
    /// l ≥ 1 only.
    pub spin_orbit: T,
    pub total_shift: T,
}

/// Kinetic, Darwin and spin-orbit shifts of state `(n, l, j)`.
///
/// The Darwin term is taken as `(1/8m²)⟨∇²V⟩ = (α/8m²) 4π |ψ(0)|²`, with
/// `|ψ(0)|²` read off the radial function at the origin.
pub fn pauli_dirac_budget<T: Real>(n: u32, l: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<CorrectionBudget<T>> {
    Branch::of(l, two_j)?;
    if l >= n {
        bail!(Argument, "l = {l} must be <= n - 1");
    }
    let (m, a) = (params.mass, params.alpha);
    let kinetic = delta_e10(n, l, params)?;
    let darwin = if l == 0 {
        a / (T::of(8.0) * m * m) * T::of(4.0) * T::pi() * density_at_origin(n, params)?
    } else {
        T::zero()
    };
    let spin_orbit = if l >= 1 {
        let j = T::half(two_j as i64);
        let lf = T::int(l as i64);
        let sigma_l = j * (j + T::one()) - lf * (lf + T::one()) - T::of(0.75);
        a / (T::of(4.0) * m * m) * expectation_inv_r3(n, l, params)? * sigma_l
    } else {
        T::zero()
    };
    Ok(CorrectionBudget { kinetic, darwin, spin_orbit, total_shift: kinetic + darwin + spin_orbit })
}

/// `total_shift − alpha4_shift`, relative to the latter.
pub fn budget_mismatch<T: Real>(n: u32, l: u32, two_j: u32, params: &PhysicalParams<T>) -> Result<T> {
    let b = pauli_dirac_budget(n, l, two_j, params)?;
    let target = alpha4_shift(n, two_j, params)?;
    Ok(((b.total_shift - target) / target).abs())
}

/// One radial channel of the 2-spinor equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgChannel<T> {
    pub two_j: u32,
    pub l: u32,
    pub lambda: T,
    pub sign: CouplingSign,
    pub radial: u32,
}

impl<T: Real> KgChannel<T> {
    /// λ is taken from the numerator block's channel-matched eigenvalue and
    /// checked against `l − ε_j`.
    pub fn new(two_j: u32, l: u32, radial: u32, sign: CouplingSign, alpha: T) -> Result<Self> {
        let branch = Branch::of(l, two_j)?;
        let lambda = lambda_value(l, two_j, alpha)?;
        let mu = numerator_eigenvalue(two_j, alpha, sign, branch)?;
        let direct = lambda * (lambda + T::one());
        if (mu - direct).abs() > T::of(1e-12) * (T::one() + direct.abs()) {
            bail!(Consistency, "λ(λ+1) = {direct} disagrees with block eigenvalue {mu}");
        }
        Ok(Self { two_j, l, lambda, sign, radial })
    }

    /// Principal number `n = n_r + l + 1`.
    pub fn n(&self) -> u32 {
        self.radial + self.l + 1
    }
}

/// `m / √(1 + α²/N²)` with `N = n_r + λ + 1`.
pub fn kg_analytic_energy<T: Real>(channel: &KgChannel<T>, params: &PhysicalParams<T>) -> Result<T> {
    let big_n = kg_effective_n(channel);
    if !(big_n > T::zero()) {
        bail!(Domain, "effective principal number {big_n} <= 0");
    }
    Ok(params.mass / (T::one() + params.alpha * params.alpha / (big_n * big_n)).sqrt())
}

pub fn kg_analytic_binding<T: Real>(channel: &KgChannel<T>, params: &PhysicalParams<T>) -> Result<T> {
    let big_n = kg_effective_n(channel);
    if !(big_n > T::zero()) {
        bail!(Domain, "effective principal number {big_n} <= 0");
    }
    Ok(binding_from_ratio(params.mass, params.alpha * params.alpha / (big_n * big_n)))
}

fn kg_effective_n<T: Real>(channel: &KgChannel<T>) -> T {
    T::int(channel.radial as i64) + channel.lambda + T::one()
}

/// Fixed-point settings for [`kg_iterative_solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgSolverConfig<T> {
    pub size: usize,
    /// Basis scale; defaults to `mα/(n_r + l + 1)`.
    pub beta: Option<T>,
    /// Starting energy; defaults to `m`.
    pub initial: Option<T>,
    pub tolerance: T,
    pub max_iterations: usize,
}

impl<T: Real> KgSolverConfig<T> {
    pub fn with_size(size: usize) -> Self {
        Self { size, beta: None, initial: None, tolerance: T::of(1e-12), max_iterations: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgSolution<T> {
    /// Total energy.
    pub energy: T,
    pub iterations: usize,
    pub last_step: T,
}

/// Solves the channel's nonlinear eigenproblem by fixed-point iteration on
/// `E_{k+1} = √(m² + μ(E_k))`, `μ` the `(n_r+1)`-th eigenvalue of
/// `p_r² + λ(λ+1)/r² − 2E_k α/r`.
pub fn kg_iterative_solve<T: Real>(channel: &KgChannel<T>, params: &PhysicalParams<T>, config: &KgSolverConfig<T>) -> Result<KgSolution<T>> {
    let (m, a) = (params.mass, params.alpha);
    if config.size < 40 {
        bail!(Argument, "fixed-point solve needs a basis of at least 40 functions, got {}", config.size);
    }
    if a >= T::half(channel.two_j as i64 + 1) {
        bail!(Domain, "alpha >= j + 1/2");
    }
    let c = channel.lambda * (channel.lambda + T::one());
    let beta = config.beta.unwrap_or(m * a / T::int(channel.n() as i64));
    let basis = RadialBasis::new(c, beta, config.size)?;
    let p2 = basis.p2_matrix()?.entries;
    let inv_r = basis.inverse_r_matrix()?;
    let index = channel.radial as usize;
    if index >= basis.size() {
        bail!(Argument, "radial index {index} exceeds basis size");
    }
    let mut energy = config.initial.unwrap_or(m);
    for iteration in 1..=config.max_iterations {
        let op = &p2 - &inv_r * (T::of(2.0) * energy * a);
        let mu = sorted_eigenvalues(&op)[index];
        let radicand = m * m + mu;
        if radicand < T::zero() {
            bail!(Domain, "m^2 + mu = {radicand} < 0: no bound solution");
        }
        let next = radicand.sqrt();
        let step = (next - energy).abs();
        energy = next;
        if step <= config.tolerance * m {
            if energy >= T::of(2.0) * m {
                bail!(Consistency, "fixed point {energy} left the bound branch");
            }
            return Ok(KgSolution { energy, iterations: iteration, last_step: step });
        }
    }
    bail!(Convergence, "fixed-point iteration did not settle in {} steps", config.max_iterations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrogen::energy_nonrel;

    fn p(alpha: f64) -> PhysicalParams<f64> {
        PhysicalParams::new(1.0, alpha).unwrap()
    }

    #[test]
    fn dirac_examples() {
        let e = dirac_energy(1, 1, &p(0.5)).unwrap();
        assert!((e - 0.75f64.sqrt()).abs() < 1e-15);
        // mpmath: 0.96592582628906828675
        let e = dirac_energy(2, 1, &p(0.5)).unwrap();
        assert!((e - 0.965_925_826_289_068_3).abs() < 1e-15);
        assert!((e - ((1.0 + 0.75f64.sqrt()) / 2.0).sqrt()).abs() < 1e-15);
        let e = dirac_energy(3, 5, &p(1e-9)).unwrap();
        assert!((e - 1.0).abs() < 1e-16);
        assert!(dirac_energy(1, 3, &p(0.1)).is_err());
    }

    #[test]
    fn dirac_vs_alpha4_ground_state() {
        let a = 1.0 / 137.035999;
        let chk = dirac_binding_alpha4_check(1, 1, &p(a)).unwrap();
        // mpmath: binding -2.66260317656421e-5, deviation -9.43814077583726e-15
        assert!((chk.binding / -2.662_603_176_564_212_7e-5 - 1.0).abs() < 1e-13);
        assert!((chk.deviation / -9.438_140_775_837_255e-15 - 1.0).abs() < 1e-4);
        assert!(chk.deviation.abs() <= 10.0 * a.powi(6));
        // leading coefficient −α⁶/16
        assert!((chk.deviation / (-a.powi(6) / 16.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn budget_examples() {
        let a = 0.1;
        let b = pauli_dirac_budget(1, 0, 1, &p(a)).unwrap();
        let a4 = a.powi(4);
        assert!((b.darwin - 0.5 * a4).abs() < 1e-18);
        assert!((b.kinetic + 0.625 * a4).abs() < 1e-18);
        assert!((b.total_shift + 0.125 * a4).abs() < 1e-18);
        assert_eq!(b.spin_orbit, 0.0);
        let b = pauli_dirac_budget(2, 1, 3, &p(a)).unwrap();
        assert_eq!(b.darwin, 0.0);
        assert!((b.spin_orbit - a4 / 96.0).abs() < 1e-19);
        assert!((b.total_shift + a4 / 128.0).abs() < 1e-19);
        assert!(pauli_dirac_budget(2, 0, 3, &p(a)).is_err());
    }

    #[test]
    fn kg_analytic_examples() {
        let params = p(0.5);
        let g = KgChannel::new(1, 0, 0, CouplingSign::Plus, 0.5).unwrap();
        assert!((kg_analytic_energy(&g, &params).unwrap() - 0.75f64.sqrt()).abs() < 1e-15);
        let s = KgChannel::new(1, 0, 1, CouplingSign::Plus, 0.5).unwrap();
        let pp = KgChannel::new(1, 1, 0, CouplingSign::Minus, 0.5).unwrap();
        let es = kg_analytic_energy(&s, &params).unwrap();
        let ep = kg_analytic_energy(&pp, &params).unwrap();
        assert!((es - 0.965_925_826_289_068_3).abs() < 1e-15);
        assert!((es - ep).abs() < 1e-15);
    }

    #[test]
    fn kg_fixed_point_ground_state() {
        let params = p(0.2);
        let ch = KgChannel::new(1, 0, 0, CouplingSign::Plus, 0.2).unwrap();
        let exact = kg_analytic_energy(&ch, &params).unwrap();
        let cfg = KgSolverConfig::with_size(80);
        let sol = kg_iterative_solve(&ch, &params, &cfg).unwrap();
        assert!(((sol.energy - exact) / exact).abs() < 1e-9);
        assert!(sol.iterations <= 50);
        let cold = KgSolverConfig { initial: Some(1.0 - 0.02), ..cfg };
        let other = kg_iterative_solve(&ch, &params, &cold).unwrap();
        assert!((other.energy - sol.energy).abs() < 1e-12);
    }

    #[test]
    fn kg_weak_coupling_converges_faster() {
        let strong = KgChannel::new(1, 0, 0, CouplingSign::Plus, 0.3).unwrap();
        let weak = KgChannel::new(1, 0, 0, CouplingSign::Plus, 0.01).unwrap();
        let cfg = KgSolverConfig::with_size(40);
        let s = kg_iterative_solve(&strong, &p(0.3), &cfg).unwrap();
        let w = kg_iterative_solve(&weak, &p(0.01), &cfg).unwrap();
        assert!(w.iterations < s.iterations, "{} vs {}", w.iterations, s.iterations);
    }

    #[test]
    fn kg_rejects_small_basis() {
        let ch = KgChannel::new(1, 0, 0, CouplingSign::Plus, 0.2).unwrap();
        assert!(kg_iterative_solve(&ch, &p(0.2), &KgSolverConfig::with_size(10)).is_err());
    }

    #[test]
    fn dirac_binding_is_below_nonrel_for_ground_state() {
        let params = p(0.3);
        assert!(dirac_binding(1, 1, &params).unwrap() < energy_nonrel(1, &params).unwrap());
    }
}
