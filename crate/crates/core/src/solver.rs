//! Spectral diagonalization of `√(m² + p² + c/r²) − α/r` per angular channel.

use serde::Serialize;

use crate::angular::numerator_eigenvalue;
use crate::error::{bail, Result};
use crate::hydrogen::{energy_nonrel, PhysicalParams};
use crate::perturbation::{energy_alpha4, lambda_value};
use crate::quantum::{Branch, CouplingSign};
use crate::radial::{quadrature_rule, sorted_eigenvalues, sqrt_operator, RadialBasis, RadialBasisSpec};
use crate::reference::{dirac_binding, kg_analytic_binding, KgChannel};
use crate::scalar::Real;
use crate::spectrum::{Method, SpectrumEntry};

/// Which radial operand is square-rooted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChannelSpec {
    /// Spin-½ channel `(j, branch)` of the coupled equation.
    Spin { two_j: u32, branch: Branch, sign: CouplingSign },
    /// Scalar square-root equation with orbital momentum `l`.
    Spinless { l: u32 },
}

impl ChannelSpec {
    pub fn spin(two_j: u32, branch: Branch, sign: CouplingSign) -> Result<Self> {
        crate::quantum::check_two_j(two_j)?;
        Ok(ChannelSpec::Spin { two_j, branch, sign })
    }

    pub fn l(&self) -> u32 {
        match *self {
            ChannelSpec::Spin { two_j, branch, .. } => branch.l(two_j),
            ChannelSpec::Spinless { l } => l,
        }
    }

    pub fn two_j(&self) -> Option<u32> {
        match *self {
            ChannelSpec::Spin { two_j, .. } => Some(two_j),
            ChannelSpec::Spinless { .. } => None,
        }
    }

    pub fn sign(&self) -> CouplingSign {
        match *self {
            ChannelSpec::Spin { sign, .. } => sign,
            ChannelSpec::Spinless { .. } => CouplingSign::Plus,
        }
    }

    /// Coefficient of `1/r²` inside the square root.
    ///
    /// For spin channels this is the numerator-block eigenvalue plus α²,
    /// i.e. `λ(λ+1) + α²` with no truncation in α.
    pub fn centrifugal<T: Real>(&self, alpha: T) -> Result<T> {
        match *self {
            ChannelSpec::Spin { two_j, branch, sign } => Ok(numerator_eigenvalue(two_j, alpha, sign, branch)? + alpha * alpha),
            ChannelSpec::Spinless { l } => {
                let l = T::int(l as i64);
                Ok(l * (l + T::one()))
            }
        }
    }
}

fn channel_entries<T: Real>(channel: &ChannelSpec, params: &PhysicalParams<T>, spec: RadialBasisSpec<T>, eigen: &[T]) -> Vec<SpectrumEntry<T>> {
    let m = params.mass;
    let l = channel.l();
    eigen
        .iter()
        .take_while(|&&e| e < m)
        .enumerate()
        .map(|(k, &e)| SpectrumEntry {
            method: Method::SqrtSolver,
            n: l + 1 + k as u32,
            l,
            two_j: channel.two_j(),
            alpha: params.alpha,
            binding: e - m,
            convergence_estimate: T::zero(),
            sign: channel.sign(),
            basis: Some(spec),
        })
        .collect()
}

/// Total-energy eigenvalues of the channel Hamiltonian in a prepared basis.
pub fn channel_eigenvalues<T: Real>(basis: &RadialBasis<T>, params: &PhysicalParams<T>) -> Result<Vec<T>> {
    let kinetic = sqrt_operator(&basis.p2_matrix()?, params.mass)?;
    let h = kinetic.entries + basis.coulomb_matrix(params.alpha)?.entries;
    Ok(sorted_eigenvalues(&h))
}

fn check_alpha<T: Real>(channel: &ChannelSpec, alpha: T) -> Result<()> {
    if let ChannelSpec::Spin { two_j, .. } = *channel {
        if alpha >= T::half(two_j as i64 + 1) {
            bail!(Domain, "alpha = {alpha} >= j + 1/2 = {}", T::half(two_j as i64 + 1));
        }
    }
    Ok(())
}

/// Bound levels of one channel, ascending. `n` is labelled `l + 1 + k`.
pub fn solve<T: Real>(channel: &ChannelSpec, params: &PhysicalParams<T>, size: usize, beta: T) -> Result<Vec<SpectrumEntry<T>>> {
    check_alpha(channel, params.alpha)?;
    let basis = RadialBasis::new(channel.centrifugal(params.alpha)?, beta, size)?;
    let eigen = channel_eigenvalues(&basis, params)?;
    Ok(channel_entries(channel, params, basis.spec, &eigen))
}

pub fn solve_channel<T: Real>(
    two_j: u32,
    branch: Branch,
    sign: CouplingSign,
    params: &PhysicalParams<T>,
    size: usize,
    beta: T,
) -> Result<Vec<SpectrumEntry<T>>> {
    solve(&ChannelSpec::spin(two_j, branch, sign)?, params, size, beta)
}

pub fn solve_spinless<T: Real>(l: u32, params: &PhysicalParams<T>, size: usize, beta: T) -> Result<Vec<SpectrumEntry<T>>> {
    solve(&ChannelSpec::Spinless { l }, params, size, beta)
}

/// `count` log-spaced scales `mα · 4^{(k − mid)/mid}`, spanning a factor 16.
pub fn default_beta_grid<T: Real>(params: &PhysicalParams<T>, count: usize) -> Vec<T> {
    let centre = params.mass * params.alpha;
    if count <= 1 {
        return vec![centre];
    }
    let mid = (count - 1) as f64 / 2.0;
    (0..count).map(|k| centre * T::of(4f64.powf((k as f64 - mid) / mid))).collect()
}

pub const DEFAULT_BETA_POINTS: usize = 15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow<T> {
    pub size: usize,
    /// Size actually used after the Gram guard.
    pub effective_size: usize,
    pub beta: T,
    /// Lowest total energy, or `None` when the solve failed.
    pub lowest: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy<T> {
    pub rows: Vec<ConvergenceRow<T>>,
    /// Variationally selected β for each size.
    pub best_beta: Vec<T>,
    /// Bound levels at the largest size and its best β.
    pub levels: Vec<SpectrumEntry<T>>,
    pub convergence_estimate: T,
    /// Best lowest energy failed to decrease with N somewhere.
    pub non_monotone: bool,
}

impl<T: Real> ConvergenceStudy<T> {
    pub fn ground(&self) -> Option<&SpectrumEntry<T>> {
        self.levels.first()
    }
}

/// Scans every `(N, β)` pair, keeps the β minimizing the lowest level per N,
/// and reports `|E(N_max) − E(N_prev)|` per level at the selected scales.
pub fn convergence_study<T: Real>(
    channel: &ChannelSpec,
    params: &PhysicalParams<T>,
    sizes: &[usize],
    beta_grid: &[T],
) -> Result<ConvergenceStudy<T>> {
    if sizes.len() < 2 {
        bail!(Argument, "convergence study needs at least two basis sizes");
    }
    if beta_grid.is_empty() {
        bail!(Argument, "empty beta grid");
    }
    check_alpha(channel, params.alpha)?;
    let c = channel.centrifugal(params.alpha)?;
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        bail!(Argument, "convergence study needs at least two distinct basis sizes");
    }

    let mut rows = Vec::new();
    let mut best: Vec<(T, Vec<T>, RadialBasisSpec<T>)> = Vec::new();
    for &size in &sizes {
        let probe = RadialBasisSpec::new(c, beta_grid[0], size)?;
        let rule = quadrature_rule(&probe)?;
        let mut winner: Option<(T, Vec<T>, RadialBasisSpec<T>)> = None;
        for &beta in beta_grid {
            let spec = RadialBasisSpec::new(c, beta, size)?;
            let outcome = RadialBasis::with_rule(spec, &rule).and_then(|b| Ok((channel_eigenvalues(&b, params)?, b.spec)));
            let lowest = outcome.as_ref().ok().map(|(e, _)| e[0]);
            rows.push(ConvergenceRow {
                size,
                effective_size: outcome.as_ref().map(|(_, s)| s.size).unwrap_or(0),
                beta,
                lowest,
            });
            if let Ok((eigen, spec)) = outcome {
                if winner.as_ref().is_none_or(|(_, w, _)| eigen[0] < w[0]) {
                    winner = Some((beta, eigen, spec));
                }
            }
        }
        match winner {
            Some(w) => best.push(w),
            None => bail!(Convergence, "no basis scale produced a spectrum at N = {size}"),
        }
    }

    let non_monotone = best.windows(2).any(|w| w[1].1[0] > w[0].1[0] + T::of(1e-12) * params.mass);
    let (last, prev) = (&best[best.len() - 1], &best[best.len() - 2]);
    let mut levels = channel_entries(channel, params, last.2, &last.1);
    for (k, entry) in levels.iter_mut().enumerate() {
        entry.convergence_estimate = match prev.1.get(k) {
            Some(&e) => (last.1[k] - e).abs(),
            None => T::max_value().expect("bounded"),
        };
    }
    let convergence_estimate = levels.first().map_or(T::max_value().expect("bounded"), |e| e.convergence_estimate);
    Ok(ConvergenceStudy {
        rows,
        best_beta: best.iter().map(|b| b.0).collect(),
        levels,
        convergence_estimate,
        non_monotone,
    })
}

/// Basis settings for the solver row of [`compare_methods`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub sizes: Vec<usize>,
    /// Empty means [`default_beta_grid`].
    pub beta_grid: Vec<T>,
}

impl<T: Real> SolverConfig<T> {
    pub fn with_size(size: usize) -> Self {
        let prev = (size * 3 / 4).max(2);
        Self { sizes: vec![prev, size], beta_grid: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison<T> {
    pub entries: Vec<SpectrumEntry<T>>,
    /// `(a, b, binding_a − binding_b)` for every ordered pair `a < b`.
    pub differences: Vec<(Method, Method, T)>,
}

/// One binding energy per method for state `(n, l, j)`.
pub fn compare_methods<T: Real>(
    n: u32,
    l: u32,
    two_j: u32,
    sign: CouplingSign,
    params: &PhysicalParams<T>,
    config: &SolverConfig<T>,
) -> Result<Comparison<T>> {
    let branch = Branch::of(l, two_j)?;
    if l >= n {
        bail!(Argument, "l = {l} must be <= n - 1");
    }
    let a = params.alpha;
    let mut entries = Vec::with_capacity(5);
    for method in [Method::Perturbative, Method::Dirac, Method::Kg, Method::Nonrel] {
        entries.push(closed_form_entry(method, n, l, two_j, sign, params)?);
    }
    let channel = ChannelSpec::spin(two_j, branch, sign)?;
    let grid = if config.beta_grid.is_empty() {
        default_beta_grid(&params.with_alpha(a / T::int(n as i64))?, DEFAULT_BETA_POINTS)
    } else {
        config.beta_grid.clone()
    };
    let study = convergence_study(&channel, params, &config.sizes, &grid)?;
    let index = (n - l - 1) as usize;
    match study.levels.get(index) {
        Some(level) => entries.push(level.clone()),
        None => bail!(Convergence, "solver found no bound level n = {n} in channel l = {l}, j = {two_j}/2"),
    }
    crate::spectrum::sort_entries(&mut entries);
    let mut differences = Vec::new();
    for (i, x) in entries.iter().enumerate() {
        for y in &entries[i + 1..] {
            differences.push((x.method, y.method, x.binding - y.binding));
        }
    }
    Ok(Comparison { entries, differences })
}

/// Row for a method with a closed-form binding energy.
pub fn closed_form_entry<T: Real>(
    method: Method,
    n: u32,
    l: u32,
    two_j: u32,
    sign: CouplingSign,
    params: &PhysicalParams<T>,
) -> Result<SpectrumEntry<T>> {
    Branch::of(l, two_j)?;
    if l >= n {
        bail!(Argument, "l = {l} must be <= n - 1");
    }
    let binding = match method {
        Method::Perturbative => energy_alpha4(n, two_j, params)?,
        Method::Dirac => dirac_binding(n, two_j, params)?,
        Method::Kg => kg_analytic_binding(&KgChannel::new(two_j, l, n - l - 1, sign, params.alpha)?, params)?,
        Method::Nonrel => energy_nonrel(n, params)?,
        Method::SqrtSolver => bail!(Argument, "the square-root solver has no closed form"),
    };
    Ok(SpectrumEntry::closed_form(method, n, l, Some(two_j), params.alpha, binding, T::zero(), sign))
}

/// Checks `λ = l − ε_j` against the channel's centrifugal coefficient.
pub fn centrifugal_consistency<T: Real>(two_j: u32, branch: Branch, sign: CouplingSign, alpha: T) -> Result<T> {
    let lambda = lambda_value(branch.l(two_j), two_j, alpha)?;
    let c = ChannelSpec::spin(two_j, branch, sign)?.centrifugal(alpha)?;
    Ok((c - lambda * (lambda + T::one()) - alpha * alpha).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64) -> PhysicalParams<f64> {
        PhysicalParams::new(1.0, alpha).unwrap()
    }

    #[test]
    fn centrifugal_matches_lambda() {
        for two_j in [1, 3, 5] {
            for branch in [Branch::Lower, Branch::Upper] {
                for sign in CouplingSign::BOTH {
                    assert!(centrifugal_consistency(two_j, branch, sign, 0.3).unwrap() < 1e-13);
                }
            }
        }
        let c = ChannelSpec::spin(1, Branch::Lower, CouplingSign::Plus).unwrap().centrifugal(0.5).unwrap();
        assert!((c - (1.0 - 0.75f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn weak_coupling_limit() {
        let params = p(0.01);
        let levels = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 60, 0.01).unwrap();
        let e1 = energy_nonrel(1, &params).unwrap();
        assert!((levels[0].binding / e1 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn sign_independent_spectra() {
        let params = p(0.2);
        let a = solve_channel(3, Branch::Upper, CouplingSign::Plus, &params, 50, 0.1).unwrap();
        let b = solve_channel(3, Branch::Upper, CouplingSign::Minus, &params, 50, 0.1).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.binding - y.binding).abs() <= 1e-12);
        }
    }

    #[test]
    fn spinless_orderings() {
        let params = p(0.2);
        let s = solve_spinless(0, &params, 80, 0.2).unwrap();
        let pw = solve_spinless(1, &params, 80, 0.1).unwrap();
        let e1 = energy_nonrel(1, &params).unwrap();
        assert!(s[0].binding < e1);
        assert!(pw[0].binding > s[0].binding);
        let bigger = solve_spinless(0, &params, 120, 0.2).unwrap();
        assert!(bigger[0].binding <= s[0].binding + 1e-14);
    }

    #[test]
    fn branches_follow_their_towers() {
        let params = p(0.01);
        let lower = solve_channel(3, Branch::Lower, CouplingSign::Plus, &params, 60, 0.005).unwrap();
        let upper = solve_channel(3, Branch::Upper, CouplingSign::Plus, &params, 60, 0.004).unwrap();
        assert_eq!((lower[0].l, lower[0].n), (1, 2));
        assert_eq!((upper[0].l, upper[0].n), (2, 3));
        assert!((lower[0].binding / energy_nonrel(2, &params).unwrap() - 1.0).abs() < 1e-3);
        assert!((upper[0].binding / energy_nonrel(3, &params).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn detuned_scale_is_never_lower() {
        let params = p(0.2);
        let tuned = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 40, 0.2).unwrap();
        let off = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 40, 20.0).unwrap();
        assert!(off.first().is_none_or(|e| e.binding >= tuned[0].binding));
    }

    #[test]
    fn study_flags_and_gap() {
        let params = p(0.2);
        let ch = ChannelSpec::spin(1, Branch::Lower, CouplingSign::Plus).unwrap();
        let grid = default_beta_grid(&params, 5);
        let study = convergence_study(&ch, &params, &[2, 40], &grid).unwrap();
        assert!(!study.non_monotone);
        assert!(study.convergence_estimate > 1e-6);
        assert!(convergence_study(&ch, &params, &[40], &grid).is_err());
    }

    #[test]
    fn beta_grid_shape() {
        let g = default_beta_grid(&p(0.1), 15);
        assert_eq!(g.len(), 15);
        assert!((g[7] - 0.1).abs() < 1e-15);
        assert!((g[0] - 0.025).abs() < 1e-15 && (g[14] - 0.4).abs() < 1e-15);
    }
}
