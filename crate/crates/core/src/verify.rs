//! Invariant suites run by the `verify` command.
//!
//! Each suite returns a list of [`Check`]s; a check records the worst value
//! found over its parameter sweep and the bound it was held to.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::angular::{
    clebsch_gordan_half, lambda_block, maxwell_pauli_residual, numerator_block, pauli_product, pauli_product_rule,
    residual_norm, sample_points, sigma_dot_er_block, sigma_dot_er_quadrature, sigma_dot_l_block,
    sigma_dot_l_plus_one_block, l_squared_block, required_grid_order, AngularBlock, FieldConfig,
};
use crate::error::Result;
use crate::hydrogen::{
    alpha_scaling_exponent, expectation_inv_r, expectation_inv_r2, expectation_inv_r3,
    expectation_r_power_quadrature, PhysicalParams, RadialState,
};
use crate::perturbation::{breakdown, energy_alpha4, epsilon_approx, epsilon_exact};
use crate::quantum::{Branch, CouplingSign, QuantumNumbers};
use crate::radial::{schrodinger_hamiltonian, sqrt_operator, RadialBasis};
use crate::reference::{
    budget_mismatch, dirac_binding, dirac_energy, kg_analytic_energy, kg_iterative_solve, KgChannel, KgSolverConfig,
};
use crate::solver::{convergence_study, default_beta_grid, solve_channel, ChannelSpec, DEFAULT_BETA_POINTS};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub passed: bool,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, value: f64, lower: Option<f64>, upper: Option<f64>) -> Self {
        let passed = value.is_finite() && lower.is_none_or(|lo| value >= lo) && upper.is_none_or(|hi| value <= hi);
        Self { suite, name: name.into(), value, lower, upper, passed }
    }

    pub fn at_most(suite: &'static str, name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(suite, name, value, None, Some(bound))
    }

    pub fn at_least(suite: &'static str, name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(suite, name, value, Some(bound), None)
    }

    pub fn within(suite: &'static str, name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Self {
        Self::new(suite, name, value, Some(lower), Some(upper))
    }

    /// Failure of the underlying computation.
    pub fn errored(suite: &'static str, name: impl Into<String>, err: &crate::Error) -> Self {
        let mut c = Self::new(suite, format!("{}: {err}", name.into()), f64::NAN, None, None);
        c.passed = false;
        c
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let bound = match (self.lower, self.upper) {
            (Some(lo), Some(hi)) => format!("in [{lo}, {hi}]"),
            (Some(lo), None) => format!(">= {lo:e}"),
            (None, Some(hi)) => format!("<= {hi:e}"),
            (None, None) => String::new(),
        };
        write!(f, "{verdict} {}/{}: {:.3e} {bound}", self.suite, self.name, self.value)
    }
}

fn collect(suite: &'static str, name: &str, outcome: Result<Check>) -> Check {
    outcome.unwrap_or_else(|e| Check::errored(suite, name, &e))
}

const SIGNS: [CouplingSign; 2] = CouplingSign::BOTH;
const ALPHAS: [f64; 3] = [0.0, 0.1, 0.5];
const MAX_TWO_J: u32 = 15;

fn two_js(max: u32) -> impl Iterator<Item = u32> {
    (1..=max).step_by(2)
}

pub fn pauli_algebra() -> Vec<Check> {
    let name = "sigma_k sigma_j = delta + i eps sigma";
    vec![collect("pauli", name, (|| {
        let mut worst = 0.0f64;
        for k in 1..=3 {
            for j in 1..=3 {
                let d = pauli_product::<f64>(k, j)? - pauli_product_rule::<f64>(k, j)?;
                worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        Ok(Check::at_most("pauli", name, worst, 0.0))
    })())]
}

pub fn clebsch_gordan() -> Vec<Check> {
    let name = "coupled states have unit norm";
    vec![collect("clebsch", name, (|| {
        let mut worst = 0.0f64;
        for l in 0..=8u32 {
            for two_j in [2 * l + 1, 2 * l.max(1) - 1] {
                for two_m in (-(two_j as i32)..=two_j as i32).step_by(2) {
                    let mut sum = 0.0;
                    for two_m_s in [1, -1] {
                        let m_l = (two_m - two_m_s) / 2;
                        if m_l.unsigned_abs() <= l {
                            let c: f64 = clebsch_gordan_half(l, m_l, two_m_s, two_j, two_m)?;
                            sum += c * c;
                        }
                    }
                    worst = worst.max((sum - 1.0).abs());
                }
            }
        }
        Ok(Check::at_most("clebsch", name, worst, 1e-15))
    })())]
}

fn block_residuals() -> Result<[f64; 4]> {
    let mut worst = [0.0f64; 4];
    for two_j in two_js(MAX_TWO_J) {
        let slp1 = sigma_dot_l_plus_one_block::<f64>(two_j)?;
        let ser = sigma_dot_er_block::<f64>(two_j)?;
        let anti = slp1 * ser + ser * slp1;
        worst[1] = worst[1].max(anti.max_abs());
        let prod = sigma_dot_l_block::<f64>(two_j)? * slp1;
        worst[2] = worst[2].max(prod.max_abs_diff(&l_squared_block(two_j)?));
        for alpha in ALPHAS {
            for sign in SIGNS {
                let lam = lambda_block(two_j, alpha, sign)?;
                let id = AngularBlock::identity(two_j)?;
                let rhs = slp1 * slp1 - id.scale((alpha * alpha).into());
                worst[0] = worst[0].max((lam * lam).max_abs_diff(&rhs));
                let num = lam * (lam + id);
                worst[3] = worst[3].max(num.max_abs_diff(&numerator_block(two_j, alpha, sign)?));
            }
        }
    }
    Ok(worst)
}

pub fn block_identities() -> Vec<Check> {
    let names = [
        "Lambda^2 = (sigma.L+1)^2 - alpha^2",
        "{sigma.L+1, sigma.e_r} = 0",
        "sigma.L (sigma.L+1) = L^2",
        "Lambda (Lambda+1) = numerator",
    ];
    match block_residuals() {
        Ok(worst) => names.iter().zip(worst).map(|(n, w)| Check::at_most("blocks", *n, w, 1e-13)).collect(),
        Err(e) => vec![Check::errored("blocks", "block identities", &e)],
    }
}

pub fn lambda_spectrum() -> Vec<Check> {
    let suite = "lambda";
    let outcome = (|| -> Result<Vec<Check>> {
        let (mut value_err, mut imag, mut continuity) = (0.0f64, 0.0f64, 0.0f64);
        for two_j in two_js(MAX_TWO_J) {
            let k = (two_j as f64 + 1.0) / 2.0;
            for sign in SIGNS {
                for alpha in [0.0, 0.1, 0.5, 0.9 * k.min(1.0)] {
                    let root = (k * k - alpha * alpha).sqrt();
                    let [lower, upper] = lambda_block(two_j, alpha, sign)?.eigen_by_channel();
                    value_err = value_err.max((lower.value.re + root).abs()).max((upper.value.re - root).abs());
                    imag = imag.max(lower.value.im.abs()).max(upper.value.im.abs());
                    for e in numerator_block(two_j, alpha, sign)?.eigen_by_channel() {
                        imag = imag.max(e.value.im.abs());
                    }
                }
                let [lower, _] = lambda_block(two_j, 1e-6, sign)?.eigen_by_channel();
                continuity = continuity.max((lower.value.re + k).abs());
            }
        }
        Ok(vec![
            Check::at_most(suite, "eigenvalues -+sqrt((j+1/2)^2 - alpha^2)", value_err, 1e-12),
            Check::at_most(suite, "imaginary parts", imag, 1e-13),
            Check::at_most(suite, "channel l=j-1/2 tends to -(j+1/2)", continuity, 1e-9),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "lambda spectrum", &e)])
}

pub fn sphere_quadrature() -> Vec<Check> {
    let name = "sigma.e_r block vs sphere quadrature";
    vec![collect("sphere", name, (|| {
        let mut worst = 0.0f64;
        for two_j in two_js(7) {
            let q = sigma_dot_er_quadrature::<f64>(two_j, required_grid_order(two_j) + 2)?;
            worst = worst.max(q.block.max_abs_diff(&sigma_dot_er_block(two_j)?));
        }
        Ok(Check::at_most("sphere", name, worst, 1e-12))
    })())]
}

pub fn epsilon_truncation() -> Vec<Check> {
    let name = "|eps_exact - eps_approx| / (alpha^4/(8(j+1/2)^3))";
    vec![collect("epsilon", name, (|| {
        let mut worst = 0.0f64;
        for alpha in [0.05f64, 0.1, 0.2, 0.3] {
            for two_j in [1, 3, 5] {
                let k = (two_j as f64 + 1.0) / 2.0;
                let gap = (epsilon_exact(two_j, alpha)? - epsilon_approx(two_j, alpha)?).abs();
                worst = worst.max(gap / (alpha.powi(4) / (8.0 * k.powi(3))));
            }
        }
        Ok(Check::at_most("epsilon", name, worst, 1.1))
    })())]
}

pub fn hydrogen_expectations() -> Vec<Check> {
    let suite = "hydrogen";
    let outcome = (|| -> Result<Vec<Check>> {
        let params = PhysicalParams::<f64>::new(1.0, 1.0 / 137.035999)?;
        let mut worst = [0.0f64; 3];
        for n in 1..=10u32 {
            for l in 0..n {
                let state = RadialState::new(n, l, params)?;
                let rel = |a: f64, b: f64| ((a - b) / b).abs();
                worst[0] = worst[0].max(rel(expectation_r_power_quadrature(&state, -1)?, expectation_inv_r(n, &params)?));
                worst[1] = worst[1].max(rel(expectation_r_power_quadrature(&state, -2)?, expectation_inv_r2(n, l, &params)?));
                if l >= 1 {
                    worst[2] = worst[2].max(rel(expectation_r_power_quadrature(&state, -3)?, expectation_inv_r3(n, l, &params)?));
                }
            }
        }
        let grid = [0.005, 0.01, 0.05, 0.1, 0.3];
        let mut slope = 0.0f64;
        for (n, l) in [(1, 0), (2, 1), (3, 2), (4, 1)] {
            for k in [-1, -2, -3] {
                if l == 0 && k == -3 {
                    continue;
                }
                slope = slope.max((alpha_scaling_exponent(n, l, k, 1.0, &grid)? + k as f64).abs());
            }
        }
        Ok(vec![
            Check::at_most(suite, "<1/r> quadrature vs closed form", worst[0], 1e-10),
            Check::at_most(suite, "<1/r^2> quadrature vs closed form", worst[1], 1e-10),
            Check::at_most(suite, "<1/r^3> quadrature vs closed form", worst[2], 1e-10),
            Check::at_most(suite, "alpha-scaling slope of <r^k> + k", slope, 1e-8),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "hydrogen expectations", &e)])
}

pub fn cancellation() -> Vec<Check> {
    let suite = "cancellation";
    let outcome = (|| -> Result<Vec<Check>> {
        let params = PhysicalParams::<f64>::new(1.0, 0.1)?;
        let (mut across_l, mut across_sign) = (0.0f64, 0.0f64);
        for n in 1..=6u32 {
            for two_j in (1..2 * n).step_by(2) {
                let mut totals = Vec::new();
                for l in [(two_j - 1) / 2, two_j.div_ceil(2)] {
                    if l >= n {
                        continue;
                    }
                    let qn = QuantumNumbers::stretched(n, l, two_j)?;
                    let plus = breakdown(qn, CouplingSign::Plus, &params)?;
                    let minus = breakdown(qn, CouplingSign::Minus, &params)?;
                    if plus.total.to_bits() != minus.total.to_bits() {
                        across_sign = across_sign.max(1.0);
                    }
                    totals.push(plus.total);
                }
                if let [a, b] = totals[..] {
                    across_l = across_l.max(((a - b) / a).abs());
                }
            }
        }
        Ok(vec![
            Check::at_most(suite, "totals agree across l = j -+ 1/2 (relative)", across_l, 1e-14),
            Check::at_most(suite, "totals bit-identical across sign (mismatches)", across_sign, 0.0),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "cancellation", &e)])
}

pub fn dirac_alpha6() -> Vec<Check> {
    let suite = "dirac";
    let outcome = (|| -> Result<Vec<Check>> {
        let (lo, hi) = (PhysicalParams::<f64>::new(1.0, 0.05)?, PhysicalParams::<f64>::new(1.0, 0.1)?);
        let hydrogen = PhysicalParams::<f64>::new(1.0, 1.0 / 137.035999)?;
        let (mut slope_min, mut slope_max, mut ratio) = (f64::MAX, f64::MIN, 0.0f64);
        for n in 1..=4u32 {
            for two_j in (1..2 * n).step_by(2) {
                let dev = |p: &PhysicalParams<f64>| -> Result<f64> { Ok(dirac_binding(n, two_j, p)? - energy_alpha4(n, two_j, p)?) };
                let slope = (dev(&hi)?.abs() / dev(&lo)?.abs()).ln() / 2f64.ln();
                slope_min = slope_min.min(slope);
                slope_max = slope_max.max(slope);
                ratio = ratio.max(dev(&hydrogen)?.abs() / hydrogen.alpha.powi(6));
            }
        }
        Ok(vec![
            Check::within(suite, "min deviation slope, alpha 0.05 -> 0.1", slope_min, 5.5, 6.5),
            Check::within(suite, "max deviation slope, alpha 0.05 -> 0.1", slope_max, 5.5, 6.5),
            Check::at_most(suite, "|deviation| / (m alpha^6) at alpha = 1/137.036", ratio, 10.0),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "dirac vs alpha^4", &e)])
}

pub fn correction_budget() -> Vec<Check> {
    let name = "kinetic + Darwin + spin-orbit vs alpha^4 shift (relative)";
    vec![collect("budget", name, (|| {
        let mut worst = 0.0f64;
        for alpha in [0.01f64, 0.1] {
            let params = PhysicalParams::new(1.0, alpha)?;
            for n in 1..=4u32 {
                for l in 0..n {
                    for two_j in [2 * l + 1, 2 * l.max(1) - 1] {
                        worst = worst.max(budget_mismatch(n, l, two_j, &params)?);
                    }
                }
            }
        }
        Ok(Check::at_most("budget", name, worst, 1e-12))
    })())]
}

pub fn kg_equation() -> Vec<Check> {
    let suite = "kg";
    let outcome = (|| -> Result<Vec<Check>> {
        let mut analytic = 0.0f64;
        for alpha in [0.01f64, 0.1, 0.3] {
            let params = PhysicalParams::new(1.0, alpha)?;
            for n in 1..=4u32 {
                for l in 0..n {
                    for two_j in [2 * l + 1, 2 * l.max(1) - 1] {
                        for sign in SIGNS {
                            let ch = KgChannel::new(two_j, l, n - l - 1, sign, alpha)?;
                            let d = dirac_energy(n, two_j, &params)?;
                            analytic = analytic.max(((kg_analytic_energy(&ch, &params)? - d) / d).abs());
                        }
                    }
                }
            }
        }
        let (mut fixed, mut iterations) = (0.0f64, 0usize);
        for alpha in [0.1f64, 0.3] {
            let params = PhysicalParams::new(1.0, alpha)?;
            for (l, two_j, n_r) in [(0, 1, 0), (1, 1, 0), (1, 3, 0), (0, 1, 1)] {
                let ch = KgChannel::new(two_j, l, n_r, CouplingSign::Plus, alpha)?;
                let sol = kg_iterative_solve(&ch, &params, &KgSolverConfig::with_size(80))?;
                let exact = kg_analytic_energy(&ch, &params)?;
                fixed = fixed.max(((sol.energy - exact) / exact).abs());
                iterations = iterations.max(sol.iterations);
            }
        }
        Ok(vec![
            Check::at_most(suite, "analytic channel energy vs Dirac (relative)", analytic, 1e-14),
            Check::at_most(suite, "fixed point vs analytic at N = 80 (relative)", fixed, 1e-9),
            Check::at_most(suite, "fixed-point iterations", iterations as f64, 50.0),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "kg equation", &e)])
}

pub fn solver_baseline() -> Vec<Check> {
    let suite = "solver";
    let outcome = (|| -> Result<Vec<Check>> {
        let mut hydrogen = 0.0f64;
        for alpha in [1.0f64, 0.1] {
            let basis = RadialBasis::new(0.0, 0.5 * alpha, 60)?;
            let levels = schrodinger_hamiltonian(&basis, 1.0, alpha)?.eigenvalues();
            for n in 1..=3u32 {
                let exact = -alpha * alpha / (2.0 * (n * n) as f64);
                hydrogen = hydrogen.max((levels[n as usize - 1] - exact).abs() / (alpha * alpha));
            }
        }
        let mut mapping = 0.0f64;
        for (c, beta, size) in [(0.0, 1.0, 40), (2.0, 0.3, 60), (0.134, 0.05, 80)] {
            let p2 = RadialBasis::new(c, beta, size)?.p2_matrix()?;
            let root = sqrt_operator(&p2, 1.0)?.entries;
            let target = &p2.entries + DMatrix::<f64>::identity(size, size);
            mapping = mapping.max((&root * &root - &target).amax() / target.amax());
        }
        Ok(vec![
            Check::at_most(suite, "nonrelativistic hydrogen, 3 lowest, N = 60 (units m alpha^2)", hydrogen, 1e-8),
            Check::at_most(suite, "(sqrt(m^2+P))^2 = m^2 + P (relative)", mapping, 1e-11),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "solver baseline", &e)])
}

/// Converged ground-channel solves at α = 0.1 and 0.2, N = 150 and 200.
pub fn solver_scaling() -> Vec<Check> {
    let suite = "solver";
    let outcome = (|| -> Result<Vec<Check>> {
        let (mut gaps, mut convergence) = (Vec::new(), 0.0f64);
        let mut sign_gap = 0.0f64;
        for alpha in [0.1f64, 0.2] {
            let params = PhysicalParams::new(1.0, alpha)?;
            let ch = ChannelSpec::spin(1, Branch::Lower, CouplingSign::Plus)?;
            let study = convergence_study(&ch, &params, &[150, 200], &default_beta_grid(&params, DEFAULT_BETA_POINTS))?;
            convergence = convergence.max(study.convergence_estimate);
            let ground = study.ground().map(|e| e.binding).unwrap_or(f64::NAN);
            gaps.push((ground - energy_alpha4(1, 1, &params)?).abs());
            let beta = study.best_beta[study.best_beta.len() - 1];
            let plus = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 200, beta)?;
            let minus = solve_channel(1, Branch::Lower, CouplingSign::Minus, &params, 200, beta)?;
            if plus.len() != minus.len() {
                sign_gap = f64::INFINITY;
            }
            for (a, b) in plus.iter().zip(&minus) {
                sign_gap = sign_gap.max((a.binding - b.binding).abs());
            }
        }
        Ok(vec![
            Check::at_most(suite, "convergence estimate N = 150 -> 200", convergence, 1e-6),
            Check::at_least(suite, "slope of |E_solver - E_alpha4|, alpha 0.1 -> 0.2", (gaps[1] / gaps[0]).log2(), 4.5),
            Check::at_most(suite, "spectrum difference between signs", sign_gap, 1e-12),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "solver scaling", &e)])
}

pub fn maxwell_pauli() -> Vec<Check> {
    let suite = "maxwell";
    let outcome = (|| -> Result<Vec<Check>> {
        let points = sample_points::<f64>(100, 3.0, 0.2);
        let fields = [
            FieldConfig::coulomb(1.0 / 137.035999)?,
            FieldConfig::plane_wave([0.3, -0.4, 1.2], [0.8, 0.6, 0.0], 0.7)?,
        ];
        let mut worst = 0.0f64;
        for field in &fields {
            for sign in SIGNS {
                for &pt in &points {
                    worst = worst.max(residual_norm(&maxwell_pauli_residual(field, sign, pt)?));
                }
            }
        }
        let detuned = FieldConfig::detuned_plane_wave([0.3, -0.4, 1.2], [0.8, 0.6, 0.0], 0.7, 1.1)?;
        let mut control = f64::MAX;
        for sign in SIGNS {
            let total: f64 = points
                .iter()
                .map(|&pt| maxwell_pauli_residual(&detuned, sign, pt).map(|m| residual_norm(&m)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            control = control.min(total);
        }
        Ok(vec![
            Check::at_most(suite, "residual, Coulomb and plane wave, both signs", worst, 1e-10),
            Check::at_least(suite, "detuned plane wave residual (negative control)", control, 1e-3),
        ])
    })();
    outcome.unwrap_or_else(|e| vec![Check::errored(suite, "maxwell-pauli", &e)])
}

/// Every suite, cheapest first.
pub fn run_all() -> Vec<Check> {
    let suites: [fn() -> Vec<Check>; 13] = [
        pauli_algebra,
        clebsch_gordan,
        block_identities,
        lambda_spectrum,
        sphere_quadrature,
        epsilon_truncation,
        hydrogen_expectations,
        cancellation,
        dirac_alpha6,
        correction_budget,
        maxwell_pauli,
        kg_equation,
        solver_baseline,
    ];
    let mut out: Vec<Check> = suites.iter().flat_map(|s| s()).collect();
    out.extend(solver_scaling());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for suite in [pauli_algebra, clebsch_gordan, block_identities, lambda_spectrum, epsilon_truncation, cancellation, correction_budget] {
            for check in suite() {
                assert!(check.passed, "{check}");
            }
        }
    }

    #[test]
    fn solver_baseline_passes() {
        for check in solver_baseline() {
            assert!(check.passed, "{check}");
        }
    }

    #[test]
    fn check_bounds() {
        assert!(Check::at_most("s", "n", 1.0, 1.0).passed);
        assert!(!Check::at_least("s", "n", 0.5, 1.0).passed);
        assert!(!Check::within("s", "n", f64::NAN, 0.0, 1.0).passed);
        assert!(Check::within("s", "n", 6.0, 5.5, 6.5).to_string().starts_with("PASS"));
    }
}
