use sqrt_coulomb::hydrogen::energy_nonrel;
use sqrt_coulomb::perturbation::energy_alpha4;
use sqrt_coulomb::reference::dirac_binding;
use sqrt_coulomb::solver::*;
use sqrt_coulomb::{Branch, CouplingSign, Method, Params};

fn p(alpha: f64) -> Params {
    Params::new(1.0, alpha).unwrap()
}

fn binding(c: &sqrt_coulomb::Comparison, m: Method) -> f64 {
    c.entries.iter().find(|e| e.method == m).unwrap().binding
}

#[test]
fn hydrogen_methods_agree_beyond_known_splittings() {
    let params = p(1.0 / 137.035999);
    let cmp = compare_methods(1, 0, 1, CouplingSign::Plus, &params, &SolverConfig::with_size(60)).unwrap();
    assert_eq!(cmp.entries.len(), 5);
    assert_eq!(cmp.differences.len(), 10);
    let a = params.alpha;
    let (pert, dirac, nonrel) = (binding(&cmp, Method::Perturbative), binding(&cmp, Method::Dirac), binding(&cmp, Method::Nonrel));
    // α⁴ shift −α⁴/8 separates NONREL; α⁶ separates the rest
    assert!((pert - nonrel + a.powi(4) / 8.0).abs() < 1e-9);
    assert!((dirac - pert).abs() < 1e-9);
    assert_eq!(binding(&cmp, Method::Kg), dirac);
    assert!((binding(&cmp, Method::SqrtSolver) - pert).abs() < 1e-9);
}

#[test]
fn solver_gap_to_alpha4_formula_is_fifth_order() {
    // coefficient of α⁵ creeps up toward 8/(3π) as α → 0
    let mut coeff = Vec::new();
    for alpha in [0.025, 0.05] {
        let params = p(alpha);
        let ch = ChannelSpec::spin(1, Branch::Lower, CouplingSign::Plus).unwrap();
        let study = convergence_study(&ch, &params, &[60, 90], &default_beta_grid(&params, 7)).unwrap();
        assert!(study.convergence_estimate < 0.01 * alpha.powi(5), "{alpha}: {:e}", study.convergence_estimate);
        let gap = study.ground().unwrap().binding - energy_alpha4(1, 1, &params).unwrap();
        coeff.push(gap / alpha.powi(5));
    }
    assert!(coeff[0] > coeff[1] && coeff[1] > 0.6, "{coeff:?}");
    assert!(coeff[0] < 8.0 / (3.0 * std::f64::consts::PI));
}

#[test]
fn spinless_ground_state_carries_kinetic_correction() {
    let params = p(0.2);
    let levels = solve_spinless(0, &params, 120, 0.4).unwrap();
    let e1 = energy_nonrel(1, &params).unwrap();
    assert!(levels[0].binding < e1);
    // −5α⁴/8 plus the positive α⁵ term
    let shift = levels[0].binding - e1;
    assert!(shift < 0.0 && shift > -5.0 * 0.2f64.powi(4) / 8.0);
}

#[test]
fn nested_bases_lower_the_ground_level() {
    let params = p(0.2);
    let mut last = f64::MAX;
    for size in [2, 10, 40, 100, 200] {
        let e = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, size, 0.2).map(|v| v[0].binding).unwrap();
        assert!(e <= last + 1e-15, "N = {size}");
        last = e;
    }
    let small = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 2, 0.2).unwrap()[0].binding;
    assert!(small - last > 1e-4);
}

#[test]
fn detuned_scale_is_never_variationally_better() {
    let params = p(0.2);
    let tuned = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 100, 0.2).unwrap()[0].binding;
    for beta in [0.002, 20.0] {
        let off = solve_channel(1, Branch::Lower, CouplingSign::Plus, &params, 100, beta).unwrap();
        assert!(off.first().is_none_or(|e| e.binding >= tuned));
    }
}

#[test]
fn excited_solver_levels_track_dirac() {
    let params = p(0.1);
    let cmp = compare_methods(2, 1, 3, CouplingSign::Minus, &params, &SolverConfig::with_size(80)).unwrap();
    let solver = binding(&cmp, Method::SqrtSolver);
    let dirac = dirac_binding(2, 3, &params).unwrap();
    assert!((solver - dirac).abs() < 0.1f64.powi(5));
    assert!(cmp.entries.iter().all(|e| e.binding < 0.0));
}

#[test]
fn bindings_vanish_with_coupling() {
    for method in [Method::Perturbative, Method::Dirac, Method::Kg, Method::Nonrel] {
        let e = closed_form_entry(method, 2, 1, 1, CouplingSign::Plus, &p(1e-6)).unwrap();
        assert!(e.binding < 0.0 && e.binding > -1e-12);
    }
    let levels = solve_channel(1, Branch::Lower, CouplingSign::Plus, &p(1e-3), 40, 1e-3).unwrap();
    assert!(levels[0].binding < 0.0 && levels[0].binding > -1e-6);
}
