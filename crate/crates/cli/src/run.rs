//! One function per subcommand, each returning the table to emit.

use serde_json::{json, Map, Value};
use sqrt_coulomb::solver::{
    closed_form_entry, compare_methods, convergence_study, default_beta_grid, ChannelSpec, SolverConfig, DEFAULT_BETA_POINTS,
};
use sqrt_coulomb::reference::{kg_iterative_solve, KgSolverConfig};
use sqrt_coulomb::spectrum::sort_entries;
use sqrt_coulomb::verify::{self, Check};
use sqrt_coulomb::{Branch, Channel, CouplingSign, Entry, Method, Params};

use crate::args::*;
use crate::failure::{Failure, VERIFY};
use crate::output::Table;
use crate::select::{self, State};

fn validate(common: &Common) -> Result<Params, Failure> {
    if !(common.alpha > 0.0 && common.alpha < 1.0) {
        return Err(Failure::usage(format!("--alpha must lie in (0, 1), got {}", common.alpha)));
    }
    if !(common.mass > 0.0 && common.mass.is_finite()) {
        return Err(Failure::usage(format!("--mass must be positive, got {}", common.mass)));
    }
    Ok(Params::new(common.mass, common.alpha)?)
}

fn validate_basis(size: usize, beta: Option<f64>, tolerance: Option<f64>) -> Result<(), Failure> {
    if !(4..=400).contains(&size) {
        return Err(Failure::usage(format!("--N must lie in [4, 400], got {size}")));
    }
    if let Some(b) = beta {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Failure::usage(format!("--beta must be positive, got {b}")));
        }
    }
    if let Some(t) = tolerance {
        if t <= 0.0 || t.is_nan() {
            return Err(Failure::usage(format!("--tolerance must be positive, got {t}")));
        }
    }
    Ok(())
}

fn params_block(command: &str, common: &Common) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("alpha".into(), json!(common.alpha));
    m.insert("mass".into(), json!(common.mass));
    m.insert("sign".into(), json!(CouplingSign::from(common.sign).as_str()));
    m
}

fn check_alpha_states(states: &[State], params: &Params) -> Result<(), Failure> {
    if let Some(s) = states.iter().find(|s| params.alpha >= (s.two_j as f64 + 1.0) / 2.0) {
        return Err(Failure::usage(format!("--alpha {} is not below j + 1/2 for j = {}/2", params.alpha, s.two_j)));
    }
    Ok(())
}

fn finish(params: Map<String, Value>, mut entries: Vec<Entry>) -> Table {
    sort_entries(&mut entries);
    Table::new(params, &entries)
}

fn closed_form(states: &[State], method: Method, sign: CouplingSign, params: &Params) -> Result<Vec<Entry>, Failure> {
    states
        .iter()
        .map(|s| closed_form_entry(method, s.n, s.l, s.two_j, sign, params).map_err(Failure::from))
        .collect()
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Table, Failure> {
    let params = validate(&a.common)?;
    let method = Method::from(a.method);
    if method == Method::SqrtSolver {
        return Err(Failure::usage("--method SQRT_SOLVER is served by the `solve` command"));
    }
    let states = select::states(&a.states)?;
    check_alpha_states(&states, &params)?;
    let mut p = params_block("spectrum", &a.common);
    p.insert("method".into(), json!(method.as_str()));
    Ok(finish(p, closed_form(&states, method, a.common.sign.into(), &params)?))
}

pub fn dirac(a: &StateArgs) -> Result<Table, Failure> {
    let params = validate(&a.common)?;
    let states = select::states(&a.states)?;
    check_alpha_states(&states, &params)?;
    Ok(finish(params_block("dirac", &a.common), closed_form(&states, Method::Dirac, a.common.sign.into(), &params)?))
}

pub fn kg(a: &KgArgs) -> Result<Table, Failure> {
    let params = validate(&a.common)?;
    let states = select::states(&a.states)?;
    check_alpha_states(&states, &params)?;
    let sign = CouplingSign::from(a.common.sign);
    let mut p = params_block("kg", &a.common);
    let Some(size) = a.size else {
        return Ok(finish(p, closed_form(&states, Method::Kg, sign, &params)?));
    };
    validate_basis(size, None, None)?;
    if size < 40 {
        return Err(Failure::usage(format!("--N must be at least 40 for the fixed-point solve, got {size}")));
    }
    p.insert("N".into(), json!(size));
    let coarse = (size * 3 / 4).max(40);
    let mut entries = Vec::new();
    for s in &states {
        let ch = Channel::new(s.two_j, s.l, s.n - s.l - 1, sign, params.alpha)?;
        let fine = kg_iterative_solve(&ch, &params, &KgSolverConfig::with_size(size))?;
        let estimate = if coarse < size {
            (fine.energy - kg_iterative_solve(&ch, &params, &KgSolverConfig::with_size(coarse))?.energy).abs()
        } else {
            0.0
        };
        let mut e = Entry::closed_form(Method::Kg, s.n, s.l, Some(s.two_j), params.alpha, fine.energy - params.mass, 0.0, sign);
        e.convergence_estimate = estimate;
        entries.push(e);
    }
    Ok(finish(p, entries))
}

fn beta_grid(beta: Option<f64>, params: &Params, n: u32) -> Result<Vec<f64>, Failure> {
    Ok(match beta {
        Some(b) => vec![b],
        None => default_beta_grid(&params.with_alpha(params.alpha / n as f64)?, DEFAULT_BETA_POINTS),
    })
}

fn sizes_for(size: usize) -> Vec<usize> {
    vec![(size * 3 / 4).max(2), size]
}

fn enforce(tolerance: Option<f64>, entries: &[Entry]) -> Result<(), Failure> {
    if let Some(tol) = tolerance {
        if let Some(e) = entries.iter().find(|e| e.convergence_estimate > tol) {
            return Err(Failure::convergence(format!(
                "level n={} l={} has convergence estimate {:e} above --tolerance {tol:e}",
                e.n, e.l, e.convergence_estimate
            )));
        }
    }
    Ok(())
}

pub fn solve(a: &SolveArgs) -> Result<Table, Failure> {
    let params = validate(&a.common)?;
    validate_basis(a.basis.size, a.basis.beta, a.basis.tolerance)?;
    let sign = CouplingSign::from(a.common.sign);
    let mut p = params_block("solve", &a.common);
    p.insert("N".into(), json!(a.basis.size));
    p.insert("spinless".into(), json!(a.spinless));
    let mut entries = Vec::new();
    // (channel, wanted principal numbers)
    let mut channels: Vec<(ChannelSpec, Vec<u32>)> = Vec::new();
    if a.spinless {
        let sel = Selectors { j: None, ..a.states.clone() };
        for s in select::states(&sel)? {
            let spec = ChannelSpec::Spinless { l: s.l };
            match channels.iter_mut().find(|(c, _)| *c == spec) {
                Some((_, ns)) => ns.push(s.n),
                None => channels.push((spec, vec![s.n])),
            }
        }
    } else {
        let states = select::states(&a.states)?;
        check_alpha_states(&states, &params)?;
        for s in states {
            let spec = ChannelSpec::spin(s.two_j, Branch::of(s.l, s.two_j)?, sign)?;
            match channels.iter_mut().find(|(c, _)| *c == spec) {
                Some((_, ns)) => ns.push(s.n),
                None => channels.push((spec, vec![s.n])),
            }
        }
    }
    for (spec, mut ns) in channels {
        ns.sort_unstable();
        ns.dedup();
        let grid = beta_grid(a.basis.beta, &params, ns[0])?;
        let study = convergence_study(&spec, &params, &sizes_for(a.basis.size), &grid)?;
        if study.non_monotone {
            eprintln!("warning: lowest level of channel l={} rose with basis size", spec.l());
        }
        for n in ns {
            match study.levels.iter().find(|e| e.n == n) {
                Some(e) => entries.push(e.clone()),
                None => {
                    return Err(Failure::convergence(format!(
                        "no bound level n={n} in channel l={} at N={}; increase --N",
                        spec.l(),
                        a.basis.size
                    )))
                }
            }
        }
    }
    enforce(a.basis.tolerance, &entries)?;
    Ok(finish(p, entries))
}

pub fn converge(a: &ConvergeArgs) -> Result<Table, Failure> {
    let params = validate(&a.common)?;
    let two_j = select::twice_half_integer(&a.j).map_err(|e| Failure::usage(format!("--j: {e}")))? as u32;
    let l = a.l.unwrap_or((two_j - 1) / 2);
    let branch = Branch::of(l, two_j).map_err(|_| Failure::usage(format!("--l {l} is not j -+ 1/2 for --j {}", a.j)))?;
    let sizes = select::integers("sizes", &a.sizes)?.into_iter().map(|v| v as usize).collect::<Vec<_>>();
    if sizes.len() < 2 {
        return Err(Failure::usage("--sizes needs at least two distinct sizes"));
    }
    for &s in &sizes {
        validate_basis(s, a.beta, a.tolerance)?;
    }
    if a.beta_points == 0 || a.beta_points > 101 {
        return Err(Failure::usage(format!("--beta-points must lie in [1, 101], got {}", a.beta_points)));
    }
    if params.alpha >= (two_j as f64 + 1.0) / 2.0 {
        return Err(Failure::usage(format!("--alpha {} is not below j + 1/2", params.alpha)));
    }
    let spec = ChannelSpec::spin(two_j, branch, a.common.sign.into())?;
    let grid = match a.beta {
        Some(b) => vec![b],
        None => default_beta_grid(&params.with_alpha(params.alpha / (l + 1) as f64)?, a.beta_points),
    };
    let study = convergence_study(&spec, &params, &sizes, &grid)?;
    if study.non_monotone {
        eprintln!("warning: best lowest level is not monotone in basis size");
    }
    enforce(a.tolerance, &study.levels[..study.levels.len().min(1)])?;
    let mut p = params_block("converge", &a.common);
    p.insert("sizes".into(), json!(sizes));
    p.insert("beta_grid".into(), json!(grid));
    let mut table = finish(p, study.levels.clone());
    table.extra.insert("scan".into(), json!(study.rows));
    table.extra.insert("best_beta".into(), json!(study.best_beta));
    table.extra.insert("non_monotone".into(), json!(study.non_monotone));
    Ok(table)
}

pub fn compare(a: &CompareArgs) -> Result<Table, Failure> {
    let params = validate(&a.common)?;
    validate_basis(a.basis.size, a.basis.beta, a.basis.tolerance)?;
    let states = select::states(&a.states)?;
    check_alpha_states(&states, &params)?;
    let sign = CouplingSign::from(a.common.sign);
    let config = SolverConfig { sizes: sizes_for(a.basis.size), beta_grid: a.basis.beta.map(|b| vec![b]).unwrap_or_default() };
    let mut entries = Vec::new();
    let mut differences = Vec::new();
    for s in &states {
        let cmp = compare_methods(s.n, s.l, s.two_j, sign, &params, &config)?;
        for (x, y, d) in &cmp.differences {
            differences.push(json!({"n": s.n, "l": s.l, "two_j": s.two_j, "a": x.as_str(), "b": y.as_str(), "difference": d}));
        }
        entries.extend(cmp.entries);
    }
    enforce(a.basis.tolerance, &entries)?;
    let mut p = params_block("compare", &a.common);
    p.insert("N".into(), json!(a.basis.size));
    let mut table = finish(p, entries.clone());
    sort_entries(&mut entries);
    for other in Method::ALL {
        let col = entries
            .iter()
            .map(|e| {
                entries
                    .iter()
                    .find(|o| o.method == other && (o.n, o.l, o.two_j) == (e.n, e.l, e.two_j))
                    .map_or(f64::NAN, |o| e.binding - o.binding)
            })
            .collect();
        table.columns.push((format!("minus_{}", other.as_str()), col));
    }
    table.extra.insert("differences".into(), Value::Array(differences));
    Ok(table)
}

pub fn scan_alpha(a: &ScanArgs) -> Result<Table, Failure> {
    validate(&a.common)?;
    let alphas: Vec<f64> = match &a.alphas {
        Some(text) => text
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Failure::usage(format!("--alphas: cannot parse {t:?}"))))
            .collect::<Result<_, _>>()?,
        None => {
            if !(a.alpha_min > 0.0 && a.alpha_min <= a.alpha_max && a.alpha_max < 1.0) {
                return Err(Failure::usage("--alpha-min/--alpha-max must satisfy 0 < min <= max < 1"));
            }
            if a.steps == 0 || a.steps > 1000 {
                return Err(Failure::usage(format!("--steps must lie in [1, 1000], got {}", a.steps)));
            }
            if a.steps == 1 {
                vec![a.alpha_min]
            } else {
                let ratio = (a.alpha_max / a.alpha_min).ln() / (a.steps - 1) as f64;
                (0..a.steps).map(|k| a.alpha_min * (ratio * k as f64).exp()).collect()
            }
        }
    };
    if alphas.is_empty() || alphas.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(Failure::usage("--alphas: every coupling must lie in (0, 1)"));
    }
    let methods: Vec<Method> = a.methods.iter().map(|&m| m.into()).collect();
    if methods.contains(&Method::SqrtSolver) {
        validate_basis(a.size, None, None)?;
    }
    let states = select::states(&a.states)?;
    let sign = CouplingSign::from(a.common.sign);
    let mut entries = Vec::new();
    for &alpha in &alphas {
        let params = Params::new(a.common.mass, alpha)?;
        check_alpha_states(&states, &params)?;
        for &method in &methods {
            if method == Method::SqrtSolver {
                for s in &states {
                    let config = SolverConfig { sizes: sizes_for(a.size), beta_grid: Vec::new() };
                    let cmp = compare_methods(s.n, s.l, s.two_j, sign, &params, &config)?;
                    entries.extend(cmp.entries.into_iter().filter(|e| e.method == Method::SqrtSolver));
                }
            } else {
                entries.extend(closed_form(&states, method, sign, &params)?);
            }
        }
    }
    entries.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()).then(x.alpha.total_cmp(&y.alpha)));
    let mut p = params_block("scan-alpha", &a.common);
    p.insert("alphas".into(), json!(alphas));
    p.insert("methods".into(), json!(methods.iter().map(|m| m.as_str()).collect::<Vec<_>>()));
    Ok(Table::new(p, &entries))
}

pub fn verify(a: &VerifyArgs) -> Result<i32, Failure> {
    let checks: Vec<Check> = if a.quick {
        let mut all = Vec::new();
        for suite in [
            verify::pauli_algebra,
            verify::clebsch_gordan,
            verify::block_identities,
            verify::lambda_spectrum,
            verify::sphere_quadrature,
            verify::epsilon_truncation,
            verify::hydrogen_expectations,
            verify::cancellation,
            verify::dirac_alpha6,
            verify::correction_budget,
            verify::maxwell_pauli,
            verify::kg_equation,
            verify::solver_baseline,
        ] {
            all.extend(suite());
        }
        all
    } else {
        verify::run_all()
    };
    let passed = checks.iter().filter(|c| c.passed).count();
    let summary = format!("{passed}/{} checks passed", checks.len());
    let mut text = String::new();
    match a.format {
        Format::Csv => {
            for c in &checks {
                text.push_str(&format!("{c}\n"));
            }
            text.push_str(&summary);
            text.push('\n');
        }
        Format::Json => {
            let doc = json!({"checks": checks, "passed": passed, "total": checks.len()});
            text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::usage(e.to_string()))? + "\n";
        }
    }
    match &a.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("--output {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    eprintln!("{summary}");
    Ok(if passed == checks.len() { 0 } else { VERIFY })
}
