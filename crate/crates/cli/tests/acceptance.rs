//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::Command;
use std::time::Instant;

use sqrt_coulomb::nalgebra::{self, DMatrix};
use sqrt_coulomb::angular::*;
use sqrt_coulomb::hydrogen::*;
use sqrt_coulomb::perturbation::*;
use sqrt_coulomb::quantum::QuantumNumbers;
use sqrt_coulomb::radial::{schrodinger_hamiltonian, sqrt_operator, RadialBasis};
use sqrt_coulomb::reference::*;
use sqrt_coulomb::solver::*;
use sqrt_coulomb::{Branch, CouplingSign, Params};

type Outcome = Result<String, String>;

const SIGNS: [CouplingSign; 2] = CouplingSign::BOTH;

fn params(alpha: f64) -> Params {
    Params::new(1.0, alpha).unwrap()
}

fn judge(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_algebra() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=3 {
        for j in 1..=3 {
            let direct = sigma::<f64>(k).unwrap() * sigma::<f64>(j).unwrap();
            let mut rule = if k == j { Mat2::<f64>::identity() } else { Mat2::<f64>::zeros() };
            for l in 1..=3 {
                let eps = levi_civita(k, j, l) as f64;
                rule += sigma::<f64>(l).unwrap() * nalgebra::Complex::new(0.0, eps);
            }
            worst = worst.max((direct - rule).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    for two_j in (1..=15).step_by(2) {
        let k = (two_j as f64 + 1.0) / 2.0;
        let slp1 = sigma_dot_l_plus_one_block::<f64>(two_j).unwrap();
        let ser = sigma_dot_er_block::<f64>(two_j).unwrap();
        let id = AngularBlock::<f64>::identity(two_j).unwrap();
        worst = worst.max((slp1 * ser + ser * slp1).max_abs());
        let (l1, l2) = (k - 1.0, k);
        let l2_diag = AngularBlock::new(
            two_j,
            Mat2::<f64>::new((l1 * (l1 + 1.0)).into(), 0.0.into(), 0.0.into(), (l2 * (l2 + 1.0)).into()),
            BlockLabel::Composite,
        )
        .unwrap();
        worst = worst.max((sigma_dot_l_block::<f64>(two_j).unwrap() * slp1).max_abs_diff(&l2_diag));
        for alpha in [0.0, 0.1, 0.5] {
            for sign in SIGNS {
                let lam = lambda_block(two_j, alpha, sign).unwrap();
                let sq = slp1 * slp1 - id.scale((alpha * alpha).into());
                worst = worst.max((lam * lam).max_abs_diff(&sq));
                let num = lam * (lam + id);
                worst = worst.max(num.max_abs_diff(&numerator_block(two_j, alpha, sign).unwrap()));
            }
        }
    }
    judge(worst <= 1e-13, format!("max residual {worst:.2e} (<= 1e-13)"))
}

fn c2_lambda() -> Outcome {
    let (mut value, mut imag, mut labels) = (0.0f64, 0.0f64, true);
    for two_j in (1..=15).step_by(2) {
        let k = (two_j as f64 + 1.0) / 2.0;
        for sign in SIGNS {
            // walk α up from 0; channel 0 must stay on the −√ root
            for step in 0..=40 {
                let alpha = 0.99 * k.min(1.0) * step as f64 / 40.0;
                let root = (k * k - alpha * alpha).sqrt();
                let [lower, upper] = lambda_block(two_j, alpha, sign).unwrap().eigen_by_channel();
                labels &= lower.branch == Branch::Lower && upper.branch == Branch::Upper && lower.value.re < 0.0;
                value = value.max((lower.value.re + root).abs()).max((upper.value.re - root).abs());
                imag = imag.max(lower.value.im.abs()).max(upper.value.im.abs());
            }
        }
    }
    judge(
        value <= 1e-12 && imag <= 1e-13 && labels,
        format!("eigenvalue err {value:.2e} (<= 1e-12), imag {imag:.2e} (<= 1e-13), continuity labels {labels}"),
    )
}

fn c3_epsilon() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [0.05f64, 0.1, 0.2, 0.3] {
        for two_j in [1u32, 3, 5] {
            let k = (two_j as f64 + 1.0) / 2.0;
            let gap = (epsilon_exact(two_j, alpha).unwrap() - alpha * alpha / (two_j as f64 + 1.0)).abs();
            worst = worst.max(gap / (1.1 * alpha.powi(4) / (8.0 * k.powi(3))));
        }
    }
    judge(worst <= 1.0, format!("max |gap| / bound = {worst:.4} (<= 1)"))
}

fn c4_hydrogen() -> Outcome {
    let p = params(1.0 / 137.035999);
    let mut worst = 0.0f64;
    for n in 1..=10u32 {
        for l in 0..n {
            let state = RadialState::new(n, l, p).unwrap();
            let q = |k| expectation_r_power_quadrature(&state, k).unwrap();
            let rel = |a: f64, b: f64| ((a - b) / b).abs();
            worst = worst.max(rel(q(-1), expectation_inv_r(n, &p).unwrap()));
            worst = worst.max(rel(q(-2), expectation_inv_r2(n, l, &p).unwrap()));
            if l > 0 {
                worst = worst.max(rel(q(-3), expectation_inv_r3(n, l, &p).unwrap()));
            }
        }
    }
    let mut slope = 0.0f64;
    for n in 1..=4u32 {
        for l in 0..n {
            for k in [-1, -2, -3] {
                if l == 0 && k == -3 {
                    continue;
                }
                let s = alpha_scaling_exponent(n, l, k, 1.0, &[0.001, 0.01, 0.1, 0.5]).unwrap();
                slope = slope.max((s + k as f64).abs());
            }
        }
    }
    judge(worst <= 1e-10 && slope <= 1e-8, format!("quadrature rel err {worst:.2e} (<= 1e-10), slope err {slope:.2e} (<= 1e-8)"))
}

fn c5_cancellation() -> Outcome {
    let (mut across_l, mut bits) = (0.0f64, true);
    for alpha in [0.01, 0.1, 0.3] {
        let p = params(alpha);
        for n in 1..=6u32 {
            for two_j in (1..2 * n).step_by(2) {
                let mut totals = Vec::new();
                for l in [(two_j - 1) / 2, two_j.div_ceil(2)] {
                    if l < n {
                        let qn = QuantumNumbers::stretched(n, l, two_j).unwrap();
                        let a = breakdown(qn, CouplingSign::Plus, &p).unwrap().total;
                        let b = breakdown(qn, CouplingSign::Minus, &p).unwrap().total;
                        bits &= a.to_bits() == b.to_bits();
                        totals.push(a);
                    }
                }
                if let [a, b] = totals[..] {
                    across_l = across_l.max(((a - b) / a).abs());
                }
            }
        }
    }
    judge(across_l <= 1e-14 && bits, format!("l-branch rel gap {across_l:.2e} (<= 1e-14), sign bit-identical {bits}"))
}

fn c6_dirac() -> Outcome {
    let (lo, hi, h) = (params(0.05), params(0.1), params(1.0 / 137.035999));
    let (mut smin, mut smax, mut ratio) = (f64::MAX, f64::MIN, 0.0f64);
    for n in 1..=4u32 {
        for two_j in (1..2 * n).step_by(2) {
            let dev = |p: &Params| (dirac_energy(n, two_j, p).unwrap() - 1.0) - energy_alpha4(n, two_j, p).unwrap();
            let s = (dev(&hi) / dev(&lo)).abs().log2();
            smin = smin.min(s);
            smax = smax.max(s);
            ratio = ratio.max(dev(&h).abs() / h.alpha.powi(6));
        }
    }
    judge(
        smin >= 5.5 && smax <= 6.5 && ratio <= 10.0,
        format!("slopes in [{smin:.3}, {smax:.3}] (within [5.5, 6.5]), max |dev|/alpha^6 = {ratio:.4} (<= 10)"),
    )
}

fn c7_budget() -> Outcome {
    let mut worst = 0.0f64;
    let mut darwin_only_s = true;
    for alpha in [1.0 / 137.035999, 0.1] {
        let p = params(alpha);
        for n in 1..=4u32 {
            for two_j in (1..2 * n).step_by(2) {
                for l in [(two_j - 1) / 2, two_j.div_ceil(2)] {
                    if l >= n {
                        continue;
                    }
                    let b = pauli_dirac_budget(n, l, two_j, &p).unwrap();
                    let (nf, k) = (n as f64, (two_j as f64 + 1.0) / 2.0);
                    let target = -alpha * alpha / (2.0 * nf * nf) * (alpha * alpha / (nf * nf)) * (nf / k - 0.75);
                    worst = worst.max(((b.kinetic + b.darwin + b.spin_orbit - target) / target).abs());
                    darwin_only_s &= (l == 0) == (b.darwin != 0.0) && (l == 0) == (b.spin_orbit == 0.0);
                }
            }
        }
    }
    judge(worst <= 1e-12 && darwin_only_s, format!("rel mismatch {worst:.2e} (<= 1e-12), Darwin/spin-orbit exclusivity {darwin_only_s}"))
}

fn c8_kg() -> Outcome {
    let mut analytic = 0.0f64;
    for alpha in [0.01, 0.1, 0.3, 0.5] {
        let p = params(alpha);
        for n in 1..=5u32 {
            for two_j in (1..2 * n).step_by(2) {
                for l in [(two_j - 1) / 2, two_j.div_ceil(2)] {
                    if l >= n {
                        continue;
                    }
                    let ch = KgChannel::new(two_j, l, n - l - 1, CouplingSign::Minus, alpha).unwrap();
                    let d = dirac_energy(n, two_j, &p).unwrap();
                    analytic = analytic.max(((kg_analytic_energy(&ch, &p).unwrap() - d) / d).abs());
                }
            }
        }
    }
    let (mut fixed, mut iters) = (0.0f64, 0usize);
    for alpha in [0.05, 0.1, 0.2, 0.3] {
        let p = params(alpha);
        for (two_j, l, n_r) in [(1, 0, 0), (1, 0, 1), (1, 1, 0), (3, 1, 0), (3, 2, 0)] {
            let ch = KgChannel::new(two_j, l, n_r, CouplingSign::Plus, alpha).unwrap();
            let sol = kg_iterative_solve(&ch, &p, &KgSolverConfig::with_size(80)).unwrap();
            let exact = kg_analytic_energy(&ch, &p).unwrap();
            fixed = fixed.max(((sol.energy - exact) / exact).abs());
            iters = iters.max(sol.iterations);
        }
    }
    judge(
        analytic <= 1e-14 && fixed <= 1e-9 && iters <= 50,
        format!("analytic vs Dirac {analytic:.2e} (<= 1e-14), fixed point {fixed:.2e} (<= 1e-9), iterations {iters} (<= 50)"),
    )
}

fn c9_baseline() -> Outcome {
    let mut hyd = 0.0f64;
    for alpha in [1.0f64, 0.3, 0.05] {
        for l in [0u32, 1] {
            let c = (l * (l + 1)) as f64;
            let basis = RadialBasis::new(c, 0.5 * alpha, 60).unwrap();
            let levels = schrodinger_hamiltonian(&basis, 1.0, alpha).unwrap().eigenvalues();
            for k in 0..3 {
                let n = (l + 1 + k) as f64;
                hyd = hyd.max((levels[k as usize] + alpha * alpha / (2.0 * n * n)).abs() / (alpha * alpha));
            }
        }
    }
    let mut mapping = 0.0f64;
    for (c, beta, size) in [(0.0, 1.0, 30), (0.1339746, 0.5, 60), (6.0, 0.05, 100), (0.5, 0.2, 200)] {
        let p2 = RadialBasis::new(c, beta, size).unwrap().p2_matrix().unwrap();
        let root = sqrt_operator(&p2, 1.0).unwrap().entries;
        let target = &p2.entries + DMatrix::<f64>::identity(size, size);
        mapping = mapping.max((&root * &root - &target).amax() / target.amax());
    }
    judge(hyd <= 1e-8 && mapping <= 1e-11, format!("hydrogen err {hyd:.2e} m alpha^2 (<= 1e-8), sqrt mapping {mapping:.2e} (<= 1e-11)"))
}

fn c10_solver() -> Outcome {
    let mut gaps = Vec::new();
    let (mut conv, mut signs) = (0.0f64, 0.0f64);
    for alpha in [0.1, 0.2] {
        let p = params(alpha);
        let grid = default_beta_grid(&p, DEFAULT_BETA_POINTS);
        let mut ground = [0.0; 2];
        for (i, sign) in SIGNS.into_iter().enumerate() {
            let ch = ChannelSpec::spin(1, Branch::Lower, sign).unwrap();
            let study = convergence_study(&ch, &p, &[150, 200], &grid).unwrap();
            conv = conv.max(study.convergence_estimate);
            ground[i] = study.ground().unwrap().binding;
            if i == 0 {
                gaps.push((ground[0] - energy_alpha4(1, 1, &p).unwrap()).abs());
            }
            let beta = *study.best_beta.last().unwrap();
            let other = solve_channel(1, Branch::Lower, SIGNS[1 - i], &p, 200, beta).unwrap();
            for (a, b) in study.levels.iter().zip(&other) {
                signs = signs.max((a.binding - b.binding).abs());
            }
        }
        signs = signs.max((ground[0] - ground[1]).abs());
    }
    let slope = (gaps[1] / gaps[0]).log2();
    judge(
        conv <= 1e-6 && slope >= 4.5 && signs <= 1e-12,
        format!("convergence {conv:.2e} (<= 1e-6), slope {slope:.3} (>= 4.5), sign gap {signs:.2e} (<= 1e-12)"),
    )
}

fn c11_maxwell() -> Outcome {
    let points = sample_points::<f64>(100, 4.0, 0.25);
    let fields = [
        FieldConfig::coulomb(1.0 / 137.035999).unwrap(),
        FieldConfig::coulomb(0.5).unwrap(),
        FieldConfig::plane_wave([0.0, 0.0, 2.0], [1.0, 0.0, 0.0], 1.0).unwrap(),
        FieldConfig::plane_wave([1.0, 2.0, 2.0], [0.0, std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2], 0.3).unwrap(),
    ];
    let mut worst = 0.0f64;
    for f in &fields {
        for sign in SIGNS {
            for &pt in &points {
                worst = worst.max(residual_norm(&maxwell_pauli_residual(f, sign, pt).unwrap()));
            }
        }
    }
    let bad = FieldConfig::detuned_plane_wave([0.0, 0.0, 2.0], [1.0, 0.0, 0.0], 1.0, 1.1).unwrap();
    let control = SIGNS
        .iter()
        .map(|&s| points.iter().map(|&pt| residual_norm(&maxwell_pauli_residual(&bad, s, pt).unwrap())).fold(0.0, f64::max))
        .fold(f64::MAX, f64::min);
    judge(worst <= 1e-10 && control > 1e-3, format!("max residual {worst:.2e} (<= 1e-10), detuned control {control:.2e} (> 1e-3)"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_sqrt-coulomb")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

const FIELDS: [&str; 9] = ["method", "n", "l", "j", "two_j", "alpha", "binding_energy", "convergence_estimate", "sign"];

fn csv_ok(bytes: &[u8], rows: usize) -> bool {
    let mut r = csv::Reader::from_reader(bytes);
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    if header.len() < 9 || header[..9] != FIELDS {
        return false;
    }
    let records: Vec<csv::StringRecord> = r.records().collect::<Result<_, _>>().unwrap_or_default();
    records.len() == rows
        && records.iter().all(|rec| {
            ["PERTURBATIVE", "DIRAC", "KG", "SQRT_SOLVER", "NONREL"].contains(&&rec[0])
                && rec[1].parse::<u32>().is_ok()
                && rec[2].parse::<u32>().is_ok()
                && rec[3].parse::<f64>().is_ok()
                && rec[4].parse::<u32>().is_ok()
                && (5..8).all(|i| rec[i].parse::<f64>().is_ok())
                && rec[6].parse::<f64>().unwrap() < 0.0
                && ["PLUS", "MINUS"].contains(&&rec[8])
        })
}

fn json_ok(bytes: &[u8], rows: usize) -> bool {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(bytes) else { return false };
    let (Some(p), Some(levels)) = (v["params"].as_object(), v["levels"].as_array()) else { return false };
    p.contains_key("alpha")
        && levels.len() == rows
        && levels.iter().all(|l| {
            let o = l.as_object().unwrap();
            o.len() == 9 && FIELDS.iter().all(|f| o.contains_key(*f)) && o["binding_energy"].is_f64() && o["n"].is_u64()
        })
}

fn c12_cli() -> Outcome {
    let (code, _) = cli(&["verify"]);
    let mut notes = vec![format!("verify exit {code}")];
    let mut ok = code == 0;
    let runs: [(&[&str], usize); 4] = [
        (&["spectrum", "--alpha", "7.2973525693e-3", "--n-max", "3"], 9),
        (&["spectrum", "--alpha", "7.2973525693e-3", "--n-max", "3", "--format", "json"], 9),
        (&["compare", "--alpha", "0.2", "--n", "1", "--j", "0.5", "--N", "200"], 5),
        (&["compare", "--alpha", "0.2", "--n", "1", "--j", "0.5", "--N", "200", "--format", "json"], 5),
    ];
    for (args, rows) in runs {
        let (c1, first) = cli(args);
        let (c2, second) = cli(args);
        let parsed = if args.contains(&"json") { json_ok(&first, rows) } else { csv_ok(&first, rows) };
        let same = first == second;
        ok &= c1 == 0 && c2 == 0 && same && parsed;
        notes.push(format!("{} {}: identical {same}, schema {parsed}", args[0], if args.contains(&"json") { "json" } else { "csv" }));
    }
    judge(ok, notes.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("algebra identities", c1_algebra),
        ("Lambda spectrum", c2_lambda),
        ("epsilon truncation", c3_epsilon),
        ("hydrogen expectation values", c4_hydrogen),
        ("cancellation and sign independence", c5_cancellation),
        ("alpha^4 formula vs Dirac", c6_dirac),
        ("Pauli-Dirac correction budget", c7_budget),
        ("2-spinor KG equation", c8_kg),
        ("solver baseline", c9_baseline),
        ("solver vs perturbative", c10_solver),
        ("Maxwell-Pauli residuals", c11_maxwell),
        ("CLI", c12_cli),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d} [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {d} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
