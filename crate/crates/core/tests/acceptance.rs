//! Acceptance gate. Runs every criterion, prints one line each, exits non-zero on any failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use jaynes_core::hilbert::{
    annihilation, hermitian_eigenvalues, kron, l1_coherence, negativity, number_operator, CMatrix,
    DensityOperator, HermitianEigen, ModeLayout, StateVector, C64,
};
use jaynes_core::jc::{
    initial_state, reduced_states, sector_evolution, thermal_weights, JcEvolver, ScenarioCase, ATOM,
};
use jaynes_core::nonclassicality::{
    beam_splitter_unitary, depletion_ratios, entanglement_potential, BeamSplitter, DEFAULT_DEPLETION_FLOOR,
};
use jaynes_core::oracle::{self, CASE_B_PRINTED_FREQUENCY};
use jaynes_core::runner::{render_csv, run_scenario, write_outputs, ConfigOverrides, ScenarioConfig, TimeSeriesRow};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what)
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn config(case: &str, tweak: impl FnOnce(&mut ConfigOverrides)) -> ScenarioConfig {
    let mut o = ConfigOverrides {
        case: Some(case.into()),
        ..Default::default()
    };
    tweak(&mut o);
    ScenarioConfig::from_overrides(o).expect("valid config")
}

fn run(cfg: &ScenarioConfig) -> Result<Vec<TimeSeriesRow>, String> {
    run_scenario(cfg).map_err(|e| e.to_string())
}

fn case_a_rows(layers: usize) -> Result<Vec<TimeSeriesRow>, String> {
    run(&config("A", |o| o.layers = Some(layers)))
}

fn case_a_exactness() -> Outcome {
    let rows = case_a_rows(2)?;
    let mut worst = [0.0f64; 6];
    for row in &rows {
        let o = oracle::case_a(row.t);
        let branch_err = |layer: &[f64], want: f64| layer.iter().map(|b| (b - want).abs()).fold(0.0, f64::max);
        let errs = [
            (row.n_c - o.n_c).abs(),
            (row.n_f - o.n_f).abs(),
            (row.n_a - o.n_a).abs(),
            branch_err(&row.field_layers[1], o.n_f1),
            branch_err(&row.atom_layers[1], o.n_a1),
            (row.totals[1] - o.n_tot2).abs(),
        ];
        for (w, e) in worst.iter_mut().zip(errs) {
            *w = w.max(e);
        }
    }
    let names = ["N_c", "N_f", "N_a", "N_f1", "N_a1", "N_tot2"];
    for (n, w) in names.iter().zip(worst) {
        check(w < 1e-9, format!("{n} max error {w:.3e}"))?;
    }

    let ev = JcEvolver::new(2).map_err(|e| e.to_string())?;
    let rho0 = initial_state(ScenarioCase::A, 2).map_err(|e| e.to_string())?;
    let bs = BeamSplitter::new(2).map_err(|e| e.to_string())?;
    let at = |t: f64| -> Result<(f64, f64, f64), String> {
        let rho = ev.evolve(&rho0, t).map_err(|e| e.to_string())?;
        let (f, a) = reduced_states(&rho).map_err(|e| e.to_string())?;
        Ok((
            negativity(&rho, ATOM).map_err(|e| e.to_string())?,
            bs.potential(&f).map_err(|e| e.to_string())?,
            bs.potential(&a).map_err(|e| e.to_string())?,
        ))
    };
    let spots = [
        ("N_c(pi/4)", at(FRAC_PI_4)?.0, 0.5),
        ("N_f(pi/2)", at(FRAC_PI_2)?.1, 0.5),
        ("N_a(0)", at(0.0)?.2, 0.5),
        ("N_f(pi/4)", at(FRAC_PI_4)?.1, (SQRT_2 - 1.0) / 4.0),
    ];
    for (name, got, want) in spots {
        check((got - want).abs() < 1e-9, format!("{name} = {got}, expected {want}"))?;
    }
    Ok(format!("max errors {:?} over {} points", worst.map(|w| format!("{w:.1e}")), rows.len()))
}

fn fock_potentials() -> Outcome {
    let mut report = Vec::new();
    for (n, want) in [(1usize, 0.5), (2, (1.0 + 2.0 * SQRT_2) / 4.0)] {
        let layout = ModeLayout::single("f", 3).map_err(|e| e.to_string())?;
        let fock = DensityOperator::from_pure(&StateVector::basis(layout, &[n]).map_err(|e| e.to_string())?);
        let got = entanglement_potential(&fock).map_err(|e| e.to_string())?;
        check((got - want).abs() < 1e-10, format!("|{n}> potential {got}, expected {want}"))?;
        report.push(format!("|{n}>: {got:.12}"));
    }
    Ok(report.join(", "))
}

fn periods_and_exchange() -> Outcome {
    let ev = JcEvolver::new(2).map_err(|e| e.to_string())?;
    let rho0 = initial_state(ScenarioCase::A, 2).map_err(|e| e.to_string())?;
    let bs = BeamSplitter::new(2).map_err(|e| e.to_string())?;
    for k in 0..=8 {
        let t = k as f64 * FRAC_PI_2;
        let rho = ev.evolve(&rho0, t).map_err(|e| e.to_string())?;
        let (f, a) = reduced_states(&rho).map_err(|e| e.to_string())?;
        let n_c = negativity(&rho, ATOM).map_err(|e| e.to_string())?;
        let n_f = bs.potential(&f).map_err(|e| e.to_string())?;
        let n_a = bs.potential(&a).map_err(|e| e.to_string())?;
        check(n_c.abs() < 1e-9, format!("N_c({k}pi/2) = {n_c:e}"))?;
        if k % 2 == 0 {
            check(n_f.abs() < 1e-9, format!("N_f({}pi) = {n_f:e}", k / 2))?;
        }
        let (zero, half) = if n_f < n_a { (n_f, n_a) } else { (n_a, n_f) };
        check(
            zero.abs() < 1e-9 && (half - 0.5).abs() < 1e-9,
            format!("at {k}pi/2 N_f = {n_f}, N_a = {n_a}"),
        )?;
        let field_max = k % 2 == 1;
        check((n_f > n_a) == field_max, format!("maxima do not alternate at {k}pi/2"))?;
    }
    Ok("T = k pi/2, k = 0..8".into())
}

fn depletion() -> Outcome {
    let rows = case_a_rows(2)?;
    let bs = BeamSplitter::new(2).map_err(|e| e.to_string())?;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let ev = JcEvolver::new(2).map_err(|e| e.to_string())?;
    let rho0 = initial_state(ScenarioCase::A, 2).map_err(|e| e.to_string())?;
    for row in &rows {
        let rho = ev.evolve(&rho0, row.t).map_err(|e| e.to_string())?;
        let (f, a) = reduced_states(&rho).map_err(|e| e.to_string())?;
        for state in [f, a] {
            let report = bs.cascade(&state, 2).map_err(|e| e.to_string())?;
            for r in depletion_ratios(&report, DEFAULT_DEPLETION_FLOOR) {
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    check(
        lo >= 1.0 / 6.0 && hi <= 0.25,
        format!("ratios span [{lo:.4}, {hi:.4}], outside [1/6, 1/4]"),
    )?;

    let ratio_at = |t: f64| -> Result<f64, String> {
        let rho = ev.evolve(&rho0, t).map_err(|e| e.to_string())?;
        let (f, _) = reduced_states(&rho).map_err(|e| e.to_string())?;
        let report = bs.cascade(&f, 2).map_err(|e| e.to_string())?;
        Ok(report.layers[1][0] / report.layers[0][0])
    };
    let r2 = ratio_at(FRAC_PI_2)?;
    let r4 = ratio_at(FRAC_PI_4)?;
    check((r2 - 0.2071).abs() < 1e-3, format!("ratio at pi/2 = {r2}"))?;
    check((r4 - 0.1959).abs() < 1e-3, format!("ratio at pi/4 = {r4}"))?;
    Ok(format!("range [{lo:.4}, {hi:.4}], pi/2 -> {r2:.4}, pi/4 -> {r4:.4}"))
}

fn monotone_totals() -> Outcome {
    let rows = case_a_rows(4)?;
    let mut min_tot1 = f64::INFINITY;
    for row in &rows {
        check(
            row.totals.windows(2).all(|w| w[1] >= w[0]),
            format!("totals decrease at T = {}: {:?}", row.t, row.totals),
        )?;
        min_tot1 = min_tot1.min(row.totals[0]);
    }
    check(min_tot1 >= 0.5 - 1e-9, format!("min N_tot1 = {min_tot1}"))?;
    Ok(format!("min N_tot1 = {min_tot1:.12}"))
}

fn case_b_cross_validation() -> Outcome {
    let rows = run(&config("B", |_| {}))?;
    let mut worst = 0.0f64;
    let mut printed = 0.0f64;
    for row in &rows {
        worst = worst.max((row.n_c - 0.5 * (2.0 * SQRT_2 * row.t).sin().abs()).abs());
        let as_printed = oracle::case_b(row.t, CASE_B_PRINTED_FREQUENCY).map_err(|e| e.to_string())?;
        printed = printed.max((row.n_c - as_printed.n_c).abs());
    }
    check(worst < 1e-9, format!("N_c max error {worst:.3e}"))?;

    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut sector = 0.0f64;
    for d in 3..=6 {
        let ev = JcEvolver::new(d).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let t: f64 = rng.gen_range(0.0..2.0 * PI);
            let u = ev.propagator(t);
            for n in 1..d {
                let rot = sector_evolution(n, t, d).map_err(|e| e.to_string())?;
                let (i, j) = rot.indices();
                let m = rot.matrix();
                for (r, &row) in [i, j].iter().enumerate() {
                    for (c, &col) in [i, j].iter().enumerate() {
                        sector = sector.max((u[(row, col)] - m[r][c]).norm());
                    }
                }
            }
        }
    }
    check(sector < 1e-12, format!("sector rotation error {sector:.3e}"))?;
    Ok(format!(
        "N_c err {worst:.1e}, sector err {sector:.1e}; as-printed sqrt(3) form diverges by {printed:.3}"
    ))
}

fn case_c_reduced_match() -> Outcome {
    let cfg = config("C", |o| o.mean_photon = Some(0.01));
    let rows = run(&cfg)?;
    let w = thermal_weights(0.01, cfg.field_dim).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for row in &rows {
        let (atom, field) = oracle::case_c_reduced(row.t, w[0], w[1]).map_err(|e| e.to_string())?;
        worst = worst.max(max_abs(&(&row.rho_a - atom))).max(max_abs(&(&row.rho_f - field)));
    }
    check(worst < 1e-8, format!("max entry error {worst:.3e}"))?;
    Ok(format!("max entry error {worst:.1e}, p0 = {:.10}", w[0]))
}

fn case_d_and_coherence() -> Outcome {
    let rows = run(&config("D", |o| o.alpha = Some(0.1)))?;
    let c0 = (-1.0f64 / 200.0).exp();
    let c1 = c0 / 10.0;
    let mut worst = 0.0f64;
    for row in &rows {
        let (atom, field) = oracle::case_d_reduced_unnormalized(row.t, c0, c1);
        worst = worst.max(max_abs(&(&row.rho_a - atom))).max(max_abs(&(&row.rho_f - field)));
    }
    check(worst < 1e-3, format!("max entry error {worst:.3e}"))?;

    let mut incoherent = 0.0f64;
    for (case, tweak) in [
        ("A", None),
        ("B", None),
        ("C", Some(0.01)),
    ] {
        let rows = run(&config(case, |o| o.mean_photon = tweak))?;
        for row in &rows {
            incoherent = incoherent.max(row.coh_a);
        }
    }
    check(incoherent < 1e-12, format!("atom coherence {incoherent:e} in cases A-C"))?;

    let ev = JcEvolver::new(3).map_err(|e| e.to_string())?;
    let rho0 = initial_state(ScenarioCase::D { alpha: C64::new(0.1, 0.0) }, 3).map_err(|e| e.to_string())?;
    let (_, a) = reduced_states(&ev.evolve(&rho0, FRAC_PI_4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let coh = l1_coherence(&a);
    check(coh > 1e-4, format!("case D atom coherence at pi/4 = {coh:e}"))?;
    Ok(format!("entry error {worst:.1e}, A-C coherence {incoherent:.1e}, D coherence {coh:.4e}"))
}

fn random_unitary(n: usize, rng: &mut impl Rng) -> Result<CMatrix, String> {
    let a = CMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h = (&a + a.adjoint()).scale(0.5);
    Ok(HermitianEigen::new(&h).map_err(|e| e.to_string())?.propagator(1.0))
}

fn structural() -> Outcome {
    for d in 2..=6 {
        let u = beam_splitter_unitary(d).map_err(|e| e.to_string())?;
        let id = CMatrix::identity(d * d, d * d);
        let dev = max_abs(&(u.adjoint() * &u - id));
        check(dev < 1e-12, format!("splitter unitarity {dev:e} at d = {d}"))?;

        let a = annihilation(d).map_err(|e| e.to_string())?;
        let eye = CMatrix::identity(d, d);
        let g = kron(&a.adjoint(), &eye) * kron(&eye, &a);
        let g = &g + g.adjoint();
        let n = number_operator(d).map_err(|e| e.to_string())?;
        let total = kron(&n, &eye) + kron(&eye, &n);
        let comm = max_abs(&(&g * &total - &total * &g));
        check(comm < 1e-12, format!("generator commutator {comm:e} at d = {d}"))?;
    }

    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for (case, d) in [
        (ScenarioCase::A, 2),
        (ScenarioCase::B, 3),
        (ScenarioCase::C { mean_photon: 0.5 }, 4),
        (ScenarioCase::D { alpha: C64::new(0.6, 0.2) }, 5),
    ] {
        let ev = JcEvolver::new(d).map_err(|e| e.to_string())?;
        let rho0 = initial_state(case, d).map_err(|e| e.to_string())?;
        let before = hermitian_eigenvalues(rho0.matrix()).map_err(|e| e.to_string())?;
        let bs = BeamSplitter::new(d).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let t: f64 = rng.gen_range(0.0..2.0 * PI);
            let rho = ev.evolve(&rho0, t).map_err(|e| e.to_string())?;
            let tr = (rho.matrix().trace().re - 1.0).abs();
            check(tr < 1e-10, format!("trace drift {tr:e}"))?;
            let after = hermitian_eigenvalues(rho.matrix()).map_err(|e| e.to_string())?;
            for (x, y) in before.eigenvalues().iter().zip(after.eigenvalues()) {
                check((x - y).abs() < 1e-10, format!("spectrum drift {:e}", (x - y).abs()))?;
            }

            let local = kron(&random_unitary(d, &mut rng)?, &random_unitary(2, &mut rng)?);
            let rotated = rho.conjugate(&local).map_err(|e| e.to_string())?;
            let n0 = negativity(&rho, ATOM).map_err(|e| e.to_string())?;
            let n1 = negativity(&rotated, ATOM).map_err(|e| e.to_string())?;
            check((n0 - n1).abs() < 1e-10, format!("local unitary changed negativity by {:e}", n0 - n1))?;

            if !matches!(case, ScenarioCase::D { .. }) {
                let (f, a) = reduced_states(&rho).map_err(|e| e.to_string())?;
                let field = bs.cascade(&f, 3).map_err(|e| e.to_string())?;
                let atom = BeamSplitter::new(2)
                    .and_then(|b| b.cascade(&a, 3))
                    .map_err(|e| e.to_string())?;
                let asym = field.branch_asymmetry().max(atom.branch_asymmetry());
                check(asym < 1e-10, format!("branch asymmetry {asym:e}"))?;
            }
        }
    }

    let cfg_path = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    for _ in 0..2 {
        let mut cfg = config("C", |o| {
            o.mean_photon = Some(0.3);
            o.n_points = Some(101);
            o.layers = Some(3);
        });
        cfg.output_prefix = cfg_path.path().join("run");
        let rows = run(&cfg)?;
        let files = write_outputs(&rows, &cfg, std::time::Duration::ZERO).map_err(|e| e.to_string())?;
        let written = std::fs::read(&files.csv).map_err(|e| e.to_string())?;
        check(written == render_csv(&rows, &cfg).into_bytes(), "written csv differs from rendering".into())?;
        bytes.push(written);
    }
    check(bytes[0] == bytes[1], "csv reruns differ".into())?;
    Ok(format!("csv reruns identical ({} bytes)", bytes[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("case A exactness", case_a_exactness),
        ("Fock-state potentials", fock_potentials),
        ("periods and exchange", periods_and_exchange),
        ("residual depletion", depletion),
        ("monotone totals", monotone_totals),
        ("case B cross-validation", case_b_cross_validation),
        ("case C reduced states", case_c_reduced_match),
        ("case D reduced states and coherence", case_d_and_coherence),
        ("structural properties", structural),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
