//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{case_study, random_draws, random_state, rng, Draw};
use rand::Rng;
use thermoq_core::bosonic::{equivalence_map, steady_state_bosonic, BosonicCoupling, LindbladGenerator};
use thermoq_core::collision::{
    q_c_hot_limit, steady_state, time_averaged_channel, time_averaged_map, CollisionGenerator, CouplingRates,
    InteractionSpec,
};
use thermoq_core::eigen::HermitianEigen;
use thermoq_core::generator::SteadyStateReport;
use thermoq_core::integrate::{default_step, evolve_sampled};
use thermoq_core::model::{
    bath_qubit, carnot_e2, carnot_efficiency, efficiency, virtual_beta, Bath, BathTriple, FridgeSpec,
};
use thermoq_core::op::{two_qubit, DensityOperator, Operator};
use thermoq_core::performance::{cold_current_vs_e2, default_bracket, optimal_e2};
use thermoq_core::qutrit::{compare, Winner};
use thermoq_core::search::{grid_argmax, linspace, logspace};

const SEED: u64 = 0x7e57_c0de;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn solve(d: &Draw) -> SteadyStateReport {
    steady_state(&CollisionGenerator::fridge(&d.spec, &d.baths, &d.rates).unwrap()).unwrap()
}

fn within_budget(elapsed: Duration, budget_s: f64) -> (bool, String) {
    let s = elapsed.as_secs_f64();
    (s < budget_s, format!("{s:.2}s of {budget_s}s budget"))
}

fn equilibrium_oracle() -> Outcome {
    let start = Instant::now();
    let spec = FridgeSpec::new(1.0, 2.0).unwrap();
    let mut worst_state = 0.0f64;
    let mut worst_current = 0.0f64;
    for t in [0.4, 1.0, 3.7] {
        let baths = BathTriple::equilibrium(t).unwrap();
        let gibbs = DensityOperator::gibbs(&spec.hamiltonian(), 1.0 / t).unwrap();
        let collision =
            steady_state(&CollisionGenerator::fridge(&spec, &baths, &CouplingRates::new(0.4, 1.0, 2.5).unwrap()).unwrap())
                .unwrap();
        let bosonic =
            steady_state_bosonic(&LindbladGenerator::new(&spec, &baths, &BosonicCoupling::new(0.2, 1.0, 3.0).unwrap()))
                .unwrap();
        for r in [&collision, &bosonic] {
            worst_state = worst_state.max(r.rho_s.operator().max_abs_diff(gibbs.operator()));
            for bath in Bath::ALL {
                worst_current = worst_current.max(r.current(bath).abs());
            }
        }
    }
    let (fast, time) = within_budget(start.elapsed(), 1.0);
    outcome(
        worst_state < 1e-10 && worst_current < 1e-10 && fast,
        format!("max |ρ_S - Gibbs| {worst_state:.1e}, max |Q| {worst_current:.1e}, {time}"),
    )
}

fn steady_state_soundness() -> Outcome {
    let start = Instant::now();
    let (mut residual, mut coherence, mut first_law, mut entropy) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for d in random_draws(SEED, 200) {
        let r = solve(&d);
        residual = residual.max(r.residual);
        coherence = coherence.max(r.max_coherence);
        first_law = first_law.max(r.first_law_defect().abs());
        entropy = entropy.min(r.entropy_production());
    }
    let (fast, time) = within_budget(start.elapsed(), 10.0);
    outcome(
        residual < 1e-10 && coherence < 1e-10 && first_law < 1e-10 && entropy >= -1e-12 && fast,
        format!(
            "200 draws: residual {residual:.1e}, coherence {coherence:.1e}, first law {first_law:.1e}, min σ {entropy:.1e}, {time}"
        ),
    )
}

fn cooling_condition() -> Outcome {
    let base = random_draws(SEED, 200);
    let mut draws = base.clone();
    let mut rng = rng(SEED + 3);
    for d in random_draws(SEED + 1, 50) {
        let bath = Bath::ALL[rng.random_range(0..3)];
        let factor = if rng.random_bool(0.5) { 100.0 } else { 0.01 };
        draws.push(Draw { rates: d.rates.scaled(bath, factor).unwrap(), ..d });
        draws.push(d);
    }
    let (mut checked, mut skipped, mut mismatches) = (0, 0, 0);
    let mut cooling = 0;
    for d in &draws {
        let gap = virtual_beta(&d.spec, &d.baths) - d.baths.beta(Bath::Cold);
        if gap.abs() < 1e-10 {
            skipped += 1;
            continue;
        }
        let r = solve(d);
        checked += 1;
        cooling += usize::from(gap > 0.0);
        let agree = (r.r1 - r.r_c > 0.0) == (gap > 0.0) && (r.q_c > 0.0) == (gap > 0.0) && r.cooling == (gap > 0.0);
        mismatches += usize::from(!agree);
    }
    outcome(
        mismatches == 0,
        format!("{checked} draws ({cooling} cooling, {skipped} on the boundary), {mismatches} sign mismatches"),
    )
}

fn efficiency_identity() -> Outcome {
    let (mut used, mut worst, mut above_carnot) = (0, 0.0f64, 0);
    for d in random_draws(SEED, 200).iter().chain(&random_draws(SEED + 2, 100)) {
        let r = solve(d);
        if r.q_h > 1e-12 {
            used += 1;
            let ratio = r.q_c / r.q_h;
            worst = worst.max((ratio - efficiency(&d.spec)).abs());
            if carnot_efficiency(&d.baths).is_some_and(|c| ratio >= c) {
                above_carnot += 1;
            }
        }
    }
    outcome(
        used > 0 && worst < 1e-8 && above_carnot == 0,
        format!("{used} draws with Q_h > 0: max |Q_c/Q_h - η| {worst:.1e}, {above_carnot} at or above η_C"),
    )
}

fn carnot_point() -> Outcome {
    let (_, baths, rates) = case_study(2.0, 20.0);
    let e2 = carnot_e2(1.0, &baths).unwrap();
    let spec = FridgeSpec::new(1.0, e2).unwrap();
    let r = steady_state(&CollisionGenerator::fridge(&spec, &baths, &rates).unwrap()).unwrap();
    let rc = bath_qubit(&spec, &baths, Bath::Cold).r;
    let rh = bath_qubit(&spec, &baths, Bath::Hot).r;
    let (a, b) = (rc * rh, (1.0 - rc) * (1.0 - rh));
    let product = two_qubit(
        &Operator::from_real_diagonal(&[rc, 1.0 - rc]),
        &Operator::from_real_diagonal(&[a / (a + b), b / (a + b)]),
    );
    let distance = r.rho_s.trace_distance(&DensityOperator::new(product).unwrap());
    let current = Bath::ALL.iter().fold(0.0f64, |m, &b| m.max(r.current(b).abs()));
    outcome(
        distance < 1e-9 && current < 1e-9,
        format!("E2 = {e2:.10}, trace distance to product {distance:.1e}, max |Q| {current:.1e}"),
    )
}

fn hot_limit() -> Outcome {
    let (spec, _, rates) = case_study(2.0, 20.0);
    let far = BathTriple::new(1.0, 1.1, 1e6).unwrap();
    let solved = solve(&Draw { spec, baths: far, rates }).q_c;
    let limit = q_c_hot_limit(&spec, &far, &rates);
    let rel = ((solved - limit) / limit).abs();
    let sweep: Vec<f64> = logspace(1.2, 1e6, 50)
        .into_iter()
        .map(|t_h| solve(&Draw { spec, baths: BathTriple::new(1.0, 1.1, t_h).unwrap(), rates }).q_c)
        .collect();
    let drops = sweep.windows(2).filter(|w| w[1] < w[0] - 1e-13).count();
    outcome(
        rel < 1e-4 && drops == 0,
        format!("Q_c(T_h=1e6) {solved:.8} vs limit {limit:.8} (rel {rel:.1e}); 50-point sweep, {drops} decreases"),
    )
}

fn interior_optimum() -> Outcome {
    let start = Instant::now();
    let (_, baths, rates) = case_study(2.0, 20.0);
    let (lo, hi) = default_bracket(1.0);
    let golden = optimal_e2(1.0, &baths, &rates, lo, hi);
    let q = cold_current_vs_e2(1.0, &baths, &rates);
    let n = 10_000;
    let grid = linspace(lo, hi, n);
    let values: Vec<f64> = grid.iter().map(|&e2| q(e2)).collect();
    let (k, best) = grid_argmax(&q, lo, hi, n);
    let rising = values[..=k].windows(2).all(|w| w[1] >= w[0] - 1e-13);
    let falling = values[k..].windows(2).all(|w| w[1] <= w[0] + 1e-13);
    let unique = 0 < k && k < n - 1 && rising && falling;
    let step = grid[1] - grid[0];
    let scan: Vec<(f64, Option<f64>)> = [2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0]
        .into_iter()
        .map(|t_h| {
            let b = BathTriple::new(1.0, 1.1, t_h).unwrap();
            (t_h, optimal_e2(1.0, &b, &rates, lo, hi).ok().map(|e| e.x))
        })
        .collect();
    let finite = scan.iter().all(|(_, x)| x.is_some_and(|x| x.is_finite() && x < hi));
    let (fast, time) = within_budget(start.elapsed(), 30.0);
    match golden {
        Ok(g) => {
            let matched = (g.x - best.x).abs() <= step;
            let scan_text: Vec<String> =
                scan.iter().map(|(t, x)| format!("{t}:{}", x.map_or("none".into(), |x| format!("{x:.3}")))).collect();
            outcome(
                unique && matched && finite && fast,
                format!(
                    "E2_opt {:.6} (grid {:.6}, step {step:.1e}), unimodal {unique}, scan T_h:E2_opt [{}], {time}",
                    g.x,
                    best.x,
                    scan_text.join(" ")
                ),
            )
        }
        Err(e) => outcome(false, format!("golden-section search failed: {e}")),
    }
}

fn model_equivalence() -> Outcome {
    let (mut worst, mut flag_mismatch) = (0.0f64, 0);
    for d in random_draws(SEED + 4, 100) {
        let c = solve(&d);
        let b = steady_state_bosonic(&LindbladGenerator::new(&d.spec, &d.baths, &equivalence_map(&d.rates, &d.baths, &d.spec)))
            .unwrap();
        worst = worst.max(c.rho_s.operator().max_abs_diff(b.rho_s.operator()));
        flag_mismatch += usize::from(c.cooling != b.cooling || (c.q_c > 0.0) != (b.q_c > 0.0));
    }
    outcome(
        worst < 1e-10 && flag_mismatch == 0,
        format!("100 draws: max entrywise deviation {worst:.1e}, {flag_mismatch} cooling-flag mismatches"),
    )
}

fn comparison_regimes() -> Outcome {
    let (spec, _, rates) = case_study(2.0, 20.0);
    let sweep = logspace(1.2, 100.0, 50);
    let mut two_qubit_wins = 0;
    let (mut lo_ratio, mut hi_ratio) = (f64::INFINITY, 0.0f64);
    for &t_h in &sweep {
        let r = compare(&spec, &BathTriple::new(1.0, 1.1, t_h).unwrap(), &rates).unwrap();
        two_qubit_wins += usize::from(r.winner != Winner::Qutrit);
        if r.q_c_two_qubit > 0.0 && r.q_c_qutrit > 0.0 {
            let ratio = r.q_c_two_qubit / r.q_c_qutrit;
            lo_ratio = lo_ratio.min(ratio);
            hi_ratio = hi_ratio.max(ratio);
        }
    }
    let mut rng = rng(SEED + 5);
    let mut found = None;
    for k in 0..200 {
        let d = common::random_draw(&mut rng);
        if compare(&d.spec, &d.baths, &d.rates).is_ok_and(|r| r.winner == Winner::Qutrit) {
            found = Some(k + 1);
            break;
        }
    }
    let sweep_ok = two_qubit_wins == sweep.len();
    outcome(
        sweep_ok && found.is_some(),
        format!(
            "T_h sweep: two-qubit ahead at {two_qubit_wins}/{} points (Q_c ratio {lo_ratio:.3}..{hi_ratio:.3}); random search: {}",
            sweep.len(),
            found.map_or("no qutrit win in 200 draws".into(), |k| format!("qutrit wins at draw {k}"))
        ),
    )
}

fn dynamics_convergence() -> Outcome {
    let (spec, baths, rates) = case_study(2.0, 20.0);
    let gen = CollisionGenerator::fridge(&spec, &baths, &rates).unwrap();
    let rho_s = steady_state(&gen).unwrap().rho_s;
    let t_final = 100.0 / rates.min();
    let dt = default_step(&gen);
    let per_unit = (1.0 / dt).ceil() as usize;
    let traj = evolve_sampled(&gen, &DensityOperator::basis_state(4, 0), t_final, dt, per_unit).unwrap();
    let distance = traj.last().rho.trace_distance(&rho_s);
    let at_half = traj
        .samples
        .iter()
        .min_by(|a, b| (a.t - t_final / 2.0).abs().total_cmp(&(b.t - t_final / 2.0).abs()))
        .map(|s| s.rho.trace_distance(&rho_s))
        .unwrap();

    let mut rng = rng(SEED + 6);
    let states: Vec<DensityOperator> = (0..100).map(|_| random_state(&mut rng, 4)).collect();
    let (mut invalid, mut choi_min, mut g_dev) = (0, f64::INFINITY, 0.0f64);
    for bath in Bath::ALL {
        let inter = InteractionSpec::fridge(&spec, bath, 1.0).unwrap();
        let stronger = inter.with_strength(10.0);
        let q = bath_qubit(&spec, &baths, bath);
        let tau = DensityOperator::new(q.state()).unwrap();
        let channel = time_averaged_channel(&inter, &q);
        choi_min = choi_min.min(HermitianEigen::new(&channel.choi()).values[0]);
        for rho in &states {
            invalid += usize::from(DensityOperator::new(channel.apply(rho.operator())).is_err());
            let a = time_averaged_map(&inter, &tau, rho).unwrap();
            let b = time_averaged_map(&stronger, &tau, rho).unwrap();
            g_dev = g_dev.max(a.operator().max_abs_diff(b.operator()));
        }
    }
    outcome(
        distance < 1e-8 && invalid == 0 && choi_min >= -1e-10 && g_dev < 1e-10,
        format!(
            "D(ρ(t), ρ_S) {distance:.1e} at t = {t_final} ({at_half:.1e} at t = {}), {} halvings; maps: {invalid} invalid outputs, min Choi eigenvalue {choi_min:.1e}, g vs 10g {g_dev:.1e}",
            t_final / 2.0,
            traj.halvings
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("equilibrium oracle", equilibrium_oracle),
        ("steady-state soundness", steady_state_soundness),
        ("cooling condition", cooling_condition),
        ("efficiency identity", efficiency_identity),
        ("Carnot point", carnot_point),
        ("hot-limit saturation", hot_limit),
        ("interior optimum", interior_optimum),
        ("model equivalence", model_equivalence),
        ("comparison regimes", comparison_regimes),
        ("dynamics convergence", dynamics_convergence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!result.pass);
        println!(
            "{} {:>2} {:<24} {} [{:.2}s]",
            if result.pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
