//! One function per subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thermoq_core::bosonic::{steady_state_bosonic, LindbladGenerator};
use thermoq_core::collision::{steady_state, CollisionGenerator, CouplingRates};
use thermoq_core::generator::stationary;
use thermoq_core::integrate::{default_step, evolve_sampled};
use thermoq_core::model::{
    bath_qubit, carnot_e2, carnot_efficiency, efficiency, virtual_beta, virtual_temperature, Bath, BathTriple,
    FridgeSpec,
};
use thermoq_core::op::{two_qubit, DensityOperator, Operator, FRIDGE_BASIS, QUTRIT_BASIS};
use thermoq_core::performance::{default_bracket, optimal_e2};
use thermoq_core::qutrit::{compare_with_scale, qutrit_generator, qutrit_steady_state, QutritSpec, Winner};
use thermoq_core::{Generator, SteadyStateReport};

use crate::cli::{Cli, Command, Common};
use crate::config::{InitialState, Model, Resolved, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{emit, float, json as pretty, line_chart, plot_path, Cell, Series, Table};
use crate::sweep::{par_map, parse_bracket, SweepSpec};

/// Tolerance for the reversible-point checks.
const CARNOT_CHECK_TOL: f64 = 1e-9;
/// Offset of the perturbed gap around the reversible point.
const CARNOT_NUDGE: f64 = 0.01;
/// Refuse transients longer than this many RK4 steps.
const MAX_STEPS: f64 = 5e7;

pub fn run(cli: Cli) -> Result<()> {
    let mut cfg = cli.common.config()?;
    match cli.command {
        Command::Steady => steady(&cli.common, &cfg),
        Command::Evolve { t_final, dt, initial, rows } => {
            cfg.evolve.t_final = t_final.or(cfg.evolve.t_final);
            cfg.evolve.dt = dt.or(cfg.evolve.dt);
            cfg.evolve.initial = initial.unwrap_or(cfg.evolve.initial);
            cfg.evolve.rows = rows.unwrap_or(cfg.evolve.rows);
            evolve(&cli.common, &cfg)
        }
        Command::Sweep { sweep } => run_sweep(&cli.common, &cfg, &sweep.parse()?),
        Command::OptimizeE2 { bracket, scan } => match scan {
            Some(scan) => optimize_scan(&cli.common, &cfg, &format!("t_h:{scan}").parse()?),
            None => optimize(&cli.common, &cfg, bracket.as_deref()),
        },
        Command::Carnot => carnot(&cli.common, &cfg),
        Command::Compare { search: Some(n) } => compare_search(&cli.common, &cfg, n),
        Command::Compare { search: None } => {
            let r = cfg.resolve()?;
            emit(cli.common.out.as_deref(), &pretty(&compare_json(&cfg, &r)?))
        }
    }
}

fn header(cmd: &str, cfg: &RunConfig) -> Vec<String> {
    let basis = if cfg.model == Model::Qutrit { QUTRIT_BASIS.join(",") } else { FRIDGE_BASIS.join(",") };
    vec![format!("thermoq {cmd} config={}", cfg.to_json()), format!("basis: {basis}")]
}

fn matrix_json(op: &Operator) -> Value {
    let n = op.dim();
    Value::Array((0..n).map(|i| Value::Array((0..n).map(|j| json!([op[(i, j)].re, op[(i, j)].im])).collect())).collect())
}

fn opt_text(x: Option<f64>) -> String {
    x.map_or_else(|| "unbounded".into(), |v| format!("{v:.6}"))
}

fn verbose_dump<G: Generator + ?Sized>(common: &Common, gen: &G, rho: &DensityOperator) {
    if common.verbose {
        eprintln!("{}", gen.describe());
        let op = rho.operator();
        for i in 0..op.dim() {
            let row: Vec<String> =
                (0..op.dim()).map(|j| format!("{:+.6e}{:+.6e}i", op[(i, j)].re, op[(i, j)].im)).collect();
            eprintln!("rho[{i}] {}", row.join(" "));
        }
    }
}

fn fridge_report(cfg: &RunConfig, r: &Resolved) -> Result<(SteadyStateReport, Box<dyn Generator>)> {
    Ok(match cfg.model {
        Model::Bosonic => {
            let gen = LindbladGenerator::new(&r.spec, &r.baths, &r.bosonic);
            (steady_state_bosonic(&gen)?, Box::new(gen))
        }
        _ => {
            let gen = CollisionGenerator::fridge(&r.spec, &r.baths, &r.rates)?;
            (steady_state(&gen)?, Box::new(gen))
        }
    })
}

fn fridge_json(cfg: &RunConfig, r: &Resolved, s: &SteadyStateReport) -> Value {
    let mut v = json!({
        "model": s.model.as_str(),
        "basis": FRIDGE_BASIS,
        "config": cfg.to_json(),
        "r1": s.r1,
        "r_c": s.r_c,
        "virtual_beta": virtual_beta(&r.spec, &r.baths),
        "virtual_temperature": virtual_temperature(&r.spec, &r.baths),
        "q_c": s.q_c,
        "q_h": s.q_h,
        "q_r": s.q_r,
        "efficiency": efficiency(&r.spec),
        "efficiency_realized": s.efficiency_realized,
        "carnot_efficiency": carnot_efficiency(&r.baths),
        "cooling": s.cooling,
        "first_law_defect": s.first_law_defect(),
        "entropy_production": s.entropy_production(),
        "residual": s.residual,
        "max_coherence": s.max_coherence,
        "rate_equation_deviation": s.rate_equation_deviation,
        "closed_form_deviation": s.closed_form_deviation,
        "populations": s.rho_s.populations(),
        "rho_s": matrix_json(s.rho_s.operator()),
    });
    if cfg.model == Model::Bosonic {
        v["gamma"] = json!({
            "c": r.bosonic.gamma(Bath::Cold),
            "r": r.bosonic.gamma(Bath::Sink),
            "h": r.bosonic.gamma(Bath::Hot),
        });
    }
    v
}

fn compare_json(cfg: &RunConfig, r: &Resolved) -> Result<Value> {
    let c = compare_with_scale(&r.spec, &r.baths, &r.rates, cfg.qutrit_cold_scale)?;
    eprintln!("Q_c two-qubit {:.6e}, qutrit {:.6e}: {}", c.q_c_two_qubit, c.q_c_qutrit, c.winner.as_str());
    Ok(json!({
        "model": "compare",
        "config": cfg.to_json(),
        "q_c_two_qubit": c.q_c_two_qubit,
        "q_c_qutrit": c.q_c_qutrit,
        "qutrit_cold_scale": c.cold_scale,
        "winner": c.winner.as_str(),
    }))
}

fn steady(common: &Common, cfg: &RunConfig) -> Result<()> {
    let r = cfg.resolve()?;
    let report = match cfg.model {
        Model::Collision | Model::Bosonic => {
            let (s, gen) = fridge_report(cfg, &r)?;
            verbose_dump(common, gen.as_ref(), &s.rho_s);
            eprintln!(
                "{} fridge, E1 = {}, E2 = {}, T = ({}, {}, {})",
                s.model.as_str(),
                r.spec.e1(),
                r.spec.e2(),
                r.baths.t_c(),
                r.baths.t_r(),
                r.baths.t_h()
            );
            eprintln!("r1 = {:.6}, r_c = {:.6}, T_V = {}", s.r1, s.r_c, opt_text(virtual_temperature(&r.spec, &r.baths)));
            eprintln!("Q_c = {:.6e}, Q_h = {:.6e}, Q_r = {:.6e}", s.q_c, s.q_h, s.q_r);
            eprintln!("eta = {:.6}, eta_C = {}", efficiency(&r.spec), opt_text(carnot_efficiency(&r.baths)));
            eprintln!("cooling: {}", if s.cooling { "yes" } else { "no" });
            fridge_json(cfg, &r, &s)
        }
        Model::Qutrit => {
            let q = QutritSpec::from_fridge(&r.spec);
            let gen = qutrit_generator(&q, &r.baths, &r.rates, cfg.qutrit_cold_scale)?;
            let s = qutrit_steady_state(&gen)?;
            verbose_dump(common, &gen, &s.rho_s);
            eprintln!("qutrit fridge, levels {:?}", q.levels());
            eprintln!("Q_c = {:.6e}, Q_h = {:.6e}, Q_r = {:.6e}", s.q_c, s.q_h, s.q_r);
            json!({
                "model": "qutrit",
                "basis": QUTRIT_BASIS,
                "config": cfg.to_json(),
                "levels": q.levels(),
                "virtual_beta": q.virtual_beta(&r.baths),
                "q_c": s.q_c,
                "q_h": s.q_h,
                "q_r": s.q_r,
                "cooling": s.q_c > 0.0,
                "residual": s.residual,
                "max_coherence": s.max_coherence,
                "populations": s.rho_s.populations(),
                "rho_s": matrix_json(s.rho_s.operator()),
            })
        }
        Model::Compare => compare_json(cfg, &r)?,
    };
    emit(common.out.as_deref(), &pretty(&report))
}

fn evolve(common: &Common, cfg: &RunConfig) -> Result<()> {
    let r = cfg.resolve()?;
    let (gen, basis): (Box<dyn Generator>, &[&str]) = match cfg.model {
        Model::Collision => (Box::new(CollisionGenerator::fridge(&r.spec, &r.baths, &r.rates)?), &FRIDGE_BASIS),
        Model::Bosonic => (Box::new(LindbladGenerator::new(&r.spec, &r.baths, &r.bosonic)), &FRIDGE_BASIS),
        Model::Qutrit => (
            Box::new(qutrit_generator(&QutritSpec::from_fridge(&r.spec), &r.baths, &r.rates, cfg.qutrit_cold_scale)?),
            &QUTRIT_BASIS,
        ),
        Model::Compare => {
            return Err(CliError::Validation("evolve needs a single model: collision, bosonic or qutrit".into()))
        }
    };
    let gen = gen.as_ref();
    let dim = gen.dim();
    let rho0 = match cfg.evolve.initial {
        InitialState::Ground => DensityOperator::basis_state(dim, 0),
        InitialState::MaximallyMixed => DensityOperator::maximally_mixed(dim),
        InitialState::Steady => stationary(gen)?.rho,
    };
    let t_final = cfg.evolve.t_final.unwrap_or_else(|| {
        let slowest = match cfg.model {
            Model::Bosonic => Bath::ALL.iter().map(|&b| r.bosonic.gamma(b)).fold(f64::INFINITY, f64::min),
            _ => r.rates.min(),
        };
        100.0 / slowest
    });
    let dt = cfg.evolve.dt.unwrap_or_else(|| default_step(gen));
    let steps = (t_final / dt).ceil();
    if steps > MAX_STEPS {
        return Err(CliError::Validation(format!(
            "t_final = {t_final} with dt = {dt} needs {steps:.0} steps; raise --dt or lower --t-final"
        )));
    }
    let every = ((steps / cfg.evolve.rows as f64).ceil() as usize).max(1);
    let traj = evolve_sampled(gen, &rho0, t_final, dt, every)?;
    let labels: Vec<&str> = basis.iter().map(|b| b.trim_start_matches('|').trim_end_matches('>')).collect();
    let mut columns = vec!["t".to_string()];
    columns.extend(labels.iter().map(|l| format!("p_{l}")));
    for i in 0..dim {
        for j in (0..dim).filter(|&j| j != i) {
            columns.push(format!("abs_rho_{}_{}", labels[i], labels[j]));
        }
    }
    let mut table = Table { comments: header("evolve", cfg), columns, rows: Vec::new() };
    table.comments.push(format!("dt = {} after {} halvings", float(traj.dt), traj.halvings));
    for s in &traj.samples {
        let op = s.rho.operator();
        let mut row = vec![Cell::Float(s.t)];
        row.extend(s.rho.populations().into_iter().map(Cell::Float));
        for i in 0..dim {
            for j in (0..dim).filter(|&j| j != i) {
                row.push(Cell::Float(op[(i, j)].norm()));
            }
        }
        table.rows.push(row);
    }
    verbose_dump(common, gen, &traj.last().rho);
    eprintln!("{} rows to t = {}, dt = {:.3e}, {} halvings", table.rows.len(), t_final, traj.dt, traj.halvings);
    emit(common.out.as_deref(), &table.to_csv())?;
    if common.plot {
        let series: Vec<Series<'_>> = labels
            .iter()
            .enumerate()
            .map(|(k, l)| Series {
                label: l,
                points: traj.samples.iter().map(|s| (s.t, s.rho.populations()[k])).collect(),
            })
            .collect();
        write_plot(common, "populations", "t", "population", &series, false)?;
    }
    Ok(())
}

fn write_plot(common: &Common, title: &str, x: &str, y: &str, series: &[Series<'_>], log_x: bool) -> Result<()> {
    let path = plot_path(common.out.as_deref())?;
    emit(Some(&path), &line_chart(title, x, y, series, log_x))
}

fn sweep_columns(model: Model) -> &'static [&'static str] {
    match model {
        Model::Collision | Model::Bosonic => &[
            "status",
            "r1",
            "r_c",
            "virtual_temperature",
            "q_c",
            "q_h",
            "q_r",
            "efficiency",
            "efficiency_realized",
            "carnot_efficiency",
            "cooling",
            "residual",
            "note",
        ],
        Model::Qutrit => &["status", "q_c", "q_h", "q_r", "cooling", "residual", "note"],
        Model::Compare => &["status", "q_c_two_qubit", "q_c_qutrit", "winner", "note"],
    }
}

/// Values after the status column, or the error that replaced them.
fn sweep_values(cfg: &RunConfig, r: &Resolved) -> Result<Vec<Cell>> {
    Ok(match cfg.model {
        Model::Collision | Model::Bosonic => {
            let (s, _) = fridge_report(cfg, r)?;
            vec![
                Cell::Float(s.r1),
                Cell::Float(s.r_c),
                Cell::opt(virtual_temperature(&r.spec, &r.baths)),
                Cell::Float(s.q_c),
                Cell::Float(s.q_h),
                Cell::Float(s.q_r),
                Cell::Float(efficiency(&r.spec)),
                Cell::opt(s.efficiency_realized),
                Cell::opt(carnot_efficiency(&r.baths)),
                Cell::Bool(s.cooling),
                Cell::Float(s.residual),
            ]
        }
        Model::Qutrit => {
            let gen = qutrit_generator(&QutritSpec::from_fridge(&r.spec), &r.baths, &r.rates, cfg.qutrit_cold_scale)?;
            let s = qutrit_steady_state(&gen)?;
            vec![Cell::Float(s.q_c), Cell::Float(s.q_h), Cell::Float(s.q_r), Cell::Bool(s.q_c > 0.0), Cell::Float(s.residual)]
        }
        Model::Compare => {
            let c = compare_with_scale(&r.spec, &r.baths, &r.rates, cfg.qutrit_cold_scale)?;
            vec![Cell::Float(c.q_c_two_qubit), Cell::Float(c.q_c_qutrit), Cell::Text(c.winner.as_str().into())]
        }
    })
}

fn run_sweep(common: &Common, cfg: &RunConfig, spec: &SweepSpec) -> Result<()> {
    cfg.clone().set(&spec.param, spec.min)?;
    let names = sweep_columns(cfg.model);
    let blanks = names.len() - 2;
    let xs = spec.points();
    let rows = par_map(&xs, |&x| {
        let mut point = cfg.clone();
        point.set(&spec.param, x).expect("parameter checked above");
        let mut row = vec![Cell::Float(x)];
        match point.resolve().and_then(|r| sweep_values(&point, &r)) {
            Ok(values) => {
                row.push(Cell::Text("ok".into()));
                row.extend(values);
                row.push(Cell::Empty);
            }
            Err(e) => {
                let status = if e.exit_code() == 2 { "skipped" } else { "error" };
                row.push(Cell::Text(status.into()));
                row.extend(std::iter::repeat_n(Cell::Empty, blanks));
                row.push(Cell::Text(e.to_string()));
            }
        }
        row
    })?;
    let mut columns = vec![spec.param.as_str()];
    columns.extend_from_slice(names);
    let mut table = Table::new(&columns);
    table.comments = header("sweep", cfg);
    table.rows = rows;
    let failed = table.rows.iter().filter(|r| r[1] != Cell::Text("ok".into())).count();
    eprintln!("{} points, {failed} skipped or failed", table.rows.len());
    emit(common.out.as_deref(), &table.to_csv())?;
    if common.plot {
        let column = |name: &str| {
            let k = columns.iter().position(|c| *c == name).expect("known column");
            table
                .rows
                .iter()
                .filter_map(|r| match (&r[0], &r[k]) {
                    (Cell::Float(x), Cell::Float(y)) => Some((*x, *y)),
                    _ => None,
                })
                .collect()
        };
        let series = match cfg.model {
            Model::Compare => vec![
                Series { label: "two-qubit", points: column("q_c_two_qubit") },
                Series { label: "qutrit", points: column("q_c_qutrit") },
            ],
            _ => vec![Series { label: "Q_c", points: column("q_c") }],
        };
        write_plot(common, "cooling current", &spec.param, "Q_c", &series, spec.log)?;
    }
    Ok(())
}

fn optimize(common: &Common, cfg: &RunConfig, bracket: Option<&str>) -> Result<()> {
    let r = cfg.resolve()?;
    let (lo, hi) = match bracket {
        Some(b) => parse_bracket(b)?,
        None => default_bracket(r.spec.e1()),
    };
    if lo <= r.spec.e1() {
        return Err(CliError::Validation(format!("invalid bracket: lower end {lo} must exceed E1 = {}", r.spec.e1())));
    }
    let best = optimal_e2(r.spec.e1(), &r.baths, &r.rates, lo, hi).map_err(|e| {
        CliError::Search(format!("{e}; widen the bracket with --bracket lo:hi (now {lo}:{hi})"))
    })?;
    eprintln!("E2_opt = {:.6}, Q_c = {:.6e} after {} evaluations", best.x, best.value, best.evaluations);
    let report = json!({
        "model": "collision",
        "config": cfg.to_json(),
        "bracket": [lo, hi],
        "e2_opt": best.x,
        "q_c_opt": best.value,
        "efficiency_at_opt": efficiency(&FridgeSpec::new(r.spec.e1(), best.x)?),
        "evaluations": best.evaluations,
    });
    emit(common.out.as_deref(), &pretty(&report))
}

fn optimize_scan(common: &Common, cfg: &RunConfig, spec: &SweepSpec) -> Result<()> {
    let r = cfg.resolve()?;
    let (lo, hi) = default_bracket(r.spec.e1());
    let rows = par_map(&spec.points(), |&t_h| {
        let found = BathTriple::new(r.baths.t_c(), r.baths.t_r(), t_h)
            .and_then(|baths| optimal_e2(r.spec.e1(), &baths, &r.rates, lo, hi))
            .map_err(CliError::from);
        match found {
            Ok(best) => vec![
                Cell::Float(t_h),
                Cell::Text("ok".into()),
                Cell::Float(best.x),
                Cell::Float(best.value),
                Cell::Text(best.evaluations.to_string()),
                Cell::Empty,
            ],
            Err(e) => vec![
                Cell::Float(t_h),
                Cell::Text(if e.exit_code() == 2 { "skipped" } else { "error" }.into()),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Text(e.to_string()),
            ],
        }
    })?;
    let mut table = Table::new(&["t_h", "status", "e2_opt", "q_c_opt", "evaluations", "note"]);
    table.comments = header("optimize-e2", cfg);
    table.comments.push(format!("bracket: {}:{}", float(lo), float(hi)));
    table.rows = rows;
    emit(common.out.as_deref(), &table.to_csv())?;
    if common.plot {
        let points = table
            .rows
            .iter()
            .filter_map(|r| match (&r[0], &r[2]) {
                (Cell::Float(x), Cell::Float(y)) => Some((*x, *y)),
                _ => None,
            })
            .collect();
        write_plot(common, "optimal second gap", "T_h", "E2_opt", &[Series { label: "E2_opt", points }], spec.log)?;
    }
    Ok(())
}

fn carnot(common: &Common, cfg: &RunConfig) -> Result<()> {
    let r = cfg.resolve()?;
    let e1 = r.spec.e1();
    let e2 = carnot_e2(e1, &r.baths)?;
    let spec = FridgeSpec::new(e1, e2)?;
    let gen = CollisionGenerator::fridge(&spec, &r.baths, &r.rates)?;
    let s = steady_state(&gen)?;
    verbose_dump(common, &gen, &s.rho_s);

    let rc = bath_qubit(&spec, &r.baths, Bath::Cold).r;
    let rh = bath_qubit(&spec, &r.baths, Bath::Hot).r;
    let (a, b) = (rc * rh, (1.0 - rc) * (1.0 - rh));
    let product = DensityOperator::new(two_qubit(
        &Operator::from_real_diagonal(&[rc, 1.0 - rc]),
        &Operator::from_real_diagonal(&[a / (a + b), b / (a + b)]),
    ))?;
    let distance = s.rho_s.trace_distance(&product);
    let max_current = Bath::ALL.iter().fold(0.0f64, |m, &bath| m.max(s.current(bath).abs()));

    let nudged = |e2: f64| -> Result<Option<f64>> {
        if e2 <= e1 {
            return Ok(None);
        }
        let spec = FridgeSpec::new(e1, e2)?;
        Ok(Some(steady_state(&CollisionGenerator::fridge(&spec, &r.baths, &r.rates)?)?.q_c))
    };
    let above = nudged(e2 + CARNOT_NUDGE)?;
    let below = nudged(e2 - CARNOT_NUDGE)?;
    let verified = distance < CARNOT_CHECK_TOL && max_current < CARNOT_CHECK_TOL;

    eprintln!("E2 at the reversible point = {e2:.10}");
    eprintln!("trace distance to the product of bath states {distance:.2e}, max |Q| {max_current:.2e}");
    if let Some(q) = above {
        eprintln!("E2 + {CARNOT_NUDGE}: Q_c = {q:.6e} ({})", if q > 0.0 { "cooling" } else { "not cooling" });
    }
    if let Some(q) = below {
        eprintln!("E2 - {CARNOT_NUDGE}: Q_c = {q:.6e} ({})", if q > 0.0 { "cooling" } else { "not cooling" });
    }
    let report = json!({
        "model": "collision",
        "config": cfg.to_json(),
        "e2": e2,
        "efficiency": efficiency(&spec),
        "carnot_efficiency": carnot_efficiency(&r.baths),
        "product_trace_distance": distance,
        "max_abs_current": max_current,
        "verified": verified,
        "q_c_above": above,
        "q_c_below": below,
        "nudge": CARNOT_NUDGE,
        "rho_s": matrix_json(s.rho_s.operator()),
    });
    emit(common.out.as_deref(), &pretty(&report))?;
    if verified {
        Ok(())
    } else {
        Err(CliError::Solver(format!(
            "reversible point not confirmed: trace distance {distance:.2e}, max |Q| {max_current:.2e} (need < {CARNOT_CHECK_TOL:e})"
        )))
    }
}

/// Parameters drawn log-uniformly around the case study.
fn random_config(base: &RunConfig, rng: &mut ChaCha8Rng) -> RunConfig {
    let e1 = rng.random_range(0.5..2.0);
    let t_c = rng.random_range(0.5..2.0);
    let t_r = t_c * rng.random_range(1.0..2.0);
    let log_rate = |rng: &mut ChaCha8Rng| f64::exp(rng.random_range(-2.3..2.3));
    RunConfig {
        model: Model::Compare,
        e1,
        e2: e1 * (1.0 + rng.random_range(0.02..8.0)),
        t_c,
        t_r,
        t_h: t_r * f64::exp(rng.random_range(0.0..5.3)),
        p_c: log_rate(rng),
        p_r: log_rate(rng),
        p_h: log_rate(rng),
        ..base.clone()
    }
}

fn compare_search(common: &Common, cfg: &RunConfig, n: usize) -> Result<()> {
    if n == 0 {
        return Err(CliError::Validation("--search needs at least one draw".into()));
    }
    cfg.resolve()?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let draws: Vec<RunConfig> = (0..n).map(|_| random_config(cfg, &mut rng)).collect();
    let results = par_map(&draws, |d| {
        let r = d.resolve()?;
        let rates = CouplingRates::new(d.p_c, d.p_r, d.p_h)?;
        Ok::<_, CliError>(compare_with_scale(&r.spec, &r.baths, &rates, d.qutrit_cold_scale)?)
    })?;
    let (mut two, mut three, mut ties, mut failed) = (0, 0, 0, 0);
    let mut wins = Vec::new();
    for (k, (d, res)) in draws.iter().zip(&results).enumerate() {
        match res {
            Ok(c) => match c.winner {
                Winner::TwoQubit => {
                    two += 1;
                    wins.push(json!({
                        "draw": k,
                        "e1": d.e1, "e2": d.e2, "t_c": d.t_c, "t_r": d.t_r, "t_h": d.t_h,
                        "p_c": d.p_c, "p_r": d.p_r, "p_h": d.p_h,
                        "q_c_two_qubit": c.q_c_two_qubit,
                        "q_c_qutrit": c.q_c_qutrit,
                    }));
                }
                Winner::Qutrit => three += 1,
                Winner::Tie => ties += 1,
            },
            Err(e) => {
                failed += 1;
                eprintln!("draw {k} failed: {e}");
            }
        }
    }
    eprintln!("{n} draws (seed {}): two-qubit ahead {two}, qutrit ahead {three}, ties {ties}, failed {failed}", common.seed);
    let report = json!({
        "model": "compare",
        "config": cfg.to_json(),
        "seed": common.seed,
        "draws": n,
        "two_qubit_wins": two,
        "qutrit_wins": three,
        "ties": ties,
        "failed": failed,
        "two_qubit_win_draws": wins,
    });
    emit(common.out.as_deref(), &pretty(&report))
}
