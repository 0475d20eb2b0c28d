use crate::args::{Command, GridArgs, SignArg, TrajectoryArgs, WeightArgs};
use crate::error::{input, CliError};
use crate::output::{Cell, Outcome, Table};
use pjacobi::limits::{
    bulk_density_experiment, bulk_sine_experiment, double_scaling_experiment, edge_bessel_experiment,
    square_grid, transition_scan, ScalingResult, TMode,
};
use pjacobi::linalg::C64;
use pjacobi::orthopoly::{orthonormality_residual, KernelEvaluator};
use pjacobi::painleve::{
    backlund, backlund_residual_profile, backlund_round_trip_error, integrate_schlesinger, monodromy_constants,
    verify_cyclic, PainleveParams, PainleveTrajectory, Sign,
};
use pjacobi::sampler::sample_dpp;
use pjacobi::specfun::{
    bessel_i, bessel_ip, bessel_j_with, bessel_k, bessel_kp, gamma, hyp2f1, hyp2f1_euler, SpecFunConfig,
};
use pjacobi::weight::{t_minus_1_from_s, WeightSpec};
use serde_json::{json, Value};
use std::f64::consts::PI;

type Res<T> = Result<T, CliError>;

fn weight_spec(w: &WeightArgs) -> Res<WeightSpec> {
    match (w.t, w.s) {
        (Some(t), None) => Ok(WeightSpec::new(w.alpha, w.beta, t)?),
        (None, Some(s)) => Ok(WeightSpec::with_t_minus_1(w.alpha, w.beta, t_minus_1_from_s(s, w.n)?)?),
        _ => input("give exactly one of --t and --s"),
    }
}

fn evaluator(w: &WeightArgs) -> Res<KernelEvaluator> {
    Ok(KernelEvaluator::new(&weight_spec(w)?, w.n)?)
}

fn grid_bounds(g: &GridArgs, lo: f64, hi: f64, step: f64) -> Res<(f64, f64, f64)> {
    let (lo, hi, step) = (g.lo.unwrap_or(lo), g.hi.unwrap_or(hi), g.step.unwrap_or(step));
    if !(step > 0.0 && lo <= hi && lo.is_finite() && hi.is_finite()) {
        return input(format!("grid [{lo}, {hi}] with step {step} is invalid"));
    }
    Ok((lo, hi, step))
}

fn point_grid(g: &GridArgs, lo: f64, hi: f64, step: f64) -> Res<Vec<f64>> {
    let (lo, hi, step) = grid_bounds(g, lo, hi, step)?;
    let m = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=m).map(|k| lo + step * k as f64).collect())
}

fn pair_grid(g: &GridArgs, lo: f64, hi: f64, step: f64) -> Res<Vec<(f64, f64)>> {
    let (lo, hi, step) = grid_bounds(g, lo, hi, step)?;
    Ok(square_grid(lo, hi, step))
}

fn scaling_outcome(r: &ScalingResult, metric: (&'static str, f64)) -> Outcome {
    let (header, rows) = r.table();
    json_outcome(
        Table::numeric(&header, rows),
        json!({
            "regime": r.regime,
            "meta": r.meta,
            "points": r.computed.len(),
            "max_abs_err": r.max_abs_err,
            "max_rel_err": r.max_rel_err,
            "max_abs_err_alt": r.max_abs_err_alt,
        }),
        metric,
    )
}

fn json_outcome(table: Table, mut summary: Value, metric: (&'static str, f64)) -> Outcome {
    summary["metric"] = json!({ "name": metric.0, "value": metric.1 });
    Outcome { table, summary, metric }
}

fn trajectory(a: &TrajectoryArgs) -> Res<PainleveTrajectory> {
    let p = PainleveParams::new(a.theta, a.gamma)?;
    Ok(integrate_schlesinger(&p, a.s0, a.s1, a.b0, a.y0, a.tol)?)
}

fn trajectory_json(t: &PainleveTrajectory, a: &TrajectoryArgs) -> Value {
    let (lo, hi) = t.s_range();
    json!({
        "params": t.params,
        "initial": { "s0": a.s0, "b0": a.b0, "y0": a.y0 },
        "s_range": [lo, hi],
        "nodes": t.len(),
        "tolerance": a.tol,
    })
}

pub fn run(cmd: &Command) -> Res<Outcome> {
    match cmd {
        Command::Recurrence { weight } => {
            let ev = evaluator(weight)?;
            let tb = &ev.table;
            let mut table = Table::new(&["k", "a", "bsq", "gamma"]);
            for k in 0..=tb.n_max {
                table.push(vec![Cell::Int(k as u64), tb.a[k].into(), tb.bsq[k].into(), tb.gamma[k].into()]);
            }
            let ortho = orthonormality_residual(tb, &ev.spec, ev.n)?;
            Ok(json_outcome(
                table,
                json!({
                    "alpha": ev.spec.alpha, "beta": ev.spec.beta, "t": ev.spec.t,
                    "t_minus_1": ev.spec.t_minus_1(), "n_max": tb.n_max, "mu0": tb.mu0,
                    "quadrature": format!("{:?}", tb.quad_kind),
                    "note": "bsq[0] holds the total mass mu0",
                }),
                ("orthonormality_residual", ortho),
            ))
        }
        Command::Density { weight, grid } => {
            let ev = evaluator(weight)?;
            let r = bulk_density_experiment(&ev, &point_grid(grid, -0.8, 0.8, 0.01)?)?;
            let rel = r.computed.iter().zip(&r.reference).map(|(c, f)| (c / f - 1.0).abs()).fold(0.0, f64::max);
            Ok(scaling_outcome(&r, ("max_pointwise_rel_err", rel)))
        }
        Command::Sine { weight, x0, grid } => {
            let ev = evaluator(weight)?;
            let r = bulk_sine_experiment(&ev, *x0, &pair_grid(grid, -2.0, 2.0, 0.25)?)?;
            Ok(scaling_outcome(&r, ("max_abs_err", r.max_abs_err)))
        }
        Command::Edge { weight, grid } => {
            let ev = evaluator(weight)?;
            let mode = if ev.spec.is_merged() { TMode::TEqualsOne } else { TMode::FixedT };
            let r = edge_bessel_experiment(&ev, mode, &pair_grid(grid, 0.5, 8.0, 0.5)?)?;
            let metric = match mode {
                TMode::FixedT => ("max_rel_err", r.max_rel_err),
                TMode::TEqualsOne => ("max_abs_err", r.max_abs_err),
            };
            Ok(scaling_outcome(&r, metric))
        }
        Command::DoubleScaling { weight, grid } => {
            let (Some(s), None) = (weight.s, weight.t) else {
                return input("double-scaling takes --s and not --t");
            };
            let base = WeightSpec::new(weight.alpha, weight.beta, 2.0)?;
            let r = double_scaling_experiment(&base, s, weight.n, &pair_grid(grid, 0.5, 4.0, 0.5)?)?;
            Ok(scaling_outcome(&r, ("max_abs_err", r.max_abs_err)))
        }
        Command::Transition { alpha, beta, n, s, grid } => {
            let base = WeightSpec::new(*alpha, *beta, 2.0)?;
            let res = transition_scan(&base, s, *n, &pair_grid(grid, 0.5, 4.0, 0.5)?)?;
            let mut table = Table::new(&["s", "err_vs_j_beta", "err_vs_j_alpha_plus_beta", "closer"]);
            let mut worst = 0.0f64;
            let mut per_s = Vec::new();
            for r in &res {
                let (eb, es) = (r.max_abs_err, r.max_abs_err_alt.unwrap_or(f64::NAN));
                let closer = if eb < es { "j_beta" } else { "j_alpha_plus_beta" };
                worst = worst.max(eb.min(es));
                table.push(vec![r.meta.s.into(), eb.into(), es.into(), Cell::Text(closer.into())]);
                per_s.push(json!({ "s": r.meta.s, "err_vs_j_beta": eb, "err_vs_j_alpha_plus_beta": es, "closer": closer }));
            }
            Ok(json_outcome(
                table,
                json!({ "alpha": alpha, "beta": beta, "n": n, "scan": per_s }),
                ("max_best_err", worst),
            ))
        }
        Command::PainleveIntegrate { traj } => {
            let t = trajectory(traj)?;
            let header = ["s", "b", "y", "u", "sigma", "c2hat", "omega", "v"];
            let rows = (0..t.len())
                .map(|i| vec![t.s_grid[i], t.b[i], t.y[i], t.u[i], t.sigma[i], t.c2hat[i], t.omega[i], t.v[i]])
                .collect();
            let ids = t.identity_errors();
            let mut summary = trajectory_json(&t, traj);
            summary["identity_errors"] = json!(ids);
            Ok(json_outcome(Table::numeric(&header, rows), summary, ("max_identity_err", ids.iter().fold(0.0, |a, b| a.max(*b)))))
        }
        Command::PainleveResiduals { traj, refine } => {
            let t = trajectory(traj)?;
            let prof = t.residual_profile(*refine)?;
            let m = t.max_residuals(*refine)?;
            let header = ["s", "second_order", "gpv", "p3", "u_ode", "sigma_prime"];
            let rows = prof.iter().map(|r| vec![r.s, r.second_order, r.gpv, r.p3, r.u_ode, r.sigma_prime]).collect();
            let mut summary = trajectory_json(&t, traj);
            summary["max_residuals"] = json!(m);
            Ok(json_outcome(Table::numeric(&header, rows), summary, ("max_ode_residual", m.max_ode())))
        }
        Command::Backlund { traj, sign, refine } => {
            let t = trajectory(traj)?;
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            let mut table = Table::new(&["s", "b", "y", "b_tilde", "y_tilde", "kappa"]);
            let mut gamma_tilde = f64::NAN;
            for i in 0..t.len() {
                let r = backlund(&t.params, t.s_grid[i], t.b[i], t.y[i], sign)?;
                gamma_tilde = r.params.gamma;
                table.push(vec![t.s_grid[i].into(), t.b[i].into(), t.y[i].into(), r.b.into(), r.y.into(), r.kappa.into()]);
            }
            let res = backlund_residual_profile(&t, sign, *refine)?.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
            let rt = backlund_round_trip_error(&t, sign)?;
            let mut summary = trajectory_json(&t, traj);
            summary["sign"] = json!(sign);
            summary["gamma_tilde"] = json!(gamma_tilde);
            summary["max_shifted_residual"] = json!(res);
            summary["round_trip_error"] = json!(rt);
            Ok(json_outcome(table, summary, ("max_shifted_residual", res)))
        }
        Command::Monodromy { theta, gamma } => {
            let p = PainleveParams::new(*theta, *gamma)?;
            let md = monodromy_constants(&p)?;
            let cyc = verify_cyclic(&md, &p)?;
            let mut table = Table::new(&["quantity", "re", "im"]);
            let mut row = |name: String, z: C64| table.push(vec![Cell::Text(name), z.re.into(), z.im.into()]);
            row("s0".into(), md.s0);
            for (m, tag) in [(md.e12, "e12"), (md.e0, "e0")] {
                for i in 0..2 {
                    for j in 0..2 {
                        row(format!("{tag}_{}{}", i + 1, j + 1), m.get(i, j));
                    }
                }
            }
            row("c".into(), C64::new(md.c, 0.0));
            Ok(json_outcome(
                table,
                json!({ "params": p, "branch": md.branch, "s0": [md.s0.re, md.s0.im], "c": md.c, "cyclic_residual": cyc }),
                ("cyclic_residual", cyc),
            ))
        }
        Command::SpecfunCheck => specfun_check(),
        Command::Sample { weight, reps, seed } => {
            let ev = evaluator(weight)?;
            let run = sample_dpp(&ev, *seed, *reps)?;
            let mut table = Table::new(&["rep", "index", "x"]);
            for (r, i, x) in run.rows() {
                table.push(vec![Cell::Int(r as u64), Cell::Int(i as u64), x.into()]);
            }
            let ks = ks_arcsine(run.pooled());
            Ok(json_outcome(
                table,
                json!({ "seed": seed, "n": run.n, "reps": run.reps, "alpha": ev.spec.alpha, "beta": ev.spec.beta, "t": ev.spec.t, "ks_arcsine": ks }),
                ("ks_arcsine", ks),
            ))
        }
    }
}

/// Kolmogorov–Smirnov distance of the pooled points to the arcsine law.
fn ks_arcsine(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = 2.0 / PI * ((x + 1.0) / 2.0).sqrt().asin();
            (f - i as f64 / m).abs().max((f - (i + 1) as f64 / m).abs())
        })
        .fold(0.0, f64::max)
}

fn specfun_check() -> Res<Outcome> {
    let mut table = Table::new(&["check", "param", "z", "value", "reference", "err"]);
    let mut worst = 0.0f64;
    let mut push = |check: &str, param: String, z: f64, v: f64, r: f64, rel: bool| {
        let err = if rel { (v - r).abs() / r.abs().max(1e-300) } else { (v - r).abs() };
        worst = worst.max(err);
        table.push(vec![Cell::Text(check.into()), Cell::Text(param), z.into(), v.into(), r.into(), err.into()]);
    };
    for nu in [-0.5, 0.0, 0.3, 1.7] {
        for x in [0.1, 1.0, 5.0, 20.0] {
            let w = bessel_i(nu, x)? * bessel_kp(nu, x)? - bessel_ip(nu, x)? * bessel_k(nu, x)?;
            push("wronskian_ik", format!("nu={nu}"), x, w.re, -1.0 / x, true);
        }
    }
    let series = SpecFunConfig { asymptotic_switch: 1e3, ..Default::default() };
    let asym = SpecFunConfig { asymptotic_switch: 1.0, ..Default::default() };
    for nu in [0.0, 0.3, 1.7] {
        for x in [15.0, 20.0, 25.0] {
            let a = bessel_j_with(&series, nu, C64::new(x, 0.0))?;
            let b = bessel_j_with(&asym, nu, C64::new(x, 0.0))?;
            push("j_series_vs_asymptotic", format!("nu={nu}"), x, a.re, b.re, false);
        }
    }
    for (a, b, c, z) in [(0.5, 0.7, 1.9, 0.3), (-1.2, 0.4, 1.1, -0.8), (1.3, 1.5, 2.8, 0.85), (2.0, 0.25, 0.75, -0.5)] {
        let s = hyp2f1(a, b, c, z)?;
        let e = hyp2f1_euler(a, b, c, C64::new(z, 0.0))?;
        push("hyp2f1_series_vs_euler", format!("a={a},b={b},c={c}"), z, s.re, e.re, true);
    }
    for x in [0.1, 0.3, 0.7, 1.4, 2.6] {
        let v = gamma(x) * gamma(1.0 - x);
        push("gamma_reflection", String::new(), x, v, PI / (PI * x).sin(), true);
    }
    Ok(json_outcome(table, json!({ "checks": 4 }), ("max_err", worst)))
}
