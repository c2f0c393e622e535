use chaos_diagnostics::{
    eigen_blocks, eigen_system, eigenstate_entropy, eth_stats, fit_echo, histogram, ipr, ks_distance, loschmidt_echo, otoc,
    ratio_statistics, saturation_onset, sff, spacing_cdf, unfold_spacings, EnsembleSpec, EthSpec, Observable, RatioLaw,
    Resolution, SffSpec, SpacingKind,
};
use classical_top::{find_fixed_points, iterate, lyapunov_grid, FixedPointConfig, LyapunovConfig, SpherePoint};
use exact_few_qubit::{
    avg_entropy_2q, avg_entropy_3q_special, avg_entropy_4q_special, identity_recurrence_scan, large_system_recurrence_check,
    recurrence_predicate, sample_tuples, validate_exact, KChoice, KValue, SpecialState,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use spin_quantum::{averaged_entropy, build_floquet, coherent_state, entropy_landscape, entropy_series, FloquetOperator, Spin};

use crate::args::{ChoiceArg, Cli, Command, QuantumArgs, ResolutionArg};
use crate::artifact::{Cell, Table, Writer};
use crate::CliError;

type Out = Result<String, CliError>;

fn meta(cli: &Cli, extra: Value) -> Value {
    let mut m = json!({
        "command": cli.command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "parameters": cli.command,
        "seed": Value::Null,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

fn operator(q: &QuantumArgs) -> Result<FloquetOperator, CliError> {
    let spin = Spin::new(q.j)?;
    Ok(build_floquet(&q.top.params(), spin)?)
}

fn finish(cli: &Cli, w: &Writer, summary: String) -> String {
    format!("{}: {summary}; wrote {} files to {}", cli.command.name(), w.written.len(), cli.out.display())
}

fn observable(name: &str) -> Result<Observable, CliError> {
    Observable::parse(name).ok_or_else(|| CliError::Validation(format!("unknown observable '{name}'")))
}

pub fn dispatch(cli: &Cli) -> Out {
    match &cli.command {
        Command::PhasePortrait { top, grid, kicks } => {
            let prm = top.params();
            prm.validate()?;
            let spec = grid.0;
            let orbits = (0..spec.len())
                .into_par_iter()
                .map(|idx| {
                    let (t, p) = spec.cell::<f64>(idx);
                    iterate(&SpherePoint::from_angles(t, p), &prm, *kicks)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut table = Table::new(&["orbit", "n", "theta", "phi"]);
            for (o, orbit) in orbits.iter().enumerate() {
                for (n, pt) in orbit.iter().enumerate() {
                    let (t, p) = pt.to_angles();
                    table.push(vec![o.into(), n.into(), t.into(), p.into()]);
                }
            }
            let mut w = Writer::new(&cli.out)?;
            w.table("phase_portrait", &table, &meta(cli, json!({})))?;
            Ok(finish(cli, &w, format!("{} orbits of {} kicks", orbits.len(), kicks)))
        }
        Command::LleGrid { top, grid, kicks, renorm_interval } => {
            if *renorm_interval == 0 {
                return Err(CliError::Validation("--renorm-interval must be positive".into()));
            }
            let cfg = LyapunovConfig { renorm_interval: *renorm_interval, ..Default::default() };
            let g = lyapunov_grid(&top.params(), grid.0, *kicks, &cfg)?;
            let mut table = Table::new(&["theta", "phi", "value"]);
            for (t, p, v) in g.rows() {
                table.push(vec![t.into(), p.into(), v.into()]);
            }
            let chaotic = g.values.iter().filter(|&&v| v > 0.2).count() as f64 / g.values.len() as f64;
            let mean = g.values.iter().sum::<f64>() / g.values.len() as f64;
            let mut w = Writer::new(&cli.out)?;
            w.table("lle_grid", &table, &meta(cli, json!({"mean": mean, "fraction_above_0_2": chaotic, "config": cfg})))?;
            Ok(finish(cli, &w, format!("mean λ {mean:.4}, {:.1}% of cells above 0.2", 100.0 * chaotic)))
        }
        Command::FixedPoints { top, period } => {
            let s = find_fixed_points(&top.params(), *period, &FixedPointConfig::default())?;
            let mut table =
                Table::new(&["period", "x", "y", "z", "theta", "phi", "residual", "jacobian_trace", "margin", "stable", "verdict"]);
            for r in &s.records {
                let (t, p) = r.point.to_angles();
                table.push(vec![
                    r.period.into(),
                    r.point.x.into(),
                    r.point.y.into(),
                    r.point.z.into(),
                    t.into(),
                    p.into(),
                    r.residual.into(),
                    r.jacobian_trace.into(),
                    r.margin.into(),
                    r.stable.into(),
                    Cell::Text(format!("{:?}", r.verdict).to_lowercase()),
                ]);
            }
            let mut w = Writer::new(&cli.out)?;
            let extra = json!({"seeds": s.seeds, "diverged": s.diverged, "lower_period": s.lower_period});
            w.table("fixed_points", &table, &meta(cli, extra))?;
            let stable = s.records.iter().filter(|r| r.stable).count();
            Ok(finish(cli, &w, format!("{} period-{period} points, {stable} stable", s.records.len())))
        }
        Command::EntropyLandscape { q, grid, kicks } => {
            if *kicks == 0 {
                return Err(CliError::Validation("--kicks must be positive".into()));
            }
            let u = operator(q)?;
            let g = entropy_landscape(&u, grid.0, *kicks)?;
            let mut table = Table::new(&["theta", "phi", "value"]);
            for (t, p, v) in g.rows() {
                table.push(vec![t.into(), p.into(), v.into()]);
            }
            let mut w = Writer::new(&cli.out)?;
            w.table("entropy_landscape", &table, &meta(cli, json!({"quantity": "time-averaged linear entropy, n = 1..kicks"})))?;
            let (lo, hi) = g.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            Ok(finish(cli, &w, format!("{} cells, range [{lo:.4}, {hi:.4}]", g.values.len())))
        }
        Command::EntropyAvg { q, theta, phi, kicks } => {
            let u = operator(q)?;
            let psi = coherent_state(theta.value, phi.value, u.spin)?;
            let series = entropy_series(&u, &psi, *kicks)?;
            let avg = averaged_entropy(&u, theta.value, phi.value, *kicks)?;
            let closed = closed_form_average(q, theta.value, phi.value);
            let mut w = Writer::new(&cli.out)?;
            let times: Vec<usize> = (0..series.len()).collect();
            let extra = json!({"average": avg, "closed_form": closed});
            w.table("entropy_series", &Table::curve(&times, &series), &meta(cli, extra))?;
            let cf = closed.map(|c| format!(", closed form {c:.6}")).unwrap_or_default();
            Ok(finish(cli, &w, format!("average {:.6} over {kicks} kicks{cf}", avg.value)))
        }
        Command::Spacing { q, window, bins, s_max } => {
            if *bins == 0 || !(*s_max > 0.0) {
                return Err(CliError::Validation("need --bins > 0 and --s-max > 0".into()));
            }
            let blocks = eigen_blocks(&operator(q)?)?;
            let mut w = Writer::new(&cli.out)?;
            let mut parts = Vec::new();
            for b in blocks.iter().filter(|b| b.len() >= chaos_diagnostics::MIN_LEVELS) {
                let s = unfold_spacings(b, *window)?;
                let ks_p = ks_distance(&s.unfolded, |x| spacing_cdf(SpacingKind::Poisson, x));
                let ks_g = ks_distance(&s.unfolded, |x| spacing_cdf(SpacingKind::Goe, x));
                let h = histogram(&s.unfolded, *bins, 0.0, *s_max);
                let extra = json!({
                    "block": b.label.as_str(), "levels": b.len(), "unfolding": "circular local mean",
                    "ks_poisson": ks_p, "ks_goe": ks_g,
                });
                w.table(&format!("spacing_{}", b.label.as_str()), &Table::histogram(&h), &meta(cli, extra))?;
                parts.push(format!("{} KS poisson {ks_p:.4} goe {ks_g:.4}", b.label.as_str()));
            }
            if parts.is_empty() {
                return Err(CliError::Validation(format!("no block with {} levels", chaos_diagnostics::MIN_LEVELS)));
            }
            Ok(finish(cli, &w, parts.join(", ")))
        }
        Command::Ratios { q, beta } => {
            let law = RatioLaw::surmise(*beta)?;
            let blocks = eigen_blocks(&operator(q)?)?;
            let mut w = Writer::new(&cli.out)?;
            let mut parts = Vec::new();
            for b in blocks.iter().filter(|b| b.len() >= chaos_diagnostics::MIN_LEVELS) {
                let r = ratio_statistics(b)?;
                let ks = ks_distance(&r.ratios, |x| law.cdf(x));
                let ks_p = ks_distance(&r.ratios, |x| RatioLaw::Poisson.cdf(x));
                let extra = json!({
                    "block": b.label.as_str(), "levels": b.len(), "merged_levels": r.merged,
                    "mean_r_tilde": r.mean_tilde, "reference_mean_r_tilde": law.mean_tilde(),
                    "poisson_mean_r_tilde": RatioLaw::Poisson.mean_tilde(),
                    "ks_surmise": ks, "ks_poisson": ks_p,
                    "reference": "(r + r^2)^beta / (1 + r + r^2)^(1 + 3 beta / 2), renormalised by quadrature",
                    "printed_constant_integral": RatioLaw::printed_integral(*beta),
                });
                w.table(&format!("ratios_{}", b.label.as_str()), &Table::histogram(&r.histogram), &meta(cli, extra))?;
                parts.push(format!("{} <r~> {:.4} KS {ks:.4}", b.label.as_str(), r.mean_tilde));
            }
            if parts.is_empty() {
                return Err(CliError::Validation(format!("no block with {} levels", chaos_diagnostics::MIN_LEVELS)));
            }
            Ok(finish(cli, &w, parts.join(", ")))
        }
        Command::Sff { q, t_max, members, width, smooth, connected, resolution } => {
            let u = operator(q)?;
            let resolution = match resolution {
                ResolutionArg::Full => Resolution::Full,
                ResolutionArg::Plus => Resolution::Block(chaos_diagnostics::BlockLabel::Plus),
                ResolutionArg::Minus => Resolution::Block(chaos_diagnostics::BlockLabel::Minus),
            };
            let spec = SffSpec {
                t_max: *t_max,
                ensemble: (*members > 1).then_some(EnsembleSpec { members: *members, relative_width: *width }),
                smoothing: *smooth,
                connected: *connected,
                resolution,
            };
            let c = sff(&u, &spec)?;
            let mut w = Writer::new(&cli.out)?;
            w.table("sff", &Table::curve(&c.times, &c.values), &meta(cli, json!({"averaging": c.descriptor})))?;
            let tail = &c.values[c.values.len() / 2..];
            let late = tail.iter().sum::<f64>() / tail.len() as f64;
            Ok(finish(cli, &w, format!("K(0)/N {:.6}, late-time mean K/N {late:.4}", c.values[0])))
        }
        Command::Ipr { q } => {
            let u = operator(q)?;
            let sys = eigen_system(&u)?;
            let mut table = Table::new(&["block", "index", "phase", "ipr", "pr", "entropy"]);
            let mut all_pr = Vec::new();
            for b in &sys {
                let p = ipr(&b.vectors, None)?;
                let s = eigenstate_entropy(&b.vectors, u.spin)?;
                for i in 0..b.spectrum.len() {
                    table.push(vec![
                        b.spectrum.label.as_str().into(),
                        i.into(),
                        b.spectrum.eigenphases[i].into(),
                        p.ipr[i].into(),
                        p.pr[i].into(),
                        s[i].into(),
                    ]);
                }
                all_pr.extend(p.pr);
            }
            all_pr.sort_by(f64::total_cmp);
            let median = all_pr[all_pr.len() / 2];
            let n = u.dim() as f64;
            let mut w = Writer::new(&cli.out)?;
            let extra = json!({"basis": "jm", "entropy": "single-qubit von Neumann, nats", "median_pr_over_n": median / n});
            w.table("ipr", &table, &meta(cli, extra))?;
            Ok(finish(cli, &w, format!("median PR/N {:.4}", median / n)))
        }
        Command::Eth { q, observable: name, window, offdiag, bins } => {
            let u = operator(q)?;
            let spec = EthSpec { observable: observable(name)?, window: *window, offdiag_states: *offdiag, omega_bins: *bins, ..Default::default() };
            let sys = eigen_system(&u)?;
            let mut diag = Table::new(&["block", "index", "phase", "diagonal", "window_mean"]);
            let mut off = Table::new(&["block", "bin_left", "bin_right", "count", "variance"]);
            let mut summary = Vec::new();
            let mut stats_meta = Vec::new();
            for b in sys.iter().filter(|b| b.spectrum.len() >= *window && b.spectrum.len() >= *offdiag) {
                let st = eth_stats(b, u.spin, &spec)?;
                let label = b.spectrum.label.as_str();
                for i in 0..st.diagonal.len() {
                    diag.push(vec![label.into(), i.into(), st.phases[i].into(), st.diagonal[i].into(), st.window_mean[i].into()]);
                }
                for i in 0..st.bin_counts.len() {
                    off.push(vec![
                        label.into(),
                        st.bin_edges[i].into(),
                        st.bin_edges[i + 1].into(),
                        st.bin_counts[i].into(),
                        st.bin_variance[i].into(),
                    ]);
                }
                stats_meta.push(json!({"block": label, "fluctuation": st.fluctuation, "excess_kurtosis": st.excess_kurtosis}));
                summary.push(format!("{label} fluctuation {:.4} kurtosis {:.3}", st.fluctuation, st.excess_kurtosis));
            }
            if summary.is_empty() {
                return Err(CliError::Validation("no block is larger than the ETH windows".into()));
            }
            let mut w = Writer::new(&cli.out)?;
            let extra = json!({"observable": spec.observable.name(), "eth": spec, "blocks": stats_meta});
            w.table("eth_diagonal", &diag, &meta(cli, extra.clone()))?;
            w.table("eth_offdiagonal", &off, &meta(cli, extra))?;
            Ok(finish(cli, &w, summary.join(", ")))
        }
        Command::Otoc { q, t_max, observable: name } => {
            let u = operator(q)?;
            let c = otoc(&u, observable(name)?, *t_max)?;
            let onset = saturation_onset(&c.values, 0.5);
            let mut w = Writer::new(&cli.out)?;
            let extra = json!({
                "observable": c.observable, "convention": c.convention, "density_matrix": "I/(2j+1)",
                "onset_half_saturation": onset,
            });
            w.table("otoc", &Table::curve(&c.times, &c.values), &meta(cli, extra))?;
            let o = onset.map_or("none".to_string(), |t| t.to_string());
            Ok(finish(cli, &w, format!("C({t_max}) {:.5}, onset at t = {o}", c.values[*t_max])))
        }
        Command::Echo { q, delta_k, theta, phi, t_max } => {
            let spin = Spin::new(q.j)?;
            let psi = coherent_state(theta.value, phi.value, spin)?;
            let e = loschmidt_echo(&q.top.params(), *delta_k, &psi, *t_max)?;
            let fit = fit_echo(&e, spin.dim(), 5.0).ok();
            let mut w = Writer::new(&cli.out)?;
            w.table("echo", &Table::curve(&e.times, &e.values), &meta(cli, json!({"fit": fit, "floor_factor": 5.0})))?;
            let f = fit.map_or(String::new(), |f| format!(", R² exp {:.3} vs t² {:.3}", f.exp_r2, f.gauss_r2));
            Ok(finish(cli, &w, format!("M({t_max}) {:.5}{f}", e.values[*t_max])))
        }
        Command::Recurrence { qubits, k, choice, cutoff } => {
            let spin = Spin::from_qubits(*qubits)?;
            let (scan, predicate) = match (k, choice) {
                (_, Some(c)) => {
                    let c = match c {
                        ChoiceArg::TwoPiJ => KChoice::TwoPiJ,
                        ChoiceArg::PiJ => KChoice::PiJ,
                        ChoiceArg::HalfPiJ => KChoice::HalfPiJ,
                    };
                    (large_system_recurrence_check(spin, c, *cutoff)?, None)
                }
                (Some(k), None) => {
                    let pred = if (2..=4).contains(qubits) {
                        let kv = k.pi_multiple.map_or(KValue::Numeric(k.value), KValue::PiMultiple);
                        Some(recurrence_predicate(*qubits, kv)?)
                    } else {
                        None
                    };
                    (identity_recurrence_scan(spin, k.value, *cutoff)?, pred)
                }
                (None, None) => return Err(CliError::Validation("give --k or --choice".into())),
            };
            let mut table = Table::new(&["qubits", "j", "k", "cutoff", "period", "phase", "deviation"]);
            let opt = |x: Option<f64>| x.map_or(Cell::Text(String::new()), Cell::Float);
            table.push(vec![
                (*qubits as usize).into(),
                scan.j.into(),
                scan.k.into(),
                (scan.cutoff as usize).into(),
                scan.period.map_or(Cell::Text(String::new()), |p| Cell::Int(p as i64)),
                opt(scan.phase),
                opt(scan.deviation),
            ]);
            let mut w = Writer::new(&cli.out)?;
            w.table("recurrence", &table, &meta(cli, json!({"scan": scan, "predicate": predicate})))?;
            let found = scan.period.map_or(format!("no recurrence up to {cutoff}"), |p| format!("U^{p} ∝ I"));
            let pred = predicate.map(|p| format!(", predicate {p:?}")).unwrap_or_default();
            Ok(finish(cli, &w, format!("{found}{pred}")))
        }
        Command::ValidateExact { qubits, trials, n_max, seed } => {
            if let Some(q) = qubits {
                if !(2..=4).contains(q) {
                    return Err(CliError::Validation(format!("--qubits must be 2, 3 or 4, got {q}")));
                }
            }
            if *trials == 0 {
                return Err(CliError::Validation("--trials must be positive".into()));
            }
            let mut report = validate_exact(&sample_tuples(*trials, *n_max, *seed))?;
            if let Some(q) = qubits {
                report.checks.retain(|c| c.qubits == *q);
            }
            // Checks of the expressions as printed are reported but never gate.
            report.passed = report.checks.iter().filter(|c| !c.formula.ends_with("_verbatim")).all(|c| c.passed);
            let mut table = Table::new(&["formula", "qubits", "max_deviation", "tolerance", "passed", "gating"]);
            for c in &report.checks {
                table.push(vec![
                    c.formula.as_str().into(),
                    (c.qubits as usize).into(),
                    c.max_deviation.into(),
                    c.tolerance.into(),
                    c.passed.into(),
                    (!c.formula.ends_with("_verbatim")).into(),
                ]);
            }
            let mut w = Writer::new(&cli.out)?;
            let mut m = meta(cli, json!({"passed": report.passed}));
            m["seed"] = json!(seed);
            w.table("validate_exact", &table, &m)?;
            w.json("validation_report", &report)?;
            let worst = report
                .checks
                .iter()
                .filter(|c| !c.formula.ends_with("_verbatim"))
                .map(|c| c.max_deviation)
                .fold(0.0, f64::max);
            let line = finish(cli, &w, format!("{} checks, worst gating deviation {worst:.2e}", report.checks.len()));
            if report.passed {
                Ok(line)
            } else {
                Err(CliError::GateFailed(line))
            }
        }
    }
}

/// Infinite-time average from the closed forms, where one exists.
fn closed_form_average(q: &QuantumArgs, theta: f64, phi: f64) -> Option<f64> {
    let prm = q.top.params();
    let canonical = (prm.p - std::f64::consts::FRAC_PI_2).abs() < 1e-15 && prm.k_prime == 0.0 && prm.m_order == 2;
    if !canonical {
        return None;
    }
    let k = prm.k;
    match (2.0 * q.j).round() as u32 {
        2 => Some(avg_entropy_2q(theta, phi, k)),
        3 => SpecialState::from_angles(theta, phi).ok().and_then(|s| avg_entropy_3q_special(s, k).ok()),
        4 => SpecialState::from_angles(theta, phi).ok().and_then(|s| avg_entropy_4q_special(s, k).ok()),
        _ => None,
    }
}
