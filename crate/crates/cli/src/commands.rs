//! Pipeline implementations behind the subcommands.

use crate::manifest::Manifest;
use nlheat::asym::{self, AsymptoticQuery, Regime};
use nlheat::config::Config;
use nlheat::error::{Error, Result};
use nlheat::initial::{init_state, InitialDataSpec};
use nlheat::io;
use nlheat::ode::{
    integrate_path, locate_singularity, series_ic_exponential, series_ic_logarithmic,
    PoleFieldOptions, SeriesIC,
};
use nlheat::pade::{evaluate_field, pade, quadratic_pade, split_series, Approximant, StripGrid};
use nlheat::solver::{advance, ConvolutionMode, SolveOptions, Termination};
use nlheat::tracker::{self, WindowPolicy};
use nlheat::{C64, FourierState};
use std::path::{Path, PathBuf};

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn initial_data(cfg: &Config) -> Result<InitialDataSpec> {
    Ok(match cfg.get("ic.variant") {
        "cosine" => InitialDataSpec::Cosine { alpha: cfg.f64("ic.alpha")?, beta: cfg.f64("ic.beta")? },
        "flat" => InitialDataSpec::Flat { alpha: cfg.f64("ic.alpha")?, eps: cfg.f64("ic.eps")? },
        "two_peak" => InitialDataSpec::TwoPeak {
            alpha: cfg.f64("ic.alpha")?,
            mu: cfg.f64("ic.mu")?,
            delta: cfg.f64("ic.delta")?,
        },
        other => return Err(Error::Config(format!("unknown ic.variant `{other}`"))),
    })
}

pub fn solve_options(cfg: &Config) -> Result<SolveOptions> {
    Ok(SolveOptions {
        rtol: cfg.f64("solver.rtol")?,
        atol: cfg.f64("solver.atol")?,
        switch_threshold: cfg.f64("solver.switch_threshold")?,
        blowup_threshold: cfg.f64("solver.blowup_threshold")?,
        heat_death_floor: cfg.f64("solver.heat_death_floor")?,
        tail_flag_ratio: cfg.f64("solver.tail_flag_ratio")?,
        tail_stop_ratio: cfg.f64("solver.tail_stop_ratio")?,
        max_refine_n: cfg.usize("solver.max_refine_n")?,
        snapshot_dt: cfg.f64("solver.snapshot_dt")?,
        keep_last: 32,
        max_steps: 4_000_000,
        convolution: match cfg.get("solver.convolution") {
            "auto" => ConvolutionMode::Auto,
            "fft" => ConvolutionMode::Fft,
            "direct" => ConvolutionMode::Direct,
            other => return Err(Error::Config(format!("unknown solver.convolution `{other}`"))),
        },
        linear_only: cfg.bool("solver.linear_only")?,
    })
}

pub fn window_policy(cfg: &Config) -> Result<WindowPolicy> {
    Ok(WindowPolicy {
        k_min_floor: cfg.usize("tracker.k_min_floor")?,
        k_min_frac: cfg.f64("tracker.k_min_frac")?,
        floor_rel: cfg.f64("tracker.floor_rel")?,
        floor_abs: cfg.f64("tracker.floor_abs")?,
        min_points: cfg.usize("tracker.min_points")?,
        fallback_mu: cfg.f64("tracker.fallback_mu")?,
        curvature_correction: cfg.bool("tracker.curvature")?,
    })
}

fn termination_exit(term: &Termination) -> u8 {
    match term {
        Termination::UnderResolved { .. } => 3,
        _ => 0,
    }
}

pub fn solve(cfg: &Config, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("solve");
    let spec = initial_data(cfg)?;
    let n = cfg.usize("solver.N")?;
    let state = init_state(&spec, n)?;
    let opts = solve_options(cfg)?;
    let traj = advance(&state, cfg.f64("solver.t_end")?, &opts)?;

    let ckpt_dir = out.join("checkpoints");
    ensure_dir(&ckpt_dir)?;
    for (i, snap) in traj.snapshots.iter().enumerate() {
        io::write_checkpoint(&ckpt_dir.join(format!("ckpt_{i:05}.bin")), snap)?;
    }
    man.output("checkpoints/");
    io::write_coeffs_csv(&out.join("coeffs.csv"), &traj.snapshots.iter().collect::<Vec<_>>())?;
    man.output("coeffs.csv");
    io::write_monitor_csv(&out.join("monitor.csv"), &traj)?;
    man.output("monitor.csv");

    man.note("snapshots", traj.snapshots.len());
    man.note("steps_accepted", traj.stats.accepted);
    man.note("steps_rejected", traj.stats.rejected);
    man.note("representation_switches", traj.stats.switches);
    man.note("refinements", traj.stats.refinements);
    match &traj.termination {
        Termination::ReachedTEnd => man.note("termination", "reached_t_end"),
        Termination::Blowup(b) => {
            man.note("termination", "blowup");
            man.note("t_c", io::fmt_f64(b.t_c));
            man.note("t_c_bracket_lo", io::fmt_f64(b.bracket.0));
            man.note("t_c_bracket_hi", io::fmt_f64(b.bracket.1));
        }
        Termination::HeatDeath { t } => {
            man.note("termination", "heat_death");
            man.note("t_heat_death", io::fmt_f64(*t));
        }
        Termination::UnderResolved { t, reason } => {
            man.note("termination", "under_resolved");
            man.note("t_stop", io::fmt_f64(*t));
            man.warn(format!("under-resolved at t = {t}: {reason}"));
        }
    }
    let exit = termination_exit(&traj.termination);
    man.write(out, cfg)?;
    Ok(exit)
}

fn load_run(run: &Path) -> Result<Vec<FourierState>> {
    let ckpt_dir = run.join("checkpoints");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&ckpt_dir)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", ckpt_dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|x| x == "bin").unwrap_or(false))
        .collect();
    paths.sort();
    let mut states = Vec::with_capacity(paths.len());
    for p in paths {
        states.push(io::read_checkpoint(&p)?);
    }
    if states.is_empty() {
        return Err(Error::Config(format!("no checkpoints under {}", ckpt_dir.display())));
    }
    Ok(states)
}

pub fn track(cfg: &Config, run: &Path, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("track");
    let states = load_run(run)?;
    let policy = window_policy(cfg)?;
    let estimates: Vec<_> = states
        .iter()
        .filter(|s| s.repr == nlheat::Representation::U)
        .filter_map(|s| {
            let w = policy.select(s)?;
            tracker::fit_decay_with(s, w, &policy).ok()
        })
        .collect();
    if estimates.is_empty() {
        return Err(Error::FitFailed("no snapshot produced a usable decay fit".into()));
    }
    io::write_track_csv(&out.join("track.csv"), &estimates)?;
    man.output("track.csv");
    man.note("snapshots_tracked", estimates.len());
    let reversals = tracker::reversal_times(
        &estimates,
        cfg.f64("tracker.reversal_tol")?,
        cfg.usize("tracker.reversal_persist")?,
    );
    man.note("reversals", reversals.len());
    for (i, t) in reversals.iter().enumerate() {
        man.note(&format!("reversal_{i}"), io::fmt_f64(*t));
    }
    let flagged = estimates.iter().filter(|e| e.flagged).count();
    if flagged > 0 {
        man.warn(format!("{flagged} estimates carry the under-resolved flag"));
    }
    man.write(out, cfg)?;
    Ok(0)
}

pub fn continuation(cfg: &Config, run: &Path, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("continue");
    let states = load_run(run)?;
    let want_t = cfg.f64("pade.time")?;
    let state = if want_t < 0.0 {
        states.iter().filter(|s| s.repr == nlheat::Representation::U).next_back()
    } else {
        states
            .iter()
            .filter(|s| s.repr == nlheat::Representation::U)
            .min_by(|a, b| {
                (a.t - want_t).abs().partial_cmp(&(b.t - want_t).abs()).unwrap()
            })
    }
    .ok_or_else(|| Error::Config("run holds no U-representation snapshot".into()))?;
    man.note("snapshot_t", io::fmt_f64(state.t));
    if state.is_under_resolved(cfg.f64("solver.tail_flag_ratio")?) {
        man.warn("snapshot is under-resolved; continuation accuracy is limited");
    }

    let series = split_series(state)?;
    let n = state.n;
    // default degrees: diagonal-ish, capped by the modes actually resolved
    // above the rounding floor (orders beyond carry no information)
    let max_c = nlheat::fourier::max_abs(&state.coeffs);
    let mut k_resolved = 1usize;
    for k in 1..=n {
        if state.coeff(k as isize).norm() > 1e3 * f64::EPSILON * max_c {
            k_resolved = k;
        }
    }
    let cap = k_resolved.max(4);
    let m_deg = match cfg.usize("pade.m")? {
        0 => (n / 2 - 1).min(cap / 2),
        v => v,
    };
    let n_deg = match cfg.usize("pade.n")? {
        0 => (n / 2).min(cap.div_ceil(2)),
        v => v,
    };
    let rat = pade(&series, m_deg, n_deg)?;
    man.note("pade_degrees", format!("({}, {})", rat.degrees.0, rat.degrees.1));
    man.note("poles_kept", rat.poles.len());
    man.note("poles_filtered", rat.filtered.len());
    if let Some(h) = rat.nearest_pole_height() {
        man.note("nearest_pole_height", io::fmt_f64(h));
    }

    let mut branch_points = Vec::new();
    if cfg.bool("pade.quadratic")? {
        let l = match cfg.usize("pade.l")? {
            0 => (n - 2) / 3,
            v => v,
        };
        let quad = quadratic_pade(&series, (l, l, l))?;
        if quad.degenerate_linear {
            man.warn("quadratic approximant degenerated to linear (r ~ 0)");
        }
        if let Some(h) = quad.nearest_branch_height() {
            man.note("nearest_branch_height", io::fmt_f64(h));
        }
        branch_points = quad.branch_points.iter().map(|b| b.z).collect();
        let grid = strip_grid(cfg)?;
        let field = evaluate_field(&Approximant::Quadratic(&quad, &series), &grid)?;
        io::write_field_csv(&out.join("field_quadratic.csv"), &field)?;
        man.output("field_quadratic.csv");
    }
    io::write_poles_csv(&out.join("poles.csv"), &rat.poles, &branch_points)?;
    man.output("poles.csv");

    let grid = strip_grid(cfg)?;
    let field = evaluate_field(&Approximant::Rational(&rat), &grid)?;
    io::write_field_csv(&out.join("field.csv"), &field)?;
    man.output("field.csv");
    io::write_field_bin(&out.join("field.bin"), &field)?;
    man.output("field.bin");
    if !field.flagged.is_empty() {
        man.warn(format!("{} grid points flagged at poles", field.flagged.len()));
    }
    man.write(out, cfg)?;
    Ok(0)
}

fn strip_grid(cfg: &Config) -> Result<StripGrid> {
    Ok(StripGrid {
        x0: cfg.f64("pade.x0")?,
        x1: cfg.f64("pade.x1")?,
        y0: 0.0,
        y1: cfg.f64("pade.y_max")?,
        nx: cfg.usize("pade.nx")?,
        ny: cfg.usize("pade.ny")?,
    })
}

fn series_ic(cfg: &Config) -> Result<SeriesIC> {
    match cfg.get("ode.variant") {
        "logarithmic" => series_ic_logarithmic(cfg.f64("ode.anchor")?),
        "exponential" => series_ic_exponential(cfg.f64("ode.a")?, cfg.f64("ode.anchor")?),
        other => Err(Error::Config(format!("unknown ode.variant `{other}`"))),
    }
}

pub fn ode(cfg: &Config, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("ode");
    let ic = series_ic(cfg)?;
    man.note("anchor_phi", io::fmt_f64(ic.phi.re));
    man.note("anchor_dphi", io::fmt_f64(ic.dphi.re));
    man.note("series_terms", ic.terms_used);
    man.note("series_first_omitted", format!("{:.3e}", ic.first_omitted));

    let opts = PoleFieldOptions {
        taylor_order: cfg.usize("ode.order")?,
        safety: cfg.f64("ode.safety")?,
        ..Default::default()
    };
    let x_end = cfg.f64("ode.x_end")?;
    let waypoints: Vec<C64> = match cfg.get("ode.path_file") {
        "" => {
            let target = match cfg.get("ode.direction") {
                "left" => C64::new(x_end.min(ic.anchor.re - 1e-6), 0.0),
                "right" => C64::new(x_end.max(ic.anchor.re + 1e-6), 0.0),
                other => return Err(Error::Config(format!("unknown ode.direction `{other}`"))),
            };
            vec![ic.anchor, target]
        }
        path_file => read_waypoints(Path::new(path_file), ic.anchor)?,
    };

    let sol = integrate_path(&ic, &waypoints, &opts)?;
    let mut csv = String::from("re_x,im_x,re_phi,im_phi,sheet\n");
    for s in &sol.steps {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            io::fmt_f64(s.x.re),
            io::fmt_f64(s.x.im),
            io::fmt_f64(s.phi.re),
            io::fmt_f64(s.phi.im),
            s.sheet
        ));
    }
    std::fs::write(out.join("ode_path.csv"), csv)?;
    man.output("ode_path.csv");

    let mut sing_csv = String::from("re_x,im_x,sheet,anchor_dist,hits\n");
    for c in &sol.singularities {
        sing_csv.push_str(&format!(
            "{},{},{},{},{}\n",
            io::fmt_f64(c.position.re),
            io::fmt_f64(c.position.im),
            c.sheet,
            io::fmt_f64(c.anchor_dist),
            c.hits
        ));
    }
    if let Some(x) = sol.terminated_at {
        sing_csv.push_str(&format!("{},{},0,0,0\n", io::fmt_f64(x.re), io::fmt_f64(x.im)));
        man.note("first_singularity", format!("{} + {}i", io::fmt_f64(x.re), io::fmt_f64(x.im)));
        let incoming = x - waypoints[waypoints.len() - 2];
        if let Ok(refined) = locate_singularity(&ic, x, incoming, &opts) {
            man.note("refined_position", io::fmt_f64(refined.position.re));
            man.note("local_c2", io::fmt_f64(refined.c2.re));
            man.note("local_c1", io::fmt_f64(refined.c1.re));
            man.note("local_c0", io::fmt_f64(refined.c0.re));
            man.note("local_fit_residual", format!("{:.3e}", refined.fit_residual));
        }
    }
    std::fs::write(out.join("singularities.csv"), sing_csv)?;
    man.output("singularities.csv");
    man.note("steps", sol.steps.len());
    man.note("detours", sol.detours.len());
    man.write(out, cfg)?;
    Ok(0)
}

fn read_waypoints(path: &Path, anchor: C64) -> Result<Vec<C64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut wps = vec![anchor];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.contains("re")) {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 2 {
            return Err(Error::Config(format!("waypoint row {} needs re,im", i + 1)));
        }
        let re: f64 = cols[0]
            .trim()
            .parse()
            .map_err(|e| Error::Config(format!("waypoint row {}: {e}", i + 1)))?;
        let im: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|e| Error::Config(format!("waypoint row {}: {e}", i + 1)))?;
        wps.push(C64::new(re, im));
    }
    Ok(wps)
}

fn query_from(cfg: &Config, regime: Regime) -> Result<AsymptoticQuery> {
    let mut q = AsymptoticQuery::new(regime);
    q.alpha = cfg.f64("ic.alpha")?;
    q.beta = cfg.f64("ic.beta")?;
    q.eps = cfg.f64("ic.eps")?;
    q.t_c = cfg.f64("asym.t_c")?;
    let zs = cfg.f64("asym.zeta_star")?;
    if zs.is_finite() {
        q.zeta_star = Some(zs);
    }
    q.zeta_star_t = cfg.f64("asym.zeta_star_t")?;
    q.profile_c = cfg.f64("asym.C")?;
    q.beta1 = cfg.f64("asym.beta1")?;
    if cfg.get("preset") == "fig-blowup-profile" {
        let (c, b1) = asym::Presets::blowup_profile_fit();
        q.profile_c = c;
        q.beta1 = b1;
        if !q.t_c.is_finite() {
            q.t_c = asym::Presets::t_c_alpha_half();
        }
    }
    Ok(q)
}

pub fn asym(cfg: &Config, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("asym");
    let regime = Regime::parse(cfg.get("asym.regime"))
        .ok_or_else(|| Error::Config(format!("unknown regime `{}`", cfg.get("asym.regime"))))?;
    let mut q = query_from(cfg, regime)?;
    let t0 = cfg.f64("asym.t0")?;
    let t1 = cfg.f64("asym.t1")?;
    let steps = cfg.usize("asym.steps")?.max(1);
    let channel = cfg.get("asym.channel").to_string();
    let x = cfg.f64("asym.x")?;

    if channel == "two_mode" {
        let flow = asym::two_mode_flow(cfg.f64("ic.alpha")?, cfg.f64("ic.beta")?, t1.max(1e4))?;
        let mut csv = String::from("# estimate = two-mode-flow\n");
        csv.push_str(&format!("# alpha0 = {}, beta0 = {}\n", cfg.get("ic.alpha"), cfg.get("ic.beta")));
        csv.push_str("t,beta,alpha\n");
        for (t, b, a) in &flow.path {
            csv.push_str(&format!("{},{},{}\n", io::fmt_f64(*t), io::fmt_f64(*b), io::fmt_f64(*a)));
        }
        std::fs::write(out.join("asym.csv"), csv)?;
        man.output("asym.csv");
        match flow.outcome {
            asym::TwoModeOutcome::Blowup { t_c } => {
                man.note("outcome", "blowup");
                man.note("t_c", io::fmt_f64(t_c));
            }
            asym::TwoModeOutcome::Decay => man.note("outcome", "decay"),
            asym::TwoModeOutcome::Undecided => man.note("outcome", "undecided"),
        }
        man.write(out, cfg)?;
        return Ok(0);
    }

    let mut csv = format!("# estimate = {}\n", regime.tag());
    csv.push_str(&format!(
        "# constants: alpha = {}, beta = {}, eps = {}, t_c = {}, zeta_star = {}, C = {}, beta1 = {}\n",
        cfg.get("ic.alpha"),
        cfg.get("ic.beta"),
        cfg.get("ic.eps"),
        io::fmt_f64(q.t_c),
        io::fmt_f64(q.zeta_star()),
        io::fmt_f64(q.profile_c),
        io::fmt_f64(q.beta1),
    ));
    csv.push_str("t,value\n");
    let mut failures = 0usize;
    for i in 0..steps {
        let t = if steps == 1 { t0 } else { t0 + (t1 - t0) * i as f64 / (steps - 1) as f64 };
        q.t = t;
        let value = match channel.as_str() {
            "sigma" => asym::sigma_estimate(&q),
            "profile" => asym::profile_estimate(&q, x),
            other => return Err(Error::Config(format!("unknown asym.channel `{other}`"))),
        };
        match value {
            Ok(v) => csv.push_str(&format!("{},{}\n", io::fmt_f64(t), io::fmt_f64(v))),
            Err(e) => {
                failures += 1;
                man.warn(format!("t = {t}: {e}"));
                csv.push_str(&format!("{},nan\n", io::fmt_f64(t)));
            }
        }
    }
    std::fs::write(out.join("asym.csv"), csv)?;
    man.output("asym.csv");
    man.note("rows", steps);
    man.note("failures", failures);
    man.write(out, cfg)?;
    Ok(0)
}

pub fn compare(cfg: &Config, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("compare");
    let track_path = cfg.get("compare.track_csv").to_string();
    if track_path.is_empty() {
        return Err(Error::Config("compare.track_csv is required".into()));
    }
    let rows = io::read_track_csv(Path::new(&track_path))?;
    if rows.is_empty() {
        return Err(Error::Config("tracker csv is empty".into()));
    }
    let regimes: Vec<Regime> = cfg
        .get("compare.regimes")
        .split(',')
        .map(|s| {
            Regime::parse(s.trim())
                .ok_or_else(|| Error::Config(format!("unknown regime `{s}`")))
        })
        .collect::<Result<_>>()?;

    let mut header = String::from("t,y_star_numeric");
    for r in &regimes {
        header.push_str(&format!(",{}", r.tag()));
        header.push_str(&format!(",diff_{}", r.tag()));
    }
    header.push('\n');
    let mut csv = header;
    let mut max_gap = vec![0.0f64; regimes.len()];
    let mut sum_gap = vec![0.0f64; regimes.len()];
    let mut count = vec![0usize; regimes.len()];
    for (t, y_num, _mu) in &rows {
        csv.push_str(&format!("{},{}", io::fmt_f64(*t), io::fmt_f64(*y_num)));
        for (i, r) in regimes.iter().enumerate() {
            let mut q = query_from(cfg, *r)?;
            q.t = *t;
            match asym::sigma_estimate(&q) {
                Ok(v) => {
                    // gap summaries are confined to the regime's validity window
                    let (w0, w1) = asym::validity_window(&q);
                    if *t >= w0 && *t <= w1 {
                        let gap = (v - y_num).abs();
                        max_gap[i] = max_gap[i].max(gap);
                        sum_gap[i] += gap;
                        count[i] += 1;
                    }
                    csv.push_str(&format!(",{},{}", io::fmt_f64(v), io::fmt_f64(v - y_num)));
                }
                Err(_) => csv.push_str(",nan,nan"),
            }
        }
        csv.push('\n');
    }
    std::fs::write(out.join("compare.csv"), csv)?;
    man.output("compare.csv");
    for (i, r) in regimes.iter().enumerate() {
        let mut q = query_from(cfg, *r)?;
        q.t = 0.0;
        let (w0, w1) = asym::validity_window(&q);
        man.note(&format!("window_{}", r.tag()), format!("[{w0:.4}, {w1:.4}]"));
        if count[i] > 0 {
            man.note(&format!("max_gap_{}", r.tag()), io::fmt_f64(max_gap[i]));
            man.note(
                &format!("mean_gap_{}", r.tag()),
                io::fmt_f64(sum_gap[i] / count[i] as f64),
            );
        } else {
            man.warn(format!("regime {} produced no values inside its window", r.tag()));
        }
    }
    if count.iter().all(|c| *c == 0) {
        return Err(Error::Config("empty overlap between tracker data and regimes".into()));
    }
    man.write(out, cfg)?;
    Ok(0)
}

pub fn sweep(cfg: &Config, key: &str, values: &str, jobs: Option<usize>, out: &Path) -> Result<u8> {
    ensure_dir(out)?;
    let mut man = Manifest::new("sweep");
    let values: Vec<&str> = values.split(',').map(|s| s.trim()).collect();
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    // validate the key up front
    let mut probe = cfg.clone();
    probe.set(key, values[0])?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<(String, Result<u8>)> = pool.install(|| {
        use rayon::prelude::*;
        values
            .par_iter()
            .map(|v| {
                let mut c = cfg.clone();
                let r = c
                    .set(key, v)
                    .and_then(|_| solve(&c, &out.join(format!("{}={}", key.replace('.', "_"), v))));
                (v.to_string(), r)
            })
            .collect()
    });
    let mut worst = 0u8;
    for (v, r) in &results {
        match r {
            Ok(code) => {
                man.note(&format!("run_{key}={v}"), code);
                worst = worst.max(*code);
            }
            Err(e) => {
                man.warn(format!("{key}={v}: {e}"));
                worst = worst.max(2);
            }
        }
    }
    man.note("runs", results.len());
    man.write(out, cfg)?;
    Ok(worst)
}
