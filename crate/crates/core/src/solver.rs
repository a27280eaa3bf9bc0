//! Time integration of the truncated Fourier system for `u_t = u_xx + u^2`
//! and its reciprocal form `v_t = v_xx - 2 v_x^2 / v - 1` (`v = 1/u`).
//!
//! The diffusion part is diagonal in Fourier space, so the embedded
//! Dormand-Prince pair is applied in integrating-factor (Lawson) form: the
//! linear factor `exp(-k^2 dt)` is propagated exactly and the explicit pair
//! only sees the nonlinear term.  All exponential factors that appear have
//! non-positive exponents, so the scheme is overflow-free and the stiff
//! `-k^2` modes impose no step restriction.

use crate::error::{Error, Result};
use crate::rk;
use crate::state::{FourierState, Representation};
use crate::{fourier, C64};

/// How the quadratic term is evaluated.
///
/// The padded-grid route costs two transforms; the direct `O(N^2)`
/// convolution keeps *relative* accuracy in coefficients that have decayed
/// far below the solution scale (transform-based products carry an absolute
/// rounding floor of order `eps * max|u|^2`, which swamps modes below it).
/// Deep-decay runs (heat death) need the direct route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionMode {
    Auto,
    Fft,
    Direct,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Switch U -> V once u is strictly positive on the grid and exceeds this.
    pub switch_threshold: f64,
    /// Declare blow up when `min v < blowup_threshold * max v`.
    pub blowup_threshold: f64,
    /// Terminate with heat death when `max|u|` falls below this while `<u> < 0`.
    pub heat_death_floor: f64,
    /// Under-resolution warning level for `|c_N| / max|c_k|`.
    pub tail_flag_ratio: f64,
    /// Hard cap on the tail ratio: refine (if allowed) or stop.
    pub tail_stop_ratio: f64,
    /// Zero-pad to twice the order when the tail cap is hit, up to this order.
    pub max_refine_n: usize,
    /// Record a full coefficient snapshot whenever `t` crosses a multiple.
    pub snapshot_dt: f64,
    /// Ring of final accepted states always kept (blow-up post-processing).
    pub keep_last: usize,
    pub max_steps: usize,
    pub convolution: ConvolutionMode,
    /// Validation hook: drop the nonlinear term (pure heat equation).
    pub linear_only: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            switch_threshold: 1e3,
            blowup_threshold: 10.0 * f64::EPSILON,
            heat_death_floor: 1e-8,
            tail_flag_ratio: 1e-8,
            tail_stop_ratio: 1e-3,
            max_refine_n: 0,
            snapshot_dt: 0.05,
            keep_last: 32,
            max_steps: 4_000_000,
            convolution: ConvolutionMode::Auto,
            linear_only: false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GridStats {
    pub min_re: f64,
    pub max_re: f64,
    pub max_abs: f64,
}

/// Per-accepted-step scalar record.
#[derive(Debug, Clone, Copy)]
pub struct MonitorPoint {
    pub t: f64,
    pub repr: Representation,
    /// min over the grid of Re u (or Re v in V form)
    pub min_re: f64,
    pub max_re: f64,
    /// mean value `c_0`
    pub mean_re: f64,
    pub tail_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupEstimate {
    pub t_c: f64,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    ReachedTEnd,
    Blowup(BlowupEstimate),
    HeatDeath { t: f64 },
    UnderResolved { t: f64, reason: String },
}

#[derive(Debug, Clone, Default)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
    pub switches: usize,
    pub refinements: usize,
    pub h_min: f64,
    pub h_max: f64,
}

#[derive(Debug, Clone)]
pub struct SolveTrajectory {
    pub snapshots: Vec<FourierState>,
    pub monitor: Vec<MonitorPoint>,
    pub termination: Termination,
    pub stats: StepStats,
}

impl SolveTrajectory {
    /// Snapshot times are strictly increasing by construction; expose the
    /// final state for convenience.
    pub fn last_state(&self) -> &FourierState {
        self.snapshots.last().expect("trajectory holds at least the initial state")
    }

    pub fn blowup(&self) -> Option<BlowupEstimate> {
        match &self.termination {
            Termination::Blowup(b) => Some(*b),
            _ => None,
        }
    }
}

fn direct_square(coeffs: &[C64]) -> Vec<C64> {
    let n = fourier::order_of(coeffs) as isize;
    let mut out = vec![C64::new(0.0, 0.0); coeffs.len()];
    for k in -n..=n {
        let mut acc = C64::new(0.0, 0.0);
        let j_lo = (-n).max(k - n);
        let j_hi = n.min(k + n);
        for j in j_lo..=j_hi {
            acc += coeffs[(n + j) as usize] * coeffs[(n + k - j) as usize];
        }
        out[(n + k) as usize] = acc;
    }
    out
}

fn grid_stats(values: &[C64]) -> GridStats {
    let mut min_re = f64::INFINITY;
    let mut max_re = f64::NEG_INFINITY;
    let mut max_abs = 0.0_f64;
    for v in values {
        min_re = min_re.min(v.re);
        max_re = max_re.max(v.re);
        max_abs = max_abs.max(v.norm());
    }
    GridStats { min_re, max_re, max_abs }
}

fn use_direct(n: usize, mode: ConvolutionMode) -> bool {
    match mode {
        ConvolutionMode::Direct => true,
        ConvolutionMode::Fft => false,
        ConvolutionMode::Auto => n <= 64,
    }
}

/// Nonlinear part of the U-form right-hand side: `(u^2)_k` (dealiased).
fn nonlinear_u(
    coeffs: &[C64],
    mode: ConvolutionMode,
    linear_only: bool,
) -> (Vec<C64>, GridStats) {
    let n = fourier::order_of(coeffs);
    let m = fourier::padded_len(n);
    let grid = fourier::eval_grid(coeffs, m);
    let stats = grid_stats(&grid);
    if linear_only {
        return (vec![C64::new(0.0, 0.0); coeffs.len()], stats);
    }
    if use_direct(n, mode) {
        (direct_square(coeffs), stats)
    } else {
        let sq: Vec<C64> = grid.iter().map(|v| v * v).collect();
        (fourier::coeffs_from_grid(&sq, n), stats)
    }
}

/// Nonlinear part of the V-form right-hand side: `-2 v_x^2 / v - 1`
/// evaluated pointwise on the padded grid.
fn nonlinear_v(coeffs: &[C64], v_floor: f64) -> Result<(Vec<C64>, GridStats)> {
    let n = fourier::order_of(coeffs);
    let m = fourier::padded_len(n);
    let v = fourier::eval_grid(coeffs, m);
    let stats = grid_stats(&v);
    let min_mod = v.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if min_mod < v_floor {
        return Err(Error::VVanishes { min_v: min_mod });
    }
    let vx = fourier::eval_grid(&fourier::derivative(coeffs), m);
    let rhs: Vec<C64> = v
        .iter()
        .zip(vx.iter())
        .map(|(vj, vxj)| -2.0 * vxj * vxj / vj - 1.0)
        .collect();
    Ok((fourier::coeffs_from_grid(&rhs, n), stats))
}

/// Full U-form derivative `c_k' = -k^2 c_k + (u^2 convolved)_k`.
///
/// The truncated convolution is exact (no aliasing in the retained band), so
/// the mean identity `c_0' = sum_k c_k c_{-k}` holds to rounding.
pub fn nlh_rhs(state: &FourierState) -> Result<Vec<C64>> {
    if state.repr != Representation::U {
        return Err(Error::Representation { expected: Representation::U, got: state.repr });
    }
    let (nl, _) = nonlinear_u(&state.coeffs, ConvolutionMode::Auto, false);
    Ok(add_linear(&state.coeffs, &nl))
}

/// Full V-form derivative of `v_t = v_xx - 2 v_x^2/v - 1`.
pub fn reciprocal_rhs(state: &FourierState) -> Result<Vec<C64>> {
    if state.repr != Representation::V {
        return Err(Error::Representation { expected: Representation::V, got: state.repr });
    }
    let (nl, _) = nonlinear_v(&state.coeffs, 1e-300)?;
    Ok(add_linear(&state.coeffs, &nl))
}

fn add_linear(coeffs: &[C64], nl: &[C64]) -> Vec<C64> {
    let n = fourier::order_of(coeffs) as isize;
    coeffs
        .iter()
        .zip(nl.iter())
        .enumerate()
        .map(|(i, (&c, &q))| {
            let k = (i as isize - n) as f64;
            -k * k * c + q
        })
        .collect()
}

/// `|c_0' - sum_k c_k c_{-k}|` for a U-form derivative vector.
pub fn mean_balance_residual(state: &FourierState, rhs: &[C64]) -> f64 {
    let n = state.n as isize;
    let mut acc = C64::new(0.0, 0.0);
    for k in -n..=n {
        acc += state.coeff(k) * state.coeff(-k);
    }
    (rhs[state.n] - acc).norm()
}

/// Pointwise reciprocal on an oversampled grid, re-transformed.
pub fn switch_representation(state: &FourierState) -> Result<FourierState> {
    let n = state.n;
    let m = 2 * fourier::padded_len(n);
    let grid = state.grid_values(m);
    if state.repr == Representation::U {
        let min_re = grid.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        if min_re <= 0.0 {
            return Err(Error::SignChange { min_u: min_re });
        }
    } else {
        let min_mod = grid.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if min_mod <= 0.0 {
            return Err(Error::VVanishes { min_v: min_mod });
        }
    }
    let rec: Vec<C64> = grid.iter().map(|z| 1.0 / z).collect();
    let mut out = FourierState::new(
        state.t,
        match state.repr {
            Representation::U => Representation::V,
            Representation::V => Representation::U,
        },
        fourier::coeffs_from_grid(&rec, n),
    );
    out.enforce_conjugate_symmetry();
    Ok(out)
}

// ---- Lawson (integrating factor) stepping ------------------------------

struct ExpTables {
    n: usize,
    /// gamma -> table of exp(-k^2 gamma h), k = 0..=n
    tables: Vec<(f64, Vec<f64>)>,
}

impl ExpTables {
    fn gammas() -> Vec<f64> {
        let mut g = Vec::new();
        let mut push = |v: f64| {
            if v > 0.0 && !g.iter().any(|&x: &f64| (x - v).abs() < 1e-14) {
                g.push(v);
            }
        };
        for i in 1..rk::STAGES {
            push(rk::C[i]);
            for j in 0..i {
                if rk::A[i][j] != 0.0 {
                    push(rk::C[i] - rk::C[j]);
                }
            }
        }
        for i in 0..rk::STAGES {
            if rk::B5[i] != 0.0 || rk::B4[i] != 0.0 {
                push(1.0 - rk::C[i]);
            }
        }
        push(1.0);
        g
    }

    fn build(n: usize, h: f64) -> Self {
        let tables = Self::gammas()
            .into_iter()
            .map(|g| {
                let tab: Vec<f64> =
                    (0..=n).map(|k| (-((k * k) as f64) * g * h).exp()).collect();
                (g, tab)
            })
            .collect();
        Self { n, tables }
    }

    fn table(&self, gamma: f64) -> Option<&[f64]> {
        if gamma == 0.0 {
            return None;
        }
        self.tables
            .iter()
            .find(|(g, _)| (g - gamma).abs() < 1e-14)
            .map(|(_, t)| t.as_slice())
    }

    /// out += scale * exp(L gamma h) * src
    fn add_scaled(&self, out: &mut [C64], src: &[C64], gamma: f64, scale: f64) {
        let n = self.n as isize;
        match self.table(gamma) {
            None => {
                for (o, s) in out.iter_mut().zip(src.iter()) {
                    *o += scale * s;
                }
            }
            Some(tab) => {
                for (i, (o, s)) in out.iter_mut().zip(src.iter()).enumerate() {
                    let k = (i as isize - n).unsigned_abs();
                    *o += scale * tab[k] * s;
                }
            }
        }
    }
}

struct StepOutcome {
    y_new: Vec<C64>,
    err: f64,
    k_last: Vec<C64>,
    stats_last: GridStats,
}

#[allow(clippy::too_many_arguments)]
fn attempt_step(
    repr: Representation,
    y: &[C64],
    k1: &[C64],
    h: f64,
    opts: &SolveOptions,
    n_rhs: &mut usize,
) -> Result<StepOutcome> {
    let n = fourier::order_of(y);
    let tabs = ExpTables::build(n, h);
    let dim = y.len();
    let mut k_stages: Vec<Vec<C64>> = Vec::with_capacity(rk::STAGES);
    k_stages.push(k1.to_vec());
    let mut stats_last = GridStats { min_re: 0.0, max_re: 0.0, max_abs: 0.0 };
    for i in 1..rk::STAGES {
        let mut ui = vec![C64::new(0.0, 0.0); dim];
        tabs.add_scaled(&mut ui, y, rk::C[i], 1.0);
        for (j, kj) in k_stages.iter().enumerate() {
            let a = rk::A[i][j];
            if a != 0.0 {
                tabs.add_scaled(&mut ui, kj, rk::C[i] - rk::C[j], h * a);
            }
        }
        *n_rhs += 1;
        let (ki, st) = match repr {
            Representation::U => nonlinear_u(&ui, opts.convolution, opts.linear_only),
            Representation::V => nonlinear_v(&ui, 1e-300)?,
        };
        if i == rk::STAGES - 1 {
            stats_last = st;
        }
        k_stages.push(ki);
    }

    let mut y5 = vec![C64::new(0.0, 0.0); dim];
    tabs.add_scaled(&mut y5, y, 1.0, 1.0);
    let mut errv = vec![C64::new(0.0, 0.0); dim];
    for i in 0..rk::STAGES {
        let d = vec_exp(&tabs, &k_stages[i], 1.0 - rk::C[i]);
        if rk::B5[i] != 0.0 {
            for (o, s) in y5.iter_mut().zip(d.iter()) {
                *o += h * rk::B5[i] * s;
            }
        }
        let db = rk::B5[i] - rk::B4[i];
        if db != 0.0 {
            for (o, s) in errv.iter_mut().zip(d.iter()) {
                *o += h * db * s;
            }
        }
    }

    let mut acc = 0.0;
    for i in 0..dim {
        let sc = opts.atol + opts.rtol * y[i].norm().max(y5[i].norm());
        let e = errv[i].norm() / sc;
        acc += e * e;
    }
    let err = (acc / dim as f64).sqrt();
    Ok(StepOutcome { y_new: y5, err, k_last: k_stages.pop().unwrap(), stats_last })
}

fn vec_exp(tabs: &ExpTables, src: &[C64], gamma: f64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); src.len()];
    tabs.add_scaled(&mut out, src, gamma, 1.0);
    out
}

// ---- driver -------------------------------------------------------------

/// Integrate from `state.t` to `t_end` with adaptive steps, representation
/// switching and blow-up / heat-death / resolution event handling.
pub fn advance(state: &FourierState, t_end: f64, opts: &SolveOptions) -> Result<SolveTrajectory> {
    if t_end <= state.t {
        return Err(Error::InvalidParameter(format!(
            "t_end = {t_end} must exceed the state time {}",
            state.t
        )));
    }
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(Error::InvalidParameter("tolerances must be positive".into()));
    }

    let mut t = state.t;
    let mut repr = state.repr;
    let mut y = state.coeffs.clone();
    let mut stats = StepStats { h_min: f64::INFINITY, ..Default::default() };

    let mut snapshots: Vec<FourierState> = vec![FourierState::new(t, repr, y.clone())];
    let mut ring: std::collections::VecDeque<FourierState> =
        std::collections::VecDeque::with_capacity(opts.keep_last);
    let mut monitor: Vec<MonitorPoint> = Vec::new();
    let mut next_snapshot = t + opts.snapshot_dt;

    let ctrl = rk::StepControl::default();
    let mut err_old = 1e-4_f64;
    let mut h = ((t_end - t) / 100.0).min(1e-3);
    let mut rejected_last = false;

    let eval_k1 = |repr: Representation, y: &[C64], n_rhs: &mut usize| -> Result<(Vec<C64>, GridStats)> {
        *n_rhs += 1;
        match repr {
            Representation::U => Ok(nonlinear_u(y, opts.convolution, opts.linear_only)),
            Representation::V => nonlinear_v(y, 1e-300),
        }
    };

    let (mut k1, st0) = eval_k1(repr, &y, &mut stats.rhs_evals)?;
    monitor.push(monitor_point(t, repr, &y, st0));

    let termination = loop {
        if stats.accepted + stats.rejected >= opts.max_steps {
            break Termination::UnderResolved { t, reason: "step budget exhausted".into() };
        }
        if t >= t_end {
            break Termination::ReachedTEnd;
        }
        // land exactly on snapshot times and the end point
        h = h.min(t_end - t).min((next_snapshot - t).max(1e-3 * h));
        // geometric approach to blow up: v is regular through the pinch, so
        // without a cap the integrator steps straight over v_min = 0
        if repr == Representation::V {
            if let Some(m) = monitor.last() {
                let vmax = m.max_re.abs().max(1e-300);
                if m.min_re < 0.05 * vmax {
                    let floor = 0.1 * opts.blowup_threshold * vmax;
                    h = h.min((0.5 * m.min_re).max(floor));
                }
            }
        }
        if h < 1e-13 * t.abs().max(1.0) {
            // underflowing step: blow up if the monitor brackets one
            if let Some(b) = blowup_from_monitor(&monitor, opts) {
                break Termination::Blowup(b);
            }
            break Termination::UnderResolved { t, reason: format!("step underflow (h = {h:.3e})") };
        }

        let out = match attempt_step(repr, &y, &k1, h, opts, &mut stats.rhs_evals) {
            Ok(o) => o,
            Err(Error::VVanishes { .. }) => {
                // a stage stepped over the blow-up time; shrink
                h *= 0.25;
                stats.rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };

        if out.err > 1.0 {
            h *= ctrl.factor(out.err, err_old).min(1.0);
            rejected_last = true;
            stats.rejected += 1;
            continue;
        }

        // accepted
        t += h;
        stats.accepted += 1;
        stats.h_min = stats.h_min.min(h);
        stats.h_max = stats.h_max.max(h);
        y = out.y_new;
        fourier::enforce_conjugate_symmetry(&mut y);
        k1 = out.k_last;
        let gstats = out.stats_last;
        let mut fac = ctrl.factor(out.err, err_old);
        if rejected_last {
            fac = fac.min(1.0);
        }
        h *= fac;
        err_old = out.err.max(1e-4);
        rejected_last = false;

        monitor.push(monitor_point(t, repr, &y, gstats));
        let tail = fourier::tail_ratio(&y);

        // snapshots
        let snap = FourierState::new(t, repr, y.clone());
        if t >= next_snapshot - 1e-12 {
            snapshots.push(snap.clone());
            while next_snapshot <= t + 1e-12 {
                next_snapshot += opts.snapshot_dt;
            }
        }
        if ring.len() == opts.keep_last {
            ring.pop_front();
        }
        ring.push_back(snap);

        // -- events --
        match repr {
            Representation::U => {
                // heat death
                if gstats.max_abs < opts.heat_death_floor && monitor.last().unwrap().mean_re < 0.0 {
                    break Termination::HeatDeath { t };
                }
                // switch to reciprocal form once strictly positive and large
                if gstats.min_re > 0.0 && gstats.max_re > opts.switch_threshold {
                    let s = FourierState::new(t, repr, y.clone());
                    let sw = switch_representation(&s)?;
                    repr = Representation::V;
                    y = sw.coeffs;
                    stats.switches += 1;
                    let (nk1, _) = eval_k1(repr, &y, &mut stats.rhs_evals)?;
                    k1 = nk1;
                }
            }
            Representation::V => {
                let vmin = gstats.min_re;
                let vmax = gstats.max_re.max(gstats.max_abs);
                if vmin < opts.blowup_threshold * vmax || vmin <= 0.0 {
                    let b = blowup_from_monitor(&monitor, opts).unwrap_or(BlowupEstimate {
                        t_c: t,
                        bracket: (t, t + h),
                    });
                    break Termination::Blowup(b);
                }
                // u_min fell very low without approaching blow up: go back to U
                if vmax > 1e8 && vmin > 0.3 * vmax {
                    let s = FourierState::new(t, repr, y.clone());
                    if let Ok(sw) = switch_representation(&s) {
                        repr = Representation::U;
                        y = sw.coeffs;
                        stats.switches += 1;
                        let (nk1, _) = eval_k1(repr, &y, &mut stats.rhs_evals)?;
                        k1 = nk1;
                    }
                }
            }
        }

        // resolution management
        if tail > opts.tail_stop_ratio {
            let n = fourier::order_of(&y);
            if 2 * n <= opts.max_refine_n {
                let s = FourierState::new(t, repr, y.clone()).padded_to(2 * n);
                y = s.coeffs;
                stats.refinements += 1;
                let (nk1, _) = eval_k1(repr, &y, &mut stats.rhs_evals)?;
                k1 = nk1;
            } else if let Some(b) = blowup_from_monitor(&monitor, opts) {
                break Termination::Blowup(b);
            } else {
                break Termination::UnderResolved {
                    t,
                    reason: format!("tail ratio {tail:.2e} exceeds cap"),
                };
            }
        }
    };

    // merge the final ring into the snapshots (strictly increasing times)
    let last_t = snapshots.last().map(|s| s.t).unwrap_or(f64::NEG_INFINITY);
    for s in ring {
        if s.t > last_t {
            snapshots.push(s);
        }
    }
    snapshots.dedup_by(|a, b| a.t == b.t);

    Ok(SolveTrajectory { snapshots, monitor, termination, stats })
}

fn monitor_point(t: f64, repr: Representation, y: &[C64], g: GridStats) -> MonitorPoint {
    MonitorPoint {
        t,
        repr,
        min_re: g.min_re,
        max_re: g.max_re,
        mean_re: y[fourier::order_of(y)].re,
        tail_ratio: fourier::tail_ratio(y),
    }
}

/// Estimate the blow-up time from the tail of the monitor series.
///
/// In V form `min v ~ t_c - t` near blow up, so consecutive-point secants
/// converge onto `t_c`; in U form the same applies to `1/max u`.  The
/// bracket spans the last clean sample and the spread of the last few
/// secant predictions.
pub fn detect_blowup(traj: &SolveTrajectory) -> Option<BlowupEstimate> {
    blowup_from_monitor(&traj.monitor, &SolveOptions::default())
}

fn blowup_from_monitor(monitor: &[MonitorPoint], _opts: &SolveOptions) -> Option<BlowupEstimate> {
    // collect the decreasing positive series (v_min or 1/u_max)
    let pts: Vec<(f64, f64)> = monitor
        .iter()
        .filter_map(|m| match m.repr {
            Representation::V => {
                let vmax = m.max_re.abs().max(1e-300);
                if m.min_re > 100.0 * f64::EPSILON * vmax {
                    Some((m.t, m.min_re))
                } else {
                    None
                }
            }
            Representation::U => {
                if m.max_re > 1e2 {
                    Some((m.t, 1.0 / m.max_re))
                } else {
                    None
                }
            }
        })
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let tail = &pts[pts.len().saturating_sub(6)..];
    let mut preds = Vec::new();
    for w in tail.windows(2) {
        let (t1, v1) = w[0];
        let (t2, v2) = w[1];
        if v2 < v1 && v1 > 0.0 {
            preds.push(t2 + v2 * (t2 - t1) / (v1 - v2));
        }
    }
    if preds.is_empty() {
        return None;
    }
    let t_c = *preds.last().unwrap();
    let lo = pts.last().unwrap().0;
    let hi = preds.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = preds.iter().cloned().fold(f64::INFINITY, f64::min);
    let width = (hi - spread).abs().max(1e-12);
    Some(BlowupEstimate { t_c, bracket: (lo.min(t_c - width), t_c + width) })
}
