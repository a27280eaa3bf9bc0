//! Singularity tracking from Fourier coefficient decay.
//!
//! The nearest complex singularity `C (z - z_*)^{-mu}` at height `y_*` above
//! the real axis makes the coefficients decay like
//! `|c_k| ~ |C| k^(mu-1) exp(-k y_*)`, so `(log|C|, mu, y_*)` come out of a
//! linear least-squares fit of `log|c_k|` against `(1, log k, -k)`.

use crate::error::{Error, Result};
use crate::solver::SolveTrajectory;
use crate::state::FourierState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KWindow {
    pub k_min: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SingularityEstimate {
    pub t: f64,
    pub y_star: f64,
    pub mu: f64,
    pub log_c: f64,
    pub rms_residual: f64,
    pub window: KWindow,
    /// True when mu was pinned instead of fitted (too few usable modes).
    pub mu_fixed: bool,
    /// Under-resolution warning propagated from the state.
    pub flagged: bool,
}

/// Window selection knobs.  The effective window is
/// `k_min = clamp(max(k_min_floor, k_min_frac*N), 1, k_max - min_points + 1)`
/// with `k_max` the largest mode above the rounding floor
/// `max(floor_rel * max|c_k|, floor_abs)`.
#[derive(Debug, Clone, Copy)]
pub struct WindowPolicy {
    pub k_min_floor: usize,
    pub k_min_frac: f64,
    pub floor_rel: f64,
    pub floor_abs: f64,
    pub min_points: usize,
    /// Exponent used when fewer than `min_points` modes support a 3-parameter
    /// fit; the fit then solves for `(log|C|, y_*)` only.
    pub fallback_mu: f64,
    /// Fit the next-order `1/k` correction as a fourth basis function.
    ///
    /// Double precision caps usable windows at roughly `k y_* < 30`, where
    /// the plain three-parameter law still carries visible finite-k bias;
    /// the correction removes most of it.
    pub curvature_correction: bool,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        Self {
            k_min_floor: 4,
            k_min_frac: 0.2,
            floor_rel: 1e3 * f64::EPSILON,
            floor_abs: 1e-290,
            min_points: 5,
            fallback_mu: 2.0,
            curvature_correction: false,
        }
    }
}

impl WindowPolicy {
    /// Widest admissible window for a state, or None when nothing usable.
    pub fn select(&self, state: &FourierState) -> Option<KWindow> {
        let n = state.n;
        let max_c = crate::fourier::max_abs(&state.coeffs);
        if max_c == 0.0 {
            return None;
        }
        let floor = (self.floor_rel * max_c).max(self.floor_abs);
        let mut k_max = 0;
        for k in 1..=n {
            if state.coeff(k as isize).norm() > floor {
                k_max = k;
            }
        }
        if k_max < 2 {
            return None;
        }
        let base = (self.k_min_frac * n as f64).round() as usize;
        let mut k_min = self.k_min_floor.max(base);
        let span_min = self.min_points.saturating_sub(1).max(2);
        if k_min + span_min > k_max {
            k_min = k_max.saturating_sub(span_min).max(1);
        }
        if k_min >= k_max {
            return None;
        }
        Some(KWindow { k_min, k_max })
    }
}

/// Three-parameter least squares of `log|c_k| = log|C| + (mu-1) log k - k y_*`
/// over the window.  Falls back to a two-parameter fit (mu pinned) when the
/// window is too narrow to separate the `log k` regressor.
pub fn fit_decay(state: &FourierState, window: KWindow) -> Result<SingularityEstimate> {
    fit_decay_with(state, window, &WindowPolicy::default())
}

pub fn fit_decay_with(
    state: &FourierState,
    window: KWindow,
    policy: &WindowPolicy,
) -> Result<SingularityEstimate> {
    let KWindow { k_min, k_max } = window;
    if k_min < 1 || k_max > state.n || k_max <= k_min {
        return Err(Error::InvalidParameter(format!(
            "window [{k_min}, {k_max}] invalid for N = {}",
            state.n
        )));
    }
    let mut ks = Vec::new();
    let mut logs = Vec::new();
    for k in k_min..=k_max {
        let a = state.coeff(k as isize).norm();
        if a == 0.0 || !a.is_finite() {
            return Err(Error::FitFailed(format!("zero coefficient at k = {k} inside window")));
        }
        ks.push(k as f64);
        logs.push(a.ln());
    }
    let m = ks.len();
    let four_param = policy.curvature_correction && m >= policy.min_points.max(5);
    let three_param = m >= policy.min_points.max(4);

    // normal equations for basis [1, log k, -k] plus the optional 1/k
    // correction (or [1, -k] with mu pinned when points are scarce)
    let (coef, fitted): (Vec<f64>, Vec<f64>) = if four_param {
        let mut ata = [[0.0f64; 4]; 4];
        let mut atb = [0.0f64; 4];
        for i in 0..m {
            let row = [1.0, ks[i].ln(), -ks[i], 1.0 / ks[i]];
            for a in 0..4 {
                for b in 0..4 {
                    ata[a][b] += row[a] * row[b];
                }
                atb[a] += row[a] * logs[i];
            }
        }
        let sol = solve4(ata, atb)
            .ok_or(Error::SingularSystem { context: "decay-fit normal equations" })?;
        let fitted = (0..m)
            .map(|i| sol[0] + sol[1] * ks[i].ln() - sol[2] * ks[i] + sol[3] / ks[i])
            .collect();
        (sol.to_vec(), fitted)
    } else if three_param {
        let mut ata = [[0.0f64; 3]; 3];
        let mut atb = [0.0f64; 3];
        for i in 0..m {
            let row = [1.0, ks[i].ln(), -ks[i]];
            for a in 0..3 {
                for b in 0..3 {
                    ata[a][b] += row[a] * row[b];
                }
                atb[a] += row[a] * logs[i];
            }
        }
        let sol = solve3(ata, atb)
            .ok_or(Error::SingularSystem { context: "decay-fit normal equations" })?;
        let fitted = (0..m).map(|i| sol[0] + sol[1] * ks[i].ln() - sol[2] * ks[i]).collect();
        (sol.to_vec(), fitted)
    } else {
        let mu = policy.fallback_mu;
        let mut ata = [[0.0f64; 2]; 2];
        let mut atb = [0.0f64; 2];
        for i in 0..m {
            let rhs = logs[i] - (mu - 1.0) * ks[i].ln();
            let row = [1.0, -ks[i]];
            for a in 0..2 {
                for b in 0..2 {
                    ata[a][b] += row[a] * row[b];
                }
                atb[a] += row[a] * rhs;
            }
        }
        let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
        if det.abs() < 1e-300 {
            return Err(Error::SingularSystem { context: "decay-fit normal equations" });
        }
        let c0 = (atb[0] * ata[1][1] - ata[0][1] * atb[1]) / det;
        let c2 = (ata[0][0] * atb[1] - ata[1][0] * atb[0]) / det;
        let fitted =
            (0..m).map(|i| c0 + (mu - 1.0) * ks[i].ln() - c2 * ks[i]).collect();
        (vec![c0, mu - 1.0, c2], fitted)
    };

    let rms = (logs
        .iter()
        .zip(fitted.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / m as f64)
        .sqrt();

    Ok(SingularityEstimate {
        t: state.t,
        y_star: coef[2],
        mu: coef[1] + 1.0,
        log_c: coef[0],
        rms_residual: rms,
        window,
        mu_fixed: !three_param,
        flagged: state.is_under_resolved(1e-8),
    })
}

fn solve4(a: [[f64; 4]; 4], b: [f64; 4]) -> Option<[f64; 4]> {
    let mut m = [[0.0f64; 5]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i][j];
        }
        m[i][4] = b[i];
    }
    for col in 0..4 {
        let piv =
            (col..4).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() < 1e-250 {
            return None;
        }
        m.swap(col, piv);
        for row in (col + 1)..4 {
            let f = m[row][col] / m[col][col];
            for j in col..5 {
                let u = m[col][j];
                m[row][j] -= f * u;
            }
        }
    }
    let mut out = [0.0f64; 4];
    for i in (0..4).rev() {
        let mut acc = m[i][4];
        for j in (i + 1)..4 {
            acc -= m[i][j] * out[j];
        }
        out[i] = acc / m[i][i];
    }
    Some(out)
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if det.abs() < 1e-250 {
        return None;
    }
    let mut out = [0.0; 3];
    for col in 0..3 {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        out[col] = d / det;
    }
    Some(out)
}

/// Per-snapshot estimates over a trajectory; snapshots with no admissible
/// window or failed fits are skipped.
pub fn track(traj: &SolveTrajectory, policy: &WindowPolicy) -> Vec<SingularityEstimate> {
    traj.snapshots
        .iter()
        .filter(|s| s.repr == crate::state::Representation::U)
        .filter_map(|s| {
            let w = policy.select(s)?;
            fit_decay_with(s, w, policy).ok()
        })
        .collect()
}

/// `(t, mu)` channel of [`track`].
pub fn mu_series(traj: &SolveTrajectory, policy: &WindowPolicy) -> Vec<(f64, f64)> {
    track(traj, policy).iter().map(|e| (e.t, e.mu)).collect()
}

/// Times where the smoothed `y_*(t)` series changes direction.
///
/// A centred 3-point median filter removes fit jitter before differencing;
/// a direction only counts once it persists for `persist` consecutive
/// differences exceeding `tol`.
pub fn reversal_times(estimates: &[SingularityEstimate], tol: f64, persist: usize) -> Vec<f64> {
    let n = estimates.len();
    if n < 4 {
        return Vec::new();
    }
    let med3 = |a: f64, b: f64, c: f64| a.max(b.min(c)).min(b.max(c));
    let smooth: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                estimates[i].y_star
            } else {
                med3(estimates[i - 1].y_star, estimates[i].y_star, estimates[i + 1].y_star)
            }
        })
        .collect();

    let mut reversals = Vec::new();
    let mut dir: i32 = 0;
    let mut cand_dir: i32 = 0;
    let mut run = 0usize;
    for i in 1..n {
        let d = smooth[i] - smooth[i - 1];
        if d.abs() <= tol {
            continue;
        }
        let s = if d > 0.0 { 1 } else { -1 };
        if s == cand_dir {
            run += 1;
        } else {
            cand_dir = s;
            run = 1;
        }
        if run >= persist && cand_dir != dir {
            if dir != 0 {
                reversals.push(estimates[i].t);
            }
            dir = cand_dir;
        }
    }
    reversals
}
