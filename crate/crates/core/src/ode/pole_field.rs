//! Adaptive Pade one-step ("pole field") integration of
//! `phi'' - phi' = phi^2` along arbitrary complex paths.
//!
//! Each step re-expands the solution in a Taylor series at the current
//! anchor, converts it to a diagonal Pade approximant, reads off the
//! distance to the nearest singularity from the denominator roots, and
//! advances a safe fraction of that distance.  Because the local
//! approximant carries the poles, the path may pass arbitrarily close to
//! (and, with a recorded detour, around) singularities, which is what
//! makes continuation onto secondary Riemann sheets possible.

use super::series::{taylor_coeffs, SeriesIC};
use crate::error::{Error, Result};
use crate::pade::poly;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnSingularity {
    /// Converge onto the first singularity hit by the path and stop.
    Stop,
    /// Walk a recorded semicircular detour and continue to the endpoint.
    Detour,
}

#[derive(Debug, Clone)]
pub struct PoleFieldOptions {
    /// Taylor order per step (diagonal Pade of half this degree).
    pub taylor_order: usize,
    /// Step fraction of the nearest-pole distance.
    pub safety: f64,
    /// Declare arrival once the singularity sits this close on the path;
    /// the pole estimate has long converged by then, while marching closer
    /// only erodes the local expansion's conditioning.
    pub stop_radius: f64,
    /// Hard floor for the step size (stagnation guard).
    pub stop_dist: f64,
    pub on_singularity: OnSingularity,
    pub detour_radius: f64,
    /// Candidate singularities estimated within this distance of an anchor
    /// are recorded for clustering and sheet bookkeeping.
    pub capture_dist: f64,
    /// Cluster merge radius for the recorded singularity list.
    pub cluster_radius: f64,
    /// When set, the path walks a spur towards each newly seen singularity
    /// until the local estimate has converged (anchor within this radius),
    /// then returns and continues; harvested positions become sharp.
    pub visit_radius: Option<f64>,
    pub max_steps: usize,
}

impl Default for PoleFieldOptions {
    fn default() -> Self {
        Self {
            taylor_order: 16,
            safety: 0.5,
            stop_radius: 1e-4,
            stop_dist: 1e-9,
            on_singularity: OnSingularity::Stop,
            detour_radius: 0.05,
            capture_dist: 1.5,
            cluster_radius: 0.02,
            visit_radius: None,
            max_steps: 200_000,
        }
    }
}

/// Relative bound enforced on the local equation defect
/// `|phi'' - phi' - phi^2| / (1 + |phi|^2)` at every accepted point; steps
/// are halved until the evaluated jet meets it.
const RESIDUAL_TARGET: f64 = 5e-12;

/// Step-doubling value control: one full-step evaluation must agree with
/// two half-step re-anchorings to this relative tolerance.  The equation
/// defect alone cannot see drift ALONG the solution manifold (an erring
/// step lands on a neighbouring solution with its own, displaced,
/// singularities), so the doubling comparison is what actually guards the
/// analytic continuation, in particular when passing close to branch
/// points.
const DOUBLING_TARGET: f64 = 1e-11;

#[derive(Debug, Clone, Copy)]
pub struct OdeStep {
    pub x: C64,
    pub phi: C64,
    pub dphi: C64,
    pub sheet: i32,
    /// nearest-singularity estimate from this anchor's approximant
    pub pole_estimate: Option<C64>,
    pub pole_dist: f64,
    /// `|phi'' - phi' - phi^2|` re-evaluated from the local approximant jet
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub position: C64,
    pub sheet: i32,
    /// distance of the recording anchor (quality proxy: smaller is better)
    pub anchor_dist: f64,
    pub hits: usize,
}

#[derive(Debug, Clone)]
pub struct OdePathSolution {
    pub waypoints: Vec<C64>,
    pub steps: Vec<OdeStep>,
    /// clustered singularity candidates recorded along the way
    pub singularities: Vec<Candidate>,
    /// detour arc centres actually walked
    pub detours: Vec<C64>,
    /// set when the integration converged onto a singularity and stopped
    pub terminated_at: Option<C64>,
}

impl OdePathSolution {
    /// Value at a waypoint that the path passed through exactly.
    pub fn value_at(&self, x: C64, tol: f64) -> Option<(C64, C64)> {
        self.steps
            .iter()
            .find(|s| (s.x - x).norm() <= tol)
            .map(|s| (s.phi, s.dphi))
    }

    pub fn final_sheet(&self) -> i32 {
        self.steps.last().map(|s| s.sheet).unwrap_or(0)
    }
}

struct LocalModel {
    /// numerator/denominator of the diagonal Pade of phi
    a: Vec<C64>,
    b: Vec<C64>,
    /// same for phi'
    ad: Vec<C64>,
    bd: Vec<C64>,
    /// nearest trusted denominator root (relative to the anchor)
    nearest: Option<C64>,
}

fn local_model(phi: C64, dphi: C64, order: usize) -> LocalModel {
    let coeffs = taylor_coeffs(phi, dphi, order);
    let dcoeffs: Vec<C64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &c)| c * n as f64)
        .collect();
    let half = order / 2;
    let (a, b) = pade_of(&coeffs, half, half);
    let (ad, bd) = pade_of(&dcoeffs, half.saturating_sub(1).max(1), half);
    let nearest = nearest_pole(&a, &b, radius_estimate(&coeffs));
    LocalModel { a, b, ad, bd, nearest }
}

/// Root-test estimate of the Taylor series' convergence radius (geometric
/// slope of the tail coefficients).  The distance to the nearest
/// singularity cannot be smaller, so denominator roots well inside this
/// disk are rounding artefacts.
fn radius_estimate(coeffs: &[C64]) -> f64 {
    let k1 = coeffs.len() - 1;
    let k0 = k1 / 2;
    let a0 = coeffs[k0].norm();
    let a1 = coeffs[k1].norm();
    if a0 <= 1e-280 || a1 <= 1e-280 {
        return 0.0;
    }
    (a0 / a1).powf(1.0 / (k1 - k0) as f64)
}

/// Plain (non-filtered) Pade pair used for the local step model.
fn pade_of(c: &[C64], m: usize, n: usize) -> (Vec<C64>, Vec<C64>) {
    use nalgebra::{DMatrix, DVector};
    let at = |idx: isize| -> C64 {
        if idx < 0 || idx as usize >= c.len() {
            C64::new(0.0, 0.0)
        } else {
            c[idx as usize]
        }
    };
    let mut n_eff = n;
    let den = loop {
        if n_eff == 0 {
            break vec![C64::new(1.0, 0.0)];
        }
        let mut t = DMatrix::<C64>::zeros(n_eff, n_eff);
        let mut rhs = DVector::<C64>::zeros(n_eff);
        for r in 0..n_eff {
            let k = (m + 1 + r) as isize;
            for j in 0..n_eff {
                t[(r, j)] = at(k - 1 - j as isize);
            }
            rhs[r] = -at(k);
        }
        match t.lu().solve(&rhs) {
            Some(sol)
                if sol.iter().all(|z| z.re.is_finite() && z.im.is_finite())
                    && sol.norm() < 1e14 =>
            {
                let mut den = vec![C64::new(1.0, 0.0)];
                den.extend(sol.iter().cloned());
                break den;
            }
            _ => n_eff -= 1,
        }
    };
    let mut num = vec![C64::new(0.0, 0.0); m + 1];
    for (k, nk) in num.iter_mut().enumerate() {
        for (j, bj) in den.iter().enumerate().take(k + 1) {
            *nk += bj * at((k - j) as isize);
        }
    }
    (num, den)
}

/// Nearest denominator root that is both inside no-man's land (the series
/// converges closer in, so anything there is spurious) and carries a
/// non-negligible residue.
fn nearest_pole(a: &[C64], b: &[C64], radius: f64) -> Option<C64> {
    let roots = poly::roots(b);
    if roots.is_empty() {
        return None;
    }
    let mut scored: Vec<(C64, f64)> = roots
        .iter()
        .filter(|r| r.norm() > 0.3 * radius)
        .map(|&r| {
            let bd = poly::eval_deriv(b, r);
            let res = if bd.norm() > 1e-280 {
                (poly::eval(a, r) / bd).norm()
            } else {
                f64::INFINITY
            };
            (r, res)
        })
        .collect();
    let max_res = scored.iter().map(|(_, r)| *r).filter(|r| r.is_finite()).fold(0.0, f64::max);
    scored.retain(|(_, r)| *r > 1e-13 * max_res);
    scored
        .into_iter()
        .min_by(|x, y| x.0.norm().partial_cmp(&y.0.norm()).unwrap())
        .map(|(r, _)| r)
}

/// Does the segment from `a` to `b` cross the leftward horizontal cut of a
/// branch point at `s`?  Returns +1 for an upward crossing, -1 downward.
fn cut_crossing(a: C64, b: C64, s: C64) -> i32 {
    let (ya, yb) = (a.im - s.im, b.im - s.im);
    if (ya < 0.0 && yb >= 0.0) || (ya >= 0.0 && yb < 0.0) {
        let t = ya / (ya - yb);
        let xc = a.re + (b.re - a.re) * t;
        if xc < s.re {
            return if yb > ya { 1 } else { -1 };
        }
    }
    0
}

/// Integrate the ODE along the waypoint polyline.
pub fn integrate_path(
    ic: &SeriesIC,
    waypoints: &[C64],
    opts: &PoleFieldOptions,
) -> Result<OdePathSolution> {
    if waypoints.len() < 2 {
        return Err(Error::InvalidParameter("path needs at least two waypoints".into()));
    }
    let anchor = ic.anchor;
    if (waypoints[0] - anchor).norm() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "path must start at the series anchor {anchor}, got {}",
            waypoints[0]
        )));
    }

    let mut x = anchor;
    let mut phi = ic.phi;
    let mut dphi = ic.dphi;
    let sheet: i32 = 0;
    let mut steps: Vec<OdeStep> = Vec::new();
    let mut raw_candidates: Vec<(C64, i32, f64)> = Vec::new();
    let mut detours: Vec<C64> = Vec::new();
    let mut terminated_at = None;

    // expand the polyline into a working queue of targets (detours may
    // prepend arc points)
    let mut targets: std::collections::VecDeque<C64> = waypoints[1..].iter().cloned().collect();

    steps.push(OdeStep {
        x,
        phi,
        dphi,
        sheet,
        pole_estimate: None,
        pole_dist: f64::INFINITY,
        residual: 0.0,
    });

    let mut count = 0usize;
    let mut prev_estimate: Option<C64> = None;
    let mut visited: Vec<C64> = Vec::new();
    // a visiting spur is a side excursion: the pre-spur state is restored
    // afterwards so the dive never perturbs the main continuation
    let mut spur_return: Option<(C64, C64, C64)> = None;
    'outer: while let Some(&target) = targets.front() {
        let to_go = target - x;
        if to_go.norm() < 1e-13 {
            targets.pop_front();
            if let Some((sx, sphi, sdphi)) = spur_return.take() {
                // static spur target reached without the estimate closing in:
                // drop the excursion
                x = sx;
                phi = sphi;
                dphi = sdphi;
            }
            continue;
        }
        count += 1;
        if count > opts.max_steps {
            return Err(Error::StepUnderflow { t: x.norm(), h: 0.0 });
        }

        let model = local_model(phi, dphi, opts.taylor_order);
        let d = model.nearest.map(|r| r.norm()).unwrap_or(f64::INFINITY);
        let pole_abs = model.nearest.map(|r| x + r);

        // a visiting spur is done as soon as the live estimate is close,
        // wherever the stale static target was; record the sharp position
        // and rewind to the pre-spur state
        if spur_return.is_some() {
            if let Some(rv) = opts.visit_radius {
                if d <= 1.25 * rv {
                    if let Some(p) = pole_abs {
                        raw_candidates.push((p, sheet, d));
                        visited.push(p);
                    }
                    targets.pop_front();
                    let (sx, sphi, sdphi) = spur_return.take().unwrap();
                    x = sx;
                    phi = sphi;
                    dphi = sdphi;
                    continue;
                }
            }
        }

        // record a candidate singularity when the anchor is close to one
        if let Some(p) = pole_abs {
            if d < opts.capture_dist {
                raw_candidates.push((p, sheet, d));
                // first contact: spur in to sharpen the position, then rewind
                if let Some(rv) = opts.visit_radius {
                    let mask = (3.0 * opts.cluster_radius).max(6.0 * rv);
                    if spur_return.is_none()
                        && d > 4.0 * rv
                        && !visited.iter().any(|v| (v - p).norm() < mask)
                    {
                        visited.push(p);
                        let dir_p = (p - x) / d;
                        targets.push_front(p - dir_p * rv);
                        spur_return = Some((x, phi, dphi));
                        continue;
                    }
                }
            }
        }
        // only stop on an estimate that has stabilised across anchors
        // (junk denominator roots jump around; a genuine pole does not)
        let stable = match (pole_abs, prev_estimate) {
            (Some(p), Some(q)) => (p - q).norm() < 0.3 * opts.stop_radius,
            _ => false,
        };
        prev_estimate = pole_abs;

        // singularity directly ahead on the segment?
        let dir = to_go / to_go.norm();
        if let Some(r) = model.nearest {
            let along = (r / dir).re; // component of pole offset along the path
            let across = (r / dir).im.abs();
            let ahead = along > 0.0 && along <= to_go.norm() + opts.detour_radius;
            if ahead && across < 0.9 * d.min(opts.detour_radius) && d < opts.stop_radius && stable
            {
                match opts.on_singularity {
                    OnSingularity::Stop => {
                        terminated_at = Some(x + r);
                        break 'outer;
                    }
                    OnSingularity::Detour => {
                        let centre = x + r;
                        detours.push(centre);
                        // semicircular arc over the pole: walk to the point
                        // behind it first, over the top, down in front,
                        // then resume the original target
                        let rad = opts.detour_radius.max(4.0 * d);
                        let out_dir = dir;
                        let n_arc = 8;
                        let mut arc = Vec::new();
                        for a_i in (0..=n_arc).rev() {
                            let th = std::f64::consts::PI * a_i as f64 / n_arc as f64;
                            // th = pi is behind (-dir), th = 0 in front (+dir)
                            let off = out_dir * C64::new(-th.cos(), th.sin()) * rad;
                            arc.push(centre + off);
                        }
                        // arc is front..behind; push_front reverses it so the
                        // queue runs behind -> top -> front
                        for p in arc.into_iter() {
                            targets.push_front(p);
                        }
                        continue;
                    }
                }
            }
        }

        let h_pole = opts.safety * d;
        let mut h = h_pole.min(to_go.norm());
        if h < opts.stop_dist {
            match opts.on_singularity {
                OnSingularity::Stop => {
                    terminated_at = pole_abs.or(Some(x));
                    break 'outer;
                }
                OnSingularity::Detour => {
                    if let Some((sx, sphi, sdphi)) = spur_return.take() {
                        // stagnated against the pole mid-spur: keep the
                        // estimate, rewind the excursion
                        if let Some(p) = pole_abs {
                            raw_candidates.push((p, sheet, d));
                            visited.push(p);
                        }
                        targets.pop_front();
                        x = sx;
                        phi = sphi;
                        dphi = sdphi;
                        continue;
                    }
                    // stagnating against a pole not quite on the segment:
                    // nudge around it
                    if let Some(p) = pole_abs {
                        detours.push(p);
                        let rad = opts.detour_radius;
                        let dir_p = (p - x) / (p - x).norm().max(1e-300);
                        let side = C64::new(-dir_p.im, dir_p.re);
                        targets.push_front(x + rad * side + rad * dir_p);
                        continue;
                    }
                    return Err(Error::StepUnderflow { t: x.norm(), h });
                }
            }
        }

        // error-controlled re-anchoring: the full step must agree with two
        // half steps (value drift control) and the endpoint jet must sit on
        // the equation (defect control); halve until both hold
        let (step, pv, dv, residual) = loop {
            let step = dir * h;
            let (pv_f, _, _) = poly::rational_jet(&model.a, &model.b, step);
            let (dv_f, _, _) = poly::rational_jet(&model.ad, &model.bd, step);
            // midpoint re-anchor
            let (pm, _, _) = poly::rational_jet(&model.a, &model.b, 0.5 * step);
            let (dm, _, _) = poly::rational_jet(&model.ad, &model.bd, 0.5 * step);
            let mid = local_model(pm, dm, opts.taylor_order);
            let (pv2, pd1, pd2) = poly::rational_jet(&mid.a, &mid.b, 0.5 * step);
            let (dv2, _, _) = poly::rational_jet(&mid.ad, &mid.bd, 0.5 * step);
            let residual = (pd2 - pd1 - pv2 * pv2).norm();
            let drift = (pv_f - pv2).norm() / (1.0 + pv2.norm())
                + (dv_f - dv2).norm() / (1.0 + dv2.norm());
            let ok = drift <= DOUBLING_TARGET
                && residual <= RESIDUAL_TARGET * (1.0 + pv2.norm_sqr());
            if ok || h < 64.0 * opts.stop_dist {
                break (step, pv2, dv2, residual);
            }
            h *= 0.5;
        };
        let x_new = x + step;
        x = x_new;
        phi = pv;
        dphi = dv;
        steps.push(OdeStep {
            x,
            phi,
            dphi,
            sheet,
            pole_estimate: pole_abs,
            pole_dist: d,
            residual,
        });
    }

    // cluster raw candidates, best-anchored first
    raw_candidates.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    let mut singularities: Vec<Candidate> = Vec::new();
    for (pos, _sh, dist) in &raw_candidates {
        match singularities
            .iter_mut()
            .find(|c| (c.position - pos).norm() < opts.cluster_radius)
        {
            Some(c) => c.hits += 1,
            None => singularities
                .push(Candidate { position: *pos, sheet: 0, anchor_dist: *dist, hits: 1 }),
        }
    }

    // sheet bookkeeping: each recorded branch point carries a horizontal
    // cut running to the left; crossing a cut moves between sheets.  (All
    // recorded singularities cut alike, which is the right picture for
    // first/second-sheet exploration; a full Riemann-surface model is out
    // of scope.)
    for i in 1..steps.len() {
        let mut sheet = steps[i - 1].sheet;
        for c in &singularities {
            sheet += cut_crossing(steps[i - 1].x, steps[i].x, c.position);
        }
        steps[i].sheet = sheet;
    }
    // singularity sheets: sheet of the step whose anchor recorded them best
    for c in singularities.iter_mut() {
        if let Some(s) = steps
            .iter()
            .filter(|s| {
                s.pole_estimate.map(|p| (p - c.position).norm() < opts.cluster_radius).unwrap_or(false)
            })
            .min_by(|a, b| a.pole_dist.partial_cmp(&b.pole_dist).unwrap())
        {
            c.sheet = s.sheet;
        }
    }

    Ok(OdePathSolution { waypoints: waypoints.to_vec(), steps, singularities, detours, terminated_at })
}

/// Refined singularity data from a local-model fit on an approach arc.
#[derive(Debug, Clone, Copy)]
pub struct RefinedSingularity {
    pub position: C64,
    /// fitted coefficient of `6/(x-x*)^2` (should be 6)
    pub c2: C64,
    /// fitted coefficient of `1/(x-x*)` (should be 6/5)
    pub c1: C64,
    /// fitted constant term (should be -1/50)
    pub c0: C64,
    pub fit_residual: f64,
    pub refined: bool,
}

/// Refine a located singularity by sampling the solution on an approach arc
/// (8 points, distances 1e-2 .. 1e-3 along the incoming direction) and
/// fitting the local expansion.
///
/// The position is first corrected with the linearising substitution
/// `1/sqrt(phi) ~ (x - x*)/sqrt(c2)`, then the leading coefficients are
/// read off a linear least-squares peel with the position held fixed.
pub fn locate_singularity(
    ic: &SeriesIC,
    candidate: C64,
    incoming: C64,
    opts: &PoleFieldOptions,
) -> Result<RefinedSingularity> {
    let dir = incoming / incoming.norm();
    let rhos: Vec<f64> = (0..8)
        .map(|i| 1e-2 * (0.1f64).powf(i as f64 / 7.0))
        .collect();
    // integrate once to the farthest sample, then walk inward hitting all
    let mut wps = vec![ic.anchor];
    for &r in &rhos {
        wps.push(candidate - dir * r);
    }
    let sol = integrate_path(
        ic,
        &wps,
        &PoleFieldOptions { on_singularity: OnSingularity::Detour, stop_dist: 1e-12, ..opts.clone() },
    )?;
    let mut samples: Vec<(C64, C64)> = Vec::new();
    for &r in &rhos {
        let xp = candidate - dir * r;
        if let Some((ph, _)) = sol.value_at(xp, 1e-10) {
            samples.push((xp, ph));
        }
    }
    if samples.len() < 6 {
        return Err(Error::FitFailed(format!(
            "approach arc produced {} usable samples",
            samples.len()
        )));
    }

    // position refinement: 1/sqrt(phi) is linear in x near a double pole
    let mut sx = C64::new(0.0, 0.0);
    let mut sy = C64::new(0.0, 0.0);
    let mut sxx = C64::new(0.0, 0.0);
    let mut sxy = C64::new(0.0, 0.0);
    let n = samples.len() as f64;
    for (xp, ph) in &samples {
        let psi = 1.0 / ph.sqrt();
        let xr = xp - candidate; // small numbers keep the normal equations tame
        sx += xr;
        sy += psi;
        sxx += xr * xr;
        sxy += xr * psi;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let x_fit = candidate - intercept / slope;

    // Weighted linear peel with the position held fixed: basis
    // zeta^-3 .. zeta.  The zeta^-3 coefficient captures the leading effect
    // of a position error (6/(zeta - dx)^2 contributes 12 dx / zeta^3), so
    // dx = c3/(2 c2) turns the peel into a position corrector; a few
    // iterations pin the pole well enough that the constant term c0 is
    // uncontaminated.
    let peel = |position: C64| -> Result<([C64; 5], f64)> {
        let mut ata = [[C64::new(0.0, 0.0); 5]; 5];
        let mut atb = [C64::new(0.0, 0.0); 5];
        for (xp, ph) in &samples {
            let zeta = xp - position;
            let w = 1.0 / ph.norm();
            let z2 = zeta * zeta;
            let row =
                [1.0 / (z2 * zeta), 1.0 / z2, 1.0 / zeta, C64::new(1.0, 0.0), zeta];
            for i in 0..5 {
                for j in 0..5 {
                    ata[i][j] += row[i].conj() * row[j] * (w * w);
                }
                atb[i] += row[i].conj() * ph * (w * w);
            }
        }
        let coef =
            solve5(ata, atb).ok_or(Error::SingularSystem { context: "local-expansion peel" })?;
        let mut resid = 0.0;
        for (xp, ph) in &samples {
            let zeta = xp - position;
            let model = coef[0] / (zeta * zeta * zeta) + coef[1] / (zeta * zeta)
                + coef[2] / zeta + coef[3] + coef[4] * zeta;
            resid += (model - ph).norm_sqr() / ph.norm_sqr();
        }
        Ok((coef, (resid / n).sqrt()))
    };

    let mut position = if (x_fit - candidate).norm() < 0.3e-2 { x_fit } else { candidate };
    let refined = (x_fit - candidate).norm() < 0.3e-2;
    let mut coef = [C64::new(0.0, 0.0); 5];
    let mut resid = 0.0;
    for _ in 0..4 {
        let (c, r) = peel(position)?;
        coef = c;
        resid = r;
        if coef[1].norm() < 1e-250 {
            break;
        }
        let dx = coef[0] / (2.0 * coef[1]);
        position += dx;
        if dx.norm() < 1e-13 {
            break;
        }
    }

    Ok(RefinedSingularity {
        position,
        c2: coef[1],
        c1: coef[2],
        c0: coef[3],
        fit_residual: resid,
        refined,
    })
}

fn solve5(a: [[C64; 5]; 5], b: [C64; 5]) -> Option<[C64; 5]> {
    // small dense Gaussian elimination with partial pivoting
    let mut m = [[C64::new(0.0, 0.0); 6]; 5];
    for i in 0..5 {
        for j in 0..5 {
            m[i][j] = a[i][j];
        }
        m[i][5] = b[i];
    }
    for col in 0..5 {
        let piv = (col..5).max_by(|&i, &j| {
            m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap()
        })?;
        if m[piv][col].norm() < 1e-250 {
            return None;
        }
        m.swap(col, piv);
        for row in (col + 1)..5 {
            let f = m[row][col] / m[col][col];
            for j in col..6 {
                let upper = m[col][j];
                m[row][j] -= f * upper;
            }
        }
    }
    let mut out = [C64::new(0.0, 0.0); 5];
    for i in (0..5).rev() {
        let mut acc = m[i][5];
        for j in (i + 1)..5 {
            acc -= m[i][j] * out[j];
        }
        out[i] = acc / m[i][i];
    }
    Some(out)
}
