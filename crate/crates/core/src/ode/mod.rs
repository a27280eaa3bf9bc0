//! The model equation `phi'' - phi' = phi^2` along complex paths: asymptotic
//! boundary data, adaptive Pade one-step integration, singularity location
//! and refinement, and the equianharmonic far-field lattice.
//!
//! The rescaled blow-up variant `sqrt(2) rho' = -rho'' + rho^2` reduces to
//! the same equation through the affine substitution handled by
//! [`blowup_variant_from_base`].

mod pole_field;
mod series;
pub mod weierstrass;

pub use pole_field::{
    integrate_path, locate_singularity, Candidate, OdePathSolution, OdeStep, OnSingularity,
    PoleFieldOptions, RefinedSingularity,
};
pub use series::{
    series_ic_exponential, series_ic_exponential_at, series_ic_logarithmic, taylor_coeffs,
    SeriesIC, SeriesKind,
};
pub use weierstrass::{
    lattice_compare, weierstrass_p, weierstrass_p_pair, LatticeMatch, WeierstrassLattice,
};

use crate::error::Result;
use crate::C64;

/// Solutions of the rescaled blow-up equation `sqrt(2) rho' = -rho'' + rho^2`
/// in terms of the base solution: `rho(xi) = 2 phi(-sqrt(2) xi + c)`.
pub fn blowup_variant_from_base(phi: C64, dphi: C64) -> (C64, C64) {
    (2.0 * phi, -2.0 * std::f64::consts::SQRT_2 * dphi)
}

/// Rectangle in the complex plane for singularity harvesting.
#[derive(Debug, Clone, Copy)]
pub struct ScanRect {
    pub re0: f64,
    pub re1: f64,
    pub im0: f64,
    pub im1: f64,
}

/// Serpentine waypoints covering the rectangle row by row.
pub fn serpentine(rect: &ScanRect, row_step: f64) -> Vec<C64> {
    let mut wps = Vec::new();
    let mut y = rect.im0;
    let mut leftward = false;
    while y <= rect.im1 + 1e-12 {
        let (a, b) = if leftward { (rect.re1, rect.re0) } else { (rect.re0, rect.re1) };
        wps.push(C64::new(a, y));
        wps.push(C64::new(b, y));
        leftward = !leftward;
        y += row_step;
    }
    wps
}

/// Sweep the rectangle along serpentine rows (after walking the given
/// prefix path from the series anchor) and return the clustered
/// singularities recorded on the way.
pub fn scan_region(
    ic: &SeriesIC,
    prefix: &[C64],
    rect: &ScanRect,
    row_step: f64,
    opts: &PoleFieldOptions,
) -> Result<OdePathSolution> {
    let mut wps: Vec<C64> = prefix.to_vec();
    if wps.is_empty() {
        wps.push(ic.anchor);
    }
    wps.extend(serpentine(rect, row_step));
    let opts = PoleFieldOptions { on_singularity: OnSingularity::Detour, ..opts.clone() };
    integrate_path(ic, &wps, &opts)
}

fn merge_candidates(into: &mut Vec<Candidate>, from: Vec<Candidate>, radius: f64) {
    for c in from {
        match into.iter_mut().find(|o| (o.position - c.position).norm() < radius) {
            Some(o) => {
                o.hits += c.hits;
                if c.anchor_dist < o.anchor_dist {
                    o.position = c.position;
                    o.anchor_dist = c.anchor_dist;
                }
            }
            None => into.push(c),
        }
    }
}

/// Harvest the singularity field of the exponential-side solution over a
/// rectangle in the upper half plane.
///
/// The expansion `phi ~ a e^x` holds as `Re x -> -inf` for every height, so
/// each row is integrated independently from its own left anchor; no row
/// ever crosses a branch cut and the whole field sits on the principal
/// sheet by construction.
pub fn scan_exponential_field(
    a: f64,
    rect: &ScanRect,
    row_step: f64,
    opts: &PoleFieldOptions,
) -> Result<Vec<Candidate>> {
    let mut all: Vec<Candidate> = Vec::new();
    let mut y = rect.im0;
    while y <= rect.im1 + 1e-12 {
        let anchor = C64::new(rect.re0, y);
        let ic = series_ic_exponential_at(a, anchor)?;
        let sol = integrate_path(
            &ic,
            &[anchor, C64::new(rect.re1, y)],
            &PoleFieldOptions { on_singularity: OnSingularity::Detour, ..opts.clone() },
        )?;
        merge_candidates(&mut all, sol.singularities, opts.cluster_radius);
        y += row_step;
    }
    Ok(all)
}

/// Harvest the second-sheet singularity field of the algebraic-side
/// solution: continue clockwise around the branch point at `centre` (three
/// quarter turns, landing above it one sheet down), then sweep rows of the
/// upper half plane from the left.
pub fn scan_second_sheet_rows(
    ic: &SeriesIC,
    centre: C64,
    loop_radius: f64,
    rect: &ScanRect,
    row_step: f64,
    opts: &PoleFieldOptions,
) -> Result<Vec<Candidate>> {
    let mut all: Vec<Candidate> = Vec::new();
    let run_opts = PoleFieldOptions { on_singularity: OnSingularity::Detour, ..opts.clone() };
    let mut y = rect.im0;
    while y <= rect.im1 + 1e-12 {
        let th_hub = -1.5 * std::f64::consts::PI;
        let mut wps = vec![ic.anchor, centre + C64::new(loop_radius, 0.0)];
        let n_arc = 16;
        for k in 1..=n_arc {
            let th = th_hub * k as f64 / n_arc as f64;
            wps.push(centre + C64::from_polar(loop_radius, th));
        }
        wps.push(centre + C64::new(0.0, 3.0 * loop_radius));
        wps.push(C64::new(rect.re0, 3.0 * loop_radius));
        wps.push(C64::new(rect.re0, y));
        wps.push(C64::new(rect.re1, y));
        let sol = integrate_path(ic, &wps, &run_opts)?;
        merge_candidates(&mut all, sol.singularities, opts.cluster_radius);
        y += row_step;
    }
    Ok(all)
}

/// Far-field lattice proximity experiment: harvest singularities inside a
/// window, fit the hexagonal lattice on the `xi = e^{zeta/5}` image, and
/// report the mismatch against both the fitted and a reference lattice.
#[derive(Debug, Clone)]
pub struct LatticeProximity {
    pub n_points: usize,
    pub fitted: weierstrass::WeierstrassLattice,
    pub fitted_match: weierstrass::LatticeMatch,
    pub reference_match: weierstrass::LatticeMatch,
}

pub fn lattice_proximity(
    candidates: &[Candidate],
    im_window: (f64, f64),
    xi_window: (f64, f64),
    reference: weierstrass::WeierstrassLattice,
) -> LatticeProximity {
    let xi_points: Vec<C64> = candidates
        .iter()
        .filter(|c| c.anchor_dist < 2e-2 && c.position.im > im_window.0 && c.position.im < im_window.1)
        .map(|c| (c.position / 5.0).exp())
        .filter(|xi| xi.norm() > xi_window.0 && xi.norm() < xi_window.1)
        .collect();
    let zetas: Vec<C64> = xi_points.iter().map(|xi| 5.0 * xi.ln()).collect();
    let fitted = weierstrass::fit_lattice_basins(&xi_points, reference);
    LatticeProximity {
        n_points: xi_points.len(),
        fitted,
        fitted_match: weierstrass::lattice_compare(&zetas, &fitted),
        reference_match: weierstrass::lattice_compare(&zetas, &reference),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_variant_satisfies_its_equation() {
        // finite-difference check: with rho(xi) = 2 phi(-sqrt2 xi),
        // sqrt2 rho' + rho'' - rho^2 = 0 whenever phi'' - phi' = phi^2
        let a = taylor_coeffs(C64::new(0.3, 0.1), C64::new(-0.2, 0.05), 12);
        let phi_at = |x: C64| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for an in a.iter().rev() {
                acc = acc * x + an;
            }
            acc
        };
        let s2 = std::f64::consts::SQRT_2;
        let rho = |xi: C64| 2.0 * phi_at(-s2 * xi);
        let h = 1e-4;
        let xi = C64::new(0.02, -0.01);
        let d1 = (rho(xi + C64::new(h, 0.0)) - rho(xi - C64::new(h, 0.0))) / (2.0 * h);
        let d2 = (rho(xi + C64::new(h, 0.0)) - 2.0 * rho(xi) + rho(xi - C64::new(h, 0.0))) / (h * h);
        let resid = s2 * d1 + d2 - rho(xi) * rho(xi);
        assert!(resid.norm() < 1e-6, "residual {resid}");
        // and the value map agrees
        let (r, _) = blowup_variant_from_base(phi_at(-s2 * xi), C64::new(0.0, 0.0));
        assert!((r - rho(xi)).norm() < 1e-12);
    }
}
