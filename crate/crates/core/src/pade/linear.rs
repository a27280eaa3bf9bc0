//! Rational (linear) Fourier-Pade approximants.

use super::poly;
use super::HalfSeries;
use crate::error::{Error, Result};
use crate::C64;
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct PoleInfo {
    /// location in the disk variable
    pub w: C64,
    /// location in the strip, `z = -i log w`
    pub z: C64,
    pub residue: C64,
}

#[derive(Debug, Clone)]
pub struct RationalApproximant {
    /// numerator coefficients, degree `m`
    pub num: Vec<C64>,
    /// denominator coefficients, degree `n`, constant term 1
    pub den: Vec<C64>,
    /// degrees actually used (reduced when the Toeplitz system degenerates)
    pub degrees: (usize, usize),
    pub requested: (usize, usize),
    /// poles surviving the Froissart filter
    pub poles: Vec<PoleInfo>,
    /// poles discarded as spurious (pole-zero doublets / tiny residues)
    pub filtered: Vec<PoleInfo>,
}

impl RationalApproximant {
    pub fn eval_g(&self, w: C64) -> C64 {
        let den = poly::eval(&self.den, w);
        if den.norm() < 1e-280 {
            return C64::new(f64::INFINITY, 0.0);
        }
        poly::eval(&self.num, w) / den
    }

    /// Full solution value `u(z)`.
    pub fn eval_u(&self, z: C64) -> C64 {
        let w = (C64::i() * z).exp();
        let wc = (C64::i() * z.conj()).exp();
        self.eval_g(w) + self.eval_g(wc).conj()
    }

    /// Height of the pole closest to the real axis (upper half strip).
    pub fn nearest_pole_height(&self) -> Option<f64> {
        self.poles
            .iter()
            .filter(|p| p.z.im > 1e-12)
            .map(|p| p.z.im)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

/// Pade approximant `[m/n]` of the one-sided series.
///
/// Denominator coefficients solve the Toeplitz system that cancels orders
/// `m+1 ..= m+n` of `c * b`; the numerator follows by convolution.  A
/// degenerate system falls back to smaller `n` (reported in `degrees`).
pub fn pade(series: &HalfSeries, m: usize, n: usize) -> Result<RationalApproximant> {
    let mm = series.order();
    if m + n + 1 > mm {
        return Err(Error::InvalidParameter(format!(
            "pade degrees ({m},{n}) need m+n+1 <= series order {mm}"
        )));
    }
    let c = &series.coeffs;
    let mut n_eff = n;
    let den = loop {
        if n_eff == 0 {
            break vec![C64::new(1.0, 0.0)];
        }
        match denominator(c, m, n_eff) {
            Some(b) => break b,
            None => n_eff -= 1,
        }
    };

    // numerator by convolution through order m
    let mut num = vec![C64::new(0.0, 0.0); m + 1];
    for (k, nk) in num.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (j, bj) in den.iter().enumerate().take(k + 1) {
            acc += bj * c[k - j];
        }
        *nk = acc;
    }

    let (poles, filtered) = classify_poles(&num, &den);
    Ok(RationalApproximant {
        num,
        den,
        degrees: (m, n_eff),
        requested: (m, n),
        poles,
        filtered,
    })
}

fn denominator(c: &[C64], m: usize, n: usize) -> Option<Vec<C64>> {
    let at = |idx: isize| -> C64 {
        if idx < 0 {
            C64::new(0.0, 0.0)
        } else {
            c[idx as usize]
        }
    };
    let mut t = DMatrix::<C64>::zeros(n, n);
    let mut rhs = DVector::<C64>::zeros(n);
    for r in 0..n {
        let k = (m + 1 + r) as isize;
        for j in 0..n {
            t[(r, j)] = at(k - 1 - j as isize);
        }
        rhs[r] = -at(k);
    }
    let lu = t.lu();
    let sol = lu.solve(&rhs)?;
    if sol.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || sol.norm() > 1e13 {
        return None;
    }
    let mut den = Vec::with_capacity(n + 1);
    den.push(C64::new(1.0, 0.0));
    den.extend(sol.iter().cloned());
    Some(den)
}

/// Froissart filtering: discard pole-zero doublets closer than 1e-8 and
/// poles whose residue is below 1e-10 of the largest.
fn classify_poles(num: &[C64], den: &[C64]) -> (Vec<PoleInfo>, Vec<PoleInfo>) {
    let pole_ws = poly::roots(den);
    let zero_ws = poly::roots(num);
    let mut infos: Vec<(PoleInfo, bool)> = pole_ws
        .into_iter()
        .map(|w| {
            let dp = poly::eval_deriv(den, w);
            let residue = if dp.norm() > 1e-280 {
                poly::eval(num, w) / dp
            } else {
                C64::new(f64::INFINITY, 0.0)
            };
            let doublet = zero_ws.iter().any(|z| (z - w).norm() < 1e-8);
            (PoleInfo { w, z: super::w_to_z(w), residue }, doublet)
        })
        .collect();
    let max_res = infos
        .iter()
        .map(|(p, _)| p.residue.norm())
        .filter(|r| r.is_finite())
        .fold(0.0, f64::max);
    let mut keep = Vec::new();
    let mut drop = Vec::new();
    for (p, doublet) in infos.drain(..) {
        let tiny = p.residue.norm() < 1e-10 * max_res;
        // never drop a pole with a substantial residue
        let protected = p.residue.norm() >= 1e-6 * max_res;
        if (doublet || tiny) && !protected {
            drop.push(p);
        } else {
            keep.push(p);
        }
    }
    (keep, drop)
}
