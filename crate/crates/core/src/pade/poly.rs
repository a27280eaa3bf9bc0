//! Dense complex polynomials: evaluation, convolution, and root finding by
//! the Aberth-Ehrlich simultaneous iteration.

use crate::C64;

/// Coefficients in ascending order; `p[k]` multiplies `w^k`.
pub fn eval(p: &[C64], w: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        acc = acc * w + c;
    }
    acc
}

pub fn eval_deriv(p: &[C64], w: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (k, &c) in p.iter().enumerate().rev().take_while(|(k, _)| *k >= 1) {
        acc = acc * w + c * k as f64;
    }
    acc
}

pub fn eval_deriv2(p: &[C64], w: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (k, &c) in p.iter().enumerate().rev().take_while(|(k, _)| *k >= 2) {
        acc = acc * w + c * (k * (k - 1)) as f64;
    }
    acc
}

/// Value, first and second derivative of the rational `A/B` at `w`.
pub fn rational_jet(a: &[C64], b: &[C64], w: C64) -> (C64, C64, C64) {
    let av = eval(a, w);
    let bv = eval(b, w);
    let ad = eval_deriv(a, w);
    let bd = eval_deriv(b, w);
    let add = eval_deriv2(a, w);
    let bdd = eval_deriv2(b, w);
    let v = av / bv;
    let d1 = (ad - v * bd) / bv;
    let d2 = (add - 2.0 * d1 * bd - v * bdd) / bv;
    (v, d1, d2)
}

pub fn convolve(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Strip trailing (near-)zero leading coefficients relative to the largest.
pub fn trim(p: &[C64], rel: f64) -> Vec<C64> {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut end = p.len();
    while end > 1 && p[end - 1].norm() <= rel * scale {
        end -= 1;
    }
    p[..end].to_vec()
}

/// All roots of `p` (degree = len-1 after trimming) via Aberth-Ehrlich.
///
/// Starting points sit on a circle of the root-magnitude scale; the
/// iteration is damped and in practice converges in well under 100 sweeps.
pub fn roots(p: &[C64]) -> Vec<C64> {
    let pt = trim(p, 1e-300);
    let n = pt.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-pt[0] / pt[1]];
    }
    // Cauchy-style radius estimate
    let lead = pt[n].norm();
    let mut radius = 0.0f64;
    for (k, c) in pt.iter().enumerate().take(n) {
        if c.norm() > 0.0 {
            let r = (c.norm() / lead).powf(1.0 / (n - k) as f64);
            radius = radius.max(r);
        }
    }
    radius = radius.max(1e-12) * 1.2;

    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            radius * C64::new(th.cos(), th.sin())
        })
        .collect();

    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pv = eval(&pt, z[i]);
            let dv = eval_deriv(&pt, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() > 0.0 { pv / dv } else { C64::new(1e-3, 0.0) };
            let mut s = C64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i] - zj;
                    if d.norm() > 1e-300 {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}
