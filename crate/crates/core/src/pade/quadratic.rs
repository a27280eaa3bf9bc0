//! Quadratic (Hermite-Pade) approximants: polynomials `(p, q, r)` with
//! `p + q g + r g^2 = O(w^{l+m+n+2})`, giving a two-valued approximation
//! `g = (-q +- sqrt(q^2 - 4 p r)) / (2 r)` that carries square-root branch
//! points and so resolves branch-point singularities of the solution.

use super::poly;
use super::HalfSeries;
use crate::error::{Error, Result};
use crate::C64;
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct BranchPoint {
    pub w: C64,
    pub z: C64,
}

#[derive(Debug, Clone)]
pub struct QuadraticApproximant {
    pub p: Vec<C64>,
    pub q: Vec<C64>,
    pub r: Vec<C64>,
    pub degrees: (usize, usize, usize),
    /// roots of the discriminant `q^2 - 4 p r`
    pub branch_points: Vec<BranchPoint>,
    /// `r` vanished identically: the approximant degenerated to `g = -p/q`
    pub degenerate_linear: bool,
}

impl QuadraticApproximant {
    pub fn discriminant(&self) -> Vec<C64> {
        let qq = poly::convolve(&self.q, &self.q);
        let pr = poly::convolve(&self.p, &self.r);
        let len = qq.len().max(pr.len());
        let mut d = vec![C64::new(0.0, 0.0); len];
        for (i, v) in qq.iter().enumerate() {
            d[i] += v;
        }
        for (i, v) in pr.iter().enumerate() {
            d[i] -= 4.0 * v;
        }
        d
    }

    /// Both branch values at `w`.
    pub fn branches(&self, w: C64) -> (C64, C64) {
        let pv = poly::eval(&self.p, w);
        let qv = poly::eval(&self.q, w);
        let rv = poly::eval(&self.r, w);
        if rv.norm() < 1e-250 {
            let lin = if qv.norm() > 1e-250 { -pv / qv } else { C64::new(f64::INFINITY, 0.0) };
            return (lin, lin);
        }
        let s = (qv * qv - 4.0 * pv * rv).sqrt();
        ((-qv + s) / (2.0 * rv), (-qv - s) / (2.0 * rv))
    }

    /// Branch value continuous along the straight `w`-segment from `w0`
    /// (where the value is `g0`) to `w1`.
    pub fn continue_branch(&self, w0: C64, g0: C64, w1: C64, steps: usize) -> C64 {
        let mut g = g0;
        for s in 1..=steps {
            let w = w0 + (w1 - w0) * (s as f64 / steps as f64);
            let (a, b) = self.branches(w);
            g = if (a - g).norm() <= (b - g).norm() { a } else { b };
        }
        g
    }

    /// `g` at a disk point, starting the branch from the truncated series on
    /// the same ray at the unit circle.
    pub fn eval_g_radial(&self, series: &HalfSeries, w: C64) -> C64 {
        let w_axis = w / w.norm().max(1e-300);
        let g_axis = series.eval(w_axis);
        let (a, b) = self.branches(w_axis);
        let g0 = if (a - g_axis).norm() <= (b - g_axis).norm() { a } else { b };
        self.continue_branch(w_axis, g0, w, 64)
    }

    /// Full solution value by radial branch continuation on both half
    /// series.
    pub fn eval_u(&self, series: &HalfSeries, z: C64) -> C64 {
        let w = (C64::i() * z).exp();
        let wc = (C64::i() * z.conj()).exp();
        self.eval_g_radial(series, w) + self.eval_g_radial(series, wc).conj()
    }

    /// Branch point nearest the unit circle, junk-filtered; the strip
    /// height is `|log|w||`.
    ///
    /// Spurious discriminant roots come in near-coincident clusters (the
    /// degenerate `q^2`-type mechanism), while a genuine square-root branch
    /// point is an isolated simple root; for conjugate-symmetric data the
    /// genuine roots of the one-sided part sit outside the unit circle, so
    /// the inside images are ignored as well.
    pub fn nearest_branch_height(&self) -> Option<f64> {
        let pts = &self.branch_points;
        pts.iter()
            .enumerate()
            .filter(|(i, b)| {
                b.w.norm() > 1.0
                    && pts
                        .iter()
                        .enumerate()
                        .all(|(j, o)| j == *i || (o.w - b.w).norm() > 1e-3)
            })
            .map(|(_, b)| b.z.im)
            .filter(|h| *h > 1e-12)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

/// Build the quadratic approximant with degrees `(l, m, n)` by taking the
/// smallest singular vector of the stacked linear system (orders
/// `0 ..= l+m+n+1` of `p + q g + r g^2`), scaled so the largest coefficient
/// is 1.
pub fn quadratic_pade(
    series: &HalfSeries,
    degrees: (usize, usize, usize),
) -> Result<QuadraticApproximant> {
    let (l, m, n) = degrees;
    let mm = series.order();
    if l + m + n + 2 > mm {
        return Err(Error::InvalidParameter(format!(
            "quadratic degrees ({l},{m},{n}) need l+m+n+2 <= series order {mm}"
        )));
    }
    let rows = l + m + n + 2;
    let cols = l + m + n + 3;
    let g = &series.coeffs;
    let g2 = poly::convolve(g, g);

    // one padding row of zeros makes the matrix square so the thin SVD
    // carries the full right-singular basis including the null direction
    let mut a = DMatrix::<C64>::zeros(cols, cols);
    for k in 0..rows {
        if k <= l {
            a[(k, k)] = C64::new(1.0, 0.0);
        }
        for j in 0..=m.min(k) {
            a[(k, l + 1 + j)] = g[k - j];
        }
        for j in 0..=n.min(k) {
            a[(k, l + 1 + m + 1 + j)] = g2[k - j];
        }
    }

    let svd = a.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::SingularSystem { context: "quadratic-pade svd" })?;
    let row = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.partial_cmp(y.1).unwrap())
        .map(|(i, _)| i)
        .ok_or(Error::SingularSystem { context: "quadratic-pade svd" })?;
    let mut vec: Vec<C64> = (0..cols).map(|j| v_t[(row, j)].conj()).collect();
    let scale = vec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::SingularSystem { context: "quadratic-pade null vector" });
    }
    // gauge: largest coefficient 1 (up to phase)
    let idx = vec
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let gauge = vec[idx];
    for v in vec.iter_mut() {
        *v /= gauge;
    }

    let p = vec[0..=l].to_vec();
    let q = vec[l + 1..=l + 1 + m].to_vec();
    let r = vec[l + m + 2..].to_vec();

    let r_scale = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let degenerate_linear = r_scale < 1e-12;

    let mut out = QuadraticApproximant {
        p,
        q,
        r,
        degrees,
        branch_points: Vec::new(),
        degenerate_linear,
    };
    out.branch_points = poly::roots(&poly::trim(&out.discriminant(), 1e-14))
        .into_iter()
        .map(|w| BranchPoint { w, z: super::w_to_z(w) })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::HalfSeries;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn sqrt_series(order: usize) -> HalfSeries {
        // (1-4w)^{1/2}: central binomial form c_k = -C(2k-2,k-1) * 2 * 4^{...}
        // build by the binomial recurrence c_{k} = c_{k-1} * (k-3/2)/k * (-4) * (-1)
        let mut coeffs = vec![c(1.0)];
        let mut prev = 1.0;
        for k in 1..=order {
            // binom(1/2, k) * (-4)^k
            prev *= (0.5 - (k as f64 - 1.0)) / k as f64;
            coeffs.push(c(prev * (-4.0f64).powi(k as i32)));
        }
        HalfSeries { coeffs }
    }

    #[test]
    fn square_root_exact() {
        // g = sqrt(1-4w): p = -(1-4w), q = 0, r = 1 up to normalisation
        let g = sqrt_series(20);
        let qp = quadratic_pade(&g, (1, 0, 0)).unwrap();
        assert!(!qp.degenerate_linear);
        let r0 = qp.r[0];
        assert!(r0.norm() > 0.1);
        assert!((qp.p[0] / r0 + c(1.0)).norm() < 1e-12, "p0 {:?}", qp.p);
        assert!((qp.p[1] / r0 - c(4.0)).norm() < 1e-12, "p1 {:?}", qp.p);
        assert!(qp.q[0].norm() < 1e-12, "q {:?}", qp.q);
        // branch point at w = 1/4 exactly
        assert_eq!(qp.branch_points.len(), 1);
        assert!((qp.branch_points[0].w - c(0.25)).norm() < 1e-12);
    }

    #[test]
    fn residual_series_is_small() {
        let g = sqrt_series(24);
        let qp = quadratic_pade(&g, (3, 3, 3)).unwrap();
        // p + q g + r g^2 small through order l+m+n+1
        let g2 = poly::convolve(&g.coeffs, &g.coeffs);
        let mut resid = vec![C64::new(0.0, 0.0); 11];
        for k in 0..11 {
            let mut acc = if k <= 3 { qp.p[k] } else { C64::new(0.0, 0.0) };
            for j in 0..=3.min(k) {
                acc += qp.q[j] * g.coeffs[k - j];
                acc += qp.r[j] * g2[k - j];
            }
            resid[k] = acc;
        }
        for v in &resid {
            assert!(v.norm() < 1e-12, "resid {v}");
        }
    }

    #[test]
    fn simple_pole_degenerates_with_small_r() {
        // g = 1/(1-2w) with degrees (0,1,0): the only relation is
        // (1-2w) g - 1 = 0, so r ~ 0 and the discriminant q^2 has a double
        // root at the pole w = 1/2
        let coeffs: Vec<C64> = (0..=12).map(|k| c(2.0f64.powi(k))).collect();
        let g = HalfSeries { coeffs };
        let qp = quadratic_pade(&g, (0, 1, 0)).unwrap();
        assert!(qp.degenerate_linear, "r = {:?}", qp.r);
        let close: Vec<_> =
            qp.branch_points.iter().filter(|b| (b.w - c(0.5)).norm() < 1e-5).collect();
        assert!(close.len() >= 2, "double point near 1/2 expected: {:?}", qp.branch_points);
    }

    #[test]
    fn branch_continuity_crosses_nothing_on_real_ray() {
        let g = sqrt_series(20);
        let qp = quadratic_pade(&g, (1, 0, 0)).unwrap();
        // continue from w = 0.9 down to w = 0.1 along the real axis
        let g0 = g.eval(c(0.1));
        let got = qp.continue_branch(c(0.1), g0, c(0.2), 32);
        let exact = (1.0f64 - 4.0 * 0.2).sqrt();
        assert!((got - c(exact)).norm() < 1e-10);
    }

    #[test]
    fn precondition_enforced() {
        let g = sqrt_series(6);
        assert!(quadratic_pade(&g, (2, 2, 2)).is_err());
    }
}
