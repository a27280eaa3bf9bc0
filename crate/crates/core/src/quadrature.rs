//! Adaptive Gauss-Kronrod (7-15) quadrature for the handful of integral
//! terms in the asymptotic formulas.  The integrands are smooth and
//! exponentially localised, so plain bisection-to-tolerance is enough.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae/weights and embedded 7-point Gauss weights
// (symmetric; nodes are the positive half).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = WGK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for i in 0..7 {
        let x = h * XGK[i];
        let fv = f(c - x) + f(c + x);
        kron += WGK[i] * fv;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fv;
        }
    }
    (kron * h, (kron - gauss).abs() * h.abs())
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut stack = vec![(a, b, tol)];
    let mut depth_guard = 0usize;
    while let Some((lo, hi, t)) = stack.pop() {
        depth_guard += 1;
        if depth_guard > 100_000 {
            return Err(Error::QuadratureNoConvergence { estimate: total, err: t });
        }
        let (val, err) = gk15(&f, lo, hi);
        if err <= t || (hi - lo).abs() < 1e-14 * (hi.abs() + lo.abs() + 1.0) {
            if err > t.max(1e-300) * 1e3 {
                return Err(Error::QuadratureNoConvergence { estimate: total + val, err });
            }
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t));
            stack.push((mid, hi, 0.5 * t));
        }
    }
    Ok(total)
}

/// `int_{-inf}^{t} e^{2s} / (t_c - s)^2 ds` — the second-harmonic modulation
/// integral.  The integrand decays like `e^{2s}`, so the semi-infinite tail
/// is cut once it is below the tolerance.
pub fn second_mode_integral(t: f64, t_c: f64, tol: f64) -> Result<f64> {
    assert!(t < t_c);
    // substitute s = t - w: e^{2t} int_0^inf e^{-2w} / (t_c - t + w)^2 dw
    let d = t_c - t;
    let cut = 0.5 * (700.0f64.min((1.0 / tol).ln() + 10.0));
    let val = integrate(|w| (-2.0 * w).exp() / ((d + w) * (d + w)), 0.0, cut, tol)?;
    Ok((2.0 * t).exp() * val)
}

/// `C2 = e^{-4 alpha} int_0^alpha (e^{2t} - e^{2 alpha}) / (alpha - t) dt`
/// from the nearly-flat-data blow-up profile.
pub fn flat_data_c2(alpha: f64, tol: f64) -> Result<f64> {
    let f = |t: f64| {
        let d = alpha - t;
        if d.abs() < 1e-12 {
            // limit of (e^{2t} - e^{2a})/(a - t) as t -> a
            -2.0 * (2.0 * alpha).exp()
        } else {
            ((2.0 * t).exp() - (2.0 * alpha).exp()) / d
        }
    };
    Ok((-4.0 * alpha).exp() * integrate(f, 0.0, alpha, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12).unwrap();
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert_relative_eq!(v, exact, epsilon = 1e-12);
    }

    #[test]
    fn gaussian_tail() {
        let v = integrate(|x| (-x * x).exp(), -8.0, 8.0, 1e-12).unwrap();
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), epsilon = 1e-11);
    }

    #[test]
    fn second_mode_reference() {
        // frozen from a 30-digit computation of the exact integral
        let v = second_mode_integral(2.0, 16.0, 1e-12).unwrap();
        assert_relative_eq!(v, 0.13026850820608220925, epsilon = 1e-10);
    }

    #[test]
    fn second_mode_asymptotics() {
        // e^{2t}/(2 (t_c-t)^2) at t_c - t = 50, within 2%
        let t = 5.0;
        let tc = 55.0;
        let v = second_mode_integral(t, tc, 1e-12).unwrap();
        let lead = (2.0 * t).exp() / (2.0 * (tc - t) * (tc - t));
        assert!((v / lead - 1.0).abs() < 0.02, "ratio {}", v / lead);
    }

    #[test]
    fn flat_c2_reference() {
        // frozen from a 30-digit computation
        let v = flat_data_c2(1.0, 1e-12).unwrap();
        assert_relative_eq!(v, -0.17854287997088884976, epsilon = 1e-10);
    }
}
