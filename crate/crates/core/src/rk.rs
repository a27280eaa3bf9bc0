//! Dormand-Prince 5(4) embedded pair with PI step-size control.
//!
//! The tableau is shared by the plain driver below (small real systems:
//! two-mode flow, reference ODE runs) and by the integrating-factor spectral
//! stepper in [`crate::solver`], which applies the same pair to the Fourier
//! system after exactly propagating the stiff diffusion part.

use crate::error::{Error, Result};

pub const STAGES: usize = 7;

pub const C: [f64; STAGES] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

pub const A: [[f64; 6]; STAGES] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// 5th-order weights (same as the last row of `A`; FSAL).
pub const B5: [f64; STAGES] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Embedded 4th-order weights.
pub const B4: [f64; STAGES] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// PI controller constants (Hairer's DOPRI5 defaults).
#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    pub safe: f64,
    pub fac_min: f64,
    pub fac_max: f64,
    pub beta: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { safe: 0.9, fac_min: 0.2, fac_max: 10.0, beta: 0.04 }
    }
}

impl StepControl {
    pub fn factor(&self, err: f64, err_old: f64) -> f64 {
        let expo1 = 0.2 - self.beta * 0.75;
        let fac11 = err.max(1e-300).powf(expo1);
        let fac = fac11 / err_old.max(1e-300).powf(self.beta);
        (self.safe / fac).clamp(1.0 / self.fac_max, 1.0 / self.fac_min)
    }
}

pub enum Control {
    Continue,
    Stop,
}

/// Plain adaptive DP5(4) for small real systems.
///
/// `observer` sees every accepted `(t, y)` and may stop the run.  Returns
/// the final `(t, y)`.
pub fn integrate<F, O>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    rtol: f64,
    atol: f64,
    mut observer: O,
) -> Result<(f64, Vec<f64>)>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
    O: FnMut(f64, &[f64]) -> Control,
{
    let dim = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; STAGES];
    k[0] = f(t, &y);
    let ctrl = StepControl::default();
    let mut err_old = 1e-4_f64;
    let mut h = initial_step(&y, &k[0], rtol, atol, t_end - t0);
    if let Control::Stop = observer(t, &y) {
        return Ok((t, y));
    }

    let mut rejected = false;
    while t < t_end {
        h = h.min(t_end - t);
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t, h });
        }
        for i in 1..STAGES {
            let mut yi = y.clone();
            for (j, kj) in k.iter().enumerate().take(i) {
                let a = A[i][j];
                if a != 0.0 {
                    for d in 0..dim {
                        yi[d] += h * a * kj[d];
                    }
                }
            }
            k[i] = f(t + C[i] * h, &yi);
        }
        let mut y5 = y.clone();
        let mut err_acc = 0.0;
        for d in 0..dim {
            let mut dy5 = 0.0;
            let mut dy4 = 0.0;
            for i in 0..STAGES {
                dy5 += B5[i] * k[i][d];
                dy4 += B4[i] * k[i][d];
            }
            y5[d] += h * dy5;
            let sc = atol + rtol * y[d].abs().max(y5[d].abs());
            let e = h * (dy5 - dy4) / sc;
            err_acc += e * e;
        }
        let err = (err_acc / dim as f64).sqrt();
        if err <= 1.0 {
            t += h;
            // FSAL: k7 evaluated at (t+h, y5) equals f there
            k[0] = f(t, &y5);
            y = y5;
            let mut fac = ctrl.factor(err, err_old);
            if rejected {
                fac = fac.min(1.0);
            }
            h *= fac;
            err_old = err.max(1e-4);
            rejected = false;
            if let Control::Stop = observer(t, &y) {
                break;
            }
        } else {
            h *= ctrl.factor(err, err_old).min(1.0);
            rejected = true;
        }
    }
    Ok((t, y))
}

/// Hairer's cheap starting-step heuristic.
pub fn initial_step(y: &[f64], f0: &[f64], rtol: f64, atol: f64, span: f64) -> f64 {
    let d0: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let d1: f64 = f0.iter().map(|v| v * v).sum::<f64>().sqrt();
    let h0 = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
    (h0 * (rtol.min(atol.max(1e-16))).powf(0.2) / 1e-2)
        .min(span.abs() / 10.0)
        .max(1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tableau_order_conditions() {
        let sb5: f64 = B5.iter().sum();
        let sb4: f64 = B4.iter().sum();
        assert_relative_eq!(sb5, 1.0, epsilon = 1e-15);
        assert_relative_eq!(sb4, 1.0, epsilon = 1e-15);
        let sbc: f64 = (0..STAGES).map(|i| B5[i] * C[i]).sum();
        assert_relative_eq!(sbc, 0.5, epsilon = 1e-15);
        let sbc2: f64 = (0..STAGES).map(|i| B5[i] * C[i] * C[i]).sum();
        assert_relative_eq!(sbc2, 1.0 / 3.0, epsilon = 1e-15);
        // row sums of A equal C
        for i in 0..STAGES {
            let r: f64 = A[i].iter().sum();
            assert_relative_eq!(r, C[i], epsilon = 1e-13);
        }
    }

    #[test]
    fn exponential_decay() {
        let (t, y) = integrate(
            |_t, y| vec![-y[0]],
            0.0,
            &[1.0],
            3.0,
            1e-10,
            1e-12,
            |_, _| Control::Continue,
        )
        .unwrap();
        assert_relative_eq!(y[0], (-t).exp(), epsilon = 1e-9);
    }

    #[test]
    fn riccati_blowup_approach() {
        // y' = y^2, y(0)=1 -> y = 1/(1-t)
        let (_, y) = integrate(
            |_t, y| vec![y[0] * y[0]],
            0.0,
            &[1.0],
            0.9,
            1e-10,
            1e-12,
            |_, _| Control::Continue,
        )
        .unwrap();
        assert_relative_eq!(y[0], 10.0, epsilon = 1e-7);
    }
}
