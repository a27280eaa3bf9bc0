//! Initial data families and their spectral initialisation.

use crate::error::{Error, Result};
use crate::state::{FourierState, Representation};
use crate::{fourier, C64};

/// Supported initial-data families (all real and 2pi-periodic).
#[derive(Debug, Clone, PartialEq)]
pub enum InitialDataSpec {
    /// `u(x,0) = alpha cos x + beta`
    Cosine { alpha: f64, beta: f64 },
    /// `u(x,0) = 1 / (alpha - eps cos x)`, requires `0 < eps < alpha`
    Flat { alpha: f64, eps: f64 },
    /// `u(x,0) = alpha e^{mu cos(x+delta) - mu} + alpha e^{mu cos(x-delta) - mu}`
    TwoPeak { alpha: f64, mu: f64, delta: f64 },
    /// Raw real samples on the uniform `[-pi, pi)` grid of `2N+2` points.
    Samples(Vec<f64>),
}

impl InitialDataSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 4 {
            return Err(Error::InvalidParameter(format!(
                "truncation order must be at least 4, got {n}"
            )));
        }
        match self {
            InitialDataSpec::Flat { alpha, eps } => {
                if !(*eps > 0.0 && eps < alpha) {
                    return Err(Error::InvalidInitialData(format!(
                        "flat data needs 0 < eps < alpha, got eps={eps}, alpha={alpha} \
                         (data singular on the real axis otherwise)"
                    )));
                }
                Ok(())
            }
            InitialDataSpec::Samples(v) => {
                if v.len() != 2 * n + 2 {
                    return Err(Error::InvalidInitialData(format!(
                        "samples length {} does not match grid size {}",
                        v.len(),
                        2 * n + 2
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            InitialDataSpec::Cosine { alpha, beta } => alpha * x.cos() + beta,
            InitialDataSpec::Flat { alpha, eps } => 1.0 / (alpha - eps * x.cos()),
            InitialDataSpec::TwoPeak { alpha, mu, delta } => {
                alpha * (mu * (x + delta).cos() - mu).exp()
                    + alpha * (mu * (x - delta).cos() - mu).exp()
            }
            InitialDataSpec::Samples(_) => unreachable!("samples are not a closed form"),
        }
    }
}

/// Discrete Fourier transform of the initial data sampled on an oversampled
/// uniform grid; conjugate symmetry is enforced exactly.
pub fn init_state(spec: &InitialDataSpec, n: usize) -> Result<FourierState> {
    spec.validate(n)?;
    let coeffs = match spec {
        InitialDataSpec::Samples(v) => {
            let vals: Vec<C64> = v.iter().map(|&x| C64::new(x, 0.0)).collect();
            fourier::coeffs_from_grid(&vals, n)
        }
        _ => {
            // oversample well beyond the truncation so smooth data is exact
            let m = fourier::padded_len(n).max(4 * n + 4);
            let vals: Vec<C64> = fourier::grid_points(m)
                .iter()
                .map(|&x| C64::new(spec.eval(x), 0.0))
                .collect();
            fourier::coeffs_from_grid(&vals, n)
        }
    };
    let mut state = FourierState::new(0.0, Representation::U, coeffs);
    state.enforce_conjugate_symmetry();
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cosine_modes() {
        let s = init_state(&InitialDataSpec::Cosine { alpha: 1.0, beta: 0.0 }, 16).unwrap();
        assert_relative_eq!(s.coeff(1).re, 0.5, epsilon = 1e-14);
        assert_relative_eq!(s.coeff(-1).re, 0.5, epsilon = 1e-14);
        for k in -16isize..=16 {
            if k.abs() != 1 {
                assert!(s.coeff(k).norm() < 1e-14, "k={k}");
            }
        }
    }

    #[test]
    fn constant_data() {
        let s = init_state(&InitialDataSpec::Cosine { alpha: 0.0, beta: 2.0 }, 8).unwrap();
        assert_relative_eq!(s.coeff(0).re, 2.0, epsilon = 1e-14);
        for k in 1isize..=8 {
            assert!(s.coeff(k).norm() < 1e-14);
            assert!(s.coeff(-k).norm() < 1e-14);
        }
    }

    #[test]
    fn flat_data_matches_quadrature_oracle() {
        // brute-force 4096-point trapezoidal Fourier integral of 1/(1 - 0.001 cos x)
        let (alpha, eps) = (1.0, 0.001);
        let s = init_state(&InitialDataSpec::Flat { alpha, eps }, 32).unwrap();
        let m = 4096;
        for k in 0isize..=32 {
            let mut acc = 0.0;
            for j in 0..m {
                let x = -std::f64::consts::PI
                    + 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                acc += (k as f64 * x).cos() / (alpha - eps * x.cos());
            }
            let ck = acc / m as f64;
            assert!(
                (s.coeff(k).re - ck).abs() < 1e-12,
                "k={k}: {} vs oracle {}",
                s.coeff(k).re,
                ck
            );
            assert!(s.coeff(k).im.abs() < 1e-14);
        }
    }

    #[test]
    fn flat_data_rejects_singular_parameters() {
        assert!(init_state(&InitialDataSpec::Flat { alpha: 1.0, eps: 1.0 }, 8).is_err());
        assert!(init_state(&InitialDataSpec::Flat { alpha: 1.0, eps: 1.5 }, 8).is_err());
    }

    #[test]
    fn samples_length_checked() {
        assert!(init_state(&InitialDataSpec::Samples(vec![0.0; 17]), 8).is_err());
        let s = init_state(&InitialDataSpec::Samples(vec![1.0; 18]), 8).unwrap();
        assert_relative_eq!(s.coeff(0).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_peak_is_even() {
        let s = init_state(
            &InitialDataSpec::TwoPeak { alpha: 6.0, mu: 50.0, delta: 0.4 * std::f64::consts::PI },
            96,
        )
        .unwrap();
        // even data: coefficients real
        for k in -96isize..=96 {
            assert!(s.coeff(k).im.abs() < 1e-12 * fourier::max_abs(&s.coeffs));
        }
    }

    #[test]
    fn small_truncation_rejected() {
        assert!(init_state(&InitialDataSpec::Cosine { alpha: 1.0, beta: 0.0 }, 3).is_err());
    }
}
