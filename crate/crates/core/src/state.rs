//! Solver state: truncated Fourier coefficients at a time instant.

use crate::{fourier, C64};

/// Which variable the coefficients describe: the solution itself or its
/// reciprocal `v = 1/u` (used close to blow up, where `v -> 0` is benign).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    U,
    V,
}

/// Truncated Fourier coefficients `c_k`, `|k| <= n`, at time `t`.
#[derive(Debug, Clone)]
pub struct FourierState {
    pub t: f64,
    pub n: usize,
    pub repr: Representation,
    /// `c_k` in ascending-k order, length `2n+1`.
    pub coeffs: Vec<C64>,
}

impl FourierState {
    pub fn new(t: f64, repr: Representation, coeffs: Vec<C64>) -> Self {
        let n = fourier::order_of(&coeffs);
        Self { t, n, repr, coeffs }
    }

    /// Coefficient for wavenumber `k` (0 outside the truncation).
    pub fn coeff(&self, k: isize) -> C64 {
        let n = self.n as isize;
        if k.abs() > n {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    /// Values on an `m`-point uniform grid of `[-pi, pi)`.
    pub fn grid_values(&self, m: usize) -> Vec<C64> {
        fourier::eval_grid(&self.coeffs, m)
    }

    /// Evaluate the truncated series at a (possibly complex) point.
    pub fn eval(&self, z: C64) -> C64 {
        fourier::eval_at(&self.coeffs, z)
    }

    /// `max(|c_{+N}|, |c_{-N}|)/max_k|c_k|`; the under-resolution flag
    /// compares this against `SolveOptions::tail_flag_ratio`.
    pub fn tail_ratio(&self) -> f64 {
        fourier::tail_ratio(&self.coeffs)
    }

    /// Whether the truncated tail is too large for coefficient-decay fits.
    pub fn is_under_resolved(&self, flag_ratio: f64) -> bool {
        self.tail_ratio() > flag_ratio
    }

    /// Re-expand to a larger truncation order by zero padding (exact).
    pub fn padded_to(&self, n_new: usize) -> FourierState {
        assert!(n_new >= self.n);
        let mut coeffs = vec![C64::new(0.0, 0.0); 2 * n_new + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[n_new - self.n + i] = c;
        }
        FourierState::new(self.t, self.repr, coeffs)
    }

    pub fn enforce_conjugate_symmetry(&mut self) {
        fourier::enforce_conjugate_symmetry(&mut self.coeffs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_indexing() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 5];
        coeffs[3] = C64::new(0.5, 0.0); // k = +1
        coeffs[1] = C64::new(0.5, 0.0); // k = -1
        let s = FourierState::new(0.0, Representation::U, coeffs);
        assert_eq!(s.n, 2);
        assert_eq!(s.coeff(1).re, 0.5);
        assert_eq!(s.coeff(-1).re, 0.5);
        assert_eq!(s.coeff(2).re, 0.0);
        assert_eq!(s.coeff(5).re, 0.0);
    }

    #[test]
    fn padding_preserves_values() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 5];
        coeffs[3] = C64::new(0.5, 0.0);
        coeffs[1] = C64::new(0.5, 0.0);
        let s = FourierState::new(0.0, Representation::U, coeffs);
        let p = s.padded_to(8);
        let z = C64::new(0.3, 0.1);
        assert!((s.eval(z) - p.eval(z)).norm() < 1e-15);
    }
}
