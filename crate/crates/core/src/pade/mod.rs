//! Analytic continuation of a Fourier state into the complex strip.
//!
//! With `w = exp(iz)` the upper-half-plane part of the series becomes a
//! Taylor series `g(w) = c_0/2 + sum_{k>=1} c_k w^k`; rational and quadratic
//! (square-root carrying) approximants of `g` continue the solution off the
//! real axis, and `u(z) = g(e^{iz}) + conj(g(e^{i conj z}))` restores the
//! full real-on-axis solution.

mod field;
mod linear;
pub mod poly;
mod quadratic;

pub use field::{evaluate_field, phase_winding, Approximant, Field, StripGrid};
pub use linear::{pade, PoleInfo, RationalApproximant};
pub use quadratic::{quadratic_pade, BranchPoint, QuadraticApproximant};

use crate::error::{Error, Result};
use crate::state::Representation;
use crate::{FourierState, C64};

/// One-sided Taylor coefficients of the upper-half-plane analytic part.
#[derive(Debug, Clone)]
pub struct HalfSeries {
    /// `a_j`, `j = 0..=m`; `a_0 = c_0/2`, `a_j = c_j`.
    pub coeffs: Vec<C64>,
}

impl HalfSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Truncated direct summation of `g` at `w`.
    pub fn eval(&self, w: C64) -> C64 {
        poly::eval(&self.coeffs, w)
    }

    /// Reconstruct `u(z) = g(e^{iz}) + conj(g(e^{i conj z}))` by direct
    /// summation (reference route; approximants replace `g` off the axis).
    pub fn reconstruct(&self, z: C64) -> C64 {
        let w = (C64::i() * z).exp();
        let wc = (C64::i() * z.conj()).exp();
        self.eval(w) + self.eval(wc).conj()
    }
}

/// One-sided series of a U-representation state.
pub fn split_series(state: &FourierState) -> Result<HalfSeries> {
    if state.repr != Representation::U {
        return Err(Error::Representation { expected: Representation::U, got: state.repr });
    }
    let mut coeffs = Vec::with_capacity(state.n + 1);
    coeffs.push(0.5 * state.coeff(0));
    for k in 1..=state.n {
        coeffs.push(state.coeff(k as isize));
    }
    Ok(HalfSeries { coeffs })
}

/// Map a disk point to the strip via `z = -i log w` and reflect into the
/// upper half.
///
/// For conjugate-symmetric data a singularity of `u` at `z_* = x + iy`
/// (`y > 0`) shows up in the one-sided part `g` at `w = e^{y + ix}`
/// (outside the unit circle: the inside image belongs to the conjugated
/// half).  The physical upper-half location is therefore recovered as
/// `arg(w) + i |log|w||`.
pub fn w_to_z(w: C64) -> C64 {
    C64::new(w.arg(), w.norm().ln().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::{init_state, InitialDataSpec};
    use crate::solver::{advance, SolveOptions};
    use approx::assert_relative_eq;

    #[test]
    fn cosine_splits_to_half_mode() {
        let s = init_state(&InitialDataSpec::Cosine { alpha: 1.0, beta: 0.0 }, 8).unwrap();
        let g = split_series(&s).unwrap();
        assert!(g.coeffs[0].norm() < 1e-15);
        assert_relative_eq!(g.coeffs[1].re, 0.5, epsilon = 1e-14);
        for j in 2..=8 {
            assert!(g.coeffs[j].norm() < 1e-14);
        }
    }

    #[test]
    fn constant_splits_to_half_value() {
        let s = init_state(&InitialDataSpec::Cosine { alpha: 0.0, beta: 3.0 }, 8).unwrap();
        let g = split_series(&s).unwrap();
        assert_relative_eq!(g.coeffs[0].re, 1.5, epsilon = 1e-14);
        for j in 1..=8 {
            assert!(g.coeffs[j].norm() < 1e-14);
        }
    }

    #[test]
    fn reconstruction_matches_direct_summation() {
        // evolve cosine data a little, then compare g-reconstruction with
        // the direct Fourier sum on 64 real grid points
        let s0 = init_state(&InitialDataSpec::Cosine { alpha: 1.0, beta: 0.0 }, 32).unwrap();
        let traj = advance(&s0, 0.2, &SolveOptions::default()).unwrap();
        let s = traj.last_state();
        let g = split_series(s).unwrap();
        for &x in crate::fourier::grid_points(64).iter() {
            let z = C64::new(x, 0.0);
            let direct = s.eval(z);
            let rec = g.reconstruct(z);
            assert!((direct - rec).norm() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn w_to_z_upper_half() {
        let z = w_to_z(C64::new(0.0, 0.5));
        assert_relative_eq!(z.re, std::f64::consts::FRAC_PI_2, epsilon = 1e-14);
        assert_relative_eq!(z.im, 0.5f64.recip().ln(), epsilon = 1e-14);
        assert!(z.im > 0.0);
        // outside the circle reflects to the same height
        let zo = w_to_z(C64::new(0.0, 2.0));
        assert_relative_eq!(zo.im, 2.0f64.ln(), epsilon = 1e-14);
        assert!(zo.im > 0.0);
    }
}
