//! Discrete Fourier plumbing shared by the solver and the continuation code.
//!
//! Coefficient vectors hold `c_k` for `|k| <= N` in ascending-k order
//! (index `i` maps to `k = i - N`, length `2N+1`).  Grids are uniform on
//! `[-pi, pi)` with `x_j = -pi + 2 pi j / M`.

use crate::C64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn with_plan(m: usize, inverse: bool, buf: &mut [C64]) {
    PLANS.with(|cell| {
        let (planner, cache) = &mut *cell.borrow_mut();
        let plan = cache
            .entry((m, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(m)
                } else {
                    planner.plan_fft_forward(m)
                }
            })
            .clone();
        plan.process(buf);
    });
}

/// Truncation order from a coefficient vector length.
pub fn order_of(coeffs: &[C64]) -> usize {
    debug_assert!(coeffs.len() % 2 == 1);
    coeffs.len() / 2
}

/// Uniform grid points `x_j = -pi + 2 pi j / m`.
pub fn grid_points(m: usize) -> Vec<f64> {
    (0..m)
        .map(|j| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / m as f64)
        .collect()
}

/// Smallest power of two that dealiases the quadratic nonlinearity
/// (at least `2 (2N+1)` points).
pub fn padded_len(n: usize) -> usize {
    (2 * (2 * n + 1)).next_power_of_two()
}

/// Fourier coefficients `c_k`, `|k| <= n`, of samples on the `[-pi, pi)` grid.
///
/// Exact trapezoidal quadrature on the full period; for band-limited data
/// with `values.len() > 2n` this is the exact coefficient.
pub fn coeffs_from_grid(values: &[C64], n: usize) -> Vec<C64> {
    let m = values.len();
    assert!(m >= 2 * n + 2, "grid of {m} points cannot resolve order {n}");
    let mut buf = values.to_vec();
    with_plan(m, false, &mut buf);
    let scale = 1.0 / m as f64;
    (0..2 * n + 1)
        .map(|i| {
            let k = i as isize - n as isize;
            let idx = k.rem_euclid(m as isize) as usize;
            // grid starts at -pi: e^{-ik x_j} = (-1)^k e^{-2 pi i k j / m}
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            buf[idx] * scale * sign
        })
        .collect()
}

/// Evaluate the truncated series on `m` grid points of `[-pi, pi)`.
pub fn eval_grid(coeffs: &[C64], m: usize) -> Vec<C64> {
    let n = order_of(coeffs);
    assert!(m >= 2 * n + 2);
    let mut buf = vec![C64::new(0.0, 0.0); m];
    for (i, &c) in coeffs.iter().enumerate() {
        let k = i as isize - n as isize;
        let idx = k.rem_euclid(m as isize) as usize;
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        buf[idx] = c * sign;
    }
    with_plan(m, true, &mut buf);
    buf
}

/// Direct (non-FFT) evaluation of the series at one point; used for complex
/// arguments and oracle-style checks.
pub fn eval_at(coeffs: &[C64], z: C64) -> C64 {
    let n = order_of(coeffs) as isize;
    let mut acc = C64::new(0.0, 0.0);
    for (i, &c) in coeffs.iter().enumerate() {
        let k = i as isize - n;
        acc += c * (C64::i() * z * k as f64).exp();
    }
    acc
}

/// Coefficients of the truncated square `(u^2)_k`, `|k| <= N`, computed
/// pseudospectrally on a padded grid so that no aliasing enters the
/// retained band.
pub fn dealiased_square(coeffs: &[C64]) -> Vec<C64> {
    let n = order_of(coeffs);
    let m = padded_len(n);
    let mut grid = eval_grid(coeffs, m);
    for v in grid.iter_mut() {
        *v = *v * *v;
    }
    coeffs_from_grid(&grid, n)
}

/// Spectral derivative: `c_k -> i k c_k`.
pub fn derivative(coeffs: &[C64]) -> Vec<C64> {
    let n = order_of(coeffs) as isize;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| c * C64::new(0.0, (i as isize - n) as f64))
        .collect()
}

/// Project onto the conjugate-symmetric subspace `c_{-k} = conj(c_k)`
/// (real-valued on the real axis).
pub fn enforce_conjugate_symmetry(coeffs: &mut [C64]) {
    let n = order_of(coeffs);
    for k in 1..=n {
        let a = coeffs[n + k];
        let b = coeffs[n - k];
        let avg = 0.5 * (a + b.conj());
        coeffs[n + k] = avg;
        coeffs[n - k] = avg.conj();
    }
    coeffs[n] = C64::new(coeffs[n].re, 0.0);
}

pub fn max_abs(coeffs: &[C64]) -> f64 {
    coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `max(|c_N|, |c_-N|) / max_k |c_k|`; large values mean the truncation is
/// not resolving the solution.
pub fn tail_ratio(coeffs: &[C64]) -> f64 {
    let n = order_of(coeffs);
    let m = max_abs(coeffs);
    if m == 0.0 {
        return 0.0;
    }
    coeffs[0].norm().max(coeffs[2 * n].norm()) / m
}
