//! Strip-grid evaluation of approximants (modulus and phase channels).

use super::{HalfSeries, QuadraticApproximant, RationalApproximant};
use crate::error::{Error, Result};
use crate::C64;

/// Rectangular grid in the strip `[x0, x1] x [y0, y1]`, `y >= 0`.
#[derive(Debug, Clone, Copy)]
pub struct StripGrid {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl StripGrid {
    pub fn point(&self, i: usize, j: usize) -> C64 {
        let x = if self.nx > 1 {
            self.x0 + (self.x1 - self.x0) * i as f64 / (self.nx - 1) as f64
        } else {
            self.x0
        };
        let y = if self.ny > 1 {
            self.y0 + (self.y1 - self.y0) * j as f64 / (self.ny - 1) as f64
        } else {
            self.y0
        };
        C64::new(x, y)
    }
}

/// Row-major field samples: index `j * nx + i` for row `j` (fixed `y`).
#[derive(Debug, Clone)]
pub struct Field {
    pub grid: StripGrid,
    pub values: Vec<C64>,
    pub modulus: Vec<f64>,
    /// phase in `[-pi, pi)`
    pub phase: Vec<f64>,
    /// points where the evaluation hit a pole (flagged infinite)
    pub flagged: Vec<usize>,
}

fn phase_of(v: C64) -> f64 {
    let a = v.arg();
    if a >= std::f64::consts::PI {
        a - 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

pub enum Approximant<'a> {
    Rational(&'a RationalApproximant),
    Quadratic(&'a QuadraticApproximant, &'a HalfSeries),
}

/// Evaluate an approximant over the grid.
pub fn evaluate_field(approx: &Approximant, grid: &StripGrid) -> Result<Field> {
    if grid.y0 < 0.0 || grid.y1 < grid.y0 {
        return Err(Error::InvalidParameter("strip grid must sit in y >= 0".into()));
    }
    let mut values = Vec::with_capacity(grid.nx * grid.ny);
    match approx {
        Approximant::Rational(r) => {
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    values.push(r.eval_u(grid.point(i, j)));
                }
            }
        }
        Approximant::Quadratic(q, series) => {
            // walk each column upward keeping the branch continuous from the
            // real axis, where the series fixes it
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    let z = grid.point(i, j);
                    values.push(q.eval_u(series, z));
                }
            }
        }
    }
    let modulus: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let phase: Vec<f64> = values.iter().map(|&v| phase_of(v)).collect();
    let flagged = values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.re.is_finite() || !v.im.is_finite() || v.norm() > 1e280)
        .map(|(i, _)| i)
        .collect();
    Ok(Field { grid: *grid, values, modulus, phase, flagged })
}

/// Accumulated phase change of `u` along a closed polyline (unwrapped);
/// a pole of order `p` enclosed counterclockwise contributes `-2 pi p`.
pub fn phase_winding(values: &[C64]) -> f64 {
    let mut total = 0.0;
    for k in 0..values.len() {
        let a = values[k];
        let b = values[(k + 1) % values.len()];
        if a.norm() == 0.0 || b.norm() == 0.0 {
            continue;
        }
        total += (b / a).arg();
    }
    total
}
