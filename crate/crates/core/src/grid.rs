//! Uniform sampling grids and the functions that live on them.
//!
//! A [`SampledFunction`] stands for an element of the Hilbert space through its
//! values on a finite uniform grid. The inner product is the constant-weight
//! quadrature `step * sum(a[i] * b[i])`, which keeps it exactly bilinear.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Uniform grid `start, start + step, ..., end` with `points` samples.
///
/// Two grids are equal only when `start`, `end` and `points` are bitwise equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    end: f64,
    points: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {points}"
            )));
        }
        if end <= start {
            return Err(Error::InvalidGrid(format!(
                "end ({end}) must exceed start ({start})"
            )));
        }
        Ok(Grid { start, end, points })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }

    /// `start + i * step`.
    pub fn abscissa(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step()
    }

    pub fn abscissae(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        let step = self.step();
        (0..self.points).map(move |i| self.start + i as f64 * step)
    }

    pub(crate) fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x {}", self.start, self.end, self.points)
    }
}

/// A real waveform sampled on a [`Grid`].
///
/// Values are immutable and reference counted, so cloning is cheap and families
/// of functions can share storage between versions.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Arc<[f64]>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.points() {
            return Err(Error::LengthMismatch {
                expected: grid.points(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self::from_parts(grid, values))
    }

    pub(crate) fn from_parts(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.points());
        SampledFunction {
            grid,
            values: values.into(),
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::from_parts(grid, vec![0.0; grid.points()])
    }

    /// Samples `f` at every abscissa of `grid`.
    ///
    /// Panics if `f` returns a non-finite value.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = grid.abscissae().map(f).collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "sampled function produced a non-finite value"
        );
        Self::from_parts(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn inner(&self, other: &SampledFunction) -> Result<f64> {
        inner(self, other)
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(self)
    }

    pub fn norm(&self) -> f64 {
        norm_sq(self).sqrt()
    }

    pub fn scaled(&self, scale: f64) -> SampledFunction {
        let values = self.values.iter().map(|v| v * scale).collect();
        Self::from_parts(self.grid, values)
    }

    /// `self + scale * x`.
    pub fn axpy(&self, scale: f64, x: &SampledFunction) -> Result<SampledFunction> {
        axpy(self, scale, x)
    }

    pub fn sub(&self, x: &SampledFunction) -> Result<SampledFunction> {
        axpy(self, -1.0, x)
    }

    /// Largest absolute pointwise difference. Grids must match.
    pub fn max_abs_diff(&self, other: &SampledFunction) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Quadrature inner product `step * sum(a[i] * b[i])`.
///
/// Scalars are real, so the conjugation on the left slot is the identity.
pub fn inner(a: &SampledFunction, b: &SampledFunction) -> Result<f64> {
    a.grid.ensure_same(&b.grid)?;
    Ok(a.grid.step() * dot(&a.values, &b.values))
}

pub fn norm_sq(a: &SampledFunction) -> f64 {
    a.grid.step() * dot(&a.values, &a.values)
}

/// Pointwise `y + scale * x`, returned as a new function.
pub fn axpy(y: &SampledFunction, scale: f64, x: &SampledFunction) -> Result<SampledFunction> {
    y.grid.ensure_same(&x.grid)?;
    let values = y
        .values
        .iter()
        .zip(x.values.iter())
        .map(|(yi, xi)| yi + scale * xi)
        .collect();
    Ok(SampledFunction::from_parts(y.grid, values))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Linear combination `sum(coefficients[n] * functions[n])`.
pub fn linear_combination(
    grid: Grid,
    coefficients: &[f64],
    functions: &[SampledFunction],
) -> Result<SampledFunction> {
    if coefficients.len() != functions.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients for {} functions",
            coefficients.len(),
            functions.len()
        )));
    }
    let mut acc = vec![0.0; grid.points()];
    for (c, f) in coefficients.iter().zip(functions) {
        grid.ensure_same(f.grid())?;
        for (a, v) in acc.iter_mut().zip(f.values()) {
            *a += c * v;
        }
    }
    Ok(SampledFunction::from_parts(grid, acc))
}
