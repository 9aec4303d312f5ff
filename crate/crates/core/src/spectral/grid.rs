use crate::error::{Error, Result};

/// Uniform axis `[min, max]` with `steps` nodes, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite, got [{min}, {max}]"
            )));
        }
        if min >= max {
            return Err(Error::InvalidGrid(format!(
                "need min < max, got [{min}, {max}]"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 steps, got {steps}"
            )));
        }
        Ok(Self { min, max, steps })
    }

    /// Node `i`, interpolated so that a symmetric axis has exactly mirrored
    /// nodes and an exact zero at its center.
    pub fn node(&self, i: usize) -> f64 {
        let n = (self.steps - 1) as f64;
        let i = i as f64;
        (self.min * (n - i) + self.max * i) / n
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.steps).map(|i| self.node(i))
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    pub fn spacing(&self) -> f64 {
        self.span() / (self.steps - 1) as f64
    }

    pub fn is_symmetric(&self) -> bool {
        (self.min + self.max).abs() <= 1e-12 * self.max.abs().max(self.min.abs())
    }
}

/// Detuning axis plus an optional drive-strength axis for 2D scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub delta: Axis,
    pub omega: Option<Axis>,
}

impl SweepGrid {
    pub fn new(delta_min: f64, delta_max: f64, steps: usize) -> Result<Self> {
        Ok(Self {
            delta: Axis::new(delta_min, delta_max, steps)?,
            omega: None,
        })
    }

    pub fn with_omega(mut self, omega_min: f64, omega_max: f64, steps: usize) -> Result<Self> {
        if omega_min < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "drive strengths must be ≥ 0, got {omega_min}"
            )));
        }
        self.omega = Some(Axis::new(omega_min, omega_max, steps)?);
        Ok(self)
    }

    pub fn delta_min(&self) -> f64 {
        self.delta.min
    }

    pub fn delta_max(&self) -> f64 {
        self.delta.max
    }

    pub fn steps(&self) -> usize {
        self.delta.steps
    }
}
