use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Compact interval `[lo, hi]` with finite endpoints and `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return invalid(format!("interval endpoints must be finite, got [{lo}, {hi}]"));
        }
        if lo >= hi {
            return invalid(format!("interval requires lo < hi, got [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Uniform grid on an interval, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    interval: Interval,
    points: Vec<f64>,
    step: f64,
}

impl Grid {
    /// Uniform grid with `count >= 2` nodes. Interior nodes are computed as
    /// `lo + i*step` and the last node is pinned to `hi` exactly.
    pub fn uniform(interval: Interval, count: usize) -> Result<Self> {
        if count < 2 {
            return invalid(format!("grid needs at least 2 points, got {count}"));
        }
        let step = interval.length() / (count - 1) as f64;
        let mut points: Vec<f64> = (0..count).map(|i| interval.lo() + i as f64 * step).collect();
        points[count - 1] = interval.hi();
        Ok(Self { interval, points, step })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Grid with `2*(M-1)+1` nodes; contains every node of `self`.
    pub fn refined(&self) -> Self {
        Self::uniform(self.interval, 2 * (self.len() - 1) + 1).expect("refinement of a valid grid")
    }
}
