//! Empirical measures, cumulative distribution evaluation, and the two
//! concrete norms used by every test: the supremum over a grid of cells and a
//! weighted L2 distance on a grid.
//!
//! Step functions (ECDFs) are compared against continuous CDFs exactly by
//! evaluating at every grid point and, when the grid asks for it, at the left
//! limit of every grid point. Comparisons are exact `<=`; no tolerances.

use alloc::vec::Vec;

#[allow(unused_imports)]
use crate::float::*;
use crate::{Error, Result};

/// A univariate sample in raw observation order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample1D {
    values: Vec<f64>,
}

impl Sample1D {
    /// Validates that the sample is nonempty and all values are finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// A bivariate sample in raw observation order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample2D {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Sample2D {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        let (xs, ys) = pairs.into_iter().unzip();
        Self::from_coords(xs, ys)
    }

    pub fn from_coords(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::ShapeMismatch);
        }
        if xs.is_empty() {
            return Err(Error::EmptySample);
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(Self { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn pair(&self, i: usize) -> (f64, f64) {
        (self.xs[i], self.ys[i])
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }
}

/// A sample of either shape, as consumed by schemes, the engine, and the
/// simulation harness.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleData {
    Univariate(Sample1D),
    Bivariate(Sample2D),
}

impl SampleData {
    pub fn n(&self) -> usize {
        match self {
            SampleData::Univariate(s) => s.n(),
            SampleData::Bivariate(s) => s.n(),
        }
    }

    pub fn as_univariate(&self) -> crate::Result<&Sample1D> {
        match self {
            SampleData::Univariate(s) => Ok(s),
            SampleData::Bivariate(_) => Err(Error::ShapeMismatch),
        }
    }

    pub fn as_bivariate(&self) -> crate::Result<&Sample2D> {
        match self {
            SampleData::Bivariate(s) => Ok(s),
            SampleData::Univariate(_) => Err(Error::ShapeMismatch),
        }
    }
}

/// Empirical CDF of a univariate sample. Ties count with multiplicity.
pub fn ecdf_eval(s: &Sample1D, x: f64) -> f64 {
    let count = s.values.iter().filter(|&&v| v <= x).count();
    count as f64 / s.n() as f64
}

/// Joint empirical CDF of a bivariate sample.
pub fn joint_ecdf_eval(s: &Sample2D, x: f64, y: f64) -> f64 {
    let count = (0..s.n())
        .filter(|&i| s.xs[i] <= x && s.ys[i] <= y)
        .count();
    count as f64 / s.n() as f64
}

/// A function of one real variable that may have jumps.
///
/// `left_value` returns the limit from the left; the default is the value
/// itself, which is correct for continuous functions.
pub trait Curve {
    fn value(&self, x: f64) -> f64;
    fn left_value(&self, x: f64) -> f64 {
        self.value(x)
    }
}

impl<F: Fn(f64) -> f64> Curve for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

/// A sorted-sample ECDF with O(log n) evaluation and exact left limits.
#[derive(Debug, Clone)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn from_sample(s: &Sample1D) -> Self {
        Self::from_values(s.values())
    }

    pub fn from_values(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self { sorted }
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

impl Curve for Ecdf {
    fn value(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    fn left_value(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v < x);
        count as f64 / self.sorted.len() as f64
    }
}

/// A sorted 1-D evaluation grid, optionally including left limits.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    points: Vec<f64>,
    include_left_limits: bool,
}

impl EvalGrid {
    pub fn new(mut points: Vec<f64>, include_left_limits: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        points.sort_by(f64::total_cmp);
        Ok(Self {
            points,
            include_left_limits,
        })
    }

    /// Grid over the sample's own observation points with left limits, the
    /// exact discretization for step-vs-continuous sup distances.
    pub fn from_sample(s: &Sample1D) -> Self {
        let mut points = s.values().to_vec();
        points.sort_by(f64::total_cmp);
        Self {
            points,
            include_left_limits: true,
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn include_left_limits(&self) -> bool {
        self.include_left_limits
    }
}

/// Which norm to apply and the discretization it runs on.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    /// Supremum of |f - g| over the grid (and left limits when the grid
    /// carries them).
    SupOnCells { grid: EvalGrid },
    /// sqrt( sum_j w_j (f(t_j) - g(t_j))^2 ).
    L2Grid { grid: EvalGrid, weights: Vec<f64> },
}

impl NormSpec {
    pub fn sup(grid: EvalGrid) -> Self {
        NormSpec::SupOnCells { grid }
    }

    pub fn l2(grid: EvalGrid, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != grid.points().len() {
            return Err(Error::InvalidWeights);
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights);
        }
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidWeights);
        }
        Ok(NormSpec::L2Grid { grid, weights })
    }

    pub fn grid(&self) -> &EvalGrid {
        match self {
            NormSpec::SupOnCells { grid } => grid,
            NormSpec::L2Grid { grid, .. } => grid,
        }
    }

    /// Distance between two curves under this norm.
    pub fn distance(&self, f: &dyn Curve, g: &dyn Curve) -> f64 {
        match self {
            NormSpec::SupOnCells { grid } => sup_grid_distance(f, g, grid),
            NormSpec::L2Grid { grid, weights } => {
                let mut acc = 0.0;
                for (&t, &w) in grid.points().iter().zip(weights) {
                    let d = f.value(t) - g.value(t);
                    acc += w * d * d;
                }
                acc.sqrt()
            }
        }
    }
}

/// Max of |f - g| over the grid points, and over their left limits when the
/// grid includes them. Exact for a step function against a continuous CDF
/// whenever the grid contains every jump point of the step function.
pub fn sup_grid_distance(f: &dyn Curve, g: &dyn Curve, grid: &EvalGrid) -> f64 {
    let mut sup = 0.0f64;
    for &t in grid.points() {
        sup = sup.max((f.value(t) - g.value(t)).abs());
        if grid.include_left_limits() {
            sup = sup.max((f.left_value(t) - g.left_value(t)).abs());
        }
    }
    sup
}

/// Weighted L2 distance on the grid; errors unless `norm` is `L2Grid`.
pub fn l2_grid_distance(f: &dyn Curve, g: &dyn Curve, norm: &NormSpec) -> Result<f64> {
    match norm {
        NormSpec::L2Grid { .. } => Ok(norm.distance(f, g)),
        NormSpec::SupOnCells { .. } => Err(Error::NormKindMismatch),
    }
}

/// A function of two real variables.
pub trait Curve2D {
    fn value(&self, x: f64, y: f64) -> f64;
}

impl<F: Fn(f64, f64) -> f64> Curve2D for F {
    fn value(&self, x: f64, y: f64) -> f64 {
        self(x, y)
    }
}

/// Max of |f - g| over a list of 2-D grid points.
pub fn sup_grid_distance_2d(f: &dyn Curve2D, g: &dyn Curve2D, points: &[(f64, f64)]) -> f64 {
    let mut sup = 0.0f64;
    for &(x, y) in points {
        sup = sup.max((f.value(x, y) - g.value(x, y)).abs());
    }
    sup
}
