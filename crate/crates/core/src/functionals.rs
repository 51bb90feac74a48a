//! The phi maps and the observed and bootstrap test statistics.
//!
//! Each testing problem measures `sqrt(n) * ||phi(H_n)||` for a functional
//! that vanishes exactly on the null hypothesis:
//!
//! * independence: `phi(H) = H - P (x) Q`, sup over the product grid of the
//!   observed coordinates (exact: all functions involved are constant between
//!   data points),
//! * regression slope: `phi(H) = cov / var(X)` (plain) or `cov / sd(X)`
//!   (studentised),
//! * goodness-of-fit: `phi(H, theta) = H - F_theta` under a sup or
//!   weighted-L2 norm,
//! * copula goodness-of-fit: the empirical copula against a fitted copula on
//!   the rank lattice `{i/n} x {j/n}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::empirical::{Curve, Ecdf, NormSpec, Sample2D};
use crate::estimators::{ranks, FamilyCdf, FamilySpec};
#[allow(unused_imports)]
use crate::float::*;
use crate::{Error, Result};

/// The testing problem a functional belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestKind {
    Independence,
    Slope,
    GoodnessOfFit,
    Copula,
}

/// Norm selection for goodness-of-fit functionals. The concrete grid is
/// materialized from the data when a test runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormChoice {
    /// Supremum over the observation points with left limits (Kolmogorov-
    /// Smirnov type).
    Sup,
    /// Weighted L2 on a 201-point grid between the 0.001 and 0.999 quantiles
    /// of the fitted null, with trapezoid weights under the fitted density
    /// (Cramer-von Mises type).
    L2Default,
}

/// Which phi map a test uses, together with its family and norm where the
/// test needs them.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    /// Kolmogorov-Smirnov statistic for independence of a bivariate sample.
    IndependenceKs,
    /// Absolute least squares slope.
    SlopePlain,
    /// Least squares slope studentised by `sd_n(X)`.
    SlopeStudentised,
    /// Distance of the empirical CDF to a parametric family.
    GofNorm {
        family: FamilySpec,
        norm: NormChoice,
    },
    /// Distance of the empirical copula to a parametric copula family.
    CopulaNorm { family: FamilySpec },
}

impl Functional {
    pub fn test_kind(&self) -> TestKind {
        match self {
            Functional::IndependenceKs => TestKind::Independence,
            Functional::SlopePlain | Functional::SlopeStudentised => TestKind::Slope,
            Functional::GofNorm { .. } => TestKind::GoodnessOfFit,
            Functional::CopulaNorm { .. } => TestKind::Copula,
        }
    }

    /// Whether the functional consumes univariate or bivariate samples.
    pub fn is_univariate(&self) -> bool {
        matches!(self.test_kind(), TestKind::GoodnessOfFit)
    }
}

/// Sorted unique coordinates of a bivariate sample; the exact evaluation grid
/// for independence statistics of samples supported on these coordinates.
#[derive(Debug, Clone)]
pub(crate) struct ProductGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl ProductGrid {
    pub fn from_sample(s: &Sample2D) -> Self {
        Self {
            xs: sorted_unique(s.xs()),
            ys: sorted_unique(s.ys()),
        }
    }

    /// `H - F (x) G` of `s` evaluated at every grid point, row-major over
    /// `(xs[a], ys[b])`. Points of `s` above the grid maximum contribute to
    /// no cell, which is the correct evaluation of the CDFs on the grid.
    pub fn deviation(&self, s: &Sample2D) -> Vec<f64> {
        let (p, q) = (self.xs.len(), self.ys.len());
        let n = s.n() as f64;
        let mut counts = vec![0u32; p * q];
        for i in 0..s.n() {
            let (x, y) = s.pair(i);
            let a = self.xs.partition_point(|&g| g < x);
            let b = self.ys.partition_point(|&g| g < y);
            if a < p && b < q {
                counts[a * q + b] += 1;
            }
        }
        // 2-D prefix sums turn point counts into joint CDF counts.
        let mut cum = vec![0u32; p * q];
        for a in 0..p {
            let mut row_acc = 0u32;
            for b in 0..q {
                row_acc += counts[a * q + b];
                cum[a * q + b] = row_acc + if a > 0 { cum[(a - 1) * q + b] } else { 0 };
            }
        }
        let mut dev = vec![0.0f64; p * q];
        for a in 0..p {
            let fx = cum[a * q + (q - 1)] as f64 / n;
            for b in 0..q {
                let gy = cum[(p - 1) * q + b] as f64 / n;
                let h = cum[a * q + b] as f64 / n;
                dev[a * q + b] = h - fx * gy;
            }
        }
        dev
    }
}

fn sorted_unique(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Kolmogorov-Smirnov statistic for independence:
/// `sqrt(n) * sup |H_n(x, y) - F_n(x) G_n(y)|` over the product grid of the
/// observed coordinates, where the sup over the plane is attained.
pub fn independence_statistic(s: &Sample2D) -> f64 {
    let grid = ProductGrid::from_sample(s);
    let dev = grid.deviation(s);
    let sup = dev.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    (s.n() as f64).sqrt() * sup
}

pub(crate) fn slope_phi(s: &Sample2D, studentised: bool) -> Result<f64> {
    let n = s.n() as f64;
    let mean_x = s.xs().iter().sum::<f64>() / n;
    let mean_y = s.ys().iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    for i in 0..s.n() {
        let dx = s.xs()[i] - mean_x;
        cov += dx * (s.ys()[i] - mean_y);
        var_x += dx * dx;
    }
    cov /= n;
    var_x /= n;
    if var_x <= 0.0 {
        return Err(Error::DegenerateDesign);
    }
    Ok(if studentised {
        cov / var_x.sqrt()
    } else {
        cov / var_x
    })
}

/// Slope test statistic: `sqrt(n) * |phi(H_n)|` with `phi` the least squares
/// slope (plain) or the slope times `sd_n(X)` (studentised). Biased
/// (divide-by-n) moments throughout.
pub fn slope_statistic(s: &Sample2D, studentised: bool) -> Result<f64> {
    Ok((s.n() as f64).sqrt() * slope_phi(s, studentised)?.abs())
}

/// `||measure - F_theta||` under `norm`, without the `sqrt(n)` factor.
pub fn gof_phi_value(
    measure: &dyn Curve,
    theta: &[f64],
    family: &FamilySpec,
    norm: &NormSpec,
) -> Result<f64> {
    if !family.contains(theta) {
        return Err(Error::OutOfRange);
    }
    let cdf = FamilyCdf { family, theta };
    Ok(norm.distance(measure, &cdf))
}

/// A phi value: either a scalar or a function already evaluated on the
/// points of a norm's grid (with left-limit entries materialized when the
/// norm uses them).
#[derive(Debug, Clone, Copy)]
pub enum PhiValue<'a> {
    Scalar(f64),
    OnGrid(&'a [f64]),
}

/// Norm applied to grid-evaluated phi values.
#[derive(Debug, Clone, Copy)]
pub enum GridNorm<'a> {
    Sup,
    L2 { weights: &'a [f64] },
}

/// The corrected bootstrap statistic `sqrt(n) * ||phi(H*_n) - phi(R_n)||`.
///
/// With `phi_rn` identically zero this is the equivalent statistic; with
/// `phi_rn = phi(H_n)` it is the centred statistic. Both reductions are
/// bit-exact because the same subtraction runs in all cases.
pub fn corrected_bootstrap_statistic(
    phi_star: PhiValue<'_>,
    phi_rn: PhiValue<'_>,
    n: usize,
    norm: GridNorm<'_>,
) -> Result<f64> {
    let root_n = (n as f64).sqrt();
    match (phi_star, phi_rn) {
        (PhiValue::Scalar(a), PhiValue::Scalar(b)) => Ok(root_n * (a - b).abs()),
        (PhiValue::OnGrid(a), PhiValue::OnGrid(b)) => {
            if a.len() != b.len() {
                return Err(Error::ShapeMismatch);
            }
            let value = match norm {
                GridNorm::Sup => a
                    .iter()
                    .zip(b)
                    .fold(0.0f64, |m, (x, y)| m.max((x - y).abs())),
                GridNorm::L2 { weights } => {
                    if weights.len() != a.len() {
                        return Err(Error::InvalidWeights);
                    }
                    a.iter()
                        .zip(b)
                        .zip(weights)
                        .map(|((x, y), w)| w * (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt()
                }
            };
            Ok(root_n * value)
        }
        _ => Err(Error::ShapeMismatch),
    }
}

/// Goodness-of-fit bootstrap statistic
/// `sqrt(n) * || H*_n - F_{theta*} - R_n + F_{theta_hat} ||`, the four-term
/// signed combination evaluated pointwise on the norm's grid.
///
/// Under the parametric-null scheme pass `rn = F_{theta_hat}` (the last two
/// terms then cancel pointwise); under the empirical scheme pass the data
/// ECDF.
#[allow(clippy::too_many_arguments)]
pub fn gof_bootstrap_statistic(
    hstar: &dyn Curve,
    theta_star: &[f64],
    rn: &dyn Curve,
    theta_hat: &[f64],
    family: &FamilySpec,
    norm: &NormSpec,
    n: usize,
) -> Result<f64> {
    if !family.contains(theta_star) || !family.contains(theta_hat) {
        return Err(Error::OutOfRange);
    }
    let star_cdf = FamilyCdf {
        family,
        theta: theta_star,
    };
    let hat_cdf = FamilyCdf {
        family,
        theta: theta_hat,
    };
    let combine = |t: f64, left: bool| -> f64 {
        // CDFs are continuous, so their left values equal their values.
        let (hs, r) = if left {
            (hstar.left_value(t), rn.left_value(t))
        } else {
            (hstar.value(t), rn.value(t))
        };
        // Grouped so that under the parametric-null scheme (rn = F_theta_hat
        // pointwise) the second bracket is exactly zero and the statistic
        // reduces bit-for-bit to the equivalent form.
        (hs - star_cdf.value(t)) - (r - hat_cdf.value(t))
    };
    let value = match norm {
        NormSpec::SupOnCells { grid } => {
            let mut sup = 0.0f64;
            for &t in grid.points() {
                sup = sup.max(combine(t, false).abs());
                if grid.include_left_limits() {
                    sup = sup.max(combine(t, true).abs());
                }
            }
            sup
        }
        NormSpec::L2Grid { grid, weights } => {
            let mut acc = 0.0;
            for (&t, &w) in grid.points().iter().zip(weights) {
                let d = combine(t, false);
                acc += w * d * d;
            }
            acc.sqrt()
        }
    };
    Ok((n as f64).sqrt() * value)
}

/// Empirical copula `C_n(u, v) = n^-1 sum 1{rank(X_i)/n <= u, rank(Y_i)/n <= v}`.
///
/// Requires continuous margins; ties abort with [`Error::TiesDetected`].
pub fn empirical_copula_eval(s: &Sample2D, u: f64, v: f64) -> Result<f64> {
    let rx = ranks(s.xs())?;
    let ry = ranks(s.ys())?;
    let n = s.n() as f64;
    let count = (0..s.n())
        .filter(|&i| rx[i] as f64 / n <= u && ry[i] as f64 / n <= v)
        .count();
    Ok(count as f64 / n)
}

/// `C_n - C_theta` on the lattice `{i/n} x {j/n}`, row-major.
pub(crate) fn copula_lattice_deviation(
    s: &Sample2D,
    family: &FamilySpec,
    theta: f64,
) -> Result<Vec<f64>> {
    let n = s.n();
    let rx = ranks(s.xs())?;
    let ry = ranks(s.ys())?;
    // Prefix counts of the rank permutation give the empirical copula on the
    // lattice exactly.
    let mut counts = vec![0u32; n * n];
    for i in 0..n {
        counts[(rx[i] - 1) * n + (ry[i] - 1)] = 1;
    }
    let mut cum = vec![0u32; n * n];
    for a in 0..n {
        let mut row_acc = 0u32;
        for b in 0..n {
            row_acc += counts[a * n + b];
            cum[a * n + b] = row_acc + if a > 0 { cum[(a - 1) * n + b] } else { 0 };
        }
    }
    let nf = n as f64;
    let mut dev = vec![0.0f64; n * n];
    for a in 0..n {
        let u = (a + 1) as f64 / nf;
        for b in 0..n {
            let v = (b + 1) as f64 / nf;
            dev[a * n + b] = cum[a * n + b] as f64 / nf - family.copula_cdf(theta, u, v);
        }
    }
    Ok(dev)
}

/// Copula goodness-of-fit statistic: `sqrt(n) * sup |C_n - C_theta|` over the
/// rank lattice `{i/n} x {j/n}`.
pub fn copula_statistic(s: &Sample2D, theta: f64, family: &FamilySpec) -> Result<f64> {
    if !family.contains(&[theta]) {
        return Err(Error::OutOfRange);
    }
    let dev = copula_lattice_deviation(s, family, theta)?;
    let sup = dev.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    Ok((s.n() as f64).sqrt() * sup)
}
