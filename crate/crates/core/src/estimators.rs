//! Parameter estimators and their bootstrap counterparts.
//!
//! The minimum-distance estimator minimizes `||target - F_theta||` over a
//! boxed search region; the target may carry a signed correction
//! `- subtract + add`, which is how the bootstrap version keeps the estimator
//! centred under resampling schemes that do not satisfy the null hypothesis.

use alloc::vec;
use alloc::vec::Vec;

use crate::dist;
use crate::empirical::{Curve, NormSpec, Sample1D, Sample2D};
#[allow(unused_imports)]
use crate::float::*;
use crate::{Error, Result};

/// Parametric families the tests can fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Normal with unknown mean and standard deviation fixed at 1.
    NormalLocation,
    /// Normal with unknown mean and standard deviation.
    NormalLocationScale,
    /// Clayton copula with parameter `theta >= 0`.
    ClaytonCopula,
}

/// A family together with box constraints on its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        let (lower, upper) = match family {
            Family::NormalLocation => (vec![f64::NEG_INFINITY], vec![f64::INFINITY]),
            Family::NormalLocationScale => (
                vec![f64::NEG_INFINITY, 1e-12],
                vec![f64::INFINITY, f64::INFINITY],
            ),
            Family::ClaytonCopula => (vec![0.0], vec![f64::INFINITY]),
        };
        Self {
            family,
            lower,
            upper,
        }
    }

    pub fn param_count(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, theta: &[f64]) -> bool {
        theta.len() == self.param_count()
            && theta
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(t, (lo, hi))| t.is_finite() && *t >= *lo && *t <= *hi)
    }

    fn normal_params(&self, theta: &[f64]) -> (f64, f64) {
        match self.family {
            Family::NormalLocation => (theta[0], 1.0),
            Family::NormalLocationScale => (theta[0], theta[1]),
            Family::ClaytonCopula => unreachable!("copula family has no CDF on the real line"),
        }
    }

    /// CDF of the fitted distribution at `x` (normal families).
    pub fn cdf(&self, theta: &[f64], x: f64) -> f64 {
        let (mean, sd) = self.normal_params(theta);
        dist::normal_cdf((x - mean) / sd)
    }

    /// Density of the fitted distribution at `x` (normal families).
    pub fn pdf(&self, theta: &[f64], x: f64) -> f64 {
        let (mean, sd) = self.normal_params(theta);
        dist::normal_pdf((x - mean) / sd) / sd
    }

    /// Quantile of the fitted distribution (normal families).
    pub fn quantile(&self, theta: &[f64], p: f64) -> f64 {
        let (mean, sd) = self.normal_params(theta);
        mean + sd * dist::normal_quantile(p)
    }

    /// Copula CDF (Clayton family).
    pub fn copula_cdf(&self, theta: f64, u: f64, v: f64) -> f64 {
        debug_assert_eq!(self.family, Family::ClaytonCopula);
        dist::clayton_cdf(theta, u, v)
    }
}

/// The CDF of a fitted family member, usable as a [`Curve`].
#[derive(Debug, Clone, Copy)]
pub struct FamilyCdf<'a> {
    pub family: &'a FamilySpec,
    pub theta: &'a [f64],
}

impl Curve for FamilyCdf<'_> {
    fn value(&self, x: f64) -> f64 {
        self.family.cdf(self.theta, x)
    }
}

/// Result of a parameter fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub theta: Vec<f64>,
    pub criterion_value: f64,
    pub evaluations: usize,
}

/// Ordinary least squares of `y` on `(1, x)`; returns `(intercept, slope)`.
pub fn least_squares(s: &Sample2D) -> Result<(f64, f64)> {
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
    if var_x <= 0.0 {
        return Err(Error::DegenerateDesign);
    }
    let slope = cov / var_x;
    Ok((mean_y - slope * mean_x, slope))
}

/// Mean and biased (divide-by-n) standard deviation.
pub fn sample_moments(s: &Sample1D) -> (f64, f64) {
    let n = s.n() as f64;
    let mean = s.values().iter().sum::<f64>() / n;
    let var = s.values().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// A measure-like target for minimum-distance fitting: `base`, optionally
/// adjusted by `- subtract + add` evaluated pointwise.
pub struct AdjustedTarget<'a> {
    pub base: &'a dyn Curve,
    pub correction: Option<(&'a dyn Curve, &'a dyn Curve)>,
}

impl<'a> AdjustedTarget<'a> {
    pub fn plain(base: &'a dyn Curve) -> Self {
        Self {
            base,
            correction: None,
        }
    }

    pub fn corrected(base: &'a dyn Curve, subtract: &'a dyn Curve, add: &'a dyn Curve) -> Self {
        Self {
            base,
            correction: Some((subtract, add)),
        }
    }
}

impl Curve for AdjustedTarget<'_> {
    fn value(&self, x: f64) -> f64 {
        match &self.correction {
            None => self.base.value(x),
            Some((sub, add)) => self.base.value(x) - sub.value(x) + add.value(x),
        }
    }

    fn left_value(&self, x: f64) -> f64 {
        match &self.correction {
            None => self.base.left_value(x),
            Some((sub, add)) => self.base.left_value(x) - sub.left_value(x) + add.left_value(x),
        }
    }
}

/// Search region for [`minimum_distance`]: per-coordinate boxes, the coarse
/// grid resolution, and the golden-section refinement tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub grid_points: usize,
    pub refine_tol: f64,
}

impl SearchSpec {
    /// Default location search box `[m - 4s, m + 4s]`, 101 grid points,
    /// refinement tolerance 1e-6.
    pub fn normal_location(mean: f64, sd: f64) -> Self {
        let spread = if sd > 0.0 { 4.0 * sd } else { 1.0 };
        Self {
            lo: vec![mean - spread],
            hi: vec![mean + spread],
            grid_points: 101,
            refine_tol: 1e-6,
        }
    }

    /// Location box as above plus a scale box `[s/8, 8s]`.
    pub fn normal_location_scale(mean: f64, sd: f64) -> Self {
        let s = if sd > 0.0 { sd } else { 1.0 };
        Self {
            lo: vec![mean - 4.0 * s, s / 8.0],
            hi: vec![mean + 4.0 * s, 8.0 * s],
            grid_points: 101,
            refine_tol: 1e-6,
        }
    }

    /// Default box for a family, centred on the sample moments.
    pub fn for_family(family: &FamilySpec, s: &Sample1D) -> Self {
        let (mean, sd) = sample_moments(s);
        match family.family {
            Family::NormalLocation => Self::normal_location(mean, sd),
            Family::NormalLocationScale => Self::normal_location_scale(mean, sd),
            Family::ClaytonCopula => Self {
                lo: vec![0.0],
                hi: vec![50.0],
                grid_points: 101,
                refine_tol: 1e-6,
            },
        }
    }
}

const GOLDEN_RATIO: f64 = 0.6180339887498949; // (sqrt(5) - 1) / 2

/// Minimum-distance fit: `theta` minimizing `||target - F_theta||` under the
/// given norm, found by a coarse grid scan followed by golden-section
/// refinement on the bracketing grid cell (coordinate descent with three
/// sweeps for two-parameter families). Ties on the grid resolve to the
/// smallest parameter value.
pub fn minimum_distance(
    target: &AdjustedTarget<'_>,
    family: &FamilySpec,
    norm: &NormSpec,
    search: &SearchSpec,
) -> Result<FitResult> {
    let d = family.param_count();
    if search.lo.len() != d || search.hi.len() != d {
        return Err(Error::InvalidSpec("search box dimension mismatch"));
    }
    if search.grid_points < 3 {
        return Err(Error::InvalidSpec("grid_points must be at least 3"));
    }
    for k in 0..d {
        if !(search.lo[k] < search.hi[k])
            || search.lo[k] < family.lower()[k]
            || search.hi[k] > family.upper()[k]
        {
            return Err(Error::OutOfRange);
        }
    }

    let mut evaluations = 0usize;
    let mut criterion = |theta: &[f64]| -> Result<f64> {
        evaluations += 1;
        let cdf = FamilyCdf { family, theta };
        let value = norm.distance(target, &cdf);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteCriterion)
        }
    };

    let mut theta: Vec<f64> = (0..d).map(|k| 0.5 * (search.lo[k] + search.hi[k])).collect();
    let mut best = criterion(&theta)?;
    let sweeps = if d == 1 { 1 } else { 3 };

    for _ in 0..sweeps {
        for k in 0..d {
            let (lo, hi) = (search.lo[k], search.hi[k]);
            let step = (hi - lo) / (search.grid_points - 1) as f64;

            // Coarse scan; ascending order plus strict `<` picks the smallest
            // argmin under ties.
            let mut grid_best = (f64::INFINITY, lo, 0usize);
            for i in 0..search.grid_points {
                let t = if i + 1 == search.grid_points {
                    hi
                } else {
                    lo + step * i as f64
                };
                theta[k] = t;
                let f = criterion(&theta)?;
                if f < grid_best.0 {
                    grid_best = (f, t, i);
                }
            }

            // Golden-section refinement on the bracketing cell.
            let mut a = if grid_best.2 == 0 {
                lo
            } else {
                lo + step * (grid_best.2 - 1) as f64
            };
            let mut b = if grid_best.2 + 1 >= search.grid_points {
                hi
            } else {
                lo + step * (grid_best.2 + 1) as f64
            };
            let mut x1 = b - GOLDEN_RATIO * (b - a);
            let mut x2 = a + GOLDEN_RATIO * (b - a);
            theta[k] = x1;
            let mut f1 = criterion(&theta)?;
            theta[k] = x2;
            let mut f2 = criterion(&theta)?;
            while b - a > search.refine_tol {
                if f1 < f2 {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - GOLDEN_RATIO * (b - a);
                    theta[k] = x1;
                    f1 = criterion(&theta)?;
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + GOLDEN_RATIO * (b - a);
                    theta[k] = x2;
                    f2 = criterion(&theta)?;
                }
            }
            let mid = 0.5 * (a + b);
            theta[k] = mid;
            let f_mid = criterion(&theta)?;

            // Keep the best candidate seen for this coordinate.
            let mut cand = (grid_best.0, grid_best.1);
            for &(f, t) in &[(f1, x1), (f2, x2), (f_mid, mid)] {
                if f < cand.0 || (f == cand.0 && t < cand.1) {
                    cand = (f, t);
                }
            }
            theta[k] = cand.1;
            best = cand.0;
        }
    }

    Ok(FitResult {
        theta,
        criterion_value: best,
        evaluations,
    })
}

/// Kendall's tau over unordered pairs:
/// `(#concordant - #discordant) / (n(n-1)/2)`.
///
/// Requires at least two observations and continuous margins; any marginal
/// tie aborts with [`Error::TiesDetected`].
pub fn kendall_tau(s: &Sample2D) -> Result<f64> {
    if s.n() < 2 {
        return Err(Error::InvalidSpec("kendall tau needs n >= 2"));
    }
    if has_ties(s.xs()) || has_ties(s.ys()) {
        return Err(Error::TiesDetected);
    }
    let n = s.n();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let sign = (s.xs()[i] - s.xs()[j]) * (s.ys()[i] - s.ys()[j]);
            if sign > 0.0 {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok((concordant - discordant) as f64 / pairs)
}

pub(crate) fn has_ties(values: &[f64]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// Ranks 1..n of each value within the slice; errors on ties.
pub(crate) fn ranks(values: &[f64]) -> Result<Vec<usize>> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    for w in order.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(Error::TiesDetected);
        }
    }
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r + 1;
    }
    Ok(rank)
}

/// Inverts the family's tau map; Clayton: `theta = 2 tau / (1 - tau)` for
/// `tau` in `[0, 1)`.
pub fn invert_tau(family: &FamilySpec, tau: f64) -> Result<f64> {
    if family.family != Family::ClaytonCopula {
        return Err(Error::IncompatiblePair);
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::OutOfRange);
    }
    Ok(dist::clayton_theta_from_tau(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::normal_cdf;
    use crate::empirical::{Ecdf, EvalGrid};

    fn s2(pairs: &[(f64, f64)]) -> Sample2D {
        Sample2D::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn least_squares_examples() {
        let (a, b) = least_squares(&s2(&[(0.0, 0.0), (1.0, 2.0), (2.0, 4.0)])).unwrap();
        assert!((a - 0.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);

        let (a, b) = least_squares(&s2(&[(0.0, 3.0), (1.0, 3.0), (2.0, 3.0)])).unwrap();
        assert!((a - 3.0).abs() < 1e-14 && b.abs() < 1e-14);

        let (a, b) = least_squares(&s2(&[(0.0, 1.0), (1.0, 1.0), (2.0, 3.0)])).unwrap();
        assert!((a - 2.0 / 3.0).abs() < 1e-14 && (b - 1.0).abs() < 1e-14);

        assert_eq!(
            least_squares(&s2(&[(1.0, 0.0), (1.0, 5.0)])).unwrap_err(),
            Error::DegenerateDesign
        );
    }

    #[test]
    fn sample_moments_examples() {
        let (m, sd) = sample_moments(&Sample1D::new(alloc::vec![5.0]).unwrap());
        assert_eq!((m, sd), (5.0, 0.0));
        let (m, sd) = sample_moments(&Sample1D::new(alloc::vec![-1.0, 1.0]).unwrap());
        assert_eq!((m, sd), (0.0, 1.0));
        let (m, sd) = sample_moments(&Sample1D::new(alloc::vec![1.0, 2.0, 3.0]).unwrap());
        assert!((m - 2.0).abs() < 1e-15 && (sd - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    fn sup_norm_for(sample: &Sample1D) -> NormSpec {
        NormSpec::sup(EvalGrid::from_sample(sample))
    }

    #[test]
    fn minimum_distance_symmetric_sample() {
        let s = Sample1D::new(alloc::vec![4.0, 5.0, 6.0]).unwrap();
        let ecdf = Ecdf::from_sample(&s);
        let family = FamilySpec::new(Family::NormalLocation);
        let norm = sup_norm_for(&s);
        let search = SearchSpec::for_family(&family, &s);
        let fit = minimum_distance(&AdjustedTarget::plain(&ecdf), &family, &norm, &search).unwrap();

        // Exhaustive 10^4-point oracle over the same box.
        let mut oracle = (f64::INFINITY, f64::NAN);
        for i in 0..10_000 {
            let t = search.lo[0] + (search.hi[0] - search.lo[0]) * i as f64 / 9_999.0;
            let theta = [t];
            let cdf = FamilyCdf {
                family: &family,
                theta: &theta,
            };
            let f = norm.distance(&ecdf, &cdf);
            if f < oracle.0 {
                oracle = (f, t);
            }
        }
        assert!((fit.theta[0] - 5.0).abs() < 1e-3, "theta = {}", fit.theta[0]);
        assert!((fit.theta[0] - oracle.1).abs() < 1e-3);
        assert!(fit.criterion_value <= oracle.0 + 1e-9);
    }

    #[test]
    fn minimum_distance_correction_cancels_exactly() {
        // base = H_n with subtract = H_n and add = F_theta_hat: the adjusted
        // target equals F_theta_hat pointwise, so the fit returns theta_hat.
        let s = Sample1D::new(alloc::vec![0.3, -1.0, 2.2, 0.9]).unwrap();
        let ecdf = Ecdf::from_sample(&s);
        let family = FamilySpec::new(Family::NormalLocation);
        let theta_hat = [0.6];
        let fitted = FamilyCdf {
            family: &family,
            theta: &theta_hat,
        };
        let target = AdjustedTarget::corrected(&ecdf, &ecdf, &fitted);
        let norm = sup_norm_for(&s);
        let search = SearchSpec::normal_location(0.6, 1.0);
        let fit = minimum_distance(&target, &family, &norm, &search).unwrap();
        assert!((fit.theta[0] - 0.6).abs() < 1e-6);
        assert!(fit.criterion_value < 1e-9);
    }

    #[test]
    fn minimum_distance_exact_curve_target() {
        // Target is Phi(x - 2) itself: the criterion has an exact zero at 2.
        let family = FamilySpec::new(Family::NormalLocation);
        let shifted = |x: f64| normal_cdf(x - 2.0);
        let grid = EvalGrid::new(
            (0..41).map(|i| -2.0 + 0.2 * i as f64).collect(),
            false,
        )
        .unwrap();
        let norm = NormSpec::sup(grid);
        let search = SearchSpec::normal_location(1.5, 1.0);
        let fit =
            minimum_distance(&AdjustedTarget::plain(&shifted), &family, &norm, &search).unwrap();
        assert!((fit.theta[0] - 2.0).abs() < 1e-5, "theta = {}", fit.theta[0]);
    }

    #[test]
    fn minimum_distance_location_scale() {
        let s = Sample1D::new(alloc::vec![
            -2.1, -1.4, -0.6, -0.2, 0.0, 0.3, 0.8, 1.2, 1.9, 2.6
        ])
        .unwrap();
        let ecdf = Ecdf::from_sample(&s);
        let family = FamilySpec::new(Family::NormalLocationScale);
        let norm = sup_norm_for(&s);
        let search = SearchSpec::for_family(&family, &s);
        let fit = minimum_distance(&AdjustedTarget::plain(&ecdf), &family, &norm, &search).unwrap();
        let (mean, sd) = sample_moments(&s);
        assert!((fit.theta[0] - mean).abs() < 0.8);
        assert!((fit.theta[1] - sd).abs() < 0.8);
        assert!(fit.criterion_value < 0.2);
    }

    #[test]
    fn minimum_distance_validates_search() {
        let s = Sample1D::new(alloc::vec![0.0, 1.0]).unwrap();
        let ecdf = Ecdf::from_sample(&s);
        let family = FamilySpec::new(Family::NormalLocation);
        let norm = sup_norm_for(&s);
        let mut search = SearchSpec::normal_location(0.5, 1.0);
        search.grid_points = 2;
        assert!(matches!(
            minimum_distance(&AdjustedTarget::plain(&ecdf), &family, &norm, &search),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn kendall_tau_examples() {
        let tau = kendall_tau(&s2(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)])).unwrap();
        assert_eq!(tau, 1.0);
        let tau = kendall_tau(&s2(&[(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)])).unwrap();
        assert_eq!(tau, -1.0);
        let tau = kendall_tau(&s2(&[(1.0, 1.0), (2.0, 3.0), (3.0, 2.0)])).unwrap();
        assert!((tau - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            kendall_tau(&s2(&[(1.0, 1.0), (1.0, 2.0)])).unwrap_err(),
            Error::TiesDetected
        );
    }

    #[test]
    fn invert_tau_examples() {
        let clayton = FamilySpec::new(Family::ClaytonCopula);
        assert_eq!(invert_tau(&clayton, 0.0).unwrap(), 0.0);
        assert!((invert_tau(&clayton, 0.5).unwrap() - 2.0).abs() < 1e-15);
        assert!((invert_tau(&clayton, 1.0 / 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(invert_tau(&clayton, 1.0).unwrap_err(), Error::OutOfRange);
        assert_eq!(invert_tau(&clayton, -0.1).unwrap_err(), Error::OutOfRange);
        let normal = FamilySpec::new(Family::NormalLocation);
        assert_eq!(
            invert_tau(&normal, 0.3).unwrap_err(),
            Error::IncompatiblePair
        );
    }

    #[test]
    fn tau_inversion_round_trip_on_theta_grid() {
        let clayton = FamilySpec::new(Family::ClaytonCopula);
        for i in 0..=100 {
            let theta = i as f64 * 0.25;
            let tau = crate::dist::clayton_tau(theta);
            let back = invert_tau(&clayton, tau).unwrap();
            assert!((back - theta).abs() < 1e-12, "theta = {theta}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn distinct_pairs(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
            prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 2..n).prop_filter(
                "distinct margins",
                |pairs| {
                    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
                    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
                    !super::super::has_ties(&xs) && !super::super::has_ties(&ys)
                },
            )
        }

        proptest! {
            #[test]
            fn kendall_tau_is_rank_invariant_and_antisymmetric(pairs in distinct_pairs(12)) {
                let s = Sample2D::new(pairs.clone()).unwrap();
                let tau = kendall_tau(&s).unwrap();
                prop_assert!((-1.0..=1.0).contains(&tau));

                // strictly increasing marginal transforms leave tau unchanged
                let transformed: Vec<(f64, f64)> = pairs
                    .iter()
                    .map(|&(x, y)| (x * x * x + 2.0 * x, y.exp()))
                    .collect();
                let st = Sample2D::new(transformed).unwrap();
                prop_assert!((kendall_tau(&st).unwrap() - tau).abs() < 1e-12);

                // negating one coordinate flips the sign
                let flipped: Vec<(f64, f64)> = pairs.iter().map(|&(x, y)| (-x, y)).collect();
                let sf = Sample2D::new(flipped).unwrap();
                prop_assert!((kendall_tau(&sf).unwrap() + tau).abs() < 1e-12);
            }
        }
    }
}
