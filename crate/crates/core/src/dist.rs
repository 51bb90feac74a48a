//! Distribution functions used by the tests and samplers.
//!
//! Sampling everywhere is inverse-CDF over a documented uniform stream, so a
//! result can be reproduced from the seed alone. The normal quantile is the
//! Wichura rational approximation (absolute error below 1e-15); the normal
//! CDF goes through `erfc`. The Clayton copula has a closed-form conditional
//! quantile, used for drawing pairs.

#[allow(unused_imports)]
use crate::float::*;

const SQRT_2: f64 = core::f64::consts::SQRT_2;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.3989422804014327;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal quantile (inverse CDF) for `p` in (0, 1).
///
/// Rational approximation of Wichura (1988); returns +/-infinity at the
/// endpoints and NaN outside [0, 1].
pub fn normal_quantile(p: f64) -> f64 {
    if p.is_nan() || p < 0.0 || p > 1.0 {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }

    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&PPND_A, r) / poly(&PPND_B, r);
    }
    let mut r = if q < 0.0 { p } else { 1.0 - p };
    r = (-r.ln()).sqrt();
    let z = if r <= 5.0 {
        let r = r - 1.6;
        poly(&PPND_C, r) / poly(&PPND_D, r)
    } else {
        let r = r - 5.0;
        poly(&PPND_E, r) / poly(&PPND_F, r)
    };
    if q < 0.0 {
        -z
    } else {
        z
    }
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

// Wichura (1988), algorithm PPND16. Denominators have constant term 1.
const PPND_A: [f64; 8] = [
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
];
const PPND_B: [f64; 8] = [
    1.0,
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
];
const PPND_C: [f64; 8] = [
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
];
const PPND_D: [f64; 8] = [
    1.0,
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
];
const PPND_E: [f64; 8] = [
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
];
const PPND_F: [f64; 8] = [
    1.0,
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-6,
    1.42151175831644588870e-9,
    2.04426310338993978564e-15,
];

/// Clayton copula CDF `C_theta(u, v)` for `theta >= 0`.
///
/// `theta = 0` is the independence copula `uv`.
pub fn clayton_cdf(theta: f64, u: f64, v: f64) -> f64 {
    if u <= 0.0 || v <= 0.0 {
        return 0.0;
    }
    let u = u.min(1.0);
    let v = v.min(1.0);
    if theta < 1e-12 {
        return u * v;
    }
    let s = u.powf(-theta) + v.powf(-theta) - 1.0;
    s.powf(-1.0 / theta)
}

/// Conditional quantile of the Clayton copula: the value `v` with
/// `C(v | u) = w`, where `C(. | u)` is the conditional CDF of `V` given
/// `U = u`. Drawing `u, w` uniform and mapping `w` through this function
/// yields a pair distributed according to `C_theta`.
pub fn clayton_conditional_quantile(theta: f64, u: f64, w: f64) -> f64 {
    if theta < 1e-12 {
        return w;
    }
    let inner = u.powf(-theta) * (w.powf(-theta / (1.0 + theta)) - 1.0) + 1.0;
    inner.powf(-1.0 / theta)
}

/// Kendall's tau of the Clayton copula: `theta / (theta + 2)`.
pub fn clayton_tau(theta: f64) -> f64 {
    theta / (theta + 2.0)
}

/// Inverse of [`clayton_tau`] on `[0, 1)`.
pub fn clayton_theta_from_tau(tau: f64) -> f64 {
    2.0 * tau / (1.0 - tau)
}

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued-fraction evaluation (Lentz); used for the exact binomial
/// confidence interval.
pub fn beta_inc(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_beta = libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b);
    let front = (a * x.ln() + b * (1.0 - x).ln() - ln_beta).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    const EPS: f64 = 3e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=300 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_cdf_reference_points() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.0) - 0.8413447460685429).abs() < 1e-12);
        assert!((normal_cdf(-1.959963984540054) - 0.025).abs() < 1e-12);
    }

    #[test]
    fn normal_quantile_reference_points() {
        assert_eq!(normal_quantile(0.5), 0.0);
        assert!((normal_quantile(0.975) - 1.959963984540054).abs() < 1e-12);
        assert!((normal_quantile(0.001) + 3.090232306167814).abs() < 1e-12);
    }

    #[test]
    fn quantile_inverts_cdf() {
        for i in 1..999 {
            let p = i as f64 / 1000.0;
            let x = normal_quantile(p);
            assert!(
                (normal_cdf(x) - p).abs() < 1e-12,
                "p = {p}: round trip {}",
                normal_cdf(x)
            );
        }
        // deep tails
        for &p in &[1e-10, 1e-6, 1.0 - 1e-6] {
            let x = normal_quantile(p);
            assert!((normal_cdf(x) - p).abs() / p.min(1.0 - p) < 1e-6);
        }
    }

    #[test]
    fn clayton_limits() {
        assert!((clayton_cdf(0.0, 0.3, 0.7) - 0.21).abs() < 1e-15);
        // theta -> infinity approaches min(u, v); check monotone increase in theta
        let lo = clayton_cdf(0.5, 0.3, 0.7);
        let hi = clayton_cdf(8.0, 0.3, 0.7);
        assert!(lo > 0.21 && hi > lo && hi <= 0.3 + 1e-12);
    }

    #[test]
    fn clayton_conditional_quantile_inverts_conditional_cdf() {
        // Check C(v|u) = w numerically via the partial derivative of the CDF.
        let theta = 2.0;
        let u = 0.4;
        for &w in &[0.1, 0.5, 0.9] {
            let v = clayton_conditional_quantile(theta, u, w);
            let h = 1e-6;
            let dcdu = (clayton_cdf(theta, u + h, v) - clayton_cdf(theta, u - h, v)) / (2.0 * h);
            assert!((dcdu - w).abs() < 1e-5, "w = {w}, got {dcdu}");
        }
    }

    #[test]
    fn clayton_tau_round_trip() {
        for &theta in &[0.0, 0.5, 1.0, 2.0, 10.0] {
            let tau = clayton_tau(theta);
            assert!((clayton_theta_from_tau(tau) - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_inc_reference_points() {
        assert!((beta_inc(2.0, 2.0, 0.5) - 0.5).abs() < 1e-12);
        // I_x(1, b) = 1 - (1-x)^b
        let x = 0.3;
        let b = 4.0;
        assert!((beta_inc(1.0, b, x) - (1.0 - (1.0 - x).powf(b))).abs() < 1e-12);
        // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
        let v = beta_inc(3.5, 1.25, 0.4);
        assert!((v - (1.0 - beta_inc(1.25, 3.5, 0.6))).abs() < 1e-12);
    }
}
