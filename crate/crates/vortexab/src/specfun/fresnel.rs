//! Fresnel integrals (un-normalized form) and the complementary error function
//! along the ray arg z = -pi/4, which controls the forward transition region of
//! the scattering wave function.

use crate::dd::Dd;
use crate::error::{Error, Result};
use num_complex::Complex64;

const SERIES_LIMIT: f64 = 6.0;

/// (int_0^x cos t^2 dt, int_0^x sin t^2 dt).
pub fn fresnel_cs(x: f64) -> (f64, f64) {
    let neg = x < 0.0;
    let x = x.abs();
    let (c, s) = if x <= SERIES_LIMIT {
        fresnel_series(x)
    } else {
        fresnel_asymptotic(x)
    };
    if neg {
        (-c, -s)
    } else {
        (c, s)
    }
}

fn fresnel_series(x: f64) -> (f64, f64) {
    // C = sum (-1)^k x^{4k+1} / ((2k)! (4k+1)), S with odd factorials; the terms
    // reach e^{x^2} before decaying, so accumulate in double-double.
    let xd = Dd::from(x);
    let x4 = xd.powi(4);
    let mut c = xd;
    let mut s = xd.powi(3).div(Dd::from(3.0));
    let mut tc = xd; // running x^{4k+1}/(2k)!
    let mut ts = xd.powi(3); // running x^{4k+3}/(2k+1)!
    for k in 0..140 {
        let kf = k as f64;
        tc = tc.mul(x4).div(Dd::from((2.0 * kf + 1.0) * (2.0 * kf + 2.0))).neg();
        ts = ts.mul(x4).div(Dd::from((2.0 * kf + 2.0) * (2.0 * kf + 3.0))).neg();
        c = c.add(tc.div(Dd::from(4.0 * kf + 5.0)));
        s = s.add(ts.div(Dd::from(4.0 * kf + 7.0)));
        if tc.hi.abs() < 1e-40 && ts.hi.abs() < 1e-40 {
            break;
        }
    }
    (c.to_f64(), s.to_f64())
}

fn fresnel_asymptotic(x: f64) -> (f64, f64) {
    // C + iS = sqrt(pi)/2 e^{i pi/4} + e^{i x^2} sum_k (2k-1)!! / (2i)^{k+1} x^{-2k-1}
    let mut term = Complex64::new(0.0, -0.5 / x); // 1/(2 i x)
    let mut sum = term;
    let fac = Complex64::new(0.0, -0.5) / (x * x); // multiply by (2k+1)/(2 i x^2)
    let mut prev = term.norm();
    for k in 0..60 {
        term *= fac * (2.0 * k as f64 + 1.0);
        let t = term.norm();
        if t > prev {
            break;
        }
        prev = t;
        sum += term;
        if t < 1e-19 {
            break;
        }
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let head = Complex64::from_polar(sqrt_pi / 2.0, std::f64::consts::FRAC_PI_4);
    let osc = Complex64::from_polar(1.0, phase_x_squared(x));
    let total = head + osc * sum;
    (total.re, total.im)
}

/// x^2 reduced modulo 2 pi with double-double intermediates, so the oscillatory
/// phase stays accurate for x up to ~1e6.
fn phase_x_squared(x: f64) -> f64 {
    let xd = Dd::from(x);
    let sq = xd.mul(xd);
    let two_pi = crate::dd::dd_pi().mul_f64(2.0);
    let n = (sq.to_f64() / two_pi.to_f64()).floor();
    sq.sub(two_pi.mul_f64(n)).to_f64()
}

/// erfc(e^{-i pi/4} x) for x >= 0.
///
/// Satisfies erfc_ray(0) = 1 and |erfc_ray(x)| -> 1/(x sqrt(pi)) as x -> inf.
pub fn erfc_ray(x: f64) -> Result<Complex64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "erfc_ray requires finite x >= 0, got {x}"
        )));
    }
    let (c, s) = fresnel_cs(x);
    // erf(e^{-i pi/4} x) = (2/sqrt(pi)) e^{-i pi/4} (C + i S)
    let pref = Complex64::from_polar(
        2.0 / std::f64::consts::PI.sqrt(),
        -std::f64::consts::FRAC_PI_4,
    );
    Ok(Complex64::new(1.0, 0.0) - pref * Complex64::new(c, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresnel_reference_values() {
        // int_0^1 cos t^2 dt and int_0^1 sin t^2 dt, 16-digit references
        let (c, s) = fresnel_cs(1.0);
        assert!((c - 0.9045242379002720).abs() < 1e-15);
        assert!((s - 0.3102683017233811).abs() < 1e-15);
        // approach to the sqrt(pi/8) limit is O(1/(2x))
        let lim = (std::f64::consts::PI / 8.0).sqrt();
        let (c, s) = fresnel_cs(4000.0);
        assert!((c - lim).abs() < 1.3 / (2.0 * 4000.0));
        assert!((s - lim).abs() < 1.3 / (2.0 * 4000.0));
    }

    #[test]
    fn series_asymptotic_boundary_agrees() {
        for &x in &[5.9, 6.1] {
            let (ca, sa) = fresnel_asymptotic(x);
            let (c0, s0) = fresnel_series(x);
            assert!((c0 - ca).abs() < 2e-15, "c mismatch at {x}: {c0} vs {ca}");
            assert!((s0 - sa).abs() < 2e-15, "s mismatch at {x}: {s0} vs {sa}");
        }
    }

    #[test]
    fn erfc_ray_edge_values() {
        let v = erfc_ray(0.0).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-16);
        // modulus decay ~ 1/(x sqrt(pi))
        for &x in &[10.0, 50.0, 100.0] {
            let v = erfc_ray(x).unwrap();
            let expect = 1.0 / (x * std::f64::consts::PI.sqrt());
            assert!(
                (v.norm() - expect).abs() / expect < 0.02,
                "x={x}: |erfc_ray| = {} vs {}",
                v.norm(),
                expect
            );
        }
        assert!(erfc_ray(-1.0).is_err());
        assert!(erfc_ray(f64::NAN).is_err());
    }

    #[test]
    fn erfc_ray_asymptotic_phase() {
        // erfc(e^{-i pi/4} x) -> e^{i pi/4} e^{i x^2} / (x sqrt(pi)) for x -> inf
        let x = 30.0;
        let v = erfc_ray(x).unwrap();
        let lead = Complex64::from_polar(
            1.0 / (x * std::f64::consts::PI.sqrt()),
            std::f64::consts::FRAC_PI_4 + phase_x_squared(x),
        );
        assert!((v - lead).norm() / lead.norm() < 2e-3);
    }
}
