//! Shared independent oracles for the integration tests: double-double power
//! series and closed forms for the cylinder functions, a defining-integral
//! quadrature for the ray erfc, and a Numerov integrator for the radial
//! equation. These deliberately avoid the library's evaluation paths.

#![allow(dead_code)]

use num_complex::Complex64;
use vortexab::dd::{dd_pi, dd_sincos, Dd};

/// Deterministic xorshift stream in [0, 1).
pub fn rng_stream(seed: u64) -> impl FnMut() -> f64 {
    let mut state = seed;
    move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// 1/Gamma(alpha + 1) in double-double for integer and half-integer alpha.
fn recip_gamma_dd(two_alpha: i64) -> Dd {
    assert!(two_alpha >= -1, "order must be >= -1/2");
    if two_alpha % 2 == 0 {
        // integer alpha: Gamma(alpha + 1) = alpha!
        let mut acc = Dd::ONE;
        for m in 1..=(two_alpha / 2) {
            acc = acc.mul_f64(m as f64);
        }
        acc.recip()
    } else {
        // half-integer alpha = n - 1/2: Gamma(n + 1/2) = (2n)! sqrt(pi)/(4^n n!)
        let n = (two_alpha + 1) / 2;
        let sqrt_pi = dd_pi().sqrt();
        let mut num = Dd::ONE; // (2n)!
        for m in 1..=(2 * n) {
            num = num.mul_f64(m as f64);
        }
        let mut den = Dd::ONE; // 4^n n!
        for m in 1..=n {
            den = den.mul_f64(4.0 * m as f64);
        }
        num.div(den).mul(sqrt_pi).recip()
    }
}

/// J_alpha(u) and its derivative by the defining power series in double-double
/// (alpha integer or half-integer via two_alpha = 2 alpha). Reliable for
/// u <= ~40, where the cancellation stays within dd headroom.
pub fn bessel_j_series_dd(two_alpha: i64, u: f64) -> (f64, f64) {
    let alpha = two_alpha as f64 / 2.0;
    let ud = Dd::from(u);
    let half_u = ud.mul_f64(0.5);
    // (u/2)^alpha: exact-ish via powi and sqrt
    let pow_alpha = if two_alpha % 2 == 0 {
        half_u.powi((two_alpha / 2) as i32)
    } else {
        half_u.powi(two_alpha as i32).sqrt()
    };
    let q = half_u.mul(half_u);
    let mut term = pow_alpha.mul(recip_gamma_dd(two_alpha));
    let mut sum = term;
    let mut dsum = term.mul_f64(alpha); // d/du of u^{alpha+2m} brings (alpha+2m)/u
    for m in 1..200 {
        let mf = m as f64;
        term = term.mul(q).div(Dd::from(mf * (mf + alpha))).neg();
        sum = sum.add(term);
        dsum = dsum.add(term.mul_f64(alpha + 2.0 * mf));
        if term.hi.abs() < 1e-40 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    (sum.to_f64(), dsum.div(ud).to_f64())
}

/// J, Y and derivatives at half-integer order alpha = m + 1/2 via the exact
/// trigonometric seeds and upward three-term recurrence in double-double.
/// Stable (to oracle accuracy) for alpha <~ u + 5 u^{1/3}.
pub fn half_integer_jy_dd(m: i64, u: f64) -> (f64, f64, f64, f64) {
    assert!(m >= 0);
    let ud = Dd::from(u);
    let (s, c) = dd_sincos(ud);
    let scale = Dd::from(2.0)
        .div(dd_pi().mul(ud))
        .sqrt();
    // seeds: J_{-1/2} = scale cos u, J_{1/2} = scale sin u,
    //        Y_{-1/2} = scale sin u,  Y_{1/2} = -scale cos u
    let mut j_prev = scale.mul(c);
    let mut j_cur = scale.mul(s);
    let mut y_prev = scale.mul(s);
    let mut y_cur = scale.mul(c).neg();
    // climb to order m + 1/2
    for step in 0..m {
        let order = step as f64 + 0.5;
        let factor = Dd::from(2.0 * order).div(ud);
        let j_next = factor.mul(j_cur).sub(j_prev);
        let y_next = factor.mul(y_cur).sub(y_prev);
        j_prev = j_cur;
        j_cur = j_next;
        y_prev = y_cur;
        y_cur = y_next;
    }
    let alpha = m as f64 + 0.5;
    // C' = C_{alpha-1} - (alpha/u) C_alpha
    let jp = j_prev.sub(j_cur.mul_f64(alpha).div(ud));
    let yp = y_prev.sub(y_cur.mul_f64(alpha).div(ud));
    (j_cur.to_f64(), y_cur.to_f64(), jp.to_f64(), yp.to_f64())
}

/// erfc(e^{-i pi/4} x) by adaptive quadrature of the defining integral along
/// the steepest-descent path t = z0 + s, s real:
/// erfc(z0) = (2/sqrt(pi)) int_0^inf e^{-(z0+s)^2} ds.
pub fn erfc_ray_quadrature(x: f64) -> Complex64 {
    let z0 = Complex64::from_polar(x, -std::f64::consts::FRAC_PI_4);
    let integrand = |s: f64| {
        let t = z0 + s;
        (-t * t).exp()
    };
    let upper = 14.0 + x.sqrt();
    let (value, _) =
        vortexab::quad::integrate_adaptive_complex(integrand, 0.0, upper, 1e-13, 64).unwrap();
    value * 2.0 / std::f64::consts::PI.sqrt()
}

/// Fixed-step Numerov integration of the transformed radial equation
/// w'' = [(m(u)^2 - 1/4)/u^2 - 1] w with w = sqrt(u) kappa, returning the
/// boundary log-derivative u kappa'/kappa at u_end. Independent of the
/// library's adaptive Runge-Kutta path.
pub fn numerov_logderiv<F: Fn(f64) -> f64>(
    mu_of_u: F,
    n: i64,
    u0: f64,
    u_end: f64,
    steps: usize,
) -> f64 {
    // start outside the singular origin, where a fixed Numerov step can hold
    // h^2 |Q| << 1, seeding with the two-term Frobenius form
    let u0 = u0.max(0.01 * u_end);
    let h = (u_end - u0) / steps as f64;
    let q = |u: f64| {
        let m = n as f64 - mu_of_u(u);
        (m * m - 0.25) / (u * u) - 1.0
    };
    let nu = n.unsigned_abs() as f64;
    let a_hat = mu_of_u(u0) / (u0 * u0);
    let c2 = -(1.0 + 2.0 * n as f64 * a_hat) / (4.0 * (nu + 1.0));
    // w ~ u^{nu + 1/2} (1 + c2 u^2) near the axis
    let frob = |u: f64| u.powf(nu + 0.5) * (1.0 + c2 * u * u);
    let mut w_prev = frob(u0);
    let mut w_cur = frob(u0 + h);
    let mut u = u0 + h;
    let g = h * h / 12.0;
    for _ in 1..steps {
        let w_next = (2.0 * w_cur * (1.0 + 5.0 * g * q(u)) - w_prev * (1.0 - g * q(u - h)))
            / (1.0 - g * q(u + h));
        w_prev = w_cur;
        w_cur = w_next;
        u += h;
        if w_cur.abs() > 1e200 {
            w_prev /= 1e200;
            w_cur /= 1e200;
        }
    }
    // centered derivative of w at u_end via one backward Numerov-quality step
    let wm = w_prev;
    let wp = (2.0 * w_cur * (1.0 + 5.0 * g * q(u)) - w_prev * (1.0 - g * q(u - h)))
        / (1.0 - g * q(u + h));
    let wprime = (wp - wm) / (2.0 * h);
    // kappa = w / sqrt(u): u kappa'/kappa = u w'/w - 1/2
    u_end * wprime / w_cur - 0.5
}
