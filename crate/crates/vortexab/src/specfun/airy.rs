//! Airy functions Ai, Bi and derivatives on the real line.
//!
//! The Maclaurin series is summed in double-double precision out to |x| = 10.5,
//! past the point where the exponential asymptotic expansions reach full f64
//! accuracy, so the two regimes overlap with ~1e-15 relative error.

use crate::dd::Dd;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy)]
pub struct AiryVal {
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

// On the positive side Ai cancels against f, g like e^{2 xi}; double-double
// holds that to ~1e-16 only up to x ~ 9.2, where the asymptotic series has
// already bottomed out below 1e-16. The negative side cancels like e^{xi}.
const SERIES_LIMIT_POS: f64 = 9.2;
const SERIES_LIMIT_NEG: f64 = -10.5;

/// u_k and v_k coefficients of the Airy asymptotic expansions.
fn asymptotic_coeffs() -> &'static (Vec<f64>, Vec<f64>) {
    static TABLE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 64;
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        u.push(1.0);
        v.push(1.0);
        for k in 1..n {
            let kf = k as f64;
            let num = (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0);
            let den = 216.0 * kf * (2.0 * kf - 1.0);
            let uk = u[k - 1] * num / den;
            u.push(uk);
            v.push(uk * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf));
        }
        (u, v)
    })
}

struct AiryConsts {
    c1: Dd, // Ai(0)
    c2: Dd, // -Ai'(0)
    sqrt3: Dd,
}

fn consts() -> &'static AiryConsts {
    static C: OnceLock<AiryConsts> = OnceLock::new();
    C.get_or_init(|| {
        let gamma_third =
            Dd::parse("2.67893853470774763365569294097467764412868937795730110619507092");
        let gamma_two_thirds =
            Dd::parse("1.35411793942640041694528802815451378551932726605679301266663050");
        let three = Dd::from(3.0);
        let c1 = three.powi(2).cbrt().mul(gamma_two_thirds).recip(); // 3^(2/3) Gamma(2/3)
        let c2 = three.cbrt().mul(gamma_third).recip(); // 3^(1/3) Gamma(1/3)
        AiryConsts {
            c1,
            c2,
            sqrt3: three.sqrt(),
        }
    })
}

/// Maclaurin evaluation in double-double. Valid for any x, used for |x| <= 10.5.
fn airy_series(x: f64) -> AiryVal {
    let c = consts();
    let xd = Dd::from(x);
    let x3 = xd.mul(xd).mul(xd);
    // f = sum t_k x^{3k}, t_0 = 1, t_{k+1} = t_k x^3 / ((3k+3)(3k+2))
    // g = sum s_k x^{3k+1}, s_0 = x, s_{k+1} = s_k x^3 / ((3k+4)(3k+3))
    let mut f = Dd::ONE;
    let mut fp = Dd::ZERO; // f' = sum t_k (3k) x^{3k-1}
    let mut g = xd;
    let mut gp = Dd::ONE; // g' = sum s_k (3k+1) / x * x^{3k} -> at k=0: 1
    let mut t = Dd::ONE;
    let mut s = xd;
    for k in 0..80 {
        let kf = k as f64;
        t = t.mul(x3).div(Dd::from((3.0 * kf + 3.0) * (3.0 * kf + 2.0)));
        s = s.mul(x3).div(Dd::from((3.0 * kf + 4.0) * (3.0 * kf + 3.0)));
        f = f.add(t);
        g = g.add(s);
        if x != 0.0 {
            fp = fp.add(t.mul_f64(3.0 * kf + 3.0).div(xd));
            gp = gp.add(s.mul_f64(3.0 * kf + 4.0).div(xd));
        }
        if t.hi.abs() < 1e-40 && s.hi.abs() < 1e-40 {
            break;
        }
    }
    let ai = c.c1.mul(f).sub(c.c2.mul(g));
    let aip = c.c1.mul(fp).sub(c.c2.mul(gp));
    let bi = c.sqrt3.mul(c.c1.mul(f).add(c.c2.mul(g)));
    let bip = c.sqrt3.mul(c.c1.mul(fp).add(c.c2.mul(gp)));
    AiryVal {
        ai: ai.to_f64(),
        aip: aip.to_f64(),
        bi: bi.to_f64(),
        bip: bip.to_f64(),
    }
}

/// Exponential asymptotic region x >= 10.5.
fn airy_asymptotic_pos(x: f64) -> AiryVal {
    let (u, v) = asymptotic_coeffs();
    let xi = 2.0 / 3.0 * x.powf(1.5);
    let mut sum_u_alt = 0.0;
    let mut sum_v_alt = 0.0;
    let mut sum_u = 0.0;
    let mut sum_v = 0.0;
    let mut pow = 1.0; // xi^{-k}
    let mut prev = f64::INFINITY;
    for k in 0..u.len() {
        let tu = u[k] * pow;
        if tu.abs() > prev {
            break; // past the smallest term of the asymptotic series
        }
        prev = tu.abs();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum_u_alt += sign * tu;
        sum_v_alt += sign * v[k] * pow;
        sum_u += tu;
        sum_v += v[k] * pow;
        pow /= xi;
        if tu.abs() < 1e-18 {
            break;
        }
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let x4 = x.powf(0.25);
    let em = (-xi).exp();
    let ep = xi.exp();
    AiryVal {
        ai: em / (2.0 * sqrt_pi * x4) * sum_u_alt,
        aip: -x4 * em / (2.0 * sqrt_pi) * sum_v_alt,
        bi: ep / (sqrt_pi * x4) * sum_u,
        bip: x4 * ep / sqrt_pi * sum_v,
    }
}

/// Oscillatory asymptotic region x <= -10.5.
fn airy_asymptotic_neg(x: f64) -> AiryVal {
    let (u, v) = asymptotic_coeffs();
    let y = -x;
    let xi = 2.0 / 3.0 * y.powf(1.5);
    // even/odd splits: sum (-1)^k u_{2k} xi^{-2k}, sum (-1)^k u_{2k+1} xi^{-2k-1}
    let mut ue = 0.0;
    let mut uo = 0.0;
    let mut ve = 0.0;
    let mut vo = 0.0;
    let xi2 = xi * xi;
    let mut pow_even = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0.. {
        if 2 * k + 1 >= u.len() {
            break;
        }
        let te = u[2 * k] * pow_even;
        if te.abs() > prev {
            break;
        }
        prev = te.abs();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        ue += sign * te;
        uo += sign * u[2 * k + 1] * pow_even / xi;
        ve += sign * v[2 * k] * pow_even;
        vo += sign * v[2 * k + 1] * pow_even / xi;
        pow_even /= xi2;
        if te.abs() < 1e-18 {
            break;
        }
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let y4 = y.powf(0.25);
    let (s, c) = (xi - std::f64::consts::FRAC_PI_4).sin_cos();
    AiryVal {
        ai: (c * ue + s * uo) / (sqrt_pi * y4),
        aip: y4 / sqrt_pi * (s * ve - c * vo),
        bi: (-s * ue + c * uo) / (sqrt_pi * y4),
        bip: y4 / sqrt_pi * (c * ve + s * vo),
    }
}

/// Ai, Ai', Bi, Bi' at real x.
pub fn airy(x: f64) -> AiryVal {
    if x > SERIES_LIMIT_POS {
        airy_asymptotic_pos(x)
    } else if x < SERIES_LIMIT_NEG {
        airy_asymptotic_neg(x)
    } else {
        airy_series(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wronskian_residual(x: f64) -> f64 {
        let v = airy(x);
        let w = v.ai * v.bip - v.aip * v.bi;
        (w - 1.0 / std::f64::consts::PI).abs() * std::f64::consts::PI
    }

    #[test]
    fn values_at_zero() {
        let v = airy(0.0);
        assert!((v.ai - 0.3550280538878172).abs() < 1e-16);
        assert!((v.aip + 0.2588194037928068).abs() < 1e-16);
        assert!((v.bi - 0.6149266274460007).abs() < 1e-15);
        assert!((v.bip - 0.4482883573538264).abs() < 1e-16);
    }

    #[test]
    fn wronskian_across_regimes() {
        for &x in &[
            -80.0, -25.0, -10.6, -10.4, -5.0, -1.0, 0.0, 0.5, 2.0, 7.0, 9.1, 9.3, 20.0, 50.0,
            90.0,
        ] {
            let r = wronskian_residual(x);
            assert!(r < 5e-14, "wronskian residual {r:.2e} at x={x}");
        }
    }

    #[test]
    fn regime_boundary_is_seamless() {
        for &x in &[SERIES_LIMIT_POS - 1e-9, SERIES_LIMIT_POS + 1e-9] {
            let a = airy_series(x);
            let b = airy_asymptotic_pos(x);
            assert!((a.ai - b.ai).abs() / a.ai.abs() < 4e-14);
            assert!((a.bi - b.bi).abs() / a.bi.abs() < 4e-14);
            assert!((a.aip - b.aip).abs() / a.aip.abs() < 4e-14);
            assert!((a.bip - b.bip).abs() / a.bip.abs() < 4e-14);
        }
        for &x in &[SERIES_LIMIT_NEG + 1e-9, SERIES_LIMIT_NEG - 1e-9] {
            let a = airy_series(x);
            let b = airy_asymptotic_neg(x);
            for (p, q) in [(a.ai, b.ai), (a.bi, b.bi), (a.aip, b.aip), (a.bip, b.bip)] {
                assert!((p - q).abs() < 5e-15 * p.abs().max(1.0), "{p} vs {q} at {x}");
            }
        }
    }

    #[test]
    fn known_reference_values() {
        // published 15-digit values
        let v = airy(1.0);
        assert!((v.ai - 0.1352924163128814).abs() < 1e-15);
        assert!((v.bi - 1.2074235949528713).abs() < 2e-15);
        let v = airy(-2.0);
        assert!((v.ai - 0.2274074282016855).abs() < 1e-15);
        assert!((v.bi + 0.4123025879563984).abs() < 1e-15);
    }
}
