//! Reciprocal gamma function near 1 and the Temme auxiliary functions
//! needed by the small-argument Bessel seeds.
//!
//! Everything is generated from the Maclaurin coefficients of 1/Gamma(1+t),
//! built once in double-double arithmetic from zeta values so that the
//! near-cancelling combination (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
//! stays accurate down to mu -> 0.

use crate::dd::{dd_euler_gamma, dd_pi, Dd};
use std::sync::OnceLock;

const N_COEFF: usize = 42;

/// Bernoulli numbers B_2..B_20 as (numerator, denominator).
const BERNOULLI: [(f64, f64); 10] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
];

/// zeta(k) for integer k >= 2 in double-double precision.
fn zeta_dd(k: usize) -> Dd {
    let pi = dd_pi();
    match k {
        2 => pi.powi(2).div(Dd::from(6.0)),
        3 => Dd::parse("1.20205690315959428539973816151144999076498629234049888179227155"),
        4 => pi.powi(4).div(Dd::from(90.0)),
        5 => Dd::parse("1.03692775514336992633136548645703416805708091950191281197419267"),
        6 => pi.powi(6).div(Dd::from(945.0)),
        7 => Dd::parse("1.00834927738192282683979754984979675959986356056523870641728313"),
        _ => {
            // Euler-Maclaurin with N = 32 reaches ~1e-35 for k >= 8
            let n = 32usize;
            let mut s = Dd::ZERO;
            for j in 1..n {
                s = s.add(Dd::from(j as f64).powi(k as i32).recip());
            }
            let nf = Dd::from(n as f64);
            s = s.add(nf.powi(1 - k as i32).div(Dd::from(k as f64 - 1.0)));
            s = s.add(nf.powi(-(k as i32)).mul_f64(0.5));
            let mut pochhammer = Dd::from(k as f64);
            let mut factorial = Dd::from(2.0);
            for (m, &(bn, bd)) in BERNOULLI.iter().enumerate() {
                let b = Dd::from(bn).div(Dd::from(bd));
                let term = b
                    .div(factorial)
                    .mul(pochhammer)
                    .mul(nf.powi(-(k as i32) - 2 * m as i32 - 1));
                s = s.add(term);
                if term.hi.abs() < 1e-36 {
                    break;
                }
                // update (k)_{2m+1} -> (k)_{2m+3} and (2m)! -> (2m+2)!
                pochhammer = pochhammer
                    .mul_f64(k as f64 + 2.0 * m as f64 + 1.0)
                    .mul_f64(k as f64 + 2.0 * m as f64 + 2.0);
                factorial = factorial
                    .mul_f64(2.0 * m as f64 + 3.0)
                    .mul_f64(2.0 * m as f64 + 4.0);
            }
            s
        }
    }
}

/// Maclaurin coefficients a_m of 1/Gamma(1+t) = sum a_m t^m.
fn coeffs_dd() -> &'static Vec<Dd> {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gamma = dd_euler_gamma();
        let mut a = vec![Dd::ZERO; N_COEFF];
        a[0] = Dd::ONE;
        a[1] = gamma;
        let zetas: Vec<Dd> = (0..N_COEFF).map(|k| if k >= 2 { zeta_dd(k) } else { Dd::ZERO }).collect();
        for n in 2..N_COEFF {
            // n a_n = gamma a_{n-1} + sum_{k=2}^{n} (-1)^{k+1} zeta(k) a_{n-k}
            let mut rhs = gamma.mul(a[n - 1]);
            for k in 2..=n {
                let term = zetas[k].mul(a[n - k]);
                if k % 2 == 0 {
                    rhs = rhs.sub(term);
                } else {
                    rhs = rhs.add(term);
                }
            }
            a[n] = rhs.div(Dd::from(n as f64));
        }
        a
    })
}

fn coeffs() -> &'static [f64; N_COEFF] {
    static TABLE: OnceLock<[f64; N_COEFF]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; N_COEFF];
        for (o, c) in out.iter_mut().zip(coeffs_dd()) {
            *o = c.to_f64();
        }
        out
    })
}

/// 1/Gamma(1+t) for |t| <= 1.5 (series plus one functional-equation step).
pub fn recip_gamma_1p(t: f64) -> f64 {
    debug_assert!(t.abs() <= 1.5 + 1e-12);
    if t > 1.0 {
        // 1/Gamma(1+t) = 1/(t Gamma(t)) = recip_gamma_1p(t-1) / t
        return recip_gamma_1p(t - 1.0) / t;
    }
    let a = coeffs();
    let mut s = 0.0;
    for &c in a.iter().rev() {
        s = s * t + c;
    }
    s
}

/// Temme auxiliary values for |mu| <= 1/2:
/// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)  (limit -euler_gamma at 0),
/// gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2,
/// gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu).
pub fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    let a = coeffs();
    // odd/even splits evaluated in mu^2 avoid the subtractive cancellation
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut m = N_COEFF as i32 - 1;
    if m % 2 == 0 {
        m -= 1;
    }
    let mut k = m as usize; // largest odd index
    while k >= 1 {
        gam1 = gam1 * mu2 + a[k];
        if k == 1 {
            break;
        }
        k -= 2;
    }
    let gam1 = -gam1;
    let mut gam2 = 0.0;
    let mut k = N_COEFF - 2 + (N_COEFF % 2); // largest even index
    loop {
        gam2 = gam2 * mu2 + a[k];
        if k == 0 {
            break;
        }
        k -= 2;
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recip_gamma_known_values() {
        // 1/Gamma(1.5) = 2/sqrt(pi)
        let want = 2.0 / std::f64::consts::PI.sqrt();
        assert!((recip_gamma_1p(0.5) - want).abs() < 1e-15);
        // Gamma(1) = Gamma(2) = 1
        assert!((recip_gamma_1p(0.0) - 1.0).abs() < 1e-15);
        assert!((recip_gamma_1p(1.0) - 1.0).abs() < 1e-15);
        // 1/Gamma(1/2) = 1/sqrt(pi)
        let want = 1.0 / std::f64::consts::PI.sqrt();
        assert!((recip_gamma_1p(-0.5) - want).abs() < 1e-15);
    }

    #[test]
    fn temme_gammas_consistent_with_recip_gamma() {
        for &mu in &[1e-12, 1e-6, 0.1, 0.3, 0.49] {
            let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
            assert!((gampl - recip_gamma_1p(mu)).abs() < 1e-15, "mu={mu}");
            assert!((gammi - recip_gamma_1p(-mu)).abs() < 1e-15, "mu={mu}");
            assert!(((gammi + gampl) / 2.0 - gam2).abs() < 1e-14);
            if mu >= 0.1 {
                // the difference quotient itself cancels below this
                assert!(((gammi - gampl) / (2.0 * mu) - gam1).abs() < 1e-13);
            }
        }
        // mu -> 0 limit: gam1 -> -euler_gamma
        let (gam1, gam2, _, _) = temme_gammas(0.0);
        assert!((gam1 + 0.5772156649015329).abs() < 1e-15);
        assert!((gam2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta_dd(8).to_f64() - 1.0040773561979443).abs() < 1e-15);
        assert!((zeta_dd(10).to_f64() - 1.0009945751278181).abs() < 1e-15);
    }
}
