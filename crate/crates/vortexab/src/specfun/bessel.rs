//! Bessel functions J_nu, Y_nu and derivatives for real order via Steed's
//! method: CF1 plus downward recurrence for J, a Temme series (small argument)
//! or CF2 (otherwise) for the normalization and Y seeds, then stable upward
//! recurrence for Y. Used for orders below the large-order threshold.

use super::gamma::temme_gammas;
use crate::error::{Error, Result};

const EPS: f64 = 1.0e-16;
const FPMIN: f64 = 1.0e-300;
const MAXIT: usize = 60_000;
const XMIN: f64 = 2.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct JyRaw {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

/// J, Y, J', Y' at real order nu >= 0 and x > 0.
pub(crate) fn bessel_jy_steed(nu: f64, x: f64) -> Result<JyRaw> {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / std::f64::consts::PI;

    let nl = if x < XMIN {
        (nu + 0.5) as i64
    } else {
        ((nu - x + 1.5) as i64).max(0)
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;

    // CF1: h = J'_nu / J_nu, isign tracks the sign of J_nu
    let mut isign = 1.0f64;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Domain(format!(
            "bessel CF1 failed to converge at nu={nu}, x={x}"
        )));
    }

    // downward recurrence from nu to xmu with an arbitrary (tiny) scale
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl; // J'_xmu / J_xmu

    let (rjmu, rymu, ry1, rymup);
    if x < XMIN {
        // Temme's series for Y_xmu, Y_{xmu+1}
        let x2 = 0.5 * x;
        let pimu = std::f64::consts::PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let mut dln = -x2.ln();
        let e = xmu * dln;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / std::f64::consts::PI * fact * (gam1 * e.cosh() + gam2 * fact2 * dln);
        let e = e.exp();
        let mut p = e / (gampl * std::f64::consts::PI);
        let mut q = 1.0 / (e * std::f64::consts::PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = std::f64::consts::PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        dln = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=1000 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dln / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Domain(format!(
                "bessel Temme series failed at nu={nu}, x={x}"
            )));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq = (J' + iY')/(J + iY) at order xmu
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br0 = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br0 + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br0 * br0 + bi * bi;
        let mut dr = br0 / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..=MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br0;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br0 + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            let temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Domain(format!(
                "bessel CF2 failed to converge at nu={nu}, x={x}"
            )));
        }
        let gam = (p - f) / q;
        let mut rj = (w / ((p - f) * gam + q)).sqrt();
        rj = rj.abs().copysign(rjl);
        rjmu = rj;
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    // true-scale J at nu
    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    if !j.is_finite() || (j == 0.0 && rjl1 != 0.0 && !fact.is_finite()) {
        return Err(Error::Overflow { alpha: nu, arg: x });
    }

    // upward recurrence for Y from xmu to nu
    let mut rymu_ = rymu;
    let mut ry1_ = ry1;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1_ - rymu_;
        rymu_ = ry1_;
        ry1_ = rytemp;
    }
    let y = rymu_;
    let yp = nu * xi * rymu_ - ry1_;
    if !y.is_finite() || !yp.is_finite() {
        return Err(Error::Overflow { alpha: nu, arg: x });
    }

    Ok(JyRaw { j, y, jp, yp })
}
