//! Double-double arithmetic: unevaluated sums `hi + lo` carrying ~31 significant
//! decimal digits. Used internally where plain `f64` cancellation would destroy
//! accuracy (coefficient-table generation, series with exponential cancellation)
//! and by test oracles.
//!
//! The error-free transformations follow Dekker and Knuth; products rely on
//! `f64::mul_add` being a correctly rounded fused multiply-add.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, rhs: f64) -> Dd {
        let (s, e) = two_sum(self.hi, rhs);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r2 = r.sub(rhs.mul_f64(q2));
        let q3 = r2.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        // one Newton step on top of the f64 estimate doubles the precision
        let x = 1.0 / self.hi.sqrt();
        let ax = self.mul_f64(x);
        let err = self.sub(ax.mul(ax));
        ax.add(err.mul_f64(x * 0.5))
    }

    pub fn cbrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let x = self.hi.cbrt();
        let x = Dd::from(x);
        // Newton: x -= (x^3 - a) / (3 x^2)
        let x2 = x.mul(x);
        let num = x2.mul(x).sub(self);
        let den = x2.mul_f64(3.0);
        x.sub(num.div(den))
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub fn powi(self, n: i32) -> Dd {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut k = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }

    /// Parse a decimal literal of the form `[-]ddd.ddd` into double-double.
    /// Digits are accumulated exactly; used for high-precision constants.
    pub fn parse(s: &str) -> Dd {
        let mut acc = Dd::ZERO;
        let mut neg = false;
        let mut frac_scale: Option<Dd> = None;
        let tenth = Dd::from(1.0).div(Dd::from(10.0));
        for c in s.chars() {
            match c {
                '-' => neg = true,
                '+' | '_' | ' ' => {}
                '.' => frac_scale = Some(tenth),
                d if d.is_ascii_digit() => {
                    let v = (d as u8 - b'0') as f64;
                    match frac_scale {
                        None => acc = acc.mul_f64(10.0).add_f64(v),
                        Some(sc) => {
                            acc = acc.add(sc.mul_f64(v));
                            frac_scale = Some(sc.mul(tenth));
                        }
                    }
                }
                other => panic!("invalid character {other:?} in dd literal"),
            }
        }
        if neg {
            acc.neg()
        } else {
            acc
        }
    }
}

/// pi to double-double precision.
pub fn dd_pi() -> Dd {
    Dd::parse("3.14159265358979323846264338327950288419716939937510582097494459")
}

/// Euler-Mascheroni constant to double-double precision.
pub fn dd_euler_gamma() -> Dd {
    Dd::parse("0.57721566490153286060651209008240243104215933593992359880576723")
}

/// sin and cos of a double-double argument, with range reduction modulo 2*pi.
/// Accurate to ~1e-30 absolute for |x| up to ~1e8.
pub fn dd_sincos(x: Dd) -> (Dd, Dd) {
    let two_pi = dd_pi().mul_f64(2.0);
    let n = (x.to_f64() / two_pi.to_f64()).round();
    let mut r = x.sub(two_pi.mul_f64(n));
    // fold into |r| <= pi/4 tracking the quadrant
    let half_pi = dd_pi().mul_f64(0.5);
    let mut quadrant: i32 = 0;
    while r.to_f64() > half_pi.to_f64() * 0.5 {
        r = r.sub(half_pi);
        quadrant = (quadrant + 1) & 3;
    }
    while r.to_f64() < -half_pi.to_f64() * 0.5 {
        r = r.add(half_pi);
        quadrant = (quadrant - 1) & 3;
    }
    let (s, c) = dd_sincos_kernel(r);
    match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    }
}

fn dd_sincos_kernel(r: Dd) -> (Dd, Dd) {
    // Taylor series; |r| <= pi/8 + eps so ~20 terms reach 1e-33.
    let r2 = r.mul(r);
    let mut sin = r;
    let mut term = r;
    let mut k = 1.0f64;
    for _ in 0..25 {
        term = term.mul(r2).div(Dd::from(-(k + 1.0) * (k + 2.0)));
        sin = sin.add(term);
        k += 2.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    let mut cos = Dd::ONE;
    let mut term = Dd::ONE;
    let mut k = 0.0f64;
    for _ in 0..25 {
        term = term.mul(r2).div(Dd::from(-(k + 1.0) * (k + 2.0)));
        cos = cos.add(term);
        k += 2.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    (sin, cos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips_simple_values() {
        assert_eq!(Dd::parse("2").to_f64(), 2.0);
        assert_eq!(Dd::parse("-0.5").to_f64(), -0.5);
        let third = Dd::parse("0.333333333333333333333333333333333");
        let residual = third.mul_f64(3.0).sub(Dd::ONE).to_f64().abs();
        assert!(residual < 1e-30, "residual {residual}");
    }

    #[test]
    fn arithmetic_has_extended_precision() {
        // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80; plain f64 drops the last term
        let eps = (2.0f64).powi(-40);
        let x = Dd::from(1.0).add_f64(eps);
        let sq = x.mul(x);
        let expect_lo = (2.0f64).powi(-80);
        let got = sq.sub(Dd::from(1.0)).sub(Dd::from((2.0f64).powi(-39)));
        assert!((got.to_f64() - expect_lo).abs() < 1e-40);
    }

    #[test]
    fn sqrt_and_division() {
        let two = Dd::from(2.0);
        let r = two.sqrt();
        let residual = r.mul(r).sub(two).to_f64().abs();
        assert!(residual < 1e-30);
        let q = Dd::ONE.div(Dd::from(3.0)).mul_f64(3.0);
        assert!(q.sub(Dd::ONE).to_f64().abs() < 1e-30);
    }

    #[test]
    fn sincos_matches_known_values() {
        let (s, c) = dd_sincos(dd_pi().mul_f64(0.25));
        let r = Dd::from(2.0).sqrt().recip();
        assert!(s.sub(r).to_f64().abs() < 1e-29);
        assert!(c.sub(r).to_f64().abs() < 1e-29);
        // large-argument reduction: sin(1000)
        let (s, _) = dd_sincos(Dd::from(1000.0));
        assert!((s.to_f64() - 0.826_879_540_532_003).abs() < 1e-13);
    }
}
