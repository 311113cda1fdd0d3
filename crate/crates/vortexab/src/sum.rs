//! Compensated (Kahan-Neumaier) accumulators for real and complex sums.
//!
//! The oscillatory partial-wave series cancel heavily; compensated accumulation
//! keeps the rounding floor at O(eps) independent of term count and makes the
//! reduction order part of the contract (fixed pairing order, single stream).

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_beats_naive_summation() {
        // 1 + n*eps terms that a naive sum loses entirely
        let tiny = f64::EPSILON / 4.0;
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(tiny);
        }
        let expected = 1.0 + 1_000_000.0 * tiny;
        assert_eq!(acc.value(), expected);
    }

    #[test]
    fn complex_accumulator_matches_componentwise() {
        let terms: Vec<Complex64> = (0..1000)
            .map(|k| Complex64::from_polar(1.0 / (k as f64 + 1.0), 0.1 * k as f64))
            .collect();
        let mut acc = KahanComplex::new();
        for t in &terms {
            acc.add(*t);
        }
        let naive: Complex64 = terms.iter().sum();
        assert!((acc.value() - naive).norm() < 1e-12);
    }
}
