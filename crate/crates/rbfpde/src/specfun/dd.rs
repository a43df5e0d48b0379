//! Double-double arithmetic: unevaluated sums `hi + lo` of two `f64`s giving
//! roughly 106 bits of significand.
//!
//! Ascending Bessel series suffer massive cancellation between alternating
//! terms (the largest term can exceed the sum by many orders of magnitude),
//! so partial sums are accumulated in this representation and rounded to
//! `f64` only at the end.  The algorithms are the classic error-free
//! transformations (Dekker/Knuth two-sum, FMA-based two-product).

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
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
    // Requires |a| >= |b|.
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
    /// pi to double-double precision: the hi limb is exactly the f64
    /// constant, the lo limb carries the next 53 bits.
    #[allow(clippy::approx_constant)]
    pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    /// ln(2) to double-double precision.
    #[allow(clippy::approx_constant)]
    pub const LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    /// Euler-Mascheroni constant to double-double precision.
    pub const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[cfg(test)]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        // One Newton step on a f64 seed is enough for dd precision.
        let approx = self.hi.sqrt();
        let x = Dd::from_f64(approx);
        let r = self - x * x;
        x + r / Dd::from_f64(2.0 * approx)
    }

    /// exp(x) for |x| up to ~700, via 2^k * exp(r) range reduction with a
    /// Taylor series on |r| <= ln(2)/2.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self - Dd::LN2 * Dd::from_f64(k);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for i in 1..40 {
            term = term * r / Dd::from_f64(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        // Scale by 2^k exactly.
        let scale = 2.0f64.powi(k as i32);
        Dd { hi: sum.hi * scale, lo: sum.lo * scale }
    }

    /// Natural log via Newton iteration on exp, seeded with f64 ln.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "dd ln of non-positive value");
        let mut y = Dd::from_f64(self.hi.ln());
        // y <- y + x*exp(-y) - 1, quadratic convergence; two steps from a
        // f64 seed land well below dd epsilon.
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// sin for small arguments |x| <= ~1 (Taylor); used for phase factors.
    pub fn sin_small(self) -> Dd {
        let x2 = self * self;
        let mut term = self;
        let mut sum = self;
        let mut k = 1.0;
        for _ in 0..25 {
            term = -term * x2 / Dd::from_f64((k + 1.0) * (k + 2.0));
            sum = sum + term;
            k += 2.0;
            if term.hi.abs() < 1e-35 * (1.0 + sum.hi.abs()) {
                break;
            }
        }
        sum
    }

    /// cos for small arguments |x| <= ~1 (Taylor).
    pub fn cos_small(self) -> Dd {
        let x2 = self * self;
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        let mut k = 0.0;
        for _ in 0..25 {
            term = -term * x2 / Dd::from_f64((k + 1.0) * (k + 2.0));
            sum = sum + term;
            k += 2.0;
            if term.hi.abs() < 1e-35 * (1.0 + sum.hi.abs()) {
                break;
            }
        }
        sum
    }

    /// x^p = exp(p ln x) for x > 0.
    pub fn pow(self, p: Dd) -> Dd {
        (p * self.ln()).exp()
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2b) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2b + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: DdComplex = DdComplex { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> DdComplex {
        DdComplex { re, im }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> DdComplex {
        DdComplex { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn add(self, o: DdComplex) -> DdComplex {
        DdComplex { re: self.re + o.re, im: self.im + o.im }
    }

    #[inline]
    pub fn sub(self, o: DdComplex) -> DdComplex {
        DdComplex { re: self.re - o.re, im: self.im - o.im }
    }

    #[inline]
    pub fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    #[inline]
    pub fn scale(self, s: Dd) -> DdComplex {
        DdComplex { re: self.re * s, im: self.im * s }
    }

    #[cfg(test)]
    pub fn div(self, o: DdComplex) -> DdComplex {
        let den = o.re * o.re + o.im * o.im;
        let num = self.mul(o.conj());
        DdComplex { re: num.re / den, im: num.im / den }
    }

    #[cfg(test)]
    pub fn conj(self) -> DdComplex {
        DdComplex { re: self.re, im: -self.im }
    }

    /// Magnitude of the larger component, as a cheap size gauge.
    pub fn mag_hi(self) -> f64 {
        self.re.hi.abs().max(self.im.hi.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_identities() {
        let a = Dd::from_f64(0.1) + Dd::from_f64(0.2);
        let b = a - Dd::from_f64(0.2);
        assert!((b.to_f64() - 0.1).abs() < 1e-30);

        let x = Dd::new(1.0, 1e-20);
        let y = x * x;
        assert!((y.hi - 1.0).abs() < 1e-15);
        assert!((y.lo - 2e-20).abs() < 1e-30);
    }

    #[test]
    fn division_round_trip() {
        let a = Dd::from_f64(3.0);
        let b = Dd::from_f64(7.0);
        let q = a / b;
        let r = q * b - a;
        assert!(r.to_f64().abs() < 1e-30);
    }

    #[test]
    fn sqrt_squares_back() {
        for &v in &[2.0, 0.5, 123.456, 1e-8] {
            let s = Dd::from_f64(v).sqrt();
            let back = s * s - Dd::from_f64(v);
            assert!(back.to_f64().abs() < 1e-28 * v, "v={v}");
        }
    }

    #[test]
    fn exp_ln_inverse_pair() {
        for &v in &[0.3, 1.0, 2.5, 10.0, 40.0] {
            let x = Dd::from_f64(v);
            let d = x.ln().exp() - x;
            assert!(d.to_f64().abs() < 1e-28 * v, "v={v}");
        }
        // exp matches the known dd value of e.
        let e = Dd::ONE.exp();
        assert!((e.hi - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn small_trig_against_f64() {
        for &v in &[0.0, 1e-9, 0.01, 0.3, 0.9] {
            let s = Dd::from_f64(v).sin_small().to_f64();
            let c = Dd::from_f64(v).cos_small().to_f64();
            assert!((s - v.sin()).abs() < 1e-15);
            assert!((c - v.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn pow_matches_f64_for_moderate_inputs() {
        let p = Dd::from_f64(2.5).pow(Dd::from_f64(3.25));
        assert!((p.to_f64() - 2.5f64.powf(3.25)).abs() < 1e-12);
    }

    #[test]
    fn complex_mul_div_inverse() {
        let z = DdComplex::from_f64(1.3, -0.7);
        let w = DdComplex::from_f64(-0.2, 2.1);
        let r = z.mul(w).div(w).sub(z);
        assert!(r.re.to_f64().abs() < 1e-28);
        assert!(r.im.to_f64().abs() < 1e-28);
    }
}
