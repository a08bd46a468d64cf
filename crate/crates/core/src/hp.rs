//! Extended-precision real and complex arithmetic.
//!
//! Thin wrappers around [`astro_float::BigFloat`] that carry the working
//! precision with each value. Binary operations round to the larger of the
//! two operand precisions. Values near zeros of the Hermite-type polynomials
//! cancel catastrophically in double precision, so everything numerical in
//! this crate runs through these types (default 192 significand bits).

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_complex::Complex64;
use num_rational::BigRational;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

/// Default significand precision in bits.
pub const DEFAULT_PREC: usize = 192;

/// Minimum supported precision.
pub const MIN_PREC: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Extended-precision real number.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real { v: BigFloat::new(prec), prec }
    }

    pub fn one(prec: usize) -> Self {
        Real::from_u64(1, prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Real { v: BigFloat::from_f64(x, prec), prec }
    }

    pub fn from_u64(x: u64, prec: usize) -> Self {
        Real { v: BigFloat::from_u64(x, prec), prec }
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        Real { v: BigFloat::from_i64(x, prec), prec }
    }

    /// Exact conversion of a big integer, then one rounding to `prec` bits.
    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        let (sign, digits) = x.to_u64_digits();
        if digits.is_empty() {
            return Real::zero(prec);
        }
        let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let bits = digits.len() * 64;
        let mut v = BigFloat::from_words(&digits, s, bits as astro_float::Exponent);
        v.set_precision(prec.max(MIN_PREC), RM).expect("set_precision");
        Real { v, prec }
    }

    /// `num/den` rounded once to `prec` bits.
    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        let num = Real::from_bigint(q.numer(), prec + 64);
        let den = Real::from_bigint(q.denom(), prec + 64);
        Real { v: num.v.div(&den.v, prec, RM), prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn neg(&self) -> Self {
        Real { v: self.v.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        Real { v: self.v.abs(), prec: self.prec }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        Real { v: self.v.add(&rhs.v, p, RM), prec: p }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        Real { v: self.v.sub(&rhs.v, p, RM), prec: p }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        Real { v: self.v.mul(&rhs.v, p, RM), prec: p }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        Real { v: self.v.div(&rhs.v, p, RM), prec: p }
    }

    pub fn recip(&self) -> Self {
        Real { v: self.v.reciprocal(self.prec, RM), prec: self.prec }
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        self.mul(&Real::from_u64(k, self.prec))
    }

    pub fn div_u64(&self, k: u64) -> Self {
        self.div(&Real::from_u64(k, self.prec))
    }

    /// Square root; tiny negative inputs (rounding residue of a
    /// mathematically nonnegative quantity) are clamped to zero.
    pub fn sqrt(&self) -> Self {
        if self.v.is_negative() {
            return Real::zero(self.prec);
        }
        Real { v: self.v.sqrt(self.prec, RM), prec: self.prec }
    }

    /// Natural logarithm. Caller guarantees a positive argument.
    pub fn ln(&self) -> Self {
        debug_assert!(self.is_positive(), "ln of non-positive value");
        let v = CONSTS.with(|c| self.v.ln(self.prec, RM, &mut c.borrow_mut()));
        Real { v, prec: self.prec }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Real::one(self.prec);
        }
        let mut e = n.unsigned_abs();
        let mut base = self.clone();
        let mut acc = Real::one(self.prec);
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn max(&self, rhs: &Self) -> Self {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    pub fn min(&self, rhs: &Self) -> Self {
        if self <= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    /// Saturating conversion to `f64` (overflow gives `±inf`).
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _n, sign, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().expect("nonzero has mantissa") as f64;
        // value = 0.mantissa * 2^e, top word holds the leading 64 bits
        let mag = top * pow2(e as i64 - 64);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Rough base-2 logarithm of the magnitude, safe for huge exponents.
    pub fn log2_magnitude(&self) -> f64 {
        if self.v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, _, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().unwrap() as f64;
        e as f64 - 64.0 + top.log2()
    }

    /// Decimal string, shortest representation capped at `max_sig`
    /// significant digits. Deterministic for a given value and precision.
    pub fn to_decimal(&self, max_sig: usize) -> String {
        debug_assert!(max_sig > 0);
        if self.v.is_zero() {
            return "0".to_string();
        }
        if self.v.is_nan() {
            return "nan".to_string();
        }
        if self.v.is_inf() {
            return if self.v.is_inf_neg() { "-inf" } else { "inf" }.to_string();
        }
        let (sign, mut digits, mut exp10) = CONSTS
            .with(|c| self.v.convert_to_radix(Radix::Dec, RM, &mut c.borrow_mut()))
            .expect("decimal conversion");
        // value = 0.d1 d2 ... * 10^exp10
        if digits.len() > max_sig {
            let round_up = digits[max_sig] >= 5;
            digits.truncate(max_sig);
            if round_up {
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        digits.insert(0, 1);
                        exp10 += 1;
                        break;
                    }
                    i -= 1;
                    if digits[i] == 9 {
                        digits[i] = 0;
                    } else {
                        digits[i] += 1;
                        break;
                    }
                }
            }
        }
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        if digits.iter().all(|&d| d == 0) {
            return "0".to_string();
        }
        let mut out = String::new();
        if sign == Sign::Neg {
            out.push('-');
        }
        let k = exp10 as i64;
        let len = digits.len() as i64;
        let digit_str: String = digits.iter().map(|d| (b'0' + d) as char).collect();
        if 0 < k && k <= 21 {
            if k >= len {
                out.push_str(&digit_str);
                for _ in 0..(k - len) {
                    out.push('0');
                }
            } else {
                out.push_str(&digit_str[..k as usize]);
                out.push('.');
                out.push_str(&digit_str[k as usize..]);
            }
        } else if -4 < k && k <= 0 {
            out.push_str("0.");
            for _ in 0..(-k) {
                out.push('0');
            }
            out.push_str(&digit_str);
        } else {
            out.push_str(&digit_str[..1]);
            if digit_str.len() > 1 {
                out.push('.');
                out.push_str(&digit_str[1..]);
            }
            out.push('e');
            let e = k - 1;
            if e >= 0 {
                out.push('+');
            }
            out.push_str(&e.to_string());
        }
        out
    }
}

fn pow2(e: i64) -> f64 {
    if e > 1100 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        (e as f64).exp2()
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.v.cmp(&other.v), Some(0))
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(25))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real::$method(self, rhs)
            }
        }
    };
}
real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl core::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

/// Extended-precision complex number.
#[derive(Clone)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Complex { re: Real::zero(prec), im: Real::zero(prec) }
    }

    pub fn one(prec: usize) -> Self {
        Complex { re: Real::one(prec), im: Real::zero(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Complex { re: Real::from_f64(re, prec), im: Real::from_f64(im, prec) }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec();
        Complex { re, im: Real::zero(p) }
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        Complex::from_f64(z.re, z.im, prec)
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        Complex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Complex { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Complex { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Complex { re, im }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.norm_sqr();
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&d);
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&d);
        Complex { re, im }
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn recip(&self) -> Self {
        Complex::one(self.prec()).div(self)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn dist(&self, other: &Self) -> Real {
        self.sub(other).abs()
    }

    /// Principal square root (real part nonnegative; on the negative real
    /// axis the root with positive imaginary part).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re.is_negative() {
                return Complex::new(Real::zero(p), self.re.neg().sqrt());
            }
            return Complex::new(self.re.sqrt(), Real::zero(p));
        }
        let m = self.abs();
        let two = Real::from_u64(2, p);
        if !self.re.is_negative() {
            let u = m.add(&self.re).div(&two).sqrt();
            let v = self.im.div(&u.mul(&two));
            Complex::new(u, v)
        } else {
            let t = m.sub(&self.re).div(&two).sqrt();
            let v = if self.im.is_negative() { t.neg() } else { t };
            let u = self.im.div(&v.mul(&two));
            Complex::new(u, v)
        }
    }

    /// Real part of the principal logarithm, `ln |z|`.
    pub fn ln_abs(&self) -> Real {
        debug_assert!(!self.is_zero(), "ln of zero");
        let p = self.prec();
        self.norm_sqr().ln().div(&Real::from_u64(2, p))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Complex::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e}, {:e})", self.re.to_f64(), self.im.to_f64())
    }
}

macro_rules! complex_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait<&Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                Complex::$method(self, rhs)
            }
        }
    };
}
complex_binop!(Add, add);
complex_binop!(Sub, sub);
complex_binop!(Mul, mul);
complex_binop!(Div, div);

impl core::ops::Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::neg(self)
    }
}
