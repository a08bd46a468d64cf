//! Dense univariate polynomials with exact rational coefficients.

use crate::error::{Error, Result};
use crate::hp;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial with exact rational coefficients, stored dense in ascending
/// degree order. The zero polynomial has an empty coefficient vector;
/// otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ExactPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        ExactPoly::new(vec![c])
    }

    pub fn from_integers(cs: &[i64]) -> Self {
        ExactPoly::new(cs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// The monomial `c * y^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        ExactPoly { coeffs }
    }

    /// The identity polynomial `y`.
    pub fn y() -> Self {
        ExactPoly::monomial(BigRational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        ExactPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        ExactPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        ExactPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Multiply by `y^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ExactPoly { coeffs }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = ExactPoly::one();
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

    /// Exact formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ExactPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        ExactPoly::new(coeffs)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval_rational(&self, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (ExactPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        let lead = d.coeffs.last().unwrap();
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dn - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = dj * &c;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        (ExactPoly::new(quot), ExactPoly::new(rem))
    }

    /// Exact division; errors if a remainder is left.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!(
                "degree-{} remainder dividing degree {} by degree {}",
                r.degree(),
                self.degree(),
                d.degree()
            )))
        }
    }

    /// Monic gcd via the Euclidean algorithm. Intended for small degrees.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.monic();
        let mut b = rhs.monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Scale so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return ExactPoly::zero();
        }
        let lead = self.leading();
        if lead.is_one() {
            return self.clone();
        }
        self.scale(&lead.recip())
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Largest coefficient magnitude as an extended-precision real.
    pub fn max_coeff_magnitude(&self, prec: usize) -> hp::Real {
        let mut best: Option<&BigRational> = None;
        for c in &self.coeffs {
            if best.is_none_or(|b| c.abs() > b.abs()) {
                best = Some(c);
            }
        }
        match best {
            Some(c) => hp::Real::from_rational(&c.abs(), prec),
            None => hp::Real::zero(prec),
        }
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*y")?,
                _ => write!(f, "{c}*y^{k}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait<&ExactPoly> for &ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: &ExactPoly) -> ExactPoly {
                ExactPoly::$method(self, rhs)
            }
        }
    };
}
poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

/// Coefficients of an [`ExactPoly`] converted once to extended precision,
/// for repeated Horner evaluation at complex points.
pub struct HpPoly {
    coeffs: Vec<hp::Complex>,
    moduli: Vec<hp::Real>,
    max_coeff: hp::Real,
    prec: usize,
}

impl HpPoly {
    pub fn from_exact(p: &ExactPoly, prec: usize) -> Self {
        let coeffs: Vec<hp::Complex> = p
            .coeffs()
            .iter()
            .map(|c| hp::Complex::from_real(hp::Real::from_rational(c, prec)))
            .collect();
        let moduli = coeffs.iter().map(|c| c.re.abs()).collect();
        HpPoly { coeffs, moduli, max_coeff: p.max_coeff_magnitude(prec), prec }
    }

    pub fn from_complex_coeffs(coeffs: Vec<hp::Complex>, prec: usize) -> Self {
        let moduli: Vec<hp::Real> = coeffs.iter().map(|c| c.abs()).collect();
        let mut max_coeff = hp::Real::zero(prec);
        for m in &moduli {
            max_coeff = max_coeff.max(m);
        }
        HpPoly { coeffs, moduli, max_coeff, prec }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn max_coeff(&self) -> &hp::Real {
        &self.max_coeff
    }

    pub fn coeff(&self, k: usize) -> Option<&hp::Complex> {
        self.coeffs.get(k)
    }

    pub fn eval(&self, z: &hp::Complex) -> hp::Complex {
        let mut acc = hp::Complex::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    /// Fused Horner pass returning `(p(z), p'(z))`.
    pub fn eval_with_deriv(&self, z: &hp::Complex) -> (hp::Complex, hp::Complex) {
        let mut p = hp::Complex::zero(self.prec);
        let mut dp = hp::Complex::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            dp = dp.mul(z).add(&p);
            p = p.mul(z).add(c);
        }
        (p, dp)
    }

    /// Scale-aware magnitude `max|c_k| * max(1,|z|)^degree` used by
    /// residual acceptance thresholds.
    pub fn scale_at(&self, z: &hp::Complex) -> hp::Real {
        let one = hp::Real::one(self.prec);
        let zb = z.abs().max(&one);
        self.max_coeff.mul(&zb.powi(self.degree() as i64))
    }

    /// Horner majorant `sum_k |c_k| |z|^k`, the magnitude against which
    /// cancellation in an evaluation should be judged.
    pub fn abs_majorant(&self, z: &hp::Complex) -> hp::Real {
        self.abs_majorant_at_radius(&z.abs())
    }

    pub fn abs_majorant_at_radius(&self, radius: &hp::Real) -> hp::Real {
        let mut acc = hp::Real::zero(self.prec);
        for m in self.moduli.iter().rev() {
            acc = acc.mul(radius).add(m);
        }
        acc
    }
}

/// Horner evaluation of an exact polynomial at an extended-precision complex
/// point. Coefficients are converted (one rounding each) at the point's
/// precision.
pub fn poly_eval(p: &ExactPoly, y: &hp::Complex, prec: usize) -> Result<hp::Complex> {
    let hp_poly = HpPoly::from_exact(p, prec);
    let v = hp_poly.eval(y);
    if !v.is_finite() {
        return Err(Error::Overflow(format!(
            "polynomial evaluation of degree {} overflowed",
            p.degree()
        )));
    }
    Ok(v)
}
