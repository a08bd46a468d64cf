//! Rational functions with exact polynomial numerator and denominator.

use crate::error::{Error, Result};
use crate::poly::ExactPoly;

/// A reduced rational function. The denominator is monic and coprime to the
/// numerator; the zero function is stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRationalFn {
    num: ExactPoly,
    den: ExactPoly,
}

impl ExactRationalFn {
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(ExactRationalFn { num: ExactPoly::zero(), den: ExactPoly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        } else {
            (num, den)
        };
        let lead = den.leading();
        Ok(ExactRationalFn { num: num.scale(&lead.recip()), den: den.monic() })
    }

    pub fn zero() -> Self {
        ExactRationalFn { num: ExactPoly::zero(), den: ExactPoly::one() }
    }

    pub fn from_poly(p: ExactPoly) -> Self {
        ExactRationalFn { num: p, den: ExactPoly::one() }
    }

    pub fn num(&self) -> &ExactPoly {
        &self.num
    }

    pub fn den(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        ExactRationalFn::new(num, self.den.mul(&rhs.den))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        ExactRationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        ExactRationalFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        ExactRationalFn::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    /// Formal derivative `(n/d)' = (n'd - nd')/d^2`.
    pub fn derivative(&self) -> Result<Self> {
        let num = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        ExactRationalFn::new(num, self.den.mul(&self.den))
    }

    /// Logarithmic derivative `(log(n/d))' = n'/n - d'/d`.
    pub fn log_derivative(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("logarithmic derivative of zero".into()));
        }
        let num = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        ExactRationalFn::new(num, self.num.mul(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        // (y^2 - 1)/(y + 1) reduces to y - 1
        let f = ExactRationalFn::new(
            ExactPoly::from_integers(&[-1, 0, 1]),
            ExactPoly::from_integers(&[1, 1]),
        )
        .unwrap();
        assert_eq!(f.num(), &ExactPoly::from_integers(&[-1, 1]));
        assert_eq!(f.den(), &ExactPoly::one());
    }

    #[test]
    fn zero_normalizes() {
        let f = ExactRationalFn::new(ExactPoly::zero(), ExactPoly::from_integers(&[0, 0, 3]))
            .unwrap();
        assert!(f.is_zero());
        assert_eq!(f.den(), &ExactPoly::one());
    }

    #[test]
    fn log_derivative_of_monomial() {
        // (log y)' = 1/y
        let f = ExactRationalFn::from_poly(ExactPoly::y());
        let d = f.log_derivative().unwrap();
        assert_eq!(d.num(), &ExactPoly::one());
        assert_eq!(d.den(), &ExactPoly::y());
    }

    #[test]
    fn arithmetic_cancels() {
        let y = ExactRationalFn::from_poly(ExactPoly::y());
        let inv = ExactRationalFn::new(ExactPoly::one(), ExactPoly::y()).unwrap();
        let prod = y.mul(&inv).unwrap();
        assert_eq!(prod, ExactRationalFn::from_poly(ExactPoly::one()));
        let diff = y.sub(&y).unwrap();
        assert!(diff.is_zero());
    }
}
