//! The three families of rational Painlevé-IV solutions and their exact
//! identity checks.
//!
//! A solution is kept in the structural form
//! `w(y) = slope*y + sign * d/dy log(top/bottom)` with `top` and `bottom`
//! generalized Hermite polynomials; it is never expanded into a single
//! numerator/denominator for evaluation.

use crate::error::{Error, Result};
use crate::hermite::{factorial, gen_hermite, t_poly, tau_poly};
use crate::hp;
use crate::poly::{ExactPoly, HpPoly};
use crate::ratfn::ExactRationalFn;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;
use std::sync::Arc;

/// Relative magnitude below which an evaluation point counts as sitting on a
/// pole of the log-derivative form.
pub const NEAR_POLE_REL_THRESHOLD: f64 = 1e-30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    I,
    II,
    III,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::I => write!(f, "I"),
            Family::II => write!(f, "II"),
            Family::III => write!(f, "III"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Family::I),
            "II" | "2" => Ok(Family::II),
            "III" | "3" => Ok(Family::III),
            other => Err(Error::Domain(format!("unknown family {other:?}"))),
        }
    }
}

/// Painlevé-IV parameters `(alpha, beta)` for one family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub m: i64,
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl FamilyParams {
    pub fn new(family: Family, m: i64, n: i64) -> Result<Self> {
        let valid = match family {
            Family::I => m >= 0 && n >= 1,
            Family::II => m >= 1 && n >= 0,
            Family::III => m >= 0 && n >= 0,
        };
        if !valid {
            return Err(Error::Domain(format!(
                "(m, n) = ({m}, {n}) outside the validity range of family {family}"
            )));
        }
        let (alpha, beta) = match family {
            Family::I => (2 * m + n + 1, -2 * n * n),
            Family::II => (-(m + 2 * n + 1), -2 * m * m),
            Family::III => (n - m, -2 * (m + n + 1) * (m + n + 1)),
        };
        Ok(FamilyParams { family, m, n, alpha, beta })
    }
}

/// A rational Painlevé-IV solution in log-derivative form.
#[derive(Clone)]
pub struct LogDerivRational {
    pub params: FamilyParams,
    pub top: Arc<ExactPoly>,
    pub bottom: Arc<ExactPoly>,
    /// Coefficient of `y` in the additive affine term (-2 for family III).
    pub affine_slope: i64,
    /// Sign in front of the log-derivative.
    pub sign: i64,
}

/// Construct the family member `w^(family)_{m,n}`.
pub fn build_solution(family: Family, m: i64, n: i64) -> Result<LogDerivRational> {
    let params = FamilyParams::new(family, m, n)?;
    let (mu, nu) = (m as usize, n as usize);
    let (top, bottom, affine_slope, sign) = match family {
        Family::I => (gen_hermite(mu + 1, nu), gen_hermite(mu, nu), 0, 1),
        Family::II => (gen_hermite(mu, nu + 1), gen_hermite(mu, nu), 0, -1),
        Family::III => (gen_hermite(mu, nu + 1), gen_hermite(mu + 1, nu), -2, 1),
    };
    Ok(LogDerivRational { params, top, bottom, affine_slope, sign })
}

impl LogDerivRational {
    /// Numerator and denominator of `w` as a single rational expression,
    /// not reduced: `num = slope*y*T*B + sign*(T'B - TB')`, `den = T*B`.
    pub fn as_num_den(&self) -> (ExactPoly, ExactPoly) {
        let t = self.top.as_ref();
        let b = self.bottom.as_ref();
        let den = t.mul(b);
        let wronskian = t.derivative().mul(b).sub(&t.mul(&b.derivative()));
        let mut num = wronskian.scale_int(self.sign);
        if self.affine_slope != 0 {
            num = num.add(&den.shift_up(1).scale_int(self.affine_slope));
        }
        (num, den)
    }
}

/// Precomputed extended-precision evaluator for one solution.
pub struct SolutionEvaluator {
    top: HpPoly,
    bottom: HpPoly,
    slope: i64,
    sign: i64,
    prec: usize,
    near_pole_rel: hp::Real,
}

impl SolutionEvaluator {
    pub fn new(w: &LogDerivRational, prec: usize) -> Self {
        SolutionEvaluator {
            top: HpPoly::from_exact(&w.top, prec),
            bottom: HpPoly::from_exact(&w.bottom, prec),
            slope: w.affine_slope,
            sign: w.sign,
            prec,
            near_pole_rel: hp::Real::from_f64(NEAR_POLE_REL_THRESHOLD, prec),
        }
    }

    pub fn eval(&self, y: &hp::Complex) -> Result<hp::Complex> {
        let (tv, tdv) = self.top.eval_with_deriv(y);
        let (bv, bdv) = self.bottom.eval_with_deriv(y);
        let cancel_rel =
            hp::Real::from_f64(2.0, self.prec).powi(-(self.prec as i64 - 24));
        for (value, poly, label) in [(&tv, &self.top, "numerator"), (&bv, &self.bottom, "denominator")] {
            // proximity to an actual zero, in units of the coefficient scale
            let pole_floor = poly.max_coeff().mul(&self.near_pole_rel);
            // cancellation beyond what the working precision can resolve
            let cancel_floor = poly.abs_majorant(y).mul(&cancel_rel);
            if value.abs() <= pole_floor.max(&cancel_floor) {
                return Err(Error::NearPole(format!(
                    "{label} polynomial vanishes near y = {:?}",
                    y.to_c64()
                )));
            }
        }
        let mut v = tdv.div(&tv).sub(&bdv.div(&bv));
        if self.sign < 0 {
            v = v.neg();
        }
        if self.slope != 0 {
            v = v.add(&y.scale(&hp::Real::from_i64(self.slope, self.prec)));
        }
        if !v.is_finite() {
            return Err(Error::Overflow("solution evaluation overflowed".into()));
        }
        Ok(v)
    }
}

/// Evaluate `w(y)` at extended precision.
pub fn eval_solution(w: &LogDerivRational, y: &hp::Complex, prec: usize) -> Result<hp::Complex> {
    SolutionEvaluator::new(w, prec).eval(y)
}

/// Evaluate the rescaled quantity `n^{-1/2} w(m^{1/2} x)` compared by the
/// asymptotic formulas. Requires `m, n >= 1` so both scalings exist.
pub fn scaled_eval(w: &LogDerivRational, x: &hp::Complex, prec: usize) -> Result<hp::Complex> {
    scaled_eval_with(&SolutionEvaluator::new(w, prec), w, x, prec)
}

/// `scaled_eval` against a prebuilt evaluator (for sweeps over many `x`).
pub fn scaled_eval_with(
    ev: &SolutionEvaluator,
    w: &LogDerivRational,
    x: &hp::Complex,
    prec: usize,
) -> Result<hp::Complex> {
    if w.params.m < 1 || w.params.n < 1 {
        return Err(Error::Domain(format!(
            "scaled evaluation needs m, n >= 1, got ({}, {})",
            w.params.m, w.params.n
        )));
    }
    let sqrt_m = hp::Real::from_i64(w.params.m, prec).sqrt();
    let sqrt_n = hp::Real::from_i64(w.params.n, prec).sqrt();
    let y = x.scale(&sqrt_m);
    Ok(ev.eval(&y)?.scale(&sqrt_n.recip()))
}

/// Exact Painlevé-IV residual
/// `w'' - (w')^2/(2w) - (3/2)w^3 - 4yw^2 - 2(y^2 - alpha)w - beta/w`
/// as a reduced rational function; identically zero exactly when `w` solves
/// the equation with the family's `(alpha, beta)`.
///
/// Assembled over the common denominator `2 N D^3` (with `w = N/D`), which
/// keeps every intermediate product a polynomial of bounded degree.
pub fn p4_residual(w: &LogDerivRational) -> ExactRationalFn {
    let (n, d) = w.as_num_den();
    let n1 = n.derivative();
    let n2 = n1.derivative();
    let d1 = d.derivative();
    let d2 = d1.derivative();

    // residual * 2ND^3 =
    //   2N[(N''D - ND'')D - 2D'(N'D - ND')] - (N'D - ND')^2
    //   - 3N^4 - 8yN^3D - 4(y^2 - alpha)N^2D^2 - 2beta*D^4
    let a = n1.mul(&d).sub(&n.mul(&d1));
    let b = n2.mul(&d).sub(&n.mul(&d2));
    let nn = n.mul(&n);
    let dd = d.mul(&d);
    let term_second = n.mul(&b.mul(&d).sub(&d1.mul(&a).scale_int(2))).scale_int(2);
    let term_first = a.mul(&a);
    let term_cubic = nn.mul(&nn).scale_int(3);
    let term_quad = nn.mul(&n).mul(&d).shift_up(1).scale_int(8);
    let ysq_alpha = ExactPoly::from_integers(&[-w.params.alpha, 0, 1]);
    let term_linear = nn.mul(&dd).mul(&ysq_alpha).scale_int(4);
    let term_beta = dd.mul(&dd).scale_int(2 * w.params.beta);

    let p = term_second
        .sub(&term_first)
        .sub(&term_cubic)
        .sub(&term_quad)
        .sub(&term_linear)
        .sub(&term_beta);
    let den = n.mul(&d).mul(&dd).scale_int(2);
    ExactRationalFn::new(p, den).expect("nonzero denominator by construction")
}

/// Outcome of the determinant-switch identity check.
pub struct LemmaSwitchReport {
    pub holds: bool,
    /// `tau_{m,n} - prod_k [(m+k)! 2^k] * T_{m-n+1,n}`; zero iff the
    /// moment-determinant identity holds.
    pub switch_residual: ExactPoly,
    /// `tau_{m,n} - (-1)^{ceil((n-1)/2)} prod_k [k! 2^k] * H_{m,n}`;
    /// zero iff the Hermite-determinant identity holds.
    pub hermite_residual: ExactPoly,
}

/// Verify, exactly, the two determinant identities tying `tau_{m,n}` to the
/// moment Hankel determinant `T_{m-n+1,n}` and to `H_{m,n}`.
pub fn check_lemma_switch(m: usize, n: usize) -> Result<LemmaSwitchReport> {
    if n < 1 || m < n {
        return Err(Error::Domain(format!(
            "determinant switch needs m >= n >= 1, got ({m}, {n})"
        )));
    }
    let tau = tau_poly(m, n);

    let mut pref_switch = BigInt::one();
    for k in 0..n {
        pref_switch *= factorial(m + k) << k;
    }
    let t = t_poly(m as i64 - n as i64 + 1, n)?;
    let switch_residual = tau.sub(&t.scale(&BigRational::from_integer(pref_switch)));

    let mut pref_h = BigInt::one();
    for k in 0..n {
        pref_h *= factorial(k) << k;
    }
    if (n - 1).div_ceil(2) % 2 == 1 {
        pref_h = -pref_h;
    }
    let hmn = gen_hermite(m, n);
    let hermite_residual = tau.sub(&hmn.scale(&BigRational::from_integer(pref_h)));

    Ok(LemmaSwitchReport {
        holds: switch_residual.is_zero() && hermite_residual.is_zero(),
        switch_residual,
        hermite_residual,
    })
}

/// Verify, as exact rational-function identities, the orthogonal-polynomial
/// determinant representations
/// `w^(I)_{m,n} = d/dy log(T_{m-n+2,n}/T_{m-n+1,n})` and
/// `w^(II)_{m,n} = d/dy log(T_{m-n+1,n}/T_{m-n,n+1})`.
pub fn check_psi_representations(m: usize, n: usize) -> Result<bool> {
    if n < 1 || m < n {
        return Err(Error::Domain(format!(
            "determinant representation needs m >= n >= 1, got ({m}, {n})"
        )));
    }
    let mu = m as i64 - n as i64;

    // family I: d/dy log(H_{m+1,n}/H_{m,n}) == d/dy log(T_{mu+2,n}/T_{mu+1,n})
    let a = gen_hermite(m + 1, n);
    let b = gen_hermite(m, n);
    let c = t_poly(mu + 2, n)?;
    let d = t_poly(mu + 1, n)?;
    for (t, name) in [(&c, "T_{m-n+2,n}"), (&d, "T_{m-n+1,n}")] {
        if t.is_zero() {
            return Err(Error::DegenerateDeterminant(format!("{name} is the zero polynomial")));
        }
    }
    let ok_one = log_deriv_equal(&a, &b, 1, &c, &d);

    // family II: -d/dy log(H_{m,n+1}/H_{m,n}) == d/dy log(T_{mu+1,n}/T_{mu,n+1})
    let a2 = gen_hermite(m, n + 1);
    let c2 = t_poly(mu + 1, n)?;
    let d2 = t_poly(mu, n + 1)?;
    for (t, name) in [(&c2, "T_{m-n+1,n}"), (&d2, "T_{m-n,n+1}")] {
        if t.is_zero() {
            return Err(Error::DegenerateDeterminant(format!("{name} is the zero polynomial")));
        }
    }
    let ok_two = log_deriv_equal(&a2, &b, -1, &c2, &d2);

    Ok(ok_one && ok_two)
}

/// Cross-multiplied equality `sign * d/dy log(a/b) == d/dy log(c/d)`.
fn log_deriv_equal(a: &ExactPoly, b: &ExactPoly, sign: i64, c: &ExactPoly, d: &ExactPoly) -> bool {
    let lhs_num = a.derivative().mul(b).sub(&a.mul(&b.derivative())).scale_int(sign);
    let rhs_num = c.derivative().mul(d).sub(&c.mul(&d.derivative()));
    lhs_num.mul(&c.mul(d)).sub(&rhs_num.mul(&a.mul(b))).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_parameters() {
        let p = FamilyParams::new(Family::I, 2, 3).unwrap();
        assert_eq!((p.alpha, p.beta), (8, -18));
        let p = FamilyParams::new(Family::II, 2, 3).unwrap();
        assert_eq!((p.alpha, p.beta), (-9, -8));
        let p = FamilyParams::new(Family::III, 2, 3).unwrap();
        assert_eq!((p.alpha, p.beta), (1, -72));
        assert!(FamilyParams::new(Family::I, 2, 0).is_err());
        assert!(FamilyParams::new(Family::II, 0, 2).is_err());
        assert!(FamilyParams::new(Family::III, -1, 0).is_err());
    }

    #[test]
    fn build_structural_forms() {
        let w = build_solution(Family::I, 1, 1).unwrap();
        assert_eq!(*w.top, ExactPoly::from_integers(&[-2, 0, 4]));
        assert_eq!(*w.bottom, ExactPoly::from_integers(&[0, 2]));
        assert_eq!((w.affine_slope, w.sign), (0, 1));

        let w = build_solution(Family::III, 0, 0).unwrap();
        assert_eq!(*w.top, ExactPoly::one());
        assert_eq!(*w.bottom, ExactPoly::one());
        assert_eq!((w.affine_slope, w.sign), (-2, 1));

        let w = build_solution(Family::II, 1, 0).unwrap();
        // -d/dy log(H_{1,1}/H_{1,0}) = -1/y
        let (num, den) = w.as_num_den();
        let f = crate::ratfn::ExactRationalFn::new(num, den).unwrap();
        assert_eq!(f.num(), &ExactPoly::from_integers(&[-1]));
        assert_eq!(f.den(), &ExactPoly::y());
    }

    #[test]
    fn eval_closed_forms() {
        let prec = 192;
        let w = build_solution(Family::III, 0, 0).unwrap();
        let v = eval_solution(&w, &hp::Complex::from_f64(1.0, 0.0, prec), prec).unwrap();
        assert!((v.re.to_f64() + 2.0).abs() < 1e-40);

        let w = build_solution(Family::II, 1, 0).unwrap();
        let v = eval_solution(&w, &hp::Complex::from_f64(2.0, 0.0, prec), prec).unwrap();
        assert!((v.re.to_f64() + 0.5).abs() < 1e-40);

        // w^(I)_{1,1}(1) = 8/(4-2) - 2/2 = 3, by exact rational evaluation
        let w = build_solution(Family::I, 1, 1).unwrap();
        let (num, den) = w.as_num_den();
        let y = BigRational::one();
        let exact = num.eval_rational(&y) / den.eval_rational(&y);
        assert_eq!(exact, BigRational::from_integer(BigInt::from(3)));
        let v = eval_solution(&w, &hp::Complex::from_f64(1.0, 0.0, prec), prec).unwrap();
        assert!((v.re.to_f64() - 3.0).abs() < 1e-40);
    }

    #[test]
    fn near_pole_detected() {
        let prec = 192;
        let w = build_solution(Family::II, 1, 0).unwrap();
        let at_pole = eval_solution(&w, &hp::Complex::zero(prec), prec);
        assert!(matches!(at_pole, Err(Error::NearPole(_))));
    }

    #[test]
    fn p4_residual_examples() {
        for (family, m, n) in [(Family::I, 1, 1), (Family::II, 1, 0), (Family::III, 2, 1)] {
            let w = build_solution(family, m, n).unwrap();
            assert!(
                p4_residual(&w).is_zero(),
                "P4 residual nonzero for family {family} at ({m},{n})"
            );
        }
    }

    #[test]
    fn p4_residual_detects_wrong_parameters() {
        // force mismatched (alpha, beta): family I polynomials with family II tags
        let mut w = build_solution(Family::I, 2, 1).unwrap();
        w.params.alpha += 1;
        assert!(!p4_residual(&w).is_zero());
    }

    #[test]
    fn lemma_switch_examples() {
        for (m, n) in [(1, 1), (2, 1), (5, 3)] {
            let report = check_lemma_switch(m, n).unwrap();
            assert!(report.holds, "determinant switch fails at ({m},{n})");
        }
        assert!(check_lemma_switch(1, 2).is_err());
    }

    #[test]
    fn psi_representation_examples() {
        for (m, n) in [(1, 1), (3, 2), (4, 1)] {
            assert!(
                check_psi_representations(m, n).unwrap(),
                "determinant representation fails at ({m},{n})"
            );
        }
    }

    #[test]
    fn scaled_eval_contract() {
        let prec = 192;
        let w = build_solution(Family::III, 0, 0).unwrap();
        let x = hp::Complex::from_f64(1.0, 0.0, prec);
        assert!(matches!(scaled_eval(&w, &x, prec), Err(Error::Domain(_))));

        // m = n = 1: scaled value equals w(x) itself
        let w = build_solution(Family::I, 1, 1).unwrap();
        let v = scaled_eval(&w, &x, prec).unwrap();
        assert!((v.re.to_f64() - 3.0).abs() < 1e-40);
    }

    #[test]
    fn family_sum_identity_exact() {
        // w^(III) + w^(I) + w^(II) + 2y = 0 as an exact rational identity
        for (m, n) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
            let w1 = build_solution(Family::I, m as i64, n as i64).unwrap();
            let w2 = build_solution(Family::II, m as i64, n as i64).unwrap();
            let w3 = build_solution(Family::III, m as i64, n as i64).unwrap();
            let to_fn = |w: &LogDerivRational| {
                let (num, den) = w.as_num_den();
                ExactRationalFn::new(num, den).unwrap()
            };
            let sum = to_fn(&w1)
                .add(&to_fn(&w2))
                .unwrap()
                .add(&to_fn(&w3))
                .unwrap()
                .add(&ExactRationalFn::from_poly(ExactPoly::from_integers(&[0, 2])))
                .unwrap();
            assert!(sum.is_zero(), "sum identity fails at ({m},{n})");
        }
    }

    #[test]
    fn poles_are_exactly_product_roots() {
        // gcd(numerator, T*B) is constant: no cancellation beyond shared roots
        for (family, m, n) in [(Family::I, 2, 2), (Family::II, 2, 1), (Family::III, 1, 2)] {
            let w = build_solution(family, m, n).unwrap();
            let (num, den) = w.as_num_den();
            let g = num.gcd(&den);
            assert_eq!(g.degree(), 0, "unexpected pole cancellation for {family} ({m},{n})");
        }
    }
}
