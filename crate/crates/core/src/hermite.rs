//! Hermite and generalized Hermite polynomials, moments, and Hankel
//! determinants, all in exact rational arithmetic.

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

/// Standard Hermite polynomial `H_m` by the three-term recursion
/// `H_{m+1} = 2y H_m - 2m H_{m-1}` with `H_0 = 1`, `H_1 = 2y`.
pub fn hermite(m: usize) -> ExactPoly {
    let mut prev = ExactPoly::one();
    if m == 0 {
        return prev;
    }
    let mut cur = ExactPoly::from_integers(&[0, 2]);
    for k in 1..m {
        let next = cur.shift_up(1).scale_int(2).sub(&prev.scale_int(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

type Table = HashMap<(usize, usize), Arc<ExactPoly>>;

static GEN_HERMITE_TABLE: LazyLock<RwLock<Table>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// Generalized Hermite polynomial `H_{m,n}`, memoized process-wide.
///
/// Built from the two bilinear recurrences seeded by
/// `H_{0,0} = H_{1,0} = H_{0,1} = 1` and `H_{1,1} = 2y`, with the
/// degenerate rows `H_{m,0} = H_{0,n} = 1`. Every division the recurrences
/// require is checked to be exact, and the result is checked to have
/// integer coefficients, degree `m*n`, and coefficient parity matching
/// `m*n`; violations panic since they signal an implementation bug rather
/// than bad input.
pub fn gen_hermite(m: usize, n: usize) -> Arc<ExactPoly> {
    if let Some(hit) = GEN_HERMITE_TABLE.read().unwrap().get(&(m, n)) {
        return Arc::clone(hit);
    }
    let mut table = GEN_HERMITE_TABLE.write().unwrap();
    if let Some(hit) = table.get(&(m, n)) {
        return Arc::clone(hit);
    }
    build_gen_hermite(&mut table, m, n)
}

fn get_or_build(table: &mut Table, m: usize, n: usize) -> Arc<ExactPoly> {
    match table.get(&(m, n)) {
        Some(hit) => Arc::clone(hit),
        None => build_gen_hermite(table, m, n),
    }
}

fn build_gen_hermite(table: &mut Table, m: usize, n: usize) -> Arc<ExactPoly> {
    let poly = if m == 0 || n == 0 {
        ExactPoly::one()
    } else if (m, n) == (1, 1) {
        ExactPoly::from_integers(&[0, 2])
    } else if n == 1 {
        // grow the first column with the m-recurrence:
        // 2m H_{m+1,n} H_{m-1,n} = H H'' - (H')^2 + 2m H^2
        let h = get_or_build(table, m - 1, 1);
        let below = get_or_build(table, m - 2, 1);
        bilinear_step(&h, &below, m - 1, false)
    } else {
        // grow along the row with the n-recurrence:
        // 2n H_{m,n+1} H_{m,n-1} = -H H'' + (H')^2 + 2n H^2
        let h = get_or_build(table, m, n - 1);
        let left = get_or_build(table, m, n - 2);
        bilinear_step(&h, &left, n - 1, true)
    };
    check_gen_hermite_invariants(&poly, m, n);
    let arc = Arc::new(poly);
    table.insert((m, n), Arc::clone(&arc));
    arc
}

/// One step of either bilinear recurrence: given `H = H_{m,n}` and the
/// neighbor behind it, produce the neighbor ahead of it. `flip` selects the
/// n-recurrence (second sign pattern); `k` is the index multiplying the
/// quadratic term (m for the first recurrence, n for the second).
fn bilinear_step(h: &ExactPoly, behind: &ExactPoly, k: usize, flip: bool) -> ExactPoly {
    let d1 = h.derivative();
    let d2 = d1.derivative();
    let curvature = h.mul(&d2).sub(&d1.mul(&d1));
    let quad = h.mul(h).scale_int(2 * k as i64);
    let numer = if flip { quad.sub(&curvature) } else { quad.add(&curvature) };
    numer
        .scale(&BigRational::new(BigInt::one(), BigInt::from(2 * k)))
        .exact_div(behind)
        .expect("inexact division in generalized Hermite recurrence")
}

fn check_gen_hermite_invariants(p: &ExactPoly, m: usize, n: usize) {
    assert!(
        p.has_integer_coeffs(),
        "H_{{{m},{n}}} has a non-integer coefficient after cancellation"
    );
    assert_eq!(p.degree(), m * n, "H_{{{m},{n}}} has wrong degree");
    let parity = (m * n) % 2;
    for (k, c) in p.coeffs().iter().enumerate() {
        assert!(
            c.is_zero() || k % 2 == parity,
            "H_{{{m},{n}}} has a coefficient of the wrong parity at degree {k}"
        );
    }
}

/// Moment polynomial `mu_j^{(m)} = H_{m+j} / (m+j)!`.
pub fn moment_poly(m: i64, j: usize) -> Result<ExactPoly> {
    let idx = m + j as i64;
    if idx < 0 {
        return Err(Error::Domain(format!("moment index m + j = {idx} is negative")));
    }
    let idx = idx as usize;
    let f = BigRational::new(BigInt::one(), factorial(idx));
    Ok(hermite(idx).scale(&f))
}

/// Exact determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination. The 0x0 determinant is 1.
pub fn hankel_det(matrix: &[Vec<ExactPoly>]) -> ExactPoly {
    let n = matrix.len();
    for row in matrix {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    if n == 0 {
        return ExactPoly::one();
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut m: Vec<Vec<ExactPoly>> = matrix.to_vec();
    let mut sign = 1i64;
    let mut prev = ExactPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return ExactPoly::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = ExactPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Hankel determinant `tau_{m,n}` of standard Hermite polynomials,
/// with entry `(j,k) = H_{m+j+k}` (0-indexed); `tau_{m,0} = 1`.
pub fn tau_poly(m: usize, n: usize) -> ExactPoly {
    if n == 0 {
        return ExactPoly::one();
    }
    let entries: Vec<ExactPoly> = (0..2 * n - 1).map(|s| hermite(m + s)).collect();
    let matrix: Vec<Vec<ExactPoly>> =
        (0..n).map(|j| (0..n).map(|k| entries[j + k].clone()).collect()).collect();
    hankel_det(&matrix)
}

/// Hankel determinant `T_{m,n}` of the moments, entry
/// `(j,k) = mu_{j+k}^{(m)}` (0-indexed); `T_{m,0} = 1`.
pub fn t_poly(m: i64, n: usize) -> Result<ExactPoly> {
    if n == 0 {
        return Ok(ExactPoly::one());
    }
    let mut entries = Vec::with_capacity(2 * n - 1);
    for s in 0..2 * n - 1 {
        entries.push(moment_poly(m, s)?);
    }
    let matrix: Vec<Vec<ExactPoly>> =
        (0..n).map(|j| (0..n).map(|k| entries[j + k].clone()).collect()).collect();
    Ok(hankel_det(&matrix))
}

/// For a polynomial `f` of degree `d` whose nonzero coefficients all share
/// the parity of `d`, return the real polynomial `g` with
/// `f(iy) = i^d * g(y)`. Returns `None` when the parity is mixed.
pub fn rotate_argument_by_i(f: &ExactPoly) -> Option<ExactPoly> {
    if f.is_zero() {
        return Some(ExactPoly::zero());
    }
    let deg = f.degree();
    let mut coeffs = Vec::with_capacity(deg + 1);
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            coeffs.push(BigRational::zero());
            continue;
        }
        if k % 2 != deg % 2 {
            return None;
        }
        // i^(k - d) = (-1)^((d - k)/2)
        let flip = ((deg - k) / 2) % 2 == 1;
        coeffs.push(if flip { -c } else { c.clone() });
    }
    Some(ExactPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Independent oracle: coefficients of H_m from the generating function
    /// e^{2sy - s^2} = sum_m H_m(y) s^m / m!, expanded by truncated series
    /// multiplication.
    fn hermite_from_generating_function(max_m: usize) -> Vec<ExactPoly> {
        let terms = max_m + 1;
        // base = 2ys - s^2 as coefficients in s (each an ExactPoly in y)
        let mut series = vec![ExactPoly::zero(); terms];
        series[0] = ExactPoly::one();
        let mut power = vec![ExactPoly::zero(); terms]; // (2ys - s^2)^k
        power[0] = ExactPoly::one();
        let mut kfact = BigRational::one();
        for k in 1..terms {
            // multiply power by (2ys - s^2)
            let mut next = vec![ExactPoly::zero(); terms];
            for (deg, c) in power.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if deg + 1 < terms {
                    next[deg + 1] = next[deg + 1].add(&c.shift_up(1).scale_int(2));
                }
                if deg + 2 < terms {
                    next[deg + 2] = next[deg + 2].sub(c);
                }
            }
            power = next;
            kfact *= BigRational::from_integer(BigInt::from(k));
            for (deg, c) in power.iter().enumerate() {
                if !c.is_zero() {
                    series[deg] = series[deg].add(&c.scale(&kfact.recip()));
                }
            }
        }
        (0..terms)
            .map(|m| series[m].scale(&BigRational::from_integer(factorial(m))))
            .collect()
    }

    #[test]
    fn hermite_base_cases() {
        assert_eq!(hermite(0), ExactPoly::one());
        assert_eq!(hermite(1), ExactPoly::from_integers(&[0, 2]));
    }

    #[test]
    fn hermite_matches_generating_function() {
        let oracle = hermite_from_generating_function(15);
        assert_eq!(oracle[2], ExactPoly::from_integers(&[-2, 0, 4]));
        for (m, expected) in oracle.iter().enumerate() {
            assert_eq!(&hermite(m), expected, "H_{m} disagrees with generating function");
        }
    }

    #[test]
    fn hermite_leading_coefficient() {
        for m in 0..12 {
            let lead = hermite(m).leading();
            assert_eq!(lead, BigRational::from_integer(BigInt::from(2).pow(m as u32)));
        }
    }

    #[test]
    fn gen_hermite_seeds_and_specializations() {
        assert_eq!(*gen_hermite(1, 1), ExactPoly::from_integers(&[0, 2]));
        assert_eq!(*gen_hermite(0, 0), ExactPoly::one());
        assert_eq!(*gen_hermite(3, 1), hermite(3));
        for m in 0..=15 {
            assert_eq!(*gen_hermite(m, 1), hermite(m), "H_{{m,1}} != H_m at m={m}");
        }
        // H_{1,n}(y) = i^{-n} H_n(iy)
        for n in 0..=15 {
            let twisted = rotate_argument_by_i(&hermite(n)).expect("Hermite parity");
            assert_eq!(*gen_hermite(1, n), twisted, "H_{{1,n}} specialization at n={n}");
        }
    }

    #[test]
    fn gen_hermite_small_closed_forms() {
        // computed by hand from the recurrences
        assert_eq!(*gen_hermite(1, 2), ExactPoly::from_integers(&[2, 0, 4]));
        assert_eq!(*gen_hermite(2, 2), ExactPoly::from_integers(&[12, 0, 0, 0, 16]));
    }

    #[test]
    fn gen_hermite_2_2_matches_hankel_route() {
        // independent of the bilinear recurrences: tau_{2,2} over its prefactor
        let tau = tau_poly(2, 2);
        let prefactor = BigRational::from_integer(BigInt::from(-2)); // (-1)^1 * (0!2^0)(1!2^1)
        assert_eq!(tau.scale(&prefactor.recip()), *gen_hermite(2, 2));
    }

    #[test]
    fn gen_hermite_recurrence_residuals_vanish() {
        for m in 1..=10usize {
            for n in 1..=10usize {
                let h = gen_hermite(m, n);
                let d1 = h.derivative();
                let d2 = d1.derivative();
                let curvature = h.mul(&d2).sub(&d1.mul(&d1));
                let sq = h.mul(&h);
                let lhs_m = gen_hermite(m + 1, n).mul(&gen_hermite(m - 1, n)).scale_int(2 * m as i64);
                let rhs_m = curvature.add(&sq.scale_int(2 * m as i64));
                assert!(lhs_m.sub(&rhs_m).is_zero(), "m-recurrence fails at ({m},{n})");
                let lhs_n = gen_hermite(m, n + 1).mul(&gen_hermite(m, n - 1)).scale_int(2 * n as i64);
                let rhs_n = sq.scale_int(2 * n as i64).sub(&curvature);
                assert!(lhs_n.sub(&rhs_n).is_zero(), "n-recurrence fails at ({m},{n})");
            }
        }
    }

    #[test]
    fn gen_hermite_symmetry() {
        // H_{m,n}(iy) = i^{mn} H_{n,m}(y)
        for m in 0..=10usize {
            for n in 0..=m {
                let twisted = rotate_argument_by_i(&gen_hermite(m, n)).expect("single parity");
                assert_eq!(twisted, *gen_hermite(n, m), "symmetry fails at ({m},{n})");
            }
        }
    }

    #[test]
    fn eval_at_imaginary_and_zero_points() {
        use crate::hp;
        use crate::poly::poly_eval;
        let prec = 192;
        // H_{1,1}(i) = 2i
        let v = poly_eval(&gen_hermite(1, 1), &hp::Complex::from_f64(0.0, 1.0, prec), prec)
            .unwrap();
        assert!(v.re.is_zero());
        assert!((v.im.to_f64() - 2.0).abs() < 1e-50);
        // Horner at 0 reads the constant coefficient directly
        let h55 = gen_hermite(5, 5);
        let at0 = poly_eval(&h55, &hp::Complex::zero(prec), prec).unwrap();
        let expect = hp::Real::from_rational(&h55.coeff(0), prec);
        assert!(at0.re.sub(&expect).is_zero());
        assert!(at0.im.is_zero());
    }

    #[test]
    fn moment_poly_cases() {
        assert_eq!(moment_poly(0, 0).unwrap(), ExactPoly::one());
        // H_2 / 2! = 2y^2 - 1
        assert_eq!(moment_poly(1, 1).unwrap(), ExactPoly::from_integers(&[-1, 0, 2]));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(moment_poly(2, 0).unwrap(), hermite(2).scale(&half));
        assert!(moment_poly(-3, 1).is_err());
    }

    #[test]
    fn hankel_det_cases() {
        assert_eq!(hankel_det(&[vec![hermite(1)]]), ExactPoly::from_integers(&[0, 2]));
        let consts = vec![
            vec![ExactPoly::from_integers(&[1]), ExactPoly::from_integers(&[2])],
            vec![ExactPoly::from_integers(&[3]), ExactPoly::from_integers(&[4])],
        ];
        assert_eq!(hankel_det(&consts), ExactPoly::from_integers(&[-2]));
        assert_eq!(hankel_det(&[]), ExactPoly::one());
        // singular matrix
        let sing = vec![
            vec![hermite(1), hermite(1)],
            vec![hermite(1), hermite(1)],
        ];
        assert!(hankel_det(&sing).is_zero());
    }

    #[test]
    fn tau_1_2_against_prefactor() {
        // tau_{1,2} = det [[H_1, H_2], [H_2, H_3]] = -2 * H_{1,2}
        let tau = tau_poly(1, 2);
        let expect = gen_hermite(1, 2).scale_int(-2);
        assert_eq!(tau, expect);
    }

    #[test]
    fn hermite_coefficients_grow_large() {
        // sanity check on magnitudes driving the extended precision choice
        let h = gen_hermite(8, 8);
        let big = h.coeffs().iter().map(|c| c.numer().bits()).max().unwrap();
        assert!(big > 30);
        assert!(h.coeffs()[0].to_f64().is_some());
    }
}
