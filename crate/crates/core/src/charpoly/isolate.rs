//! Sign-based bisection for the positive real root, in exact rational
//! arithmetic. The bracket endpoints stay dyadic, so every polynomial sign
//! evaluation along the way is exact; the only rounding happens in the final
//! conversion of the bracket to a ball.

use rug::{Integer, Rational};

use crate::ball::RealBall;
use crate::error::{Error, Result};

use super::CharPoly;

/// Extra bits kept when converting the exact bracket to float endpoints.
const CONVERT_GUARD: u32 = 32;

/// Isolate the unique positive real root of `poly` to relative radius
/// `2^-prec`.
///
/// The bracket starts at the largest power of two where `f < 0` and closes at
/// either the first power of two where `f > 0` or the classical bound
/// `1 + max |alpha_i|`, whichever is found first.
pub fn isolate_dominant_root(poly: &CharPoly, prec: u32) -> Result<RealBall> {
    let one = Rational::from(1);
    let upper_bound = Rational::from(&one + &poly.max_abs_coeff());
    let f1 = poly.eval_rational(&one);
    if f1 == 0 {
        return Ok(point_ball(&one, prec));
    }

    let (lo, hi) = if f1 < 0 {
        // root above 1: double upward until the sign flips
        let mut lo = one;
        let mut x = Rational::from(2);
        loop {
            let v = poly.eval_rational(&x);
            if v == 0 {
                return Ok(point_ball(&x, prec));
            }
            if v > 0 {
                break (lo, x);
            }
            lo = x.clone();
            x *= 2;
            if x > Rational::from(2 * &upper_bound) {
                // cannot happen: f is positive beyond the coefficient bound
                return Err(Error::Internal(
                    "doubling passed the root modulus bound without a sign flip".into(),
                ));
            }
        }
    } else {
        // root below 1: halve downward until f goes negative
        let mut hi = one.clone();
        let mut x = Rational::from((1, 2));
        let mut steps: u32 = 0;
        loop {
            let v = poly.eval_rational(&x);
            if v == 0 {
                return Ok(point_ball(&x, prec));
            }
            if v < 0 {
                break (x, hi);
            }
            hi = x.clone();
            x /= 2;
            steps += 1;
            if steps > prec + 64 {
                return Err(Error::NoSignChange);
            }
        }
    };
    bisect_refine(poly, lo, hi, prec)
}

/// Refine a bracket `[lo, hi]` with `f(lo) * f(hi) < 0` down to relative
/// width `2^-prec`, returning an enclosure of the unique root inside.
///
/// Both orientations of the sign change are accepted. The caller must
/// guarantee exactly one simple real root lies in the bracket.
pub(crate) fn bisect_refine(
    poly: &CharPoly,
    mut lo: Rational,
    mut hi: Rational,
    prec: u32,
) -> Result<RealBall> {
    let sign_lo = poly.eval_rational(&lo).cmp0();
    let sign_hi = poly.eval_rational(&hi).cmp0();
    if sign_lo == std::cmp::Ordering::Equal {
        return Ok(point_ball(&lo, prec));
    }
    if sign_hi == std::cmp::Ordering::Equal {
        return Ok(point_ball(&hi, prec));
    }
    if sign_lo == sign_hi {
        return Err(Error::NoSignChange);
    }

    // target: hi - lo <= |scale| * 2^-(prec+1), scale from the bracket itself
    let scale = if lo.clone().abs() < hi.clone().abs() {
        lo.clone().abs()
    } else {
        hi.clone().abs()
    };
    let eps = Rational::from((Integer::from(1), Integer::from(1) << (prec + 1)));
    let target = if scale == 0 { eps.clone() } else { scale * &eps };

    while Rational::from(&hi - &lo) > target {
        let mid = Rational::from(&lo + &hi) / 2;
        let v = poly.eval_rational(&mid).cmp0();
        if v == std::cmp::Ordering::Equal {
            return Ok(point_ball(&mid, prec));
        }
        if v == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let p = prec + CONVERT_GUARD;
    Ok(RealBall::from_endpoints(
        rug::Float::with_val_round(p, &lo, rug::float::Round::Down).0,
        rug::Float::with_val_round(p, &hi, rug::float::Round::Up).0,
    ))
}

fn point_ball(x: &Rational, prec: u32) -> RealBall {
    RealBall::from_rational(x, prec + CONVERT_GUARD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::RecurrenceSpec;

    fn poly(coeffs: &[i64]) -> CharPoly {
        CharPoly::from_spec(&RecurrenceSpec::from_i64_coeffs(coeffs).unwrap())
    }

    #[test]
    fn tribonacci_constant() {
        let lam = isolate_dominant_root(&poly(&[1, 1, 1]), 64).unwrap();
        // 1.839286755214161...
        assert!((lam.to_f64() - 1.839286755214161).abs() < 1e-12);
        assert!(lam.is_strictly_positive());
        let width = lam.upper().clone() - lam.lower().clone();
        assert!(width.to_f64() < 2e-19);
    }

    #[test]
    fn three_bonacci_constant() {
        let lam = isolate_dominant_root(&poly(&[1, 0, 1]), 64).unwrap();
        assert!((lam.to_f64() - 1.4655712318767682).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio() {
        let lam = isolate_dominant_root(&poly(&[1, 1]), 96).unwrap();
        assert!((lam.to_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn root_below_one() {
        // alpha = (0, ..., handled): x^2 - x/4 - 1/8 has positive root 1/2... use
        // rational coefficients: alpha_1 = 1/4, alpha_2 = 1/8.
        let spec = RecurrenceSpec::new(vec![
            Rational::from((1, 4)),
            Rational::from((1, 8)),
        ])
        .unwrap();
        let p = CharPoly::from_spec(&spec);
        let lam = isolate_dominant_root(&p, 64).unwrap();
        assert!((lam.to_f64() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_dyadic_root_found() {
        // x^2 - x - 2 = (x-2)(x+1): doubling hits f(2) = 0 exactly
        let lam = isolate_dominant_root(&poly(&[1, 2]), 64).unwrap();
        assert_eq!(lam.rad(), 0);
        assert_eq!(lam.to_f64(), 2.0);
    }

    #[test]
    fn enclosure_contains_true_root() {
        // residual check: f evaluated on the enclosure must contain 0
        for coeffs in [&[1i64, 1, 1][..], &[1, 0, 1], &[1, 1], &[1, 1, 1, 1]] {
            let p = poly(coeffs);
            let lam = isolate_dominant_root(&p, 128).unwrap();
            let v = p.eval_real_ball(&lam, 160);
            assert!(v.contains_zero(), "f(enclosure) misses 0 for {coeffs:?}");
        }
    }
}
