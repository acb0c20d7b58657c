//! Certified numerics for the characteristic polynomial
//! `f(x) = x^k - alpha_1 x^{k-1} - ... - alpha_k`:
//! dominant-root isolation, certified enclosures of all roots, closed-form
//! coefficients, tail constants, and the root-separation quantity.

mod isolate;
mod profile;
mod roots;

pub use isolate::isolate_dominant_root;
pub use profile::{
    e_n_value, residual_check, root_profile, separation_min, tail_constants, RootProfile,
    TailBound,
};
pub use roots::{all_roots, closed_form_coeffs};

use rug::Rational;

use crate::ball::{ComplexBall, RealBall};
use crate::sequences::{support_gcd, RecurrenceSpec};

/// Monic characteristic polynomial, stored as descending coefficients
/// `[1, -alpha_1, ..., -alpha_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<Rational>,
}

impl CharPoly {
    pub fn from_spec(spec: &RecurrenceSpec) -> Self {
        let mut coeffs = Vec::with_capacity(spec.order() + 1);
        coeffs.push(Rational::from(1));
        coeffs.extend(spec.coeffs().iter().map(|a| Rational::from(-a.clone())));
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Descending coefficients, leading term first (always 1).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Descending coefficients of f'.
    pub fn derivative_coeffs(&self) -> Vec<Rational> {
        let k = self.degree();
        self.coeffs[..k]
            .iter()
            .enumerate()
            .map(|(i, c)| Rational::from(c * Rational::from((k - i) as u64)))
            .collect()
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        eval_vec_rational(&self.coeffs, x)
    }

    pub fn eval_real_ball(&self, x: &RealBall, prec: u32) -> RealBall {
        eval_vec_real_ball(&self.coeffs, x, prec)
    }

    pub fn eval_complex_ball(&self, z: &ComplexBall, prec: u32) -> ComplexBall {
        eval_vec_complex_ball(&self.coeffs, z, prec)
    }

    pub fn eval_derivative_real_ball(&self, x: &RealBall, prec: u32) -> RealBall {
        eval_vec_real_ball(&self.derivative_coeffs(), x, prec)
    }

    pub fn eval_derivative_complex_ball(&self, z: &ComplexBall, prec: u32) -> ComplexBall {
        eval_vec_complex_ball(&self.derivative_coeffs(), z, prec)
    }

    /// Largest |alpha_i|; `1 +` this bounds the modulus of every root.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs[1..]
            .iter()
            .map(|c| Rational::from(c.clone().abs()))
            .max()
            .unwrap_or_default()
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = k - i;
            let (sign, mag) = if *c < 0 {
                ("-", Rational::from(c.clone().abs()))
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (e, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}

fn eval_vec_rational(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = coeffs[0].clone();
    for c in &coeffs[1..] {
        acc *= x;
        acc += c;
    }
    acc
}

fn eval_vec_real_ball(coeffs: &[Rational], x: &RealBall, prec: u32) -> RealBall {
    let mut acc = RealBall::from_rational(&coeffs[0], prec);
    for c in &coeffs[1..] {
        acc = acc.mul(x).add(&RealBall::from_rational(c, prec));
    }
    acc
}

fn eval_vec_complex_ball(coeffs: &[Rational], z: &ComplexBall, prec: u32) -> ComplexBall {
    let mut acc = ComplexBall::from_real(RealBall::from_rational(&coeffs[0], prec));
    for c in &coeffs[1..] {
        acc = acc
            .mul(z)
            .add(&ComplexBall::from_real(RealBall::from_rational(c, prec)));
    }
    acc
}

/// Number of sign changes in the coefficient sequence: an upper bound on the
/// count of positive real roots, exact modulo 2 (Descartes).
pub fn descartes_positive_count(poly: &CharPoly) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for c in poly.coeffs() {
        if *c == 0 {
            continue;
        }
        let pos = *c > 0;
        if let Some(prev) = last {
            if prev != pos {
                changes += 1;
            }
        }
        last = Some(pos);
    }
    changes
}

/// Whether the hypotheses guaranteeing a dominant zero hold for this spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypotheses {
    /// All coefficients nonnegative, trailing one positive, support gcd 1:
    /// a dominant zero exists.
    Holds,
    /// Support gcd `d > 1`: the recurrence decimates; no dominant zero.
    Reducible(usize),
    /// Some coefficient is negative: dominance must be decided numerically.
    Unknown,
}

pub fn dominant_zero_hypotheses(spec: &RecurrenceSpec) -> Hypotheses {
    if !spec.coeffs_nonnegative() {
        return Hypotheses::Unknown;
    }
    let d = support_gcd(spec);
    if d > 1 {
        Hypotheses::Reducible(d)
    } else {
        Hypotheses::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(coeffs: &[i64]) -> RecurrenceSpec {
        RecurrenceSpec::from_i64_coeffs(coeffs).unwrap()
    }

    #[test]
    fn charpoly_transcription() {
        assert_eq!(
            CharPoly::from_spec(&spec(&[1, 1, 1])).to_string(),
            "x^3 - x^2 - x - 1"
        );
        assert_eq!(
            CharPoly::from_spec(&spec(&[1, 0, 1])).to_string(),
            "x^3 - x^2 - 1"
        );
        assert_eq!(
            CharPoly::from_spec(&spec(&[1, 1])).to_string(),
            "x^2 - x - 1"
        );
    }

    #[test]
    fn eval_and_derivative() {
        let p = CharPoly::from_spec(&spec(&[1, 1, 1]));
        // f(2) = 8 - 4 - 2 - 1 = 1
        assert_eq!(p.eval_rational(&Rational::from(2)), Rational::from(1));
        // f'(x) = 3x^2 - 2x - 1, f'(2) = 7
        assert_eq!(p.derivative_coeffs().len(), 3);
        let x = RealBall::from_integer(2, 64);
        let d = p.eval_derivative_real_ball(&x, 64);
        assert!(d.contains_rational(&Rational::from(7)));
    }

    #[test]
    fn descartes_counts() {
        assert_eq!(descartes_positive_count(&CharPoly::from_spec(&spec(&[1, 1, 1]))), 1);
        assert_eq!(descartes_positive_count(&CharPoly::from_spec(&spec(&[1, 0, 1]))), 1);
        // x^2 + 1 has no sign change; build from alpha = (0, -1)
        assert_eq!(descartes_positive_count(&CharPoly::from_spec(&spec(&[0, -1]))), 0);
    }

    #[test]
    fn hypotheses_classification() {
        assert_eq!(dominant_zero_hypotheses(&spec(&[1, 1, 1])), Hypotheses::Holds);
        assert_eq!(
            dominant_zero_hypotheses(&spec(&[0, 1, 0, 1])),
            Hypotheses::Reducible(2)
        );
        assert_eq!(dominant_zero_hypotheses(&spec(&[1, -1])), Hypotheses::Unknown);
    }
}
