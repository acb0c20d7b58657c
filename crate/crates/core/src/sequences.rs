//! Exact generation of linear recurrence terms and the exact integer/rational
//! reformulations of the n-th root ratio comparisons.
//!
//! Everything in this module is exact: terms are arbitrary-precision
//! rationals (integers whenever the coefficients and initial values are
//! integers), and the monotonicity comparisons are decided by raising terms
//! to explicit integer exponents and comparing, with no rounding anywhere.

use rug::ops::Pow;
use rug::Rational;

use crate::error::{Error, Result};

/// Default cap for the exact ratio comparison. The comparison at index `n`
/// materializes numbers of roughly `2 n^3 log2(lambda)` bits, so an unguarded
/// call with large `n` can exhaust memory.
pub const DEFAULT_PREFIX_CAP: usize = 200;

/// Exponents in the exact comparison must fit in `u32`.
const HARD_INDEX_CAP: usize = 46_340;

/// Optional tag recording which named family a spec came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTag {
    pub name: String,
    pub parameter: usize,
}

/// A k-th order linear recurrence `a_n = alpha_1 a_{n-1} + ... + alpha_k a_{n-k}`
/// together with its initial values.
///
/// The standard initial values are `a_0 = ... = a_{k-2} = 0`, `a_{k-1} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    order: usize,
    coeffs: Vec<Rational>,
    initial_values: Vec<Rational>,
    family: Option<FamilyTag>,
}

impl RecurrenceSpec {
    /// Spec with the standard initial values.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let k = coeffs.len();
        Self::with_initial_values(coeffs, Self::default_initial_values(k))
    }

    pub fn with_initial_values(coeffs: Vec<Rational>, initial_values: Vec<Rational>) -> Result<Self> {
        let k = coeffs.len();
        if k < 2 {
            return Err(Error::InvalidSpec(format!(
                "order must be at least 2, got {k}"
            )));
        }
        if coeffs[k - 1] == 0 {
            return Err(Error::InvalidSpec(
                "alpha_k must be nonzero".to_string(),
            ));
        }
        if initial_values.len() != k {
            return Err(Error::InvalidSpec(format!(
                "expected {k} initial values, got {}",
                initial_values.len()
            )));
        }
        Ok(RecurrenceSpec {
            order: k,
            coeffs,
            initial_values,
            family: None,
        })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn default_initial_values(k: usize) -> Vec<Rational> {
        let mut v = vec![Rational::new(); k];
        if k > 0 {
            v[k - 1] = Rational::from(1);
        }
        v
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients `alpha_1 ... alpha_k`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn initial_values(&self) -> &[Rational] {
        &self.initial_values
    }

    pub fn has_default_initial_values(&self) -> bool {
        self.initial_values == Self::default_initial_values(self.order)
    }

    pub fn family(&self) -> Option<&FamilyTag> {
        self.family.as_ref()
    }

    pub fn with_family(mut self, tag: FamilyTag) -> Self {
        self.family = Some(tag);
        self
    }

    /// True when all coefficients are nonnegative.
    pub fn coeffs_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| *c >= 0)
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
            && self.initial_values.iter().all(|v| v.is_integer())
    }
}

/// Contiguous window of exact terms `a_{n_lo} ... a_{n_hi}`.
#[derive(Clone, Debug)]
pub struct TermWindow {
    spec: RecurrenceSpec,
    n_lo: usize,
    terms: Vec<Rational>,
}

impl TermWindow {
    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn n_lo(&self) -> usize {
        self.n_lo
    }

    pub fn n_hi(&self) -> usize {
        self.n_lo + self.terms.len() - 1
    }

    pub fn term(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(self.n_lo).and_then(|i| self.terms.get(i))
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    /// Smallest index in the window whose term is strictly positive.
    pub fn first_strictly_positive(&self) -> Option<usize> {
        self.terms
            .iter()
            .position(|t| *t > 0)
            .map(|i| self.n_lo + i)
    }
}

/// Unfold the recurrence exactly from the initial values up to `a_{n_max}`.
pub fn generate_terms(spec: &RecurrenceSpec, n_max: usize) -> TermWindow {
    let k = spec.order();
    let mut terms: Vec<Rational> = spec.initial_values().to_vec();
    terms.truncate(n_max + 1);
    for n in k..=n_max {
        let mut acc = Rational::new();
        for (i, alpha) in spec.coeffs().iter().enumerate() {
            if *alpha != 0 {
                acc += Rational::from(alpha * &terms[n - (i + 1)]);
            }
        }
        terms.push(acc);
    }
    TermWindow {
        spec: spec.clone(),
        n_lo: 0,
        terms,
    }
}

fn accumulate_tilings(m: usize, coeffs: &[Rational], weight: &Rational, total: &mut Rational) {
    if m == 0 {
        *total += weight;
        return;
    }
    for part in 1..=m.min(coeffs.len()) {
        let alpha = &coeffs[part - 1];
        if *alpha != 0 {
            let w = Rational::from(weight * alpha);
            accumulate_tilings(m - part, coeffs, &w, total);
        }
    }
}

/// Independent oracle for [`generate_terms`]: enumerates every composition of
/// `n - k + 1` into parts of size at most `k` and sums the products of the
/// part weights `alpha_i`. Exponential in `n - k + 1`; intended for small
/// lengths only.
pub fn tilings_oracle(spec: &RecurrenceSpec, n: usize) -> Result<Rational> {
    if !spec.has_default_initial_values() {
        return Err(Error::NondefaultInitialValues);
    }
    let k = spec.order();
    if n + 1 < k {
        return Err(Error::Precondition(format!(
            "tilings interpretation needs n >= k - 1, got n = {n}, k = {k}"
        )));
    }
    let m = n + 1 - k;
    let mut total = Rational::new();
    let weight = Rational::from(1);
    accumulate_tilings(m, spec.coeffs(), &weight, &mut total);
    Ok(total)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Gcd of the indices carrying nonzero coefficients. Always divides `k`
/// because `alpha_k != 0`; a value `d > 1` means the recurrence decimates
/// into an order `k/d` one.
pub fn support_gcd(spec: &RecurrenceSpec) -> usize {
    let mut d = 0usize;
    for (i, alpha) in spec.coeffs().iter().enumerate() {
        if *alpha != 0 {
            d = gcd(d, i + 1);
        }
    }
    d
}

/// Replace a recurrence supported on multiples of `d > 1` by the order `k/d`
/// recurrence satisfied by `b_m = a_{d m + d - 1}`.
pub fn reduce_support(spec: &RecurrenceSpec) -> Result<RecurrenceSpec> {
    if !spec.has_default_initial_values() {
        return Err(Error::NondefaultInitialValues);
    }
    let d = support_gcd(spec);
    if d <= 1 {
        return Err(Error::NothingToReduce);
    }
    let k = spec.order();
    let reduced: Vec<Rational> = (1..=k / d)
        .map(|m| spec.coeffs()[m * d - 1].clone())
        .collect();
    if reduced.len() < 2 {
        return Err(Error::InvalidSpec(format!(
            "reduction by d = {d} would leave order {} < 2",
            reduced.len()
        )));
    }
    RecurrenceSpec::new(reduced)
}

fn require_positive(window: &TermWindow, n: usize) -> Result<&Rational> {
    let t = window.term(n).ok_or_else(|| {
        Error::Precondition(format!(
            "window [{}..{}] does not cover index {n}",
            window.n_lo(),
            window.n_hi()
        ))
    })?;
    if *t <= 0 {
        return Err(Error::NonpositiveTerm { index: n });
    }
    Ok(t)
}

/// Exact truth of `R_n > R_{n+1}` where `R_n = a_n^{1/n} / a_{n-1}^{1/(n-1)}`,
/// decided as the big-number comparison
/// `a_n^{2(n^2-1)} > a_{n-1}^{n(n+1)} * a_{n+1}^{n(n-1)}`.
pub fn ratio_decreasing_exact(window: &TermWindow, n: usize) -> Result<bool> {
    ratio_decreasing_exact_capped(window, n, DEFAULT_PREFIX_CAP)
}

pub fn ratio_decreasing_exact_capped(window: &TermWindow, n: usize, cap: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::UndefinedRatio { n });
    }
    if n > cap.min(HARD_INDEX_CAP) {
        return Err(Error::ExactCheckTooLarge {
            n,
            cap: cap.min(HARD_INDEX_CAP),
        });
    }
    let prev = require_positive(window, n - 1)?;
    let mid = require_positive(window, n)?;
    let next = require_positive(window, n + 1)?;

    let e_mid = 2 * (n * n - 1) as u32;
    let e_prev = (n * (n + 1)) as u32;
    let e_next = (n * (n - 1)) as u32;

    let lhs = Rational::from(mid.pow(e_mid));
    let rhs = Rational::from(prev.pow(e_prev)) * Rational::from(next.pow(e_next));
    Ok(lhs > rhs)
}

/// Exact truth of `a_{n+1}^{1/(n+1)} > a_n^{1/n}`, decided as
/// `a_{n+1}^n > a_n^{n+1}`.
pub fn nthroot_increasing_exact(window: &TermWindow, n: usize) -> Result<bool> {
    if n < 1 {
        return Err(Error::UndefinedRatio { n });
    }
    if n > HARD_INDEX_CAP {
        return Err(Error::ExactCheckTooLarge {
            n,
            cap: HARD_INDEX_CAP,
        });
    }
    let cur = require_positive(window, n)?;
    let next = require_positive(window, n + 1)?;
    let lhs = Rational::from(next.pow(n as u32));
    let rhs = Rational::from(cur.pow((n + 1) as u32));
    Ok(lhs > rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(n: i64) -> Rational {
        Rational::from(n)
    }

    fn tribonacci() -> RecurrenceSpec {
        RecurrenceSpec::from_i64_coeffs(&[1, 1, 1]).unwrap()
    }

    fn three_bonacci() -> RecurrenceSpec {
        RecurrenceSpec::from_i64_coeffs(&[1, 0, 1]).unwrap()
    }

    fn fibonacci() -> RecurrenceSpec {
        RecurrenceSpec::from_i64_coeffs(&[1, 1]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(RecurrenceSpec::from_i64_coeffs(&[1]).is_err());
        assert!(RecurrenceSpec::from_i64_coeffs(&[1, 0]).is_err());
        assert!(RecurrenceSpec::from_i64_coeffs(&[0, 1]).is_ok());
        let bad_init = RecurrenceSpec::with_initial_values(
            vec![rq(1), rq(1)],
            vec![rq(1)],
        );
        assert!(bad_init.is_err());
    }

    #[test]
    fn tribonacci_terms() {
        let w = generate_terms(&tribonacci(), 10);
        let expect: Vec<i64> = vec![0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(w.term(n).unwrap(), &rq(*e), "a_{n}");
        }
    }

    #[test]
    fn three_bonacci_terms() {
        let w = generate_terms(&three_bonacci(), 10);
        let expect: Vec<i64> = vec![0, 0, 1, 1, 1, 2, 3, 4, 6, 9, 13];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(w.term(n).unwrap(), &rq(*e), "a_{n}");
        }
    }

    #[test]
    fn initial_one_at_k_minus_1() {
        for spec in [tribonacci(), three_bonacci(), fibonacci()] {
            let w = generate_terms(&spec, spec.order());
            assert_eq!(w.term(spec.order() - 1).unwrap(), &rq(1));
        }
    }

    #[test]
    fn window_satisfies_recurrence_interior() {
        let spec = three_bonacci();
        let w = generate_terms(&spec, 30);
        let k = spec.order();
        for n in k..=30 {
            let mut acc = Rational::new();
            for (i, alpha) in spec.coeffs().iter().enumerate() {
                acc += Rational::from(alpha * w.term(n - (i + 1)).unwrap());
            }
            assert_eq!(&acc, w.term(n).unwrap());
        }
    }

    #[test]
    fn tilings_tribonacci_n5() {
        // compositions of 3 with parts <= 3: 1+1+1, 1+2, 2+1, 3
        assert_eq!(tilings_oracle(&tribonacci(), 5).unwrap(), rq(4));
    }

    #[test]
    fn tilings_empty_composition() {
        for spec in [tribonacci(), three_bonacci(), fibonacci()] {
            assert_eq!(tilings_oracle(&spec, spec.order() - 1).unwrap(), rq(1));
        }
    }

    #[test]
    fn tilings_three_bonacci_n6() {
        // compositions of 4 with parts in {1,3}: 1+1+1+1, 1+3, 3+1
        assert_eq!(tilings_oracle(&three_bonacci(), 6).unwrap(), rq(3));
    }

    #[test]
    fn tilings_rejects_nondefault_initial_values() {
        let spec = RecurrenceSpec::with_initial_values(
            vec![rq(1), rq(1)],
            vec![rq(2), rq(1)],
        )
        .unwrap();
        assert!(matches!(
            tilings_oracle(&spec, 4),
            Err(Error::NondefaultInitialValues)
        ));
    }

    #[test]
    fn tilings_matches_generation() {
        for spec in [tribonacci(), three_bonacci(), fibonacci()] {
            let k = spec.order();
            let w = generate_terms(&spec, k + 20);
            for n in (k - 1)..=(k + 20) {
                assert_eq!(
                    &tilings_oracle(&spec, n).unwrap(),
                    w.term(n).unwrap(),
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn support_gcd_examples() {
        assert_eq!(
            support_gcd(&RecurrenceSpec::from_i64_coeffs(&[0, 1, 0, 1]).unwrap()),
            2
        );
        assert_eq!(support_gcd(&three_bonacci()), 1);
        assert_eq!(
            support_gcd(&RecurrenceSpec::from_i64_coeffs(&[0, 0, 1, 0, 0, 1]).unwrap()),
            3
        );
    }

    #[test]
    fn reduce_to_fibonacci() {
        let spec = RecurrenceSpec::from_i64_coeffs(&[0, 1, 0, 1]).unwrap();
        let red = reduce_support(&spec).unwrap();
        assert_eq!(red.order(), 2);
        assert_eq!(red.coeffs(), &[rq(1), rq(1)]);
    }

    #[test]
    fn reduce_weighted_example() {
        let spec = RecurrenceSpec::from_i64_coeffs(&[0, 0, 2, 0, 0, 1]).unwrap();
        let red = reduce_support(&spec).unwrap();
        assert_eq!(red.order(), 2);
        assert_eq!(red.coeffs(), &[rq(2), rq(1)]);
    }

    #[test]
    fn reduce_rejects_irreducible() {
        assert!(matches!(
            reduce_support(&three_bonacci()),
            Err(Error::NothingToReduce)
        ));
    }

    #[test]
    fn reduction_consistency() {
        for (coeffs, d) in [(&[0i64, 1, 0, 1][..], 2usize), (&[0, 0, 2, 0, 0, 1][..], 3)] {
            let spec = RecurrenceSpec::from_i64_coeffs(coeffs).unwrap();
            let red = reduce_support(&spec).unwrap();
            let horizon = 30;
            let w = generate_terms(&spec, d * horizon + d);
            let wr = generate_terms(&red, horizon);
            for m in 0..=horizon {
                assert_eq!(
                    wr.term(m).unwrap(),
                    w.term(d * m + d - 1).unwrap(),
                    "b_{m} vs a_{}",
                    d * m + d - 1
                );
            }
            for m in 0..=horizon {
                for r in 0..d.saturating_sub(1) {
                    assert_eq!(w.term(d * m + r).unwrap(), &rq(0));
                }
            }
        }
    }

    #[test]
    fn ratio_decreasing_tribonacci_examples() {
        let w = generate_terms(&tribonacci(), 12);
        // n=4: 2^30 = 1073741824 > 1^20 * 4^12 = 16777216
        assert!(ratio_decreasing_exact(&w, 4).unwrap());
        // n=3: 1^16 = 1 > 1^12 * 2^6 = 64 is false
        assert!(!ratio_decreasing_exact(&w, 3).unwrap());
    }

    #[test]
    fn ratio_decreasing_fibonacci_n4() {
        let w = generate_terms(&fibonacci(), 6);
        // 3^30 vs 2^20 * 5^12: false
        assert!(!ratio_decreasing_exact(&w, 4).unwrap());
    }

    #[test]
    fn ratio_undefined_below_2() {
        let w = generate_terms(&tribonacci(), 5);
        assert!(matches!(
            ratio_decreasing_exact(&w, 1),
            Err(Error::UndefinedRatio { n: 1 })
        ));
    }

    #[test]
    fn ratio_reports_nonpositive_index() {
        let w = generate_terms(&tribonacci(), 5);
        // a_1 = 0 offends at n = 2
        assert!(matches!(
            ratio_decreasing_exact(&w, 2),
            Err(Error::NonpositiveTerm { index: 1 })
        ));
    }

    #[test]
    fn ratio_cap_enforced() {
        let w = generate_terms(&tribonacci(), 12);
        assert!(matches!(
            ratio_decreasing_exact_capped(&w, 10, 9),
            Err(Error::ExactCheckTooLarge { n: 10, cap: 9 })
        ));
    }

    #[test]
    fn nthroot_examples() {
        let w = generate_terms(&tribonacci(), 7);
        // n=4: 4^4 = 256 > 2^5 = 32
        assert!(nthroot_increasing_exact(&w, 4).unwrap());
        // n=2: 1^2 > 1^3 is false (equality)
        assert!(!nthroot_increasing_exact(&w, 2).unwrap());
        // n=5: 7^5 = 16807 > 4^6 = 4096
        assert!(nthroot_increasing_exact(&w, 5).unwrap());
    }

    #[test]
    fn rational_coefficients_stay_exact() {
        // alpha = (3/2, 1/4): terms are exact rationals
        let spec = RecurrenceSpec::new(vec![Rational::from((3, 2)), Rational::from((1, 4))]).unwrap();
        let w = generate_terms(&spec, 6);
        assert_eq!(w.term(2).unwrap(), &Rational::from((3, 2)));
        assert_eq!(w.term(3).unwrap(), &Rational::from((5, 2)));
        assert_eq!(w.term(4).unwrap(), &Rational::from((33, 8)));
        // comparisons still work on rationals
        assert!(ratio_decreasing_exact(&w, 4).is_ok());
    }

    #[test]
    fn scaling_initial_values_scales_terms() {
        let spec = tribonacci();
        let c = Rational::from((7, 3));
        let scaled = RecurrenceSpec::with_initial_values(
            spec.coeffs().to_vec(),
            spec.initial_values()
                .iter()
                .map(|v| Rational::from(v * &c))
                .collect(),
        )
        .unwrap();
        let w = generate_terms(&spec, 20);
        let ws = generate_terms(&scaled, 20);
        for n in 0..=20 {
            assert_eq!(
                Rational::from(w.term(n).unwrap() * &c),
                *ws.term(n).unwrap()
            );
        }
    }
}
