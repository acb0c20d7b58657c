//! Outward-rounded ball arithmetic on arbitrary-precision floats.
//!
//! A [`RealBall`] is an enclosure of a real number: every operation rounds
//! its lower endpoint toward −∞ and its upper endpoint toward +∞, so the true
//! value of any expression provably lies inside the result. Presentation is
//! midpoint ± radius at a stated working precision in bits; storage is the
//! endpoint pair, which keeps every operation a single correctly-rounded
//! MPFR call per endpoint.
//!
//! [`ComplexBall`] is the rectangular enclosure built from two real balls.
//! Rectangles are a superset of the disks produced by root certification, so
//! containment and disjointness statements transfer.
//!
//! Strict comparisons (`strictly_less`, `is_strictly_positive`, ...) are
//! decided only when the enclosures separate; callers escalate precision when
//! they do not.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Precision (bits) used for radius bookkeeping in presentation form.
const RADIUS_PREC: u32 = 64;

fn add_dir(p: u32, x: &Float, y: &Float, dir: Round) -> Float {
    Float::with_val_round(p, x + y, dir).0
}

fn sub_dir(p: u32, x: &Float, y: &Float, dir: Round) -> Float {
    Float::with_val_round(p, x - y, dir).0
}

fn mul_dir(p: u32, x: &Float, y: &Float, dir: Round) -> Float {
    Float::with_val_round(p, x * y, dir).0
}

fn div_dir(p: u32, x: &Float, y: &Float, dir: Round) -> Float {
    Float::with_val_round(p, x / y, dir).0
}

/// Enclosure `[lo, hi]` of a real number, lo ≤ hi.
#[derive(Clone, Debug)]
pub struct RealBall {
    lo: Float,
    hi: Float,
}

impl RealBall {
    /// Point ball from an exact dyadic float.
    pub fn from_float(x: Float) -> Self {
        debug_assert!(!x.is_nan());
        RealBall { lo: x.clone(), hi: x }
    }

    /// Enclosure of an exact rational at `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, q, Round::Down).0;
        let hi = Float::with_val_round(prec, q, Round::Up).0;
        RealBall { lo, hi }
    }

    pub fn from_integer(n: i64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, n, Round::Down).0;
        let hi = Float::with_val_round(prec, n, Round::Up).0;
        RealBall { lo, hi }
    }

    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        debug_assert!(!lo.is_nan() && !hi.is_nan());
        debug_assert!(lo <= hi);
        RealBall { lo, hi }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_float(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_float(Float::with_val(prec, 1))
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lower(&self) -> &Float {
        &self.lo
    }

    pub fn upper(&self) -> &Float {
        &self.hi
    }

    /// Midpoint, rounded to nearest at the ball's precision.
    pub fn mid(&self) -> Float {
        let p = self.prec();
        let mut m = Float::with_val(p, &self.lo + &self.hi);
        m /= 2; // exact: exponent shift
        m
    }

    /// Radius: an upper bound on the distance from [`Self::mid`] to either
    /// endpoint, rounded up at low precision.
    pub fn rad(&self) -> Float {
        let m = self.mid();
        let a = Float::with_val_round(RADIUS_PREC, &self.hi - &m, Round::Up).0;
        let b = Float::with_val_round(RADIUS_PREC, &m - &self.lo, Round::Up).0;
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        RealBall {
            lo: add_dir(p, &self.lo, &other.lo, Round::Down),
            hi: add_dir(p, &self.hi, &other.hi, Round::Up),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        RealBall {
            lo: sub_dir(p, &self.lo, &other.hi, Round::Down),
            hi: sub_dir(p, &self.hi, &other.lo, Round::Up),
        }
    }

    pub fn neg(&self) -> Self {
        RealBall {
            lo: Float::from(-self.hi.clone()),
            hi: Float::from(-self.lo.clone()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (x, y) in pairs {
            let d = mul_dir(p, x, y, Round::Down);
            let u = mul_dir(p, x, y, Round::Up);
            lo = Some(match lo {
                Some(cur) => cur.min(&d),
                None => d,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&u),
                None => u,
            });
        }
        RealBall {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Division; the divisor enclosure must exclude zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::Unresolved {
                bits: self.prec().max(other.prec()),
            });
        }
        let p = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (x, y) in pairs {
            let d = div_dir(p, x, y, Round::Down);
            let u = div_dir(p, x, y, Round::Up);
            lo = Some(match lo {
                Some(cur) => cur.min(&d),
                None => d,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&u),
                None => u,
            });
        }
        Ok(RealBall {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec()).div(self)
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_sign_positive() || self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let p = self.prec();
            let nl = Float::from(-self.lo.clone());
            let hi = if nl >= self.hi { nl } else { self.hi.clone() };
            RealBall {
                lo: Float::with_val(p, 0),
                hi,
            }
        }
    }

    /// Tight enclosure of x², nonnegative by construction.
    pub fn square(&self) -> Self {
        let p = self.prec();
        if self.lo >= 0 {
            RealBall {
                lo: mul_dir(p, &self.lo, &self.lo, Round::Down),
                hi: mul_dir(p, &self.hi, &self.hi, Round::Up),
            }
        } else if self.hi <= 0 {
            RealBall {
                lo: mul_dir(p, &self.hi, &self.hi, Round::Down),
                hi: mul_dir(p, &self.lo, &self.lo, Round::Up),
            }
        } else {
            let a = mul_dir(p, &self.lo, &self.lo, Round::Up);
            let b = mul_dir(p, &self.hi, &self.hi, Round::Up);
            RealBall {
                lo: Float::with_val(p, 0),
                hi: if a >= b { a } else { b },
            }
        }
    }

    /// Square root; requires a nonnegative lower endpoint.
    pub fn sqrt(&self) -> Result<Self> {
        if self.lo < 0 {
            return Err(Error::Unresolved { bits: self.prec() });
        }
        let mut lo = self.lo.clone();
        lo.sqrt_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.sqrt_round(Round::Up);
        Ok(RealBall { lo, hi })
    }

    /// Natural logarithm; requires a strictly positive enclosure.
    pub fn ln(&self) -> Result<Self> {
        if self.lo <= 0 {
            return Err(Error::Unresolved { bits: self.prec() });
        }
        let mut lo = self.lo.clone();
        lo.ln_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.ln_round(Round::Up);
        Ok(RealBall { lo, hi })
    }

    pub fn exp(&self) -> Self {
        let mut lo = self.lo.clone();
        lo.exp_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.exp_round(Round::Up);
        RealBall { lo, hi }
    }

    /// Integer power, handled by sign analysis on the endpoints so the result
    /// stays tight (no dependency blow-up from repeated multiplication).
    pub fn powi(&self, e: u32) -> Self {
        let p = self.prec();
        if e == 0 {
            return Self::one(p);
        }
        if e == 1 {
            return self.clone();
        }
        let pow_d = |x: &Float, dir: Round| Float::with_val_round(p, x.clone().pow(e), dir).0;
        if self.lo >= 0 {
            RealBall {
                lo: pow_d(&self.lo, Round::Down),
                hi: pow_d(&self.hi, Round::Up),
            }
        } else if self.hi <= 0 {
            if e % 2 == 0 {
                RealBall {
                    lo: pow_d(&self.hi, Round::Down),
                    hi: pow_d(&self.lo, Round::Up),
                }
            } else {
                RealBall {
                    lo: pow_d(&self.lo, Round::Down),
                    hi: pow_d(&self.hi, Round::Up),
                }
            }
        } else if e % 2 == 0 {
            let a = pow_d(&self.lo, Round::Up);
            let b = pow_d(&self.hi, Round::Up);
            RealBall {
                lo: Float::with_val(p, 0),
                hi: if a >= b { a } else { b },
            }
        } else {
            RealBall {
                lo: pow_d(&self.lo, Round::Down),
                hi: pow_d(&self.hi, Round::Up),
            }
        }
    }

    /// Enclosure of max(x, y) over the two enclosures.
    pub fn max(&self, other: &Self) -> Self {
        RealBall {
            lo: if self.lo >= other.lo {
                self.lo.clone()
            } else {
                other.lo.clone()
            },
            hi: if self.hi >= other.hi {
                self.hi.clone()
            } else {
                other.hi.clone()
            },
        }
    }

    /// Enclosure of min(x, y) over the two enclosures.
    pub fn min(&self, other: &Self) -> Self {
        RealBall {
            lo: if self.lo <= other.lo {
                self.lo.clone()
            } else {
                other.lo.clone()
            },
            hi: if self.hi <= other.hi {
                self.hi.clone()
            } else {
                other.hi.clone()
            },
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo >= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi <= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        if lo <= hi {
            Some(RealBall { lo, hi })
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo <= *q && self.hi >= *q
    }

    /// Whole enclosure lies inside `other`.
    pub fn subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi < 0
    }

    /// True iff every point of `self` is below every point of `other`.
    pub fn strictly_less(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    /// Upper endpoint strictly below the exact rational.
    pub fn lt_rational(&self, q: &Rational) -> bool {
        self.hi < *q
    }

    /// Upper endpoint at most the exact rational.
    pub fn le_rational(&self, q: &Rational) -> bool {
        self.hi <= *q
    }

    /// Lower endpoint strictly above the exact rational.
    pub fn gt_rational(&self, q: &Rational) -> bool {
        self.lo > *q
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Decimal string of the midpoint with enough digits for the precision.
    pub fn mid_string(&self) -> String {
        let digits = (self.prec() as f64 * 0.30103).ceil() as usize + 2;
        self.mid().to_string_radix(10, Some(digits))
    }

    /// Short decimal string of the radius.
    pub fn rad_string(&self) -> String {
        self.rad().to_string_radix(10, Some(3))
    }
}

impl std::fmt::Display for RealBall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} +/- {}", self.mid_string(), self.rad_string())
    }
}

/// Rectangular enclosure of a complex number.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    re: RealBall,
    im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: RealBall) -> Self {
        let p = re.prec();
        ComplexBall {
            re,
            im: RealBall::zero(p),
        }
    }

    /// Point ball at an exact dyadic complex midpoint.
    pub fn from_floats(re: Float, im: Float) -> Self {
        ComplexBall {
            re: RealBall::from_float(re),
            im: RealBall::from_float(im),
        }
    }

    /// Rectangle covering the disk of radius `r` around the dyadic center.
    pub fn disk(center_re: &Float, center_im: &Float, r: &Float, prec: u32) -> Self {
        let re = RealBall {
            lo: sub_dir(prec, center_re, r, Round::Down),
            hi: add_dir(prec, center_re, r, Round::Up),
        };
        let im = RealBall {
            lo: sub_dir(prec, center_im, r, Round::Down),
            hi: add_dir(prec, center_im, r, Round::Up),
        };
        ComplexBall { re, im }
    }

    pub fn re(&self) -> &RealBall {
        &self.re
    }

    pub fn im(&self) -> &RealBall {
        &self.im
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexBall {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexBall {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ac = self.re.mul(&other.re);
        let bd = self.im.mul(&other.im);
        let ad = self.re.mul(&other.im);
        let bc = self.im.mul(&other.re);
        ComplexBall {
            re: ac.sub(&bd),
            im: ad.add(&bc),
        }
    }

    pub fn mul_real(&self, other: &RealBall) -> Self {
        ComplexBall {
            re: self.re.mul(other),
            im: self.im.mul(other),
        }
    }

    /// Division; the divisor's modulus must be bounded away from zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let denom = other.modulus_sq();
        if !denom.is_strictly_positive() {
            return Err(Error::Unresolved {
                bits: self.prec().max(other.prec()),
            });
        }
        let num = self.mul(&other.conj());
        Ok(ComplexBall {
            re: num.re.div(&denom)?,
            im: num.im.div(&denom)?,
        })
    }

    pub fn recip(&self) -> Result<Self> {
        let p = self.prec();
        ComplexBall::from_real(RealBall::one(p)).div(self)
    }

    /// Enclosure of |z|².
    pub fn modulus_sq(&self) -> RealBall {
        self.re.square().add(&self.im.square())
    }

    /// Enclosure of |z|.
    pub fn modulus(&self) -> RealBall {
        self.modulus_sq()
            .sqrt()
            .expect("modulus_sq is nonnegative by construction")
    }

    pub fn powi(&self, e: u32) -> Self {
        if e == 0 {
            let p = self.prec();
            return ComplexBall::from_real(RealBall::one(p));
        }
        let mut acc: Option<ComplexBall> = None;
        let mut base = self.clone();
        let mut rem = e;
        loop {
            if rem & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            rem >>= 1;
            if rem == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// True iff the two rectangles cannot share a point.
    pub fn disjoint(&self, other: &Self) -> bool {
        self.re.hi < other.re.lo
            || other.re.hi < self.re.lo
            || self.im.hi < other.im.lo
            || other.im.hi < self.im.lo
    }

    /// True iff the rectangles share at least one point.
    pub fn overlaps(&self, other: &Self) -> bool {
        !self.disjoint(other)
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        Some(ComplexBall {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl std::fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

/// Retry `f` at doubling precision until it succeeds, a hard error occurs, or
/// the cap is exhausted.
pub fn with_escalation<T>(
    start_bits: u32,
    cap_bits: u32,
    mut f: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut p = start_bits.max(16).min(cap_bits);
    loop {
        match f(p) {
            Ok(v) => return Ok(v),
            Err(e) if e.precision_soft() && p < cap_bits => {
                p = (p.saturating_mul(2)).min(cap_bits);
            }
            Err(e) => return Err(e),
        }
    }
}
