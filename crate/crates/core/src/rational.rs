//! Arbitrary-precision rational scalars: the ground field Q.
//!
//! `num_rational::BigRational` already maintains the invariants this crate
//! needs (coprime numerator/denominator, positive denominator, zero stored
//! as 0/1), so it is used directly. This module adds the small amount of
//! glue the rest of the crate wants: integer constructors, parsing, a
//! conversion to `f64` that survives numbers far outside the `f64` exponent
//! range of either component, and the simplest-rational-in-interval search
//! used to present radius estimates.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics when `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim().parse::<Rational>().map_err(|e| Error::Parse {
        detail: format!("{text:?} is not a rational number: {e}"),
    })
}

/// Approximate a rational in `f64`, scaling numerator and denominator down
/// together so that ratios like 4^1000 / (3 * 4^1000) still come out near
/// 1/3 instead of NaN.
pub fn rat_to_f64(r: &Rational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let sn = (nb - 96).max(0);
    let sd = (db - 96).max(0);
    let n_red: BigInt = num >> sn as usize;
    let d_red: BigInt = den >> sd as usize;
    let nf = n_red.to_f64().unwrap_or(f64::INFINITY);
    let df = d_red.to_f64().unwrap_or(f64::INFINITY);
    let shift = sn - sd;
    if shift.abs() > 16000 {
        // out of f64 range either way
        return if (shift > 0) == (num.sign() != Sign::Minus) {
            if shift > 0 {
                f64::INFINITY * nf.signum()
            } else {
                0.0
            }
        } else if shift > 0 {
            f64::NEG_INFINITY
        } else {
            0.0
        };
    }
    (nf / df) * 2f64.powi(shift as i32)
}

/// Exact square root of a nonnegative rational, when one exists: both the
/// numerator and denominator must be perfect squares.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// The rational with smallest denominator (and, among those, smallest
/// numerator) in the closed interval `[lo, hi]`. Requires `lo <= hi`.
///
/// Continued-fraction descent: when an integer lies in the interval it is
/// the answer; otherwise recurse on the reciprocal of the fractional parts.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    simplest_nonneg(lo, hi)
}

fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.ceil();
    if &fl <= hi {
        return fl;
    }
    // lo and hi share an integer part; descend into the fractional part.
    let ip = lo.floor();
    let lo_frac = lo - &ip;
    let hi_frac = hi - &ip;
    let inner = simplest_nonneg(&(Rational::one() / hi_frac), &(Rational::one() / lo_frac));
    ip + Rational::one() / inner
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn f64_conversion_handles_huge_components() {
        let big = BigInt::from(4u32).pow(1000);
        let r = Rational::new(big.clone(), big * 3);
        assert!((rat_to_f64(&r) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(rat_to_f64(&Rational::zero()), 0.0);
        assert!((rat_to_f64(&rat(-7, 2)) + 3.5).abs() < 1e-12);
    }

    #[test]
    fn simplest_rational_prefers_small_denominators() {
        let lo = parse_rational("13333333/10000000").unwrap();
        let hi = parse_rational("13333334/10000000").unwrap();
        assert_eq!(simplest_in_interval(&lo, &hi), rat(4, 3));
        assert_eq!(simplest_in_interval(&rat(5, 2), &rat(7, 2)), rat_int(3));
        assert_eq!(simplest_in_interval(&rat(-1, 3), &rat(1, 7)), Rational::zero());
        assert_eq!(simplest_in_interval(&rat(-7, 2), &rat(-5, 2)), rat_int(-3));
        assert_eq!(simplest_in_interval(&rat(1, 2), &rat(1, 2)), rat(1, 2));
    }
}
