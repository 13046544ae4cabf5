//! Dense univariate polynomials over the rationals.
//!
//! This is the representation layer underneath [`crate::qrat::QRat`]: a
//! rational function in the base variable is a pair of these. Coefficients
//! are stored in ascending degree with no trailing zeros, so the zero
//! polynomial is the empty vector and equality is structural.
//!
//! The one non-obvious algorithm here is [`VPoly::gcd`]: polynomial gcd
//! computed with a primitive pseudo-remainder sequence over the integers.
//! Running Euclid naively over Q blows up intermediate coefficient sizes;
//! clearing denominators and dividing out integer content at every step
//! keeps them small, and everything stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPoly {
    /// Coefficients in ascending degree; invariant: last entry (if any) is nonzero.
    coeffs: Vec<Rational>,
}

impl VPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        VPoly { coeffs }
    }

    pub fn zero() -> Self {
        VPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        VPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        VPoly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        VPoly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        VPoly::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return VPoly::zero();
        }
        VPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficient reversal: for `p` of degree `d`, returns `x^d * p(1/x)`.
    /// The zero polynomial reverses to itself.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        VPoly::new(coeffs)
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        VPoly { coeffs }
    }

    /// Index of the lowest nonzero coefficient (`None` for zero): the
    /// multiplicity of the root at the origin.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact division by `v^k`. Panics when the valuation is smaller than `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return VPoly::zero();
        }
        assert!(
            self.coeffs[..k].iter().all(Rational::is_zero),
            "shift_down below valuation"
        );
        VPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Panics when `d` is zero.
    pub fn divrem(&self, d: &VPoly) -> (VPoly, VPoly) {
        let dd = d.deg().expect("division by the zero polynomial");
        let lead_inv = Rational::one() / d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (VPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone() * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].clone() - &c * dc;
            }
            quot[i - dd] = c;
        }
        (VPoly::new(quot), VPoly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &VPoly) -> VPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Greatest common divisor as a primitive integer polynomial with
    /// positive leading coefficient (so `gcd` of coprime inputs is `1`).
    pub fn gcd(&self, other: &VPoly) -> VPoly {
        let from_int = |g: Vec<BigInt>| VPoly {
            coeffs: g.into_iter().map(Rational::from_integer).collect(),
        };
        match (self.is_zero(), other.is_zero()) {
            (true, true) => VPoly::zero(),
            (true, false) => from_int(int_primitive(primitive_int(&other.coeffs))),
            (false, true) => from_int(int_primitive(primitive_int(&self.coeffs))),
            (false, false) => {
                // Only the common power of v divides both tails, so strip each
                // valuation before running the remainder sequence and graft the
                // shared power back on afterwards.
                let va = self.valuation().unwrap();
                let vb = other.valuation().unwrap();
                let a = primitive_int(&self.coeffs[va..]);
                let b = primitive_int(&other.coeffs[vb..]);
                let core = if a.len() == 1 || b.len() == 1 {
                    vec![BigInt::one()]
                } else if a == b {
                    int_primitive(a)
                } else {
                    int_gcd(a, b)
                };
                from_int(core).shift_up(va.min(vb))
            }
        }
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Least common multiple of the coefficient denominators (1 for zero).
    pub fn denom_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the coefficient numerators, nonnegative (0 for zero).
    pub fn numer_gcd(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }
}

/// Clear denominators and divide out content: a primitive integer
/// coefficient vector (ascending, no trailing zeros) proportional to the
/// input. Input must be nonzero.
fn primitive_int(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * &lcm / c.denom())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn int_deg(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn int_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(BigInt::is_zero) {
        p.pop();
    }
    p
}

fn int_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if p.last().is_some_and(Signed::is_negative) {
        content = -content;
    }
    p.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b`: the remainder of `lc(b)^(deg a - deg b + 1) * a`
/// divided by `b`, which stays in integer arithmetic throughout.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = int_deg(b);
    if db == 0 {
        return Vec::new();
    }
    let lb = b[db].clone();
    let scale_needed = !lb.is_one();
    let mut rem = a.to_vec();
    while rem.len() > db {
        let top = rem.last().unwrap().clone();
        if scale_needed {
            for c in rem.iter_mut() {
                *c *= &lb;
            }
        }
        let shift = rem.len() - 1 - db;
        for (j, bc) in b.iter().enumerate() {
            rem[shift + j] -= &top * bc;
        }
        rem = int_trim(rem);
        if rem.is_empty() {
            break;
        }
        // The running remainder is only needed up to a positive scalar, so
        // shed accumulated content before the coefficients snowball.
        if scale_needed && rem.iter().any(|c| c.bits() > 2048) {
            let content = rem.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !content.is_one() {
                for c in rem.iter_mut() {
                    *c /= &content;
                }
            }
        }
    }
    rem
}

/// Primitive PRS gcd of two primitive integer polynomials.
fn int_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if int_deg(&a) == 0 || int_deg(&b) == 0 {
        return vec![BigInt::one()];
    }
    if int_deg(&a) < int_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = int_pseudo_rem(&a, &b);
        if r.is_empty() {
            return int_primitive(b);
        }
        if int_deg(&r) == 0 {
            return vec![BigInt::one()];
        }
        a = b;
        b = int_primitive(r);
    }
}

impl Add for &VPoly {
    type Output = VPoly;
    fn add(self, rhs: &VPoly) -> VPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        VPoly::new(coeffs)
    }
}

impl Sub for &VPoly {
    type Output = VPoly;
    fn sub(self, rhs: &VPoly) -> VPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        VPoly::new(coeffs)
    }
}

impl Neg for &VPoly {
    type Output = VPoly;
    fn neg(self) -> VPoly {
        VPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &VPoly {
    type Output = VPoly;
    fn mul(self, rhs: &VPoly) -> VPoly {
        if self.is_zero() || rhs.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        VPoly::new(coeffs)
    }
}
