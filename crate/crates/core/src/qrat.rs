//! The coefficient field Q(v): rational functions in a formal variable `v`
//! with `q = v²`.
//!
//! Working over `v` rather than `q` makes half-integer powers of `q` exact —
//! `q^{3/2}` is just `v³` — which one of the built-in exponential families
//! needs. Families that never touch half powers simply produce polynomials
//! in even powers of `v`, and the renderer prints those in terms of `q`.
//!
//! Every value is kept in a canonical form strong enough that structural
//! equality coincides with mathematical equality:
//!
//! * numerator and denominator are coprime polynomials with integer
//!   coefficients,
//! * the integer content of the pair is 1 (no common constant factor),
//! * the denominator's leading coefficient is positive,
//! * zero is `0/1`.
//!
//! Uniqueness: if `p1/q1 = p2/q2` with both pairs canonical, coprimality
//! forces `p2 = c·p1`, `q2 = c·q1` for a rational `c`, and joint
//! primitivity plus the sign rule force `c = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::vpoly::VPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRat {
    num: VPoly,
    den: VPoly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: VPoly::zero(),
            den: VPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: VPoly::one(),
            den: VPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QRat::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        canonical(VPoly::constant(r), VPoly::one())
    }

    pub fn from_poly(p: VPoly) -> Self {
        canonical(p, VPoly::one())
    }

    /// Build `num/den`, canonicalizing. Errors when `den` is the zero polynomial.
    pub fn from_parts(num: VPoly, den: VPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(canonical(num, den))
    }

    /// The base variable `v = q^{1/2}`.
    pub fn v() -> Self {
        QRat {
            num: VPoly::var(),
            den: VPoly::one(),
        }
    }

    /// The deformation parameter `q = v²`.
    pub fn q() -> Self {
        QRat::v_pow(2)
    }

    /// `v^k` for any integer `k` (negative exponents give `1/v^{|k|}`).
    pub fn v_pow(k: i64) -> Self {
        if k >= 0 {
            QRat {
                num: VPoly::monomial(Rational::one(), k as usize),
                den: VPoly::one(),
            }
        } else {
            QRat {
                num: VPoly::one(),
                den: VPoly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    /// `q^k = v^{2k}` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        QRat::v_pow(2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == VPoly::one() && self.den == VPoly::one()
    }

    pub fn numer(&self) -> &VPoly {
        &self.num
    }

    pub fn denom(&self) -> &VPoly {
        &self.den
    }

    /// `Some(r)` when the value is a constant (no dependence on `v`).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.deg().unwrap_or(0) == 0 && self.den.deg() == Some(0) {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }

    pub fn div(&self, rhs: &QRat) -> Result<QRat> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QRat::zero());
        }
        // Multiply by the flipped divisor with cross-cancellation, as in
        // `Mul`: the surviving parts are pairwise coprime.
        let (a, c) = cancel(self.num.clone(), rhs.num.clone());
        let (d, b) = cancel(rhs.den.clone(), self.den.clone());
        Ok(normalize_content(&a * &d, &b * &c))
    }

    pub fn inv(&self) -> Result<QRat> {
        QRat::one().div(self)
    }

    /// `self^k` for a nonnegative exponent, by repeated squaring.
    pub fn pow(&self, k: u32) -> QRat {
        let mut base = self.clone();
        let mut acc = QRat::one();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^k` for any integer exponent; negative `k` requires `self ≠ 0`.
    pub fn pow_signed(&self, k: i64) -> Result<QRat> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            self.inv().map(|r| r.pow((-k) as u32))
        }
    }

    /// Exact evaluation at `v = v0` (so `q0 = v0²`).
    pub fn eval(&self, v0: &Rational) -> Result<Rational> {
        let d = self.den.eval(v0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint { at: v0.to_string() });
        }
        Ok(self.num.eval(v0) / d)
    }

    /// The substitution `q → 1/q` (that is, `v → 1/v`), via coefficient
    /// reversal: for `f = N/D` with `deg N = dn`, `deg D = dd`,
    /// `f(1/v) = rev(N)·v^{dd−dn} / rev(D)`. An involution on canonical forms.
    pub fn subst_qinv(&self) -> QRat {
        if self.is_zero() {
            return QRat::zero();
        }
        let dn = self.num.deg().unwrap();
        let dd = self.den.deg().unwrap();
        let rn = self.num.reversed();
        let rd = self.den.reversed();
        if dd >= dn {
            canonical(rn.shift_up(dd - dn), rd)
        } else {
            canonical(rn, rd.shift_up(dn - dd))
        }
    }

    /// The limit `q → 1⁻`, i.e. the value at `v = 1` after the canonical
    /// form has cancelled any removable `(v−1)` factors. Since numerator
    /// and denominator are coprime they cannot both vanish at 1, so a zero
    /// denominator here is a genuine pole.
    pub fn limit_at_one(&self) -> Result<Rational> {
        let one = Rational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(Error::PoleAtOne);
        }
        Ok(self.num.eval(&one) / d)
    }

    /// Canonical display string: in the variable `q` when every `v`-exponent
    /// in numerator and denominator is even (`(1+q)/2`), in `v` otherwise
    /// (`v^3`). [`crate::parse::parse_qrat`] accepts both, round-tripping
    /// exactly.
    pub fn render(&self) -> String {
        let (num_s, num_terms) = render_poly(&self.num, self.use_q(), false);
        if self.den.deg() == Some(0) && self.den.coeff(0).is_one() {
            return num_s;
        }
        let (den_s, _) = render_poly(&self.den, self.use_q(), false);
        let n = if num_terms > 1 {
            format!("({num_s})")
        } else {
            num_s
        };
        // The denominator must re-parse as one factor under the
        // left-associative grammar, where "3/2v" means (3/2)·v. Only a bare
        // integer or a coefficient-free power like q^2 binds on its own;
        // anything else gets parentheses.
        let d = if den_atomic(&self.den) {
            den_s
        } else {
            format!("({den_s})")
        };
        format!("{n}/{d}")
    }

    /// LaTeX fragment: `\frac{…}{…}` for proper fractions, `q^{k}` / `v^{k}`
    /// exponents in braces.
    pub fn latex(&self) -> String {
        let (num_s, _) = render_poly(&self.num, self.use_q(), true);
        if self.den.deg() == Some(0) && self.den.coeff(0).is_one() {
            return num_s;
        }
        let (den_s, _) = render_poly(&self.den, self.use_q(), true);
        format!("\\frac{{{num_s}}}{{{den_s}}}")
    }

    /// True when the value lies in Q(q) — every `v`-exponent even.
    fn use_q(&self) -> bool {
        only_even(&self.num) && only_even(&self.den)
    }
}

/// True when `p` prints as a single juxtaposition-free factor: one nonzero
/// coefficient that is either a constant or a ±1 multiple of a power.
fn den_atomic(p: &VPoly) -> bool {
    let nonzero: Vec<(usize, &Rational)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    match nonzero[..] {
        [(0, _)] => true,
        [(_, c)] => c.numer().abs().is_one(),
        _ => false,
    }
}

fn only_even(p: &VPoly) -> bool {
    p.coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| k % 2 == 0 || c.is_zero())
}

/// Render one polynomial (all-integer coefficients by canonical form),
/// ascending degree; returns the string and the number of printed terms.
fn render_poly(p: &VPoly, as_q: bool, latex: bool) -> (String, usize) {
    if p.is_zero() {
        return ("0".to_string(), 1);
    }
    let mut out = String::new();
    let mut terms = 0usize;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let int = c.numer();
        debug_assert!(c.denom().is_one(), "canonical form has integer coefficients");
        let neg = int.is_negative();
        let mag = int.abs();
        if terms == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push('-');
        } else {
            out.push('+');
        }
        let var = if as_q {
            exponent_str("q", k / 2, latex)
        } else {
            exponent_str("v", k, latex)
        };
        match (&var[..], mag.is_one()) {
            ("", _) => out.push_str(&mag.to_string()),
            (_, true) => out.push_str(&var),
            (_, false) => {
                out.push_str(&mag.to_string());
                out.push_str(&var);
            }
        }
        terms += 1;
    }
    (out, terms)
}

fn exponent_str(var: &str, e: usize, latex: bool) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ if latex => format!("{var}^{{{e}}}"),
        _ => format!("{var}^{e}"),
    }
}

/// Reduce to canonical form. `den` must be nonzero.
fn canonical(num: VPoly, den: VPoly) -> QRat {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return QRat {
            num: VPoly::zero(),
            den: VPoly::one(),
        };
    }
    // A constant on either side shares no polynomial factor with the other,
    // so the remainder sequence can be skipped outright.
    let (num, den) = if num.deg() == Some(0) || den.deg() == Some(0) {
        (num, den)
    } else {
        cancel(num, den)
    };
    normalize_content(num, den)
}

/// Divide out the polynomial gcd, leaving the pair coprime up to content.
fn cancel(num: VPoly, den: VPoly) -> (VPoly, VPoly) {
    let g = num.gcd(&den);
    if g.deg() > Some(0) {
        (num.div_exact(&g), den.div_exact(&g))
    } else {
        (num, den)
    }
}

/// Final canonicalization for a pair already known to be coprime: integer
/// coefficients, joint content 1, positive leading coefficient downstairs.
fn normalize_content(mut num: VPoly, mut den: VPoly) -> QRat {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return QRat {
            num: VPoly::zero(),
            den: VPoly::one(),
        };
    }
    let lcm = num.denom_lcm().lcm(&den.denom_lcm());
    if !lcm.is_one() {
        let s = Rational::from_integer(lcm);
        num = num.scale(&s);
        den = den.scale(&s);
    }
    let content = num.numer_gcd().gcd(&den.numer_gcd());
    if !content.is_one() {
        let s = Rational::from_integer(content).recip();
        num = num.scale(&s);
        den = den.scale(&s);
    }
    if den.leading().is_some_and(Signed::is_negative) {
        num = -&num;
        den = -&den;
    }
    QRat { num, den }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        add_impl(self, rhs, false)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        add_impl(self, rhs, true)
    }
}

/// Sum or difference of two canonical values. Splitting the denominator
/// gcd off first keeps every remainder sequence on polynomials no larger
/// than the smaller denominator, and when the denominators are coprime the
/// cross-multiplied form is already reduced up to content.
fn add_impl(x: &QRat, y: &QRat, subtract: bool) -> QRat {
    if y.is_zero() {
        return x.clone();
    }
    if x.is_zero() {
        return if subtract { -y } else { y.clone() };
    }
    if x.den == y.den {
        let num = if subtract {
            &x.num - &y.num
        } else {
            &x.num + &y.num
        };
        return canonical(num, x.den.clone());
    }
    let d1 = x.den.gcd(&y.den);
    if d1.deg() == Some(0) {
        let cross_x = &x.num * &y.den;
        let cross_y = &y.num * &x.den;
        let num = if subtract {
            &cross_x - &cross_y
        } else {
            &cross_x + &cross_y
        };
        return normalize_content(num, &x.den * &y.den);
    }
    let xd = x.den.div_exact(&d1);
    let yd = y.den.div_exact(&d1);
    let cross_x = &x.num * &yd;
    let cross_y = &y.num * &xd;
    let t = if subtract {
        &cross_x - &cross_y
    } else {
        &cross_x + &cross_y
    };
    if t.is_zero() {
        return QRat::zero();
    }
    let d2 = t.gcd(&d1);
    let (num, rest) = if d2.deg() > Some(0) {
        (t.div_exact(&d2), y.den.div_exact(&d2))
    } else {
        (t, y.den.clone())
    };
    normalize_content(num, &xd * &rest)
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        // Cross-cancel before multiplying: with both operands reduced, the
        // four remaining parts are pairwise coprime, so the product needs no
        // further gcd — only content normalization.
        let (a, d) = cancel(self.num.clone(), rhs.den.clone());
        let (c, b) = cancel(rhs.num.clone(), self.den.clone());
        normalize_content(&a * &c, &b * &d)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QRat {
            type Output = QRat;
            fn $method(self, rhs: QRat) -> QRat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QRat> for QRat {
            type Output = QRat;
            fn $method(self, rhs: &QRat) -> QRat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn q_plus_q_is_2q() {
        let s = &QRat::q() + &QRat::q();
        assert_eq!(s.render(), "2q");
        assert_eq!(s.numer().coeff(2), rat_int(2));
        assert_eq!(s.denom(), &VPoly::one());
    }

    #[test]
    fn self_division_is_one() {
        let f = &QRat::one() - &QRat::q(); // 1 - q
        assert!(f.div(&f).unwrap().is_one());
        assert!(matches!(
            f.div(&QRat::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn geometric_factor_cancels() {
        // Long-division oracle first: (1 - v^4) / (1 - v^2) leaves no
        // remainder and quotient 1 + v^2.
        let num = &VPoly::one() - &VPoly::monomial(Rational::one(), 4);
        let den = &VPoly::one() - &VPoly::monomial(Rational::one(), 2);
        let (quot, rem) = num.divrem(&den);
        assert!(rem.is_zero());
        assert_eq!(quot, &VPoly::one() + &VPoly::monomial(Rational::one(), 2));
        // The same cancellation through QRat division.
        let a = &QRat::one() - &QRat::q_pow(2);
        let b = &QRat::one() - &QRat::q();
        let ratio = a.div(&b).unwrap();
        assert_eq!(ratio, &QRat::one() + &QRat::q());
        assert_eq!(ratio.render(), "1+q");
    }

    #[test]
    fn evaluation_at_rational_points() {
        let f = &QRat::one() + &QRat::q();
        assert_eq!(f.eval(&rat_int(1)).unwrap(), rat_int(2));
        assert_eq!(QRat::v().eval(&rat(1, 2)).unwrap(), rat(1, 2));
        // (1 - q^3)/(1 - q) cancels to 1 + q + q^2, finite at v = 1.
        let g = (&QRat::one() - &QRat::q_pow(3))
            .div(&(&QRat::one() - &QRat::q()))
            .unwrap();
        assert_eq!(g.eval(&rat_int(1)).unwrap(), rat_int(3));
        assert_eq!(g.limit_at_one().unwrap(), rat_int(3));
        // A genuine pole is reported as one.
        let h = QRat::one().div(&(&QRat::one() - &QRat::q())).unwrap();
        assert!(matches!(h.eval(&rat_int(1)), Err(Error::PoleAtPoint { .. })));
        assert!(matches!(h.limit_at_one(), Err(Error::PoleAtOne)));
    }

    #[test]
    fn qinv_substitution() {
        assert_eq!(QRat::q().subst_qinv().render(), "1/q");
        assert_eq!(QRat::v_pow(3).subst_qinv(), QRat::v_pow(-3));
        let f = &QRat::one() + &QRat::q(); // [2]_q
        let g = f.subst_qinv();
        assert_eq!(g.render(), "(1+q)/q");
        // Cross-check by evaluation: g(v0) = f(1/v0).
        let v0 = rat_int(2);
        assert_eq!(g.eval(&v0).unwrap(), f.eval(&v0.recip()).unwrap());
    }

    #[test]
    fn limit_of_q_integer_is_the_integer() {
        let n5 = (&QRat::one() - &QRat::q_pow(5))
            .div(&(&QRat::one() - &QRat::q()))
            .unwrap();
        assert_eq!(n5.limit_at_one().unwrap(), rat_int(5));
    }

    #[test]
    fn rendering_conventions() {
        assert_eq!(QRat::zero().render(), "0");
        assert_eq!(QRat::one().render(), "1");
        assert_eq!(QRat::from_rational(rat(-1, 2)).render(), "-1/2");
        assert_eq!(QRat::v_pow(3).render(), "v^3");
        let half_one_plus_q =
            (&QRat::one() + &QRat::q()).div(&QRat::from_int(2)).unwrap();
        assert_eq!(half_one_plus_q.render(), "(1+q)/2");
        assert_eq!(half_one_plus_q.latex(), "\\frac{1+q}{2}");
        let mixed = &QRat::q() - &QRat::from_int(1); // -1 + q
        assert_eq!(mixed.render(), "-1+q");
        assert_eq!(QRat::q_pow(2).latex(), "q^{2}");
        // An odd v-power anywhere forces the v spelling throughout, so the
        // denominator 1+q prints as 1+v^2 here.
        let f = QRat::v().div(&(&QRat::one() + &QRat::q())).unwrap();
        assert_eq!(f.render(), "v/(1+v^2)");
    }

    #[test]
    fn canonicalization_examples() {
        // 2/4 reduces, content is joint.
        let f = QRat::from_int(2).div(&QRat::from_int(4)).unwrap();
        assert_eq!(f, QRat::from_rational(rat(1, 2)));
        // A negative denominator flips into the numerator.
        let g = QRat::from_parts(
            VPoly::constant(rat_int(1)),
            VPoly::constant(rat_int(-2)),
        )
        .unwrap();
        assert_eq!(g.render(), "-1/2");
        // Fractional coefficients clear to the integer canonical pair.
        let h = QRat::from_parts(
            VPoly::new(vec![rat(1, 2), Rational::zero(), rat(1, 2)]),
            VPoly::one(),
        )
        .unwrap();
        assert_eq!(h.render(), "(1+q)/2");
    }

    fn arb_qrat() -> impl Strategy<Value = QRat> {
        let poly = prop::collection::vec(-6i64..=6, 0..5);
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
            let den = VPoly::new(d.into_iter().map(rat_int).collect());
            if den.is_zero() {
                return None;
            }
            let num = VPoly::new(n.into_iter().map(rat_int).collect());
            Some(QRat::from_parts(num, den).unwrap())
        })
    }

    proptest! {
        #[test]
        fn prop_eval_is_a_homomorphism(a in arb_qrat(), b in arb_qrat(), n in -9i64..=9, d in 1i64..=9) {
            let v0 = rat(n, d);
            let (Ok(ea), Ok(eb)) = (a.eval(&v0), b.eval(&v0)) else {
                return Ok(());
            };
            if let Ok(sum) = (&a + &b).eval(&v0) {
                prop_assert_eq!(sum, &ea + &eb);
            }
            if let Ok(prod) = (&a * &b).eval(&v0) {
                prop_assert_eq!(prod, &ea * &eb);
            }
            if let Ok(diff) = (&a - &b).eval(&v0) {
                prop_assert_eq!(diff, &ea - &eb);
            }
        }

        #[test]
        fn prop_subst_qinv_is_an_involution(a in arb_qrat()) {
            prop_assert_eq!(a.subst_qinv().subst_qinv(), a);
        }

        #[test]
        fn prop_division_inverts_multiplication(a in arb_qrat(), b in arb_qrat()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div(&b).unwrap(), a);
        }

        #[test]
        fn prop_nonzero_self_division_is_one(a in arb_qrat()) {
            prop_assume!(!a.is_zero());
            prop_assert!(a.div(&a).unwrap().is_one());
        }
    }
}
