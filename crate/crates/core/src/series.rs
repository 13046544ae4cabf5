//! Truncated formal power series in `t` over the coefficient field, plus
//! the unified exponential builder and the one deliberately numeric
//! operation in the crate: the radius-of-convergence probe.
//!
//! A series stores coefficients `t⁰..t^order` and its truncation order.
//! Arithmetic between series of different orders truncates to the smaller
//! order and marks the result ([`Series::is_truncated`]) instead of
//! erroring — verifier pipelines routinely mix orders and only care that
//! the comparison order is explicit.

use num_traits::{One, Signed, Zero};

use crate::alpha::AlphaFamily;
use crate::qcore::qint;
use crate::qrat::QRat;
use crate::rational::{rat_to_f64, Rational};
use crate::report::json_string;
use crate::{Error, Result};

/// Default truncation order for generating-function work.
pub const DEFAULT_ORDER: u32 = 16;

#[derive(Clone, Debug)]
pub struct Series {
    /// Coefficients of `t⁰ .. t^order`; length is always `order + 1`.
    coeffs: Vec<QRat>,
    truncated: bool,
}

impl Series {
    /// A series from explicit coefficients (their count fixes the order).
    pub fn new(coeffs: Vec<QRat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least t^0");
        Series {
            coeffs,
            truncated: false,
        }
    }

    pub fn from_fn(order: u32, f: impl FnMut(u32) -> QRat) -> Self {
        Series::new((0..=order).map(f).collect())
    }

    pub fn zero(order: u32) -> Self {
        Series::new(vec![QRat::zero(); order as usize + 1])
    }

    /// The multiplicative unit `1`.
    pub fn one(order: u32) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = QRat::one();
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// True when this value went through an order-mixing operation and so
    /// carries fewer coefficients than one of its inputs.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Coefficient of `tⁿ`; zero beyond the truncation order.
    pub fn coeff(&self, n: u32) -> QRat {
        self.coeffs.get(n as usize).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    /// Drop coefficients above `order` (or keep all if already shorter).
    pub fn truncate(&self, order: u32) -> Series {
        if order >= self.order() {
            return self.clone();
        }
        Series {
            coeffs: self.coeffs[..=order as usize].to_vec(),
            truncated: true,
        }
    }

    fn meet(a: &Series, b: &Series) -> (u32, bool) {
        let order = a.order().min(b.order());
        (order, a.order() != b.order() || a.truncated || b.truncated)
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let (order, truncated) = Series::meet(self, rhs);
        let coeffs = (0..=order).map(|n| &self.coeff(n) + &rhs.coeff(n)).collect();
        Series { coeffs, truncated }
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        let (order, truncated) = Series::meet(self, rhs);
        let coeffs = (0..=order).map(|n| &self.coeff(n) - &rhs.coeff(n)).collect();
        Series { coeffs, truncated }
    }

    /// Cauchy product `c_n = Σ_{k=0}ⁿ a_k b_{n−k}` to the shared order.
    pub fn mul(&self, rhs: &Series) -> Series {
        let (order, truncated) = Series::meet(self, rhs);
        let mut coeffs = vec![QRat::zero(); order as usize + 1];
        for k in 0..=order as usize {
            if self.coeffs[k].is_zero() {
                continue;
            }
            for j in 0..=(order as usize - k) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[k + j] = &coeffs[k + j] + &(&self.coeffs[k] * &rhs.coeffs[j]);
            }
        }
        Series { coeffs, truncated }
    }

    /// Multiply every coefficient by one scalar.
    pub fn scale(&self, c: &QRat) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            truncated: self.truncated,
        }
    }

    /// The substitution `t ↦ λt`: coefficient `n` picks up `λⁿ`.
    pub fn scale_arg(&self, lambda: &QRat) -> Series {
        let mut pow = QRat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let c = a * &pow;
                pow = &pow * lambda;
                c
            })
            .collect();
        Series {
            coeffs,
            truncated: self.truncated,
        }
    }

    /// Multiplicative inverse to the same order, by the recurrence
    /// `b_0 = 1/a_0`, `b_n = −(Σ_{k=1}ⁿ a_k b_{n−k})/a_0`.
    pub fn invert(&self) -> Result<Series> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let a0_inv = self.coeffs[0].inv()?;
        let mut out = vec![a0_inv.clone()];
        for n in 1..self.coeffs.len() {
            let mut sum = QRat::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                sum = &sum + &(&self.coeffs[k] * &out[n - k]);
            }
            out.push(-&(&sum * &a0_inv));
        }
        Ok(Series {
            coeffs: out,
            truncated: self.truncated,
        })
    }

    /// The q-derivative `(f(t) − f(qt))/((1−q)t)` on coefficients:
    /// `b_n = [n+1]_q · a_{n+1}`, dropping the order by one. The
    /// q-derivative of a constant series is the zero series.
    pub fn qderive(&self) -> Series {
        if self.coeffs.len() == 1 {
            return Series {
                coeffs: vec![QRat::zero()],
                truncated: self.truncated,
            };
        }
        let coeffs = (1..self.coeffs.len())
            .map(|n| &self.coeffs[n] * &qint(n as u32))
            .collect();
        Series {
            coeffs,
            truncated: self.truncated,
        }
    }

    /// JSON rendering: `{"order":N,"coeffs":["…",…]}` with canonical
    /// coefficient strings.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{{\"order\":{},\"coeffs\":[", self.order()));
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&json_string(&c.render()));
        }
        out.push_str("]}");
        out
    }
}

/// Equality compares order and coefficients; the truncation flag is
/// bookkeeping, not value.
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Series {}

/// The unified exponential `Σ_n α(q,n)·tⁿ/[n]_q!` truncated at `order`.
pub fn unified_exp(fam: &AlphaFamily, order: u32) -> Result<Series> {
    let mut fact = QRat::one();
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    for n in 0..=order {
        if n > 0 {
            fact = &fact * &qint(n);
        }
        coeffs.push(fam.alpha(n)?.div(&fact)?);
    }
    Ok(Series::new(coeffs))
}

/// The shifted exponential `S(t) = Σ_n α(q,n+1)·tⁿ/[n+1]_q!`, i.e.
/// `(E(t) − 1)/t` exactly, without ever dividing by a series that kills
/// the constant term. `S(0) = α_1`.
pub fn unified_exp_shifted(fam: &AlphaFamily, order: u32) -> Result<Series> {
    let mut fact = QRat::one(); // [n+1]_q! running value
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    for n in 0..=order {
        fact = &fact * &qint(n + 1);
        coeffs.push(fam.alpha(n + 1)?.div(&fact)?);
    }
    Ok(Series::new(coeffs))
}

/// Heuristic thresholds for [`radius_estimate`]: the tail of the ratio
/// sequence counts as stabilized when `window` consecutive relative
/// changes stay below `stabilize_tol`.
#[derive(Clone, Debug)]
pub struct RadiusConfig {
    pub stabilize_tol: Rational,
    pub window: usize,
}

impl Default for RadiusConfig {
    fn default() -> Self {
        RadiusConfig {
            stabilize_tol: crate::rational::rat(1, 1_000_000_000),
            window: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RadiusEstimate {
    /// The ratio sequence stabilized at a positive value `l`; the series
    /// converges on `|z| < 1/l`.
    Finite {
        /// `1/l` as a floating-point approximation.
        radius: f64,
        /// The exact reciprocal of the last ratio, for callers that want
        /// to present a nearby simple rational.
        limit_inverse: Rational,
    },
    /// The ratios decay monotonically to zero: entire function.
    Infinite,
    /// Neither criterion triggered within `n_max`; the tail is returned
    /// for inspection rather than guessed at.
    Unresolved { tail: Vec<f64> },
}

/// Estimate the radius of convergence of the family's exponential at the
/// numeric point `q0 = v0²` by following `l_n = |α_{n+1}/([n+1]_q α_n)|`
/// for `n = 1..n_max`. All sequence values are exact rationals; only the
/// final readout is floating point.
///
/// Requires `0 < v0 < 1` (so `0 < q0 < 1`) and `α_n(v0) ≠ 0` through
/// `n_max + 1`.
pub fn radius_estimate(fam: &AlphaFamily, v0: &Rational, n_max: u32) -> Result<RadiusEstimate> {
    radius_estimate_with(fam, v0, n_max, &RadiusConfig::default())
}

pub fn radius_estimate_with(
    fam: &AlphaFamily,
    v0: &Rational,
    n_max: u32,
    cfg: &RadiusConfig,
) -> Result<RadiusEstimate> {
    if !v0.is_positive() || *v0 >= Rational::one() {
        return Err(Error::ProbeOutOfRange { v0: v0.to_string() });
    }
    let q0 = v0 * v0;
    let ratios = fam.eval_ratios(v0, n_max + 1)?;
    // l_n = |α_{n+1}/α_n| / [n+1]_{q0}, with [n+1] = 1 + q0·[n].
    let mut ls: Vec<Rational> = Vec::with_capacity(n_max as usize);
    let mut qn = Rational::one(); // [n]_{q0}, starting at [1] = 1
    for n in 1..=n_max as usize {
        qn = Rational::one() + &q0 * qn;
        ls.push(ratios[n].abs() / &qn);
    }
    let window = cfg.window;
    if ls.len() < window + 1 {
        return Ok(RadiusEstimate::Unresolved {
            tail: ls.iter().map(rat_to_f64).collect(),
        });
    }
    let tail = &ls[ls.len() - (window + 1)..];
    let stabilized = tail
        .windows(2)
        .all(|w| (&w[1] - &w[0]).abs() < &w[1].abs() * &cfg.stabilize_tol);
    if stabilized {
        let l = tail.last().unwrap();
        if l.is_zero() {
            return Ok(RadiusEstimate::Infinite);
        }
        let limit_inverse = l.recip();
        return Ok(RadiusEstimate::Finite {
            radius: rat_to_f64(&limit_inverse),
            limit_inverse,
        });
    }
    let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
    let halved = tail.last().unwrap() * Rational::from_integer(2.into()) < tail[0];
    if decreasing && halved {
        return Ok(RadiusEstimate::Infinite);
    }
    Ok(RadiusEstimate::Unresolved {
        tail: tail.iter().map(rat_to_f64).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::{builtin_family, builtin_names, ratio_analyze, AlphaFamily};
    use crate::qcore::qfactorial;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn builtin(name: &str) -> AlphaFamily {
        builtin_family(name).unwrap()
    }

    fn int_series(coeffs: &[i64]) -> Series {
        Series::new(coeffs.iter().map(|&c| QRat::from_int(c)).collect())
    }

    #[test]
    fn cauchy_product_basics() {
        let a = int_series(&[1, 1, 0, 0, 0]); // 1 + t at order 4
        let b = int_series(&[1, -1, 0, 0, 0]); // 1 - t
        assert_eq!(a.mul(&b), int_series(&[1, 0, -1, 0, 0]));
        let any = int_series(&[3, 1, 4, 1, 5]);
        assert_eq!(any.mul(&Series::one(4)), any);
    }

    #[test]
    fn order_mixing_truncates_and_flags() {
        let long = int_series(&[1, 2, 3, 4, 5]);
        let short = int_series(&[1, 1]);
        let prod = long.mul(&short);
        assert_eq!(prod.order(), 1);
        assert!(prod.is_truncated());
        assert!(!long.mul(&long).is_truncated());
        assert_eq!(prod, int_series(&[1, 3]));
    }

    #[test]
    fn exponential_times_its_reflection_is_one_for_improved() {
        let e = unified_exp(&builtin("improved"), 8).unwrap();
        let reflected = e.scale_arg(&QRat::from_int(-1));
        assert_eq!(e.mul(&reflected), Series::one(8));
        // ...and is not 1 for the plain family.
        let e1 = unified_exp(&builtin("ones"), 8).unwrap();
        assert_ne!(e1.mul(&e1.scale_arg(&QRat::from_int(-1))), Series::one(8));
    }

    #[test]
    fn inversion_of_one_minus_t_is_geometric() {
        let inv = int_series(&[1, -1, 0, 0, 0, 0]).invert().unwrap();
        assert_eq!(inv, int_series(&[1, 1, 1, 1, 1, 1]));
        assert!(matches!(
            int_series(&[0, 1]).invert(),
            Err(Error::NonUnitConstantTerm)
        ));
    }

    #[test]
    fn argument_scaling() {
        let s = int_series(&[1, 2, 3]);
        assert_eq!(s.scale_arg(&QRat::one()), s);
        let z = s.scale_arg(&QRat::zero());
        assert_eq!(z, int_series(&[1, 0, 0]));
        let by_q = s.scale_arg(&QRat::q());
        assert_eq!(by_q.coeff(2), &QRat::from_int(3) * &QRat::q_pow(2));
    }

    #[test]
    fn qderivative_drops_order_and_weights() {
        assert_eq!(int_series(&[7]).qderive(), int_series(&[0]));
        let s = int_series(&[5, 1, 1, 1]);
        let d = s.qderive();
        assert_eq!(d.order(), 2);
        assert_eq!(d.coeff(0), QRat::one());
        assert_eq!(d.coeff(1), crate::qcore::qint(2));
        assert_eq!(d.coeff(2), crate::qcore::qint(3));
    }

    #[test]
    fn plain_exponential_is_its_own_qderivative() {
        let e = unified_exp(&builtin("ones"), 8).unwrap();
        assert_eq!(e.qderive(), e.truncate(7));
    }

    #[test]
    fn gauss_qderivative_rescales_the_argument() {
        let e = unified_exp(&builtin("gauss"), 6).unwrap();
        assert_eq!(e.qderive(), e.scale_arg(&QRat::q()).truncate(5));
    }

    #[test]
    fn improved_qderivative_averages_two_arguments() {
        let e = unified_exp(&builtin("improved"), 8).unwrap();
        let half = QRat::from_rational(rat(1, 2));
        let avg = e.add(&e.scale_arg(&QRat::q())).scale(&half);
        assert_eq!(e.qderive(), avg.truncate(7));
    }

    #[test]
    fn derivative_identity_holds_whenever_the_ratio_form_exists() {
        for name in ["ones", "gauss", "improved"] {
            let fam = builtin(name);
            let form = ratio_analyze(&fam, 6).unwrap();
            let e = unified_exp(&fam, 10).unwrap();
            let mut rhs = Series::zero(10);
            for (&k, a) in form.coeffs() {
                rhs = rhs.add(&e.scale_arg(&QRat::q_pow(k as i64)).scale(a));
            }
            assert_eq!(e.qderive(), rhs.truncate(9), "{name}");
        }
    }

    #[test]
    fn unified_exp_coefficients_unfold() {
        let e = unified_exp(&builtin("ones"), 4).unwrap();
        assert!(e.coeff(0).is_one());
        assert!(e.coeff(1).is_one());
        for n in 2..=4 {
            assert_eq!(e.coeff(n), qfactorial(n).inv().unwrap());
        }
        for name in builtin_names() {
            assert!(unified_exp(&builtin(name), 3).unwrap().coeff(0).is_one());
        }
    }

    #[test]
    fn gauss_exponential_is_the_q_inverted_plain_one() {
        let e_plain = unified_exp(&builtin("ones"), 8).unwrap();
        let e_gauss = unified_exp(&builtin("gauss"), 8).unwrap();
        for n in 0..=8 {
            assert_eq!(e_plain.coeff(n).subst_qinv(), e_gauss.coeff(n), "n={n}");
        }
    }

    #[test]
    fn classical_limit_of_every_builtin_is_exp() {
        for name in builtin_names() {
            let e = unified_exp(&builtin(name), 12).unwrap();
            let mut fact = rat_int(1);
            for n in 0..=12 {
                if n > 0 {
                    fact = fact * rat_int(n);
                }
                assert_eq!(
                    e.coeff(n as u32).limit_at_one().unwrap(),
                    fact.recip(),
                    "{name}, n={n}"
                );
            }
        }
    }

    #[test]
    fn shifted_exponential_matches_its_definition() {
        let fam = builtin("improved");
        let s = unified_exp_shifted(&fam, 6).unwrap();
        let e = unified_exp(&fam, 7).unwrap();
        for n in 0..=6u32 {
            assert_eq!(s.coeff(n), e.coeff(n + 1), "n={n}");
        }
        assert_eq!(s.coeff(0), fam.alpha(1).unwrap());
    }

    #[test]
    fn json_form_carries_order_and_strings() {
        let s = unified_exp(&builtin("improved"), 2).unwrap();
        let text = s.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["order"], 2);
        // α_2/[2]_q! = ((1+q)/2)/(1+q) cancels to 1/2.
        assert_eq!(v["coeffs"][2], "1/2");
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn radius_of_the_three_documented_families() {
        let v0 = rat(1, 2); // q0 = 1/4
        match radius_estimate(&builtin("ones"), &v0, 200).unwrap() {
            RadiusEstimate::Finite { radius, .. } => {
                assert!((radius - 4.0 / 3.0).abs() / (4.0 / 3.0) < 1e-6);
            }
            other => panic!("expected finite radius, got {other:?}"),
        }
        match radius_estimate(&builtin("improved"), &v0, 200).unwrap() {
            RadiusEstimate::Finite { radius, .. } => {
                assert!((radius - 8.0 / 3.0).abs() / (8.0 / 3.0) < 1e-6);
            }
            other => panic!("expected finite radius, got {other:?}"),
        }
        assert_eq!(
            radius_estimate(&builtin("gauss"), &v0, 200).unwrap(),
            RadiusEstimate::Infinite
        );
        assert_eq!(
            radius_estimate(&builtin("half_gauss"), &v0, 200).unwrap(),
            RadiusEstimate::Infinite
        );
    }

    #[test]
    fn radius_refuses_rather_than_guessing() {
        let v0 = rat(1, 2);
        // Too few terms to fill the stabilization window.
        assert!(matches!(
            radius_estimate(&builtin("ones"), &v0, 5).unwrap(),
            RadiusEstimate::Unresolved { .. }
        ));
        for bad in [rat_int(0), rat_int(1), rat_int(2), rat(-1, 2)] {
            assert!(matches!(
                radius_estimate(&builtin("ones"), &bad, 20),
                Err(Error::ProbeOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn radius_reports_a_vanishing_alpha() {
        // α_1 = (4q−1)/3 tends to 1 at q=1 but vanishes at q0 = 1/4.
        let a1 = crate::parse::parse_qrat("(4q-1)/3").unwrap();
        let fam =
            AlphaFamily::from_table("pit", vec![QRat::one(), a1, QRat::one()]).unwrap();
        assert!(matches!(
            radius_estimate(&fam, &rat(1, 2), 1),
            Err(Error::ZeroAlpha { n: 1 })
        ));
    }

    fn arb_series() -> impl Strategy<Value = Series> {
        prop::collection::vec((-6i64..=6, 1i64..=3), 1..7).prop_map(|cs| {
            Series::new(
                cs.into_iter()
                    .map(|(n, d)| QRat::from_rational(rat(n, d)))
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prop_mul_commutes_and_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn prop_invert_round_trips(a in arb_series()) {
            prop_assume!(!a.coeff(0).is_zero());
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv), Series::one(a.order()));
        }

        #[test]
        fn prop_qderive_commutes_with_scaling(a in arb_series(), pick in 0usize..3) {
            let lambda = [QRat::q(), &QRat::one() + &QRat::q(), QRat::v()][pick].clone();
            let lhs = a.scale_arg(&lambda).qderive();
            let rhs = a.qderive().scale_arg(&lambda).scale(&lambda);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
