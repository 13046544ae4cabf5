//! q-combinatorics kernel: q-integers, q-factorials, Gaussian binomial
//! coefficients, q-Pochhammer products, and the Gauss binomial identity
//! that ties them together.
//!
//! Conventions: `[0]_q = 0`, `[n]_q = 1+q+…+q^{n−1}`, `[n]_q! = [1]_q⋯[n]_q`,
//! and the binomial `C(n,k)_q` is zero outside `0 ≤ k ≤ n` so convolution
//! sums never need edge guards. Binomials are produced by the Pascal
//! recurrence `C(n,k) = C(n−1,k−1) + q^k·C(n−1,k)`; the factorial-ratio
//! route exists independently and the two are cross-checked in tests.

use crate::qrat::QRat;
use crate::report::{CheckClass, Report};

/// `n(n−1)/2`, the exponent showing up in Gauss-type weights.
pub fn binom2(n: u32) -> i64 {
    (n as i64) * (n as i64 - 1) / 2
}

/// The q-integer `[n]_q = 1 + q + … + q^{n−1}` (zero for `n = 0`).
pub fn qint(n: u32) -> QRat {
    let mut acc = QRat::zero();
    for k in 0..n {
        acc = &acc + &QRat::q_pow(k as i64);
    }
    acc
}

/// `[n]_q! = [1]_q [2]_q ⋯ [n]_q`, with the empty product for `n = 0`.
pub fn qfactorial(n: u32) -> QRat {
    let mut acc = QRat::one();
    for k in 1..=n {
        acc = &acc * &qint(k);
    }
    acc
}

/// Gaussian binomial coefficient `C(n,k)_q`; zero outside `0 ≤ k ≤ n`.
pub fn qbinomial(n: u32, k: i64) -> QRat {
    QBinomTable::new(n).get(n, k)
}

/// Triangular table of Gaussian binomials up to a fixed row, built once by
/// the Pascal recurrence. Loops that consume many coefficients should hold
/// one of these instead of calling [`qbinomial`] per entry.
#[derive(Clone, Debug)]
pub struct QBinomTable {
    rows: Vec<Vec<QRat>>,
}

impl QBinomTable {
    pub fn new(n_max: u32) -> Self {
        let mut t = QBinomTable {
            rows: vec![vec![QRat::one()]],
        };
        t.grow_to(n_max);
        t
    }

    pub fn n_max(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// Extend the table so row `n_max` exists (no-op when it already does).
    pub fn grow_to(&mut self, n_max: u32) {
        while self.rows.len() <= n_max as usize {
            let prev = self.rows.last().unwrap();
            let n = prev.len(); // building row of length n+1
            let mut row = Vec::with_capacity(n + 1);
            row.push(QRat::one());
            for k in 1..n {
                let upper_left = &prev[k - 1];
                let upper = &prev[k] * &QRat::q_pow(k as i64);
                row.push(upper_left + &upper);
            }
            row.push(QRat::one());
            self.rows.push(row);
        }
    }

    /// `C(n,k)_q`; zero outside `0 ≤ k ≤ n`. Panics if row `n` was never built.
    pub fn get(&self, n: u32, k: i64) -> QRat {
        if k < 0 || k > n as i64 {
            return QRat::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }
}

/// `(a;q)_n = Π_{j=0}^{n−1} (1 − qʲ a)`, the q-shifted factorial.
pub fn qpochhammer(a: &QRat, n: u32) -> QRat {
    let mut acc = QRat::one();
    for j in 0..n {
        let factor = &QRat::one() - &(&QRat::q_pow(j as i64) * a);
        acc = &acc * &factor;
    }
    acc
}

/// Check `(a;q)_n = Σ_{k=0}ⁿ C(n,k)_q q^{k(k−1)/2} (−1)ᵏ aᵏ` for each
/// `n ≤ n_max`, computing the two sides by entirely separate routes.
pub fn gauss_binomial_identity_check(a: &QRat, n_max: u32) -> Report {
    let mut report = Report::new(
        format!("gauss-binomial identity, a = {}", a.render()),
        CheckClass::Identity,
    );
    let table = QBinomTable::new(n_max);
    for n in 0..=n_max {
        let product = qpochhammer(a, n);
        let mut sum = QRat::zero();
        for k in 0..=n {
            let mut term = &table.get(n, k as i64) * &QRat::q_pow(binom2(k));
            term = &term * &a.pow(k);
            if k % 2 == 1 {
                term = -term;
            }
            sum = &sum + &term;
        }
        if product == sum {
            report.pass(format!("n={n}"));
        } else {
            report.fail(
                format!("n={n}"),
                format!("product = {}, sum = {}", product.render(), sum.render()),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::vpoly::VPoly;

    #[test]
    fn q_integers_unfold() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), QRat::one());
        assert_eq!(qint(3).render(), "1+q+q^2");
        assert_eq!(qint(7).limit_at_one().unwrap(), rat_int(7));
    }

    #[test]
    fn q_factorials_multiply_out() {
        assert!(qfactorial(0).is_one());
        assert!(qfactorial(1).is_one());
        // Independent oracle: expand (1+q)(1+q+q^2) directly over v.
        let two = VPoly::new(vec![rat_int(1), rat_int(0), rat_int(1)]);
        let three = VPoly::new(vec![
            rat_int(1),
            rat_int(0),
            rat_int(1),
            rat_int(0),
            rat_int(1),
        ]);
        let expected = QRat::from_poly(&two * &three);
        assert_eq!(qfactorial(3), expected);
        assert_eq!(qfactorial(3).render(), "1+2q+2q^2+q^3");
        assert_eq!(qfactorial(4).limit_at_one().unwrap(), rat_int(24));
    }

    #[test]
    fn binomials_match_the_factorial_ratio() {
        assert!(qbinomial(5, 0).is_one());
        assert_eq!(qbinomial(2, 1), qint(2));
        assert_eq!(qbinomial(4, 2).render(), "1+q+2q^2+q^3+q^4");
        for n in 0..=8u32 {
            for k in 0..=n {
                let ratio = qfactorial(n)
                    .div(&(&qfactorial(k) * &qfactorial(n - k)))
                    .unwrap();
                assert_eq!(qbinomial(n, k as i64), ratio, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn binomials_vanish_outside_the_triangle() {
        assert!(qbinomial(4, -1).is_zero());
        assert!(qbinomial(4, 5).is_zero());
        let t = QBinomTable::new(3);
        assert!(t.get(3, -2).is_zero());
        assert!(t.get(0, 1).is_zero());
    }

    #[test]
    fn pascal_rule_holds_for_stored_entries() {
        let t = QBinomTable::new(10);
        for n in 1..=10u32 {
            for k in 1..n as i64 {
                let expect = &t.get(n - 1, k - 1) + &(&t.get(n - 1, k) * &QRat::q_pow(k));
                assert_eq!(t.get(n, k), expect, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn binomial_symmetry_and_classical_limit() {
        let t = QBinomTable::new(12);
        // Classical Pascal triangle as the limit oracle.
        let mut classic = vec![vec![1i64]];
        for n in 1..=12usize {
            let prev = &classic[n - 1];
            let mut row = vec![1i64];
            for k in 1..n {
                row.push(prev[k - 1] + prev[k]);
            }
            row.push(1);
            classic.push(row);
        }
        for n in 0..=12u32 {
            for k in 0..=n {
                assert_eq!(t.get(n, k as i64), t.get(n, (n - k) as i64));
                assert_eq!(
                    t.get(n, k as i64).limit_at_one().unwrap(),
                    rat_int(classic[n as usize][k as usize]),
                );
            }
        }
    }

    #[test]
    fn factorial_inversion_relation() {
        // [n]_{1/q}! · q^{n(n−1)/2} = [n]_q!
        for n in 0..=10u32 {
            let lhs = &qfactorial(n).subst_qinv() * &QRat::q_pow(binom2(n));
            assert_eq!(lhs, qfactorial(n), "n={n}");
        }
    }

    #[test]
    fn pochhammer_products() {
        let a = QRat::from_int(-1);
        assert!(qpochhammer(&a, 0).is_one());
        // (1+1)(1+q) = 2(1+q)
        assert_eq!(qpochhammer(&a, 2).render(), "2+2q");
        // Each factor tends to 2 as q → 1.
        for n in 0..=8u32 {
            let scaled = qpochhammer(&a, n)
                .div(&QRat::from_int(2).pow(n))
                .unwrap();
            assert_eq!(scaled.limit_at_one().unwrap(), rat_int(1), "n={n}");
        }
    }

    #[test]
    fn gauss_identity_across_bases() {
        for a in [
            QRat::from_int(-1),
            QRat::q(),
            &QRat::from_int(2) * &QRat::q_pow(2),
        ] {
            let report = gauss_binomial_identity_check(&a, 8);
            assert!(report.all_passed(), "failed for a = {}:\n{}", a.render(), report.render_text());
            assert_eq!(report.items.len(), 9);
        }
    }
}
