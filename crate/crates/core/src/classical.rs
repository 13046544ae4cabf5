//! Classical Bernoulli, Euler, and Genocchi values over plain rationals.
//!
//! Everything here is computed from the convolution recurrences that the
//! generating functions `t/(eᵗ−1)`, `2/(eᵗ+1)`, and `2t/(eᵗ+1)` impose,
//! with ordinary integer binomials and no q machinery at all. That makes
//! this module an independent oracle for the `q → 1` limits produced
//! elsewhere: agreement is evidence, not circularity.
//!
//! The Euler sequence here is `E_n(0)` — the polynomial values at zero,
//! which is what `2/(eᵗ+1)` generates — not the integer secant numbers
//! `E_n = 2ⁿE_n(1/2)`.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::rational::{rat_int, Rational};

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Bernoulli numbers `B_0..=B_{n_max}` (with `B_1 = −1/2`), from
/// `Σ_{k=0}^{n−1} C(n+1,k)·B_k = 0` for `n ≥ 1` solved for `B_n`.
pub fn bernoulli(n_max: u32) -> Vec<Rational> {
    let mut b = vec![rat_int(1)];
    for n in 1..=n_max as usize {
        let mut sum = Rational::new(BigInt::from(0), BigInt::from(1));
        for (k, bk) in b.iter().enumerate() {
            sum += binom(n + 1, k) * bk;
        }
        b.push(-sum / rat_int(n as i64 + 1));
    }
    b
}

/// Euler polynomial values at zero, `E_0(0)..=E_{n_max}(0)`, from the
/// recurrence `Σ_{k=0}ⁿ C(n,k)·E_k(0) + E_n(0) = 2·[n=0]`.
pub fn euler0(n_max: u32) -> Vec<Rational> {
    let mut e = vec![rat_int(1)];
    for n in 1..=n_max as usize {
        let mut sum = Rational::new(BigInt::from(0), BigInt::from(1));
        for (k, ek) in e.iter().enumerate() {
            sum += binom(n, k) * ek;
        }
        e.push(-sum / rat_int(2));
    }
    e
}

/// Genocchi numbers `G_0..=G_{n_max}`: the `t`-prefactor in `2t/(eᵗ+1)`
/// shifts the Euler sequence, `G_n = n·E_{n−1}(0)` with `G_0 = 0`.
pub fn genocchi(n_max: u32) -> Vec<Rational> {
    let mut g = vec![rat_int(0)];
    if n_max > 0 {
        let e = euler0(n_max - 1);
        for n in 1..=n_max as usize {
            g.push(rat_int(n as i64) * &e[n - 1]);
        }
    }
    g
}

/// Ascending coefficients of the Bernoulli polynomial
/// `B_n(x) = Σ_k C(n,k)·B_k·x^{n−k}`, trailing zeros trimmed.
pub fn bernoulli_poly(n: u32) -> Vec<Rational> {
    number_poly(&bernoulli(n))
}

/// Ascending coefficients of the Euler polynomial
/// `E_n(x) = Σ_k C(n,k)·E_k(0)·x^{n−k}`.
pub fn euler_poly(n: u32) -> Vec<Rational> {
    number_poly(&euler0(n))
}

/// Ascending coefficients of the Genocchi polynomial
/// `G_n(x) = Σ_k C(n,k)·G_k·x^{n−k}`.
pub fn genocchi_poly(n: u32) -> Vec<Rational> {
    number_poly(&genocchi(n))
}

fn number_poly(numbers: &[Rational]) -> Vec<Rational> {
    let n = numbers.len() - 1;
    let mut coeffs: Vec<Rational> = (0..=n)
        .map(|i| binom(n, i) * &numbers[n - i])
        .collect();
    while coeffs.last().map(|c| c == &rat_int(0)) == Some(true) {
        coeffs.pop();
    }
    coeffs
}

/// Expand `p(x+y)` for a univariate `p` given by ascending coefficients:
/// `rows[j][i]` is the coefficient of `xⁱyʲ`, rows trimmed the same way
/// [`crate::qpoly::QPoly::limit_at_one`] trims, so the two are directly
/// comparable.
pub fn poly_sum_expand(p: &[Rational]) -> Vec<Vec<Rational>> {
    let height = p.len();
    let mut rows = vec![vec![]; height];
    for (j, row) in rows.iter_mut().enumerate() {
        for m in j..p.len() {
            row.push(binom(m, j) * &p[m]);
        }
    }
    for row in &mut rows {
        while row.last().map(|c| c == &rat_int(0)) == Some(true) {
            row.pop();
        }
    }
    while rows.last().map(Vec::is_empty) == Some(true) {
        rows.pop();
    }
    rows
}
