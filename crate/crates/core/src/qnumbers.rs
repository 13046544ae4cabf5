//! Generalized Bernoulli, Euler, and Genocchi numbers and polynomials
//! attached to a coefficient family, plus the checkers that verify the
//! identities connecting them.
//!
//! With `ℰ(t)` the family's exponential series, the three kinds are the
//! factorial-weighted coefficients of
//!
//! ```text
//!   t/(ℰ(t)−1)        Bernoulli
//!   2/(ℰ(t)+1)        Euler
//!   2t/(ℰ(t)+1)       Genocchi
//! ```
//!
//! Numbers come from exact series inversion; univariate polynomials from
//! convolving the numbers with family weights (the coefficient of the
//! extra `ℰ(tx)` factor); two-variable polynomials from convolving once
//! more with `ℰ(ty)`. Each checker recomputes both sides of its identity
//! through routes that share as little code as possible, so agreement is
//! evidence and disagreement pinpoints a defect.

use crate::alpha::{inverse_condition_residuals, ratio_analyze, AlphaFamily};
use crate::classical;
use crate::qcore::{qfactorial, qint, QBinomTable};
use crate::qpoly::QPoly;
use crate::qrat::QRat;
use crate::rational::Rational;
use crate::report::{json_string, CheckClass, Report};
use crate::series::{unified_exp, unified_exp_shifted, Series};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberKind {
    Bernoulli,
    Euler,
    Genocchi,
}

impl NumberKind {
    pub const ALL: [NumberKind; 3] =
        [NumberKind::Bernoulli, NumberKind::Euler, NumberKind::Genocchi];

    pub fn as_str(self) -> &'static str {
        match self {
            NumberKind::Bernoulli => "bernoulli",
            NumberKind::Euler => "euler",
            NumberKind::Genocchi => "genocchi",
        }
    }

    pub fn latex_symbol(self) -> &'static str {
        match self {
            NumberKind::Bernoulli => "\\mathfrak{B}",
            NumberKind::Euler => "\\mathfrak{E}",
            NumberKind::Genocchi => "\\mathfrak{G}",
        }
    }

    fn classical_numbers(self, n_max: u32) -> Vec<Rational> {
        match self {
            NumberKind::Bernoulli => classical::bernoulli(n_max),
            NumberKind::Euler => classical::euler0(n_max),
            NumberKind::Genocchi => classical::genocchi(n_max),
        }
    }

    fn classical_poly(self, n: u32) -> Vec<Rational> {
        match self {
            NumberKind::Bernoulli => classical::bernoulli_poly(n),
            NumberKind::Euler => classical::euler_poly(n),
            NumberKind::Genocchi => classical::genocchi_poly(n),
        }
    }
}

/// Whether a polynomial is wanted in `x` alone or in `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyMode {
    Univariate,
    Bivariate,
}

/// An exact table of generalized numbers for one family.
#[derive(Clone, Debug, PartialEq)]
pub struct QNumberTable {
    kind: NumberKind,
    family: String,
    entries: Vec<QRat>,
}

impl QNumberTable {
    pub fn kind(&self) -> NumberKind {
        self.kind
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn n_max(&self) -> u32 {
        (self.entries.len() - 1) as u32
    }

    /// The entry at `n`; panics past the materialized horizon.
    pub fn get(&self, n: u32) -> &QRat {
        &self.entries[n as usize]
    }

    pub fn entries(&self) -> &[QRat] {
        &self.entries
    }

    /// The same table cut down to `n_max` entries. Values do not depend on
    /// how far the table was materialized, so truncation is exact.
    pub fn truncated(&self, n_max: u32) -> QNumberTable {
        QNumberTable {
            kind: self.kind,
            family: self.family.clone(),
            entries: self.entries[..=(n_max as usize).min(self.entries.len() - 1)].to_vec(),
        }
    }

    /// Versioned JSON with numerically ordered keys and canonical value
    /// strings; values parse back via [`crate::parse::parse_qrat`].
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"schema\":1,\"kind\":");
        out.push_str(&json_string(self.kind.as_str()));
        out.push_str(",\"family\":");
        out.push_str(&json_string(&self.family));
        out.push_str(",\"entries\":{");
        for (n, e) in self.entries.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{n}\":"));
            out.push_str(&json_string(&e.render()));
        }
        out.push_str("}}");
        out
    }

    /// A LaTeX `tabular` fragment of the table.
    pub fn to_latex(&self) -> String {
        let sym = self.kind.latex_symbol();
        let mut out = String::from("\\begin{tabular}{rl}\n");
        out.push_str(&format!("$n$ & ${sym}_n$ \\\\\n\\hline\n"));
        for (n, e) in self.entries.iter().enumerate() {
            out.push_str(&format!("${n}$ & ${}$ \\\\\n", e.latex()));
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

/// Coefficients (through `tⁿ/[n]_q!·[n]_q!⁻¹`, i.e. plain `tⁿ` basis of
/// the divided-power expansion) of the defining prefactor series of a
/// kind: `t/(ℰ−1)`, `2/(ℰ+1)`, or `2t/(ℰ+1)`.
fn prefactor(kind: NumberKind, fam: &AlphaFamily, n_max: u32) -> Result<Vec<QRat>> {
    match kind {
        NumberKind::Bernoulli => {
            let shifted = unified_exp_shifted(fam, n_max)?;
            if shifted.coeff(0).is_zero() {
                return Err(Error::AlphaOneZero);
            }
            Ok(shifted.invert()?.coeffs().to_vec())
        }
        NumberKind::Euler => {
            let plus_one = unified_exp(fam, n_max)?.add(&Series::one(n_max));
            let inv = plus_one.invert()?;
            let two = QRat::from_int(2);
            Ok(inv.coeffs().iter().map(|c| &two * c).collect())
        }
        NumberKind::Genocchi => {
            let mut coeffs = vec![QRat::zero()];
            if n_max > 0 {
                coeffs.extend(prefactor(NumberKind::Euler, fam, n_max - 1)?);
            }
            Ok(coeffs)
        }
    }
}

/// The number table of the requested kind: entry `n` is `[n]_q!` times
/// coefficient `n` of the defining prefactor series.
pub fn numbers(kind: NumberKind, fam: &AlphaFamily, n_max: u32) -> Result<QNumberTable> {
    let pref = prefactor(kind, fam, n_max)?;
    Ok(numbers_from(kind, fam.name(), &pref))
}

fn numbers_from(kind: NumberKind, family: &str, pref: &[QRat]) -> QNumberTable {
    let entries = pref
        .iter()
        .enumerate()
        .map(|(n, c)| &qfactorial(n as u32) * c)
        .collect();
    QNumberTable {
        kind,
        family: family.to_string(),
        entries,
    }
}

/// Generalized Bernoulli numbers from inverting `(ℰ(t)−1)/t`. Requires
/// `α(q,1) ≠ 0`, reported as `AlphaOneZero`.
pub fn bernoulli_numbers(fam: &AlphaFamily, n_max: u32) -> Result<QNumberTable> {
    numbers(NumberKind::Bernoulli, fam, n_max)
}

/// Generalized Euler numbers from `2/(ℰ(t)+1)`; always defined, since the
/// constant term of `ℰ+1` is `2`.
pub fn euler_numbers(fam: &AlphaFamily, n_max: u32) -> Result<QNumberTable> {
    numbers(NumberKind::Euler, fam, n_max)
}

/// Generalized Genocchi numbers from `2t/(ℰ(t)+1)`. The `t`-prefactor
/// shifts the doubled inverse series, which is the same arithmetic as the
/// shift identity `𝔊_n = [n]_q·𝔈_{n−1}`; both wirings are compared here
/// and must agree.
pub fn genocchi_numbers(fam: &AlphaFamily, n_max: u32) -> Result<QNumberTable> {
    let table = numbers(NumberKind::Genocchi, fam, n_max)?;
    if n_max > 0 {
        let euler = euler_numbers(fam, n_max - 1)?;
        for n in 1..=n_max {
            let via_shift = &qint(n) * euler.get(n - 1);
            debug_assert!(
                *table.get(n) == via_shift,
                "Genocchi routes disagree at n = {n}"
            );
        }
    }
    Ok(table)
}

/// The n-th q-addition power: the bivariate polynomial
///
/// ```text
///   (x ⊕_q y)ⁿ = Σ_{k=0}ⁿ C(n,k)_q · α(q,k) · α(q,n−k) · xᵏ y^{n−k}
/// ```
///
/// which is `[n]_q!` times the coefficient of `tⁿ` in `ℰ(tx)·ℰ(ty)` — the
/// quantity the addition theorems consume. (A single weight `α(q,k)`
/// without the `α(q,n−k)` partner would not reproduce that product for
/// families whose entries differ from 1; the checker below compares
/// against the product expansion directly.) The minus variant substitutes
/// `−y` for `y`.
pub fn q_add_pow(n: u32, sign: AddSign, fam: &AlphaFamily) -> Result<QPoly> {
    let alphas = fam.prefix(n)?;
    let table = QBinomTable::new(n);
    let mut rows = Vec::with_capacity(n as usize + 1);
    for k in (0..=n).rev() {
        // Row index j = n − k is the y-exponent.
        let j = n - k;
        let mut c = &table.get(n, k as i64) * &(&alphas[k as usize] * &alphas[j as usize]);
        if sign == AddSign::Minus && j % 2 == 1 {
            c = -c;
        }
        rows.push(
            std::iter::repeat_with(QRat::zero)
                .take(k as usize)
                .chain(std::iter::once(c))
                .collect(),
        );
    }
    Ok(QPoly::from_rows(rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddSign {
    Plus,
    Minus,
}

/// All polynomials of a kind through `n_max`, univariate
/// `P_n(x) = Σ_k C(n,k)_q·α(q,n−k)·number_k·x^{n−k}` or bivariate
/// `P_n(x,y) = Σ_k C(n,k)_q·α(q,n−k)·P_k(x)·y^{n−k}`.
pub fn polys(
    kind: NumberKind,
    fam: &AlphaFamily,
    n_max: u32,
    mode: PolyMode,
) -> Result<Vec<QPoly>> {
    let table = numbers(kind, fam, n_max)?;
    let alphas = fam.prefix(n_max)?;
    let binoms = QBinomTable::new(n_max);
    let uni = univariate_from(&table, &alphas, &binoms, n_max);
    Ok(match mode {
        PolyMode::Univariate => uni,
        PolyMode::Bivariate => bivariate_from(&uni, &alphas, &binoms),
    })
}

/// Univariate polynomials through `n_max` from an existing number table;
/// the checkers use this to build several views of one table without
/// re-deriving the numbers each time.
fn univariate_from(
    table: &QNumberTable,
    alphas: &[QRat],
    binoms: &QBinomTable,
    n_max: u32,
) -> Vec<QPoly> {
    debug_assert!(n_max <= table.n_max());
    let mut uni = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut p = QPoly::zero();
        for k in 0..=n {
            let c = &binoms.get(n, k as i64)
                * &(&alphas[(n - k) as usize] * table.get(k));
            p = &p + &QPoly::monomial(c, (n - k) as usize, 0);
        }
        uni.push(p);
    }
    uni
}

/// Bivariate polynomials built over an existing univariate prefix (one
/// entry per order, starting at 0).
fn bivariate_from(uni: &[QPoly], alphas: &[QRat], binoms: &QBinomTable) -> Vec<QPoly> {
    let mut biv = Vec::with_capacity(uni.len());
    for n in 0..uni.len() {
        let mut p = QPoly::zero();
        for k in 0..=n {
            let c = &binoms.get(n as u32, k as i64) * &alphas[n - k];
            let term = uni[k].scale(&c).mul_y_power(n - k);
            p = &p + &term;
        }
        biv.push(p);
    }
    biv
}

/// The polynomial `𝔅`-analog of order `n` for the family.
pub fn bernoulli_poly(fam: &AlphaFamily, n: u32, mode: PolyMode) -> Result<QPoly> {
    Ok(polys(NumberKind::Bernoulli, fam, n, mode)?.pop().expect("n-th entry"))
}

/// The polynomial `𝔈`-analog of order `n` for the family.
pub fn euler_poly(fam: &AlphaFamily, n: u32, mode: PolyMode) -> Result<QPoly> {
    Ok(polys(NumberKind::Euler, fam, n, mode)?.pop().expect("n-th entry"))
}

/// The polynomial `𝔊`-analog of order `n` for the family.
pub fn genocchi_poly(fam: &AlphaFamily, n: u32, mode: PolyMode) -> Result<QPoly> {
    Ok(polys(NumberKind::Genocchi, fam, n, mode)?.pop().expect("n-th entry"))
}

/// Termwise q-derivative in `x` (`xⁿ ↦ [n]_q·x^{n−1}`), `y` held fixed.
pub fn poly_qderivative(p: &QPoly) -> QPoly {
    p.qderive_x()
}

/// Convolution of coefficient vectors of truncated series, one scalar and
/// one polynomial-valued: `out[n] = Σ_{i+j=n} a_i·b_j`.
fn convolve_scalar(a: &[QRat], b: &[QPoly]) -> Vec<QPoly> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            let mut acc = QPoly::zero();
            for (i, ai) in a.iter().enumerate().take(n + 1) {
                if ai.is_zero() {
                    continue;
                }
                acc = &acc + &b[n - i].scale(ai);
            }
            acc
        })
        .collect()
}

/// Convolution of two polynomial-valued coefficient vectors.
fn convolve(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            let mut acc = QPoly::zero();
            for (i, ai) in a.iter().enumerate().take(n + 1) {
                acc = &acc + &(ai * &b[n - i]);
            }
            acc
        })
        .collect()
}

/// The coefficient vector of `ℰ(t·var)`: entry `n` is `α_n·varⁿ/[n]_q!`.
fn exp_of_variable(fam: &AlphaFamily, n_max: u32, y: bool) -> Result<Vec<QPoly>> {
    let alphas = fam.prefix(n_max)?;
    (0..=n_max as usize)
        .map(|n| {
            let c = alphas[n].div(&qfactorial(n as u32))?;
            let (i, j) = if y { (0, n) } else { (n, 0) };
            Ok(QPoly::monomial(c, i, j))
        })
        .collect()
}

/// Verify the addition theorems for every kind through `n_max`:
///
/// 1. the two-variable polynomial built by convolving univariate
///    polynomials with `y`-weights equals `[n]_q!` times coefficient `n`
///    of the direct series product `prefactor·ℰ(tx)·ℰ(ty)`;
/// 2. the expansion `Σ_k C(n,k)_q·number_k·(x⊕_q y)^{n−k}` over
///    q-addition powers equals the same product coefficient;
/// 3. restricting to `y = 0` reproduces the univariate polynomial;
/// 4. at `y = 1` the two-variable polynomial collapses onto
///    `Σ_k C(n,k)_q·α(q,n−k)·P_k(x)`, the q-analog of the classical
///    `P_n(x+1) = Σ C(n,k)·P_k(x)`.
pub fn addition_theorem_check(fam: &AlphaFamily, n_max: u32) -> Result<Report> {
    let mut report = Report::new(
        format!("addition theorems for family {}", fam.name()),
        CheckClass::Identity,
    );
    report.note(format!("orders 0..={n_max}, three kinds, four routes"));
    let expx = exp_of_variable(fam, n_max, false)?;
    let expy = exp_of_variable(fam, n_max, true)?;
    let alphas = fam.prefix(n_max)?;
    let binoms = QBinomTable::new(n_max);
    let add_pows: Vec<QPoly> = (0..=n_max)
        .map(|m| q_add_pow(m, AddSign::Plus, fam))
        .collect::<Result<_>>()?;
    for kind in NumberKind::ALL {
        let pref = prefactor(kind, fam, n_max)?;
        let table = numbers_from(kind, fam.name(), &pref);
        let uni = univariate_from(&table, &alphas, &binoms, n_max);
        let biv = bivariate_from(&uni, &alphas, &binoms);
        let direct = convolve(&convolve_scalar(&pref, &expx), &expy);
        for n in 0..=n_max {
            let product_n = direct[n as usize].scale(&qfactorial(n));
            let mut via_add = QPoly::zero();
            for k in 0..=n {
                let c = &binoms.get(n, k as i64) * table.get(k);
                via_add = &via_add + &add_pows[(n - k) as usize].scale(&c);
            }
            let mut at_one = QPoly::zero();
            for k in 0..=n {
                let c = &binoms.get(n, k as i64) * &alphas[(n - k) as usize];
                at_one = &at_one + &uni[k as usize].scale(&c);
            }
            let name = kind.as_str();
            compare(
                &mut report,
                format!("{name} n={n}: q-addition expansion vs series product"),
                &via_add,
                &product_n,
            );
            compare(
                &mut report,
                format!("{name} n={n}: y-weighted convolution vs series product"),
                &biv[n as usize],
                &product_n,
            );
            compare(
                &mut report,
                format!("{name} n={n}: restriction to y=0 vs one-variable form"),
                &biv[n as usize].at_y_zero(),
                &uni[n as usize],
            );
            compare(
                &mut report,
                format!("{name} n={n}: value at y=1 vs shifted-argument sum"),
                &biv[n as usize].eval_y(&QRat::one()),
                &at_one,
            );
        }
    }
    Ok(report)
}

fn compare(report: &mut Report, label: String, left: &QPoly, right: &QPoly) {
    if left == right {
        report.pass(label);
    } else {
        report.fail(
            label,
            format!("left = {} ; right = {}", left.render(), right.render()),
        );
    }
}

/// Check that odd-index Bernoulli-kind numbers above 1 vanish and that
/// the first equals `−1/2`, under the hypothesis that the family
/// satisfies the inverse condition (`ℰ(−z)·ℰ(z) = 1` residuals all zero
/// through `n_max`) with `α(q,1) = 1`. A family that fails the
/// hypothesis gets a not-applicable verdict, not a violation.
pub fn odd_vanishing_check(fam: &AlphaFamily, n_max: u32) -> Result<Report> {
    let mut report = Report::new(
        format!("odd Bernoulli-kind vanishing for family {}", fam.name()),
        CheckClass::Identity,
    );
    let hypothesis_broken = if fam.alpha(1)?.is_one() {
        inverse_condition_residuals(fam, n_max)?
            .iter()
            .enumerate()
            .find(|(_, r)| !r.is_zero())
            .map(|(i, r)| format!("inverse-condition residual r_{} = {}", i + 1, r.render()))
    } else {
        Some(format!("α(q,1) = {} ≠ 1", fam.alpha(1)?.render()))
    };
    if let Some(why) = hypothesis_broken {
        report.note(format!("hypothesis fails: {why}"));
        report.not_applicable("hypothesis: inverse condition with α(q,1) = 1", why);
        return Ok(report);
    }
    report.note("hypothesis holds: residuals vanish and α(q,1) = 1");
    let table = bernoulli_numbers(fam, n_max)?;
    if n_max >= 1 {
        let minus_half = QRat::from_rational(crate::rational::rat(-1, 2));
        if *table.get(1) == minus_half {
            report.pass("n=1: value is -1/2");
        } else {
            report.fail("n=1: value is -1/2", table.get(1).render());
        }
    }
    let mut n = 3;
    while n <= n_max {
        if table.get(n).is_zero() {
            report.pass(format!("n={n}: value vanishes"));
        } else {
            report.fail(format!("n={n}: value vanishes"), table.get(n).render());
        }
        n += 2;
    }
    Ok(report)
}

/// Verify the q-derivative identity
/// `D_{q,x} P_n(x) = [n]_q·Σ_k a_k·P_{n−1}(qᵏx)` for all three kinds,
/// where the `a_k` are the family's ratio-form coefficients
/// (`α(q,n+1)/α(q,n) = Σ_k a_k·(qⁿ)ᵏ`). Families without that form get a
/// not-applicable verdict.
pub fn poly_derivative_identity_check(fam: &AlphaFamily, n_max: u32) -> Result<Report> {
    let mut report = Report::new(
        format!("polynomial q-derivative identity for family {}", fam.name()),
        CheckClass::Identity,
    );
    let form = match ratio_analyze(fam, n_max.max(8) + 2) {
        Ok(form) => form,
        Err(Error::NotOfThisForm) => {
            report.not_applicable(
                "ratio form",
                "consecutive-entry ratios are not polynomial in qⁿ over the probed range",
            );
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.note(format!("ratio form: {}", form.render()));
    let alphas = fam.prefix(n_max)?;
    let binoms = QBinomTable::new(n_max);
    for kind in NumberKind::ALL {
        let table = numbers(kind, fam, n_max)?;
        let uni = univariate_from(&table, &alphas, &binoms, n_max);
        for n in 1..=n_max as usize {
            let lhs = uni[n].qderive_x();
            let mut rhs = QPoly::zero();
            for (k, a) in form.coeffs() {
                rhs = &rhs + &uni[n - 1].scale_x(&QRat::q_pow(*k as i64)).scale(a);
            }
            rhs = rhs.scale(&qint(n as u32));
            compare(
                &mut report,
                format!("{} n={n}: q-derivative vs scaled-argument sum", kind.as_str()),
                &lhs,
                &rhs,
            );
        }
    }
    Ok(report)
}

/// Compare `q → 1⁻` limits of numbers (through `n_max`), univariate
/// polynomials (through `min(n_max, 8)`), and two-variable polynomials
/// (through `min(n_max, 6)`, against the classical `P_n(x+y)` expansion)
/// with the classical oracles. A pole at `q = 1` is a reported failure.
pub fn classical_limit_check(fam: &AlphaFamily, n_max: u32) -> Result<Report> {
    let mut report = Report::new(
        format!("classical limits for family {}", fam.name()),
        CheckClass::Identity,
    );
    let poly_max = n_max.min(8);
    let biv_max = n_max.min(6);
    report.note(format!(
        "numbers to {n_max}, polynomials to {poly_max}, two-variable to {biv_max}"
    ));
    let alphas = fam.prefix(n_max)?;
    let binoms = QBinomTable::new(n_max);
    for kind in NumberKind::ALL {
        let name = kind.as_str();
        let table = numbers(kind, fam, n_max)?;
        let oracle = kind.classical_numbers(n_max);
        for n in 0..=n_max {
            let label = format!("{name} number n={n}");
            match table.get(n).limit_at_one() {
                Ok(l) if l == oracle[n as usize] => report.pass(label),
                Ok(l) => report.fail(label, format!("limit {l}, classical {}", oracle[n as usize])),
                Err(_) => report.fail(label, format!("pole at q=1 in {}", table.get(n).render())),
            }
        }
        let uni = univariate_from(&table, &alphas, &binoms, poly_max);
        for n in 0..=poly_max {
            let label = format!("{name} polynomial n={n}");
            let classical_rows = single_row(kind.classical_poly(n));
            match uni[n as usize].limit_at_one() {
                Ok(rows) if rows == classical_rows => report.pass(label),
                Ok(rows) => report.fail(label, format!("limit {rows:?}, classical {classical_rows:?}")),
                Err(_) => report.fail(label, "pole at q=1 in a coefficient".to_string()),
            }
        }
        let biv = bivariate_from(&uni[..=biv_max as usize], &alphas, &binoms);
        for n in 0..=biv_max {
            let label = format!("{name} two-variable polynomial n={n}");
            let expanded = classical::poly_sum_expand(&kind.classical_poly(n));
            match biv[n as usize].limit_at_one() {
                Ok(rows) if rows == expanded => report.pass(label),
                Ok(rows) => report.fail(label, format!("limit {rows:?}, classical {expanded:?}")),
                Err(_) => report.fail(label, "pole at q=1 in a coefficient".to_string()),
            }
        }
    }
    Ok(report)
}

fn single_row(coeffs: Vec<Rational>) -> Vec<Vec<Rational>> {
    if coeffs.is_empty() {
        Vec::new()
    } else {
        vec![coeffs]
    }
}
