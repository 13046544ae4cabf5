//! Weight families α(q,n) for the unified exponential.
//!
//! A family assigns each index `n` a coefficient `α(q,n)` subject to two
//! normalizations: `α(q,0) = 1` and every entry tends to 1 as `q → 1⁻`
//! (so the classical exponential is the common limit). Four built-in
//! families cover the standard q-exponentials:
//!
//! * `ones` — `α_n = 1`
//! * `gauss` — `α_n = q^{n(n−1)/2}`
//! * `improved` — `α_n = (−1;q)_n / 2ⁿ`
//! * `half_gauss` — `α_n = q^{n(n−1)/4} = v^{n(n−1)/2}`
//!
//! Beyond the builtins, families arise from finite tables, closures, the
//! β-transform of another family, or the recursive solver
//! [`solve_alpha_system`] that fills in even entries from prescribed odd
//! ones so the exponential satisfies `E(−z)·E(z) = 1`.
//!
//! Entries materialize lazily into a per-family cache; every materialized
//! entry is checked against the `q → 1` normalization, so an inconsistent
//! custom family fails loudly at first use rather than corrupting a
//! downstream table.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::qcore::{binom2, qpochhammer, QBinomTable};
use crate::qrat::QRat;
use crate::rational::Rational;
use crate::report::{json_string, CheckClass, Report};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Builtin,
    Custom,
    Solver,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Builtin => "builtin",
            Provenance::Custom => "custom-closed-form",
            Provenance::Solver => "solver",
        }
    }

    fn from_str(s: &str) -> Option<Self> {
        match s {
            "builtin" => Some(Provenance::Builtin),
            "custom-closed-form" => Some(Provenance::Custom),
            "solver" => Some(Provenance::Solver),
            _ => None,
        }
    }
}

enum Gen {
    Ones,
    Gauss,
    Improved,
    HalfGauss,
    Table(Vec<QRat>),
    Closed(Box<dyn Fn(u32) -> QRat + Send + Sync>),
    Beta(AlphaFamily),
}

struct Inner {
    name: String,
    provenance: Provenance,
    gen: Gen,
    cache: Mutex<Vec<Option<QRat>>>,
}

/// A weight family. Cheap to clone (shared handle); entries are cached
/// after first materialization and safe to read from multiple threads.
#[derive(Clone)]
pub struct AlphaFamily {
    inner: Arc<Inner>,
}

/// The β-transform of a family is itself a family; the alias keeps
/// signatures honest about which side of the transform they live on.
pub type BetaFamily = AlphaFamily;

impl fmt::Debug for AlphaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphaFamily")
            .field("name", &self.inner.name)
            .field("provenance", &self.inner.provenance.as_str())
            .finish()
    }
}

/// Look up one of the built-in families by name.
pub fn builtin_family(name: &str) -> Result<AlphaFamily> {
    let gen = match name {
        "ones" => Gen::Ones,
        "gauss" => Gen::Gauss,
        "improved" => Gen::Improved,
        "half_gauss" => Gen::HalfGauss,
        _ => return Err(Error::UnknownFamily(name.to_string())),
    };
    Ok(AlphaFamily::new(name, Provenance::Builtin, gen))
}

pub fn builtin_names() -> [&'static str; 4] {
    ["ones", "gauss", "improved", "half_gauss"]
}

impl AlphaFamily {
    fn new(name: &str, provenance: Provenance, gen: Gen) -> Self {
        AlphaFamily {
            inner: Arc::new(Inner {
                name: name.to_string(),
                provenance,
                gen,
                cache: Mutex::new(Vec::new()),
            }),
        }
    }

    /// A family given by an explicit finite table `entries[n] = α_n`.
    /// Indices past the table raise `IndexBeyondTable`. The table is
    /// validated up front: `α_0 = 1` and every entry has limit 1 at `q = 1`.
    pub fn from_table(name: &str, entries: Vec<QRat>) -> Result<Self> {
        if entries.first().map(QRat::is_one) != Some(true) {
            return Err(Error::InconsistentInput {
                detail: format!("family {name:?}: α_0 must be 1"),
            });
        }
        for (n, e) in entries.iter().enumerate() {
            check_limit_one(name, n as u32, e)?;
        }
        Ok(AlphaFamily::new(name, Provenance::Custom, Gen::Table(entries)))
    }

    /// A family from a closed-form generator. `α_0` is checked now; other
    /// entries are checked as they materialize.
    pub fn from_fn(
        name: &str,
        f: impl Fn(u32) -> QRat + Send + Sync + 'static,
    ) -> Result<Self> {
        if !f(0).is_one() {
            return Err(Error::InconsistentInput {
                detail: format!("family {name:?}: α_0 must be 1"),
            });
        }
        Ok(AlphaFamily::new(name, Provenance::Custom, Gen::Closed(Box::new(f))))
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn provenance(&self) -> Provenance {
        self.inner.provenance
    }

    /// For table-backed families, the largest stored index.
    pub fn table_horizon(&self) -> Option<u32> {
        match &self.inner.gen {
            Gen::Table(t) => Some((t.len() - 1) as u32),
            _ => None,
        }
    }

    /// `α(q,n)`, materializing and caching it on first access.
    pub fn alpha(&self, n: u32) -> Result<QRat> {
        {
            let cache = self.inner.cache.lock().unwrap();
            if let Some(Some(v)) = cache.get(n as usize) {
                return Ok(v.clone());
            }
        }
        let value = self.compute(n)?;
        check_limit_one(&self.inner.name, n, &value)?;
        let mut cache = self.inner.cache.lock().unwrap();
        if cache.len() <= n as usize {
            cache.resize(n as usize + 1, None);
        }
        cache[n as usize] = Some(value.clone());
        Ok(value)
    }

    fn compute(&self, n: u32) -> Result<QRat> {
        match &self.inner.gen {
            Gen::Ones => Ok(QRat::one()),
            Gen::Gauss => Ok(QRat::q_pow(binom2(n))),
            Gen::HalfGauss => Ok(QRat::v_pow(binom2(n))),
            Gen::Improved => qpochhammer(&QRat::from_int(-1), n)
                .div(&QRat::from_int(2).pow(n)),
            Gen::Table(t) => t.get(n as usize).cloned().ok_or(Error::IndexBeyondTable {
                n,
                horizon: (t.len() - 1) as u32,
            }),
            Gen::Closed(f) => Ok(f(n)),
            Gen::Beta(src) => {
                let a = src.alpha(n)?;
                Ok(&QRat::q_pow(binom2(n)) * &a.subst_qinv())
            }
        }
    }

    /// `α_0 … α_{n_max}` in one call.
    pub fn prefix(&self, n_max: u32) -> Result<Vec<QRat>> {
        (0..=n_max).map(|n| self.alpha(n)).collect()
    }

    /// `α_n` evaluated at `v = v0` for `n = 0..=n_max`, without building
    /// symbolic entries. The built-in families multiply up their defining
    /// products directly in rational arithmetic, which is what makes
    /// large-index numeric probes (radius estimation) feasible.
    pub fn eval_prefix(&self, v0: &Rational, n_max: u32) -> Result<Vec<Rational>> {
        let q0 = v0 * v0;
        let mut out = Vec::with_capacity(n_max as usize + 1);
        match &self.inner.gen {
            Gen::Ones => {
                out.resize(n_max as usize + 1, Rational::one());
            }
            Gen::Gauss => {
                // α_{n+1} = α_n · q0^n
                let mut cur = Rational::one();
                let mut step = Rational::one(); // q0^n
                for _ in 0..=n_max {
                    out.push(cur.clone());
                    cur *= &step;
                    step *= &q0;
                }
            }
            Gen::HalfGauss => {
                let mut cur = Rational::one();
                let mut step = Rational::one(); // v0^n
                for _ in 0..=n_max {
                    out.push(cur.clone());
                    cur *= &step;
                    step *= v0;
                }
            }
            Gen::Improved => {
                // α_{n+1} = α_n · (1 + q0^n)/2
                let mut cur = Rational::one();
                let mut pow = Rational::one(); // q0^n
                let two = Rational::from_integer(2.into());
                for _ in 0..=n_max {
                    out.push(cur.clone());
                    cur *= (Rational::one() + &pow) / &two;
                    pow *= &q0;
                }
            }
            _ => {
                for n in 0..=n_max {
                    out.push(self.alpha(n)?.eval(v0)?);
                }
            }
        }
        Ok(out)
    }

    /// Consecutive ratios `α_{n+1}(v0) / α_n(v0)` for `n = 0..count`.
    ///
    /// The built-in families have small closed-form ratios, so this stays
    /// cheap even deep into the sequence, where the values themselves have
    /// tens of thousands of digits. Reports the first vanishing entry
    /// (`n ≥ 1`, up to `count` itself) as [`Error::ZeroAlpha`].
    pub fn eval_ratios(&self, v0: &Rational, count: u32) -> Result<Vec<Rational>> {
        let q0 = v0 * v0;
        let mut out = Vec::with_capacity(count as usize);
        match &self.inner.gen {
            Gen::Ones => {
                out.resize(count as usize, Rational::one());
            }
            Gen::Gauss => {
                let mut pow = Rational::one(); // q0^n
                for _ in 0..count {
                    out.push(pow.clone());
                    pow *= &q0;
                }
            }
            Gen::HalfGauss => {
                let mut pow = Rational::one(); // v0^n
                for _ in 0..count {
                    out.push(pow.clone());
                    pow *= v0;
                }
            }
            Gen::Improved => {
                let mut pow = Rational::one(); // q0^n
                let two = Rational::from_integer(2.into());
                for _ in 0..count {
                    out.push((Rational::one() + &pow) / &two);
                    pow *= &q0;
                }
            }
            _ => {
                let alphas = self.eval_prefix(v0, count)?;
                for (n, a) in alphas.iter().enumerate().skip(1) {
                    if a.is_zero() {
                        return Err(Error::ZeroAlpha { n: n as u32 });
                    }
                }
                for n in 0..count as usize {
                    out.push(&alphas[n + 1] / &alphas[n]);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise equality of two families up to an index.
    pub fn eq_up_to(&self, other: &AlphaFamily, n_max: u32) -> Result<bool> {
        for n in 0..=n_max {
            if self.alpha(n)? != other.alpha(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serialize entries `0..=n_max` as a versioned JSON document with
    /// numerically ordered keys. Round-trips exactly through [`family_from_json`].
    pub fn to_json(&self, n_max: u32) -> Result<String> {
        let mut out = String::new();
        out.push_str("{\"schema\":1,\"name\":");
        out.push_str(&json_string(&self.inner.name));
        out.push_str(",\"provenance\":");
        out.push_str(&json_string(self.inner.provenance.as_str()));
        out.push_str(",\"entries\":{");
        for n in 0..=n_max {
            if n > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{n}\":"));
            out.push_str(&json_string(&self.alpha(n)?.render()));
        }
        out.push_str("}}");
        Ok(out)
    }
}

/// Check the `q → 1⁻` normalization for one entry.
fn check_limit_one(name: &str, n: u32, value: &QRat) -> Result<()> {
    match value.limit_at_one() {
        Ok(l) if l.is_one() => Ok(()),
        Ok(l) => Err(Error::InconsistentInput {
            detail: format!(
                "family {name:?}: α_{n} = {} has limit {} at q=1, expected 1",
                value.render(),
                l
            ),
        }),
        Err(_) => Err(Error::InconsistentInput {
            detail: format!(
                "family {name:?}: α_{n} = {} has a pole at q=1",
                value.render()
            ),
        }),
    }
}

/// Deserialize a family written by [`AlphaFamily::to_json`]. The result is
/// table-backed: indices beyond the stored horizon raise `IndexBeyondTable`.
pub fn family_from_json(text: &str) -> Result<AlphaFamily> {
    let bad = |detail: String| Error::Parse { detail };
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| bad(format!("family document is not valid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| bad("family document must be a JSON object".into()))?;
    match obj.get("schema").and_then(serde_json::Value::as_u64) {
        Some(1) => {}
        other => {
            return Err(bad(format!(
                "unsupported family schema {other:?} (expected 1)"
            )))
        }
    }
    let name = obj
        .get("name")
        .and_then(serde_json::Value::as_str)
        .ok_or_else(|| bad("family document needs a string \"name\"".into()))?;
    let provenance = obj
        .get("provenance")
        .and_then(serde_json::Value::as_str)
        .and_then(Provenance::from_str)
        .ok_or_else(|| {
            bad("family document needs a \"provenance\" of builtin, custom-closed-form, or solver"
                .into())
        })?;
    let entries = obj
        .get("entries")
        .and_then(serde_json::Value::as_object)
        .ok_or_else(|| bad("family document needs an \"entries\" object".into()))?;
    let mut by_index = BTreeMap::new();
    for (k, val) in entries {
        let n: u32 = k
            .parse()
            .map_err(|_| bad(format!("entry key {k:?} is not an index")))?;
        let s = val
            .as_str()
            .ok_or_else(|| bad(format!("entry {k} must be a string")))?;
        by_index.insert(n, crate::parse::parse_qrat(s)?);
    }
    let horizon = match by_index.last_key_value() {
        Some((&max, _)) => max,
        None => {
            return Err(Error::InconsistentInput {
                detail: format!("family {name:?}: no entries"),
            })
        }
    };
    let mut table = Vec::with_capacity(horizon as usize + 1);
    for n in 0..=horizon {
        match by_index.remove(&n) {
            Some(e) => table.push(e),
            None => {
                return Err(Error::InconsistentInput {
                    detail: format!("family {name:?}: entries skip index {n}"),
                })
            }
        }
    }
    if !table[0].is_one() {
        return Err(Error::InconsistentInput {
            detail: format!("family {name:?}: α_0 must be 1"),
        });
    }
    for (n, e) in table.iter().enumerate() {
        check_limit_one(name, n as u32, e)?;
    }
    Ok(AlphaFamily::new(name, provenance, Gen::Table(table)))
}

/// Test `q^{n(n−1)/2} · α(q⁻¹,n) = α(q,n)` for each `n ≤ n_max` — the
/// condition under which the family's exponential is invariant under
/// `q ↔ q⁻¹`. This is a property a family has or lacks, not a theorem.
pub fn symmetry_check(fam: &AlphaFamily, n_max: u32) -> Result<Report> {
    let mut report = Report::new(
        format!("q-inversion symmetry of {}", fam.name()),
        CheckClass::Property,
    );
    for n in 0..=n_max {
        let alpha = fam.alpha(n)?;
        let lhs = &QRat::q_pow(binom2(n)) * &alpha.subst_qinv();
        if lhs == alpha {
            report.pass(format!("n={n}"));
        } else {
            report.fail(
                format!("n={n}"),
                format!(
                    "q^(n(n-1)/2)·α(1/q,n) = {}, α(q,n) = {}",
                    lhs.render(),
                    alpha.render()
                ),
            );
        }
    }
    Ok(report)
}

/// The transformed family `β(q,n) = q^{n(n−1)/2} · α(q⁻¹,n)`. Applying it
/// twice returns to the original entries; a family equals its own
/// β-transform exactly when [`symmetry_check`] passes.
pub fn beta_transform(fam: &AlphaFamily) -> BetaFamily {
    AlphaFamily::new(
        &format!("beta({})", fam.name()),
        fam.provenance(),
        Gen::Beta(fam.clone()),
    )
}

/// Residuals `r_n = Σ_{k=0}ⁿ C(n,k)_q (−1)ᵏ α_k α_{n−k}` for `n = 1..=n_max`.
/// The family's exponential satisfies `E(−z)·E(z) = 1` to order `n_max`
/// exactly when all residuals vanish; odd `n` vanish identically because
/// the summand is antisymmetric under `k ↦ n−k`.
pub fn inverse_condition_residuals(fam: &AlphaFamily, n_max: u32) -> Result<Vec<QRat>> {
    let alphas = fam.prefix(n_max)?;
    let table = QBinomTable::new(n_max);
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let mut r = QRat::zero();
        for k in 0..=n {
            let mut term = &table.get(n, k as i64)
                * &(&alphas[k as usize] * &alphas[(n - k) as usize]);
            if k % 2 == 1 {
                term = -term;
            }
            r = &r + &term;
        }
        out.push(r);
    }
    Ok(out)
}

/// Report form of [`inverse_condition_residuals`]: one item per `n`.
pub fn inverse_condition_check(fam: &AlphaFamily, n_max: u32) -> Result<Report> {
    let mut report = Report::new(
        format!("multiplicative inverse condition for {}", fam.name()),
        CheckClass::Property,
    );
    for (i, r) in inverse_condition_residuals(fam, n_max)?.iter().enumerate() {
        let n = i + 1;
        if r.is_zero() {
            report.pass(format!("n={n}"));
        } else {
            report.fail(format!("n={n}"), format!("r_{n} = {}", r.render()));
        }
    }
    Ok(report)
}

/// Solve for the even entries given the odd ones, so that the inverse
/// condition holds through `n_max`.
///
/// With `α_0 = 1` fixed and all odd entries prescribed, the order-`2p`
/// residual reads `2·α_{2p} + Σ_{k=1}^{2p−1} C(2p,k)_q (−1)ᵏ α_k α_{2p−k}`,
/// which pins each even entry uniquely:
/// `α_{2p} = −(Σ_{k=1}^{2p−1} C(2p,k)_q (−1)ᵏ α_k α_{2p−k}) / 2`.
///
/// `odd_values` must supply every odd index below `n_max`. Each supplied
/// value, and each solved entry, must tend to 1 at `q = 1`; a violation is
/// reported as `InconsistentInput` rather than silently repaired.
pub fn solve_alpha_system(
    odd_values: &BTreeMap<u32, QRat>,
    n_max: u32,
) -> Result<AlphaFamily> {
    if n_max % 2 != 0 {
        return Err(Error::InconsistentInput {
            detail: format!("n_max must be even, got {n_max}"),
        });
    }
    let mut entries = vec![QRat::zero(); n_max as usize + 1];
    entries[0] = QRat::one();
    for n in (1..n_max).step_by(2) {
        match odd_values.get(&n) {
            Some(v) => {
                check_limit_one("solved", n, v)?;
                entries[n as usize] = v.clone();
            }
            None => {
                return Err(Error::InconsistentInput {
                    detail: format!("no value supplied for odd index {n}"),
                })
            }
        }
    }
    for (&n, _) in odd_values.range((n_max + 1)..) {
        return Err(Error::InconsistentInput {
            detail: format!("odd index {n} lies beyond n_max = {n_max}"),
        });
    }
    let table = QBinomTable::new(n_max);
    let minus_half = QRat::from_rational(crate::rational::rat(-1, 2));
    for p in 1..=n_max / 2 {
        let n = 2 * p;
        let mut sum = QRat::zero();
        for k in 1..n {
            let mut term = &table.get(n, k as i64)
                * &(&entries[k as usize] * &entries[(n - k) as usize]);
            if k % 2 == 1 {
                term = -term;
            }
            sum = &sum + &term;
        }
        let solved = &minus_half * &sum;
        check_limit_one("solved", n, &solved)?;
        entries[n as usize] = solved;
    }
    Ok(AlphaFamily::new("solved", Provenance::Solver, Gen::Table(entries)))
}

/// The ratio shape `α(q,n+1)/α(q,n) = Σ_k a_k·Qᵏ` with `Q = qⁿ` and
/// coefficients `a_k` independent of `n`. Families with this shape admit
/// closed q-derivative identities for their exponentials and polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioForm {
    coeffs: BTreeMap<u32, QRat>,
}

impl RatioForm {
    pub fn coeffs(&self) -> &BTreeMap<u32, QRat> {
        &self.coeffs
    }

    /// The predicted ratio `Σ_k a_k q^{k·n}` at a concrete `n`.
    pub fn ratio_at(&self, n: u32) -> QRat {
        let mut acc = QRat::zero();
        for (&k, a) in &self.coeffs {
            acc = &acc + &(a * &QRat::q_pow(k as i64 * n as i64));
        }
        acc
    }

    /// Whether `Σ_k a_k → 1` as `q → 1` — forced when the family entries
    /// themselves tend to 1 and no coefficient has a pole there.
    pub fn is_limit_consistent(&self) -> bool {
        let mut sum = QRat::zero();
        for a in self.coeffs.values() {
            sum = &sum + a;
        }
        matches!(sum.limit_at_one(), Ok(l) if l.is_one())
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, a)| format!("a_{k} = {}", a.render()))
            .collect();
        format!("ratio Σ a_k q^(k·n) with {}", parts.join(", "))
    }
}

/// Try to express `α(q,n+1)/α(q,n)` in the [`RatioForm`] shape by fitting
/// on `n = 1..=m+1` and verifying on all of `n = 1..=n_probe`; degrees `m`
/// are tried in increasing order. Returns `NotOfThisForm` when no degree
/// up to `min(n_probe − 2, 8)` survives verification — the ratio may still
/// depend on `n` some other way (the half-Gauss family's `q^{n/2}` does).
pub fn ratio_analyze(fam: &AlphaFamily, n_probe: u32) -> Result<RatioForm> {
    if n_probe < 3 {
        return Err(Error::InconsistentInput {
            detail: format!("n_probe must be at least 3, got {n_probe}"),
        });
    }
    let alphas = fam.prefix(n_probe + 1)?;
    for (n, a) in alphas.iter().enumerate().take(n_probe as usize + 1).skip(1) {
        if a.is_zero() {
            return Err(Error::ZeroAlpha { n: n as u32 });
        }
    }
    let ratios: Vec<QRat> = (1..=n_probe as usize)
        .map(|n| alphas[n + 1].div(&alphas[n]))
        .collect::<Result<_>>()?;
    let max_deg = (n_probe - 2).min(8);
    'degree: for m in 0..=max_deg {
        // Vandermonde fit at the nodes n = 1..=m+1 (the values qⁿ are
        // pairwise distinct, so the system is uniquely solvable).
        let rows = (m + 1) as usize;
        let mut matrix = Vec::with_capacity(rows);
        let mut rhs = Vec::with_capacity(rows);
        for n in 1..=rows {
            let row: Vec<QRat> = (0..=m)
                .map(|k| QRat::q_pow(k as i64 * n as i64))
                .collect();
            matrix.push(row);
            rhs.push(ratios[n - 1].clone());
        }
        let Some(coeffs) = solve_linear(matrix, rhs) else {
            continue;
        };
        let form = RatioForm {
            coeffs: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(k, a)| (k as u32, a))
                .collect(),
        };
        for n in 1..=n_probe {
            if form.ratio_at(n) != ratios[(n - 1) as usize] {
                continue 'degree;
            }
        }
        return Ok(form);
    }
    Err(Error::NotOfThisForm)
}

/// Gaussian elimination over the exact coefficient field; `None` when the
/// matrix is singular.
fn solve_linear(mut a: Vec<Vec<QRat>>, mut b: Vec<QRat>) -> Option<Vec<QRat>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inv().ok()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                a[r][c] = &a[r][c] - &(&factor * &a[col][c]);
            }
            b[r] = &b[r] - &(&factor * &b[col]);
        }
    }
    (0..n)
        .map(|i| b[i].div(&a[i][i]).ok())
        .collect()
}
