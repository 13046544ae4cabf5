//! Bivariate polynomials in `x` and `y` over the coefficient field.
//!
//! [`QPoly`] stores a polynomial y-major: `rows[j]` is the ascending list
//! of `x`-coefficients multiplying `yʲ`. Rows carry no trailing zero
//! coefficients and the row list carries no trailing empty rows, so two
//! equal polynomials are structurally identical and `==` is mathematical
//! equality. The zero polynomial is the empty row list.
//!
//! Rendering is canonical — terms ascend by `y`-degree, then `x`-degree,
//! with no zero terms — and parses back exactly through [`parse_qpoly`],
//! which shares its grammar with the coefficient parser (see
//! [`crate::parse`]): `"x^2+(1+q)xy"`, `"(x+y)^2"`, `"1/2x"` all mean what
//! they look like, with juxtaposition as left-associative multiplication.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::parse::{parse_expr, Expr, Sym};
use crate::qcore::qint;
use crate::qrat::QRat;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    /// `rows[j][i]` is the coefficient of `xⁱyʲ`.
    rows: Vec<Vec<QRat>>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(QRat::one())
    }

    pub fn constant(c: QRat) -> Self {
        QPoly::from_rows(vec![vec![c]])
    }

    pub fn x() -> Self {
        QPoly::monomial(QRat::one(), 1, 0)
    }

    pub fn y() -> Self {
        QPoly::monomial(QRat::one(), 0, 1)
    }

    /// The single term `c·xⁱyʲ`.
    pub fn monomial(c: QRat, i: usize, j: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut rows = vec![Vec::new(); j + 1];
        rows[j] = std::iter::repeat_with(QRat::zero)
            .take(i)
            .chain(std::iter::once(c))
            .collect();
        QPoly { rows }
    }

    /// Build from raw rows, trimming to canonical form.
    pub fn from_rows(rows: Vec<Vec<QRat>>) -> Self {
        let mut rows = rows;
        for row in &mut rows {
            while row.last().map(QRat::is_zero) == Some(true) {
                row.pop();
            }
        }
        while rows.last().map(Vec::is_empty) == Some(true) {
            rows.pop();
        }
        QPoly { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Highest `y`-exponent with a nonzero term, `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Highest `x`-exponent with a nonzero term, `None` for zero.
    pub fn x_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter_map(|row| row.len().checked_sub(1))
            .max()
    }

    /// The coefficient of `xⁱyʲ` (zero when absent).
    pub fn coeff(&self, i: usize, j: usize) -> QRat {
        self.rows
            .get(j)
            .and_then(|row| row.get(i))
            .cloned()
            .unwrap_or_else(QRat::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<QRat> {
        match (self.x_degree(), self.y_degree()) {
            (None, None) => Some(QRat::zero()),
            (Some(0), Some(0)) => Some(self.rows[0][0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &QRat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    /// Substitute `x ↦ λ·x`: the coefficient of `xⁱyʲ` picks up `λⁱ`.
    pub fn scale_x(&self, lambda: &QRat) -> QPoly {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut pow = QRat::one();
            let mut out = Vec::with_capacity(row.len());
            for (i, a) in row.iter().enumerate() {
                if i > 0 {
                    pow = &pow * lambda;
                }
                out.push(a * &pow);
            }
            rows.push(out);
        }
        QPoly::from_rows(rows)
    }

    /// Collapse `y` to a coefficient value, leaving a polynomial in `x`.
    pub fn eval_y(&self, y0: &QRat) -> QPoly {
        let mut acc: Vec<QRat> = Vec::new();
        // Horner in y over x-coefficient vectors.
        for row in self.rows.iter().rev() {
            let width = acc.len().max(row.len());
            let mut next = Vec::with_capacity(width);
            for i in 0..width {
                let high = acc.get(i).map(|a| a * y0).unwrap_or_else(QRat::zero);
                let low = row.get(i).cloned().unwrap_or_else(QRat::zero);
                next.push(&high + &low);
            }
            acc = next;
        }
        QPoly::from_rows(vec![acc])
    }

    /// Multiply by `yʲ`: every row shifts up by `j` places.
    pub fn mul_y_power(&self, j: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut rows = vec![Vec::new(); j];
        rows.extend(self.rows.iter().cloned());
        QPoly { rows }
    }

    /// The restriction to `y = 0` — just the `y⁰` row.
    pub fn at_y_zero(&self) -> QPoly {
        QPoly::from_rows(vec![self.rows.first().cloned().unwrap_or_default()])
    }

    /// Full evaluation at coefficient values for both variables.
    pub fn eval_xy(&self, x0: &QRat, y0: &QRat) -> QRat {
        let mut acc = QRat::zero();
        for row in self.rows.iter().rev() {
            let mut row_val = QRat::zero();
            for a in row.iter().rev() {
                row_val = &(&row_val * x0) + a;
            }
            acc = &(&acc * y0) + &row_val;
        }
        acc
    }

    /// The q-derivative in `x`: termwise `xⁱ ↦ [i]_q·xⁱ⁻¹`, with `y` held
    /// constant. Reduces to `d/dx` at `q = 1`.
    pub fn qderive_x(&self) -> QPoly {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, a)| a * &qint(i as u32))
                    .collect()
            })
            .collect();
        QPoly::from_rows(rows)
    }

    /// Entrywise `q → 1⁻` limit, in the same trimmed row layout.
    pub fn limit_at_one(&self) -> Result<Vec<Vec<Rational>>> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            rows.push(
                row.iter()
                    .map(QRat::limit_at_one)
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(rows)
    }

    pub fn pow(&self, k: usize) -> QPoly {
        let mut out = QPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Canonical text form; [`parse_qpoly`] inverts it exactly.
    pub fn render(&self) -> String {
        self.render_with(QRat::render, mono_text)
    }

    /// LaTeX form with braced exponents and the coefficient field's own
    /// LaTeX spelling.
    pub fn latex(&self) -> String {
        self.render_with(QRat::latex, mono_latex)
    }

    fn render_with(
        &self,
        coeff_render: impl Fn(&QRat) -> String,
        mono: impl Fn(usize, usize) -> String,
    ) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // The canonical form puts any leading minus on the
                // lowest-degree coefficient of the numerator, so exactly
                // one of c, −c renders minus-free; peel the sign for
                // joining and render the rest.
                let negative = c.render().starts_with('-');
                let body_coeff = if negative { -c } else { c.clone() };
                let body = term_body(&body_coeff, &coeff_render, &mono(i, j));
                if out.is_empty() {
                    if negative {
                        out.push('-');
                    }
                } else {
                    out.push(if negative { '-' } else { '+' });
                }
                out.push_str(&body);
            }
        }
        out
    }
}

/// One sign-free term: coefficient (elided when 1, parenthesized when its
/// rendering would not survive juxtaposition) followed by the monomial.
fn term_body(
    c: &QRat,
    coeff_render: &impl Fn(&QRat) -> String,
    mono: &str,
) -> String {
    if mono.is_empty() {
        return coeff_render(c);
    }
    if c.is_one() {
        return mono.to_string();
    }
    let s = coeff_render(c);
    if needs_wrapping(&s) {
        format!("({s}){mono}")
    } else {
        format!("{s}{mono}")
    }
}

/// A coefficient string can prefix a monomial bare only if it has no
/// depth-zero `+`, `-`, or `/`: `1/2x` parses as `(1/2)·x` but is kept
/// wrapped for readability, while `1-qx` would silently rebind. Characters
/// inside parentheses or LaTeX braces are already grouped.
fn needs_wrapping(s: &str) -> bool {
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth = depth.saturating_sub(1),
            '+' | '-' | '/' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

fn mono_text(i: usize, j: usize) -> String {
    let mut s = String::new();
    match i {
        0 => {}
        1 => s.push('x'),
        _ => s.push_str(&format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => s.push('y'),
        _ => s.push_str(&format!("y^{j}")),
    }
    s
}

fn mono_latex(i: usize, j: usize) -> String {
    let mut s = String::new();
    match i {
        0 => {}
        1 => s.push('x'),
        _ => s.push_str(&format!("x^{{{i}}}")),
    }
    match j {
        0 => {}
        1 => s.push('y'),
        _ => s.push_str(&format!("y^{{{j}}}")),
    }
    s
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let height = self.rows.len().max(rhs.rows.len());
        let mut rows = Vec::with_capacity(height);
        for j in 0..height {
            let a = self.rows.get(j).map(Vec::as_slice).unwrap_or(&[]);
            let b = rhs.rows.get(j).map(Vec::as_slice).unwrap_or(&[]);
            let width = a.len().max(b.len());
            let mut row = Vec::with_capacity(width);
            for i in 0..width {
                let left = a.get(i).cloned().unwrap_or_else(QRat::zero);
                let right = b.get(i).cloned().unwrap_or_else(QRat::zero);
                row.push(&left + &right);
            }
            rows.push(row);
        }
        QPoly::from_rows(rows)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &-rhs
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let height = self.rows.len() + rhs.rows.len() - 1;
        let mut rows: Vec<Vec<QRat>> = vec![Vec::new(); height];
        for (ja, row_a) in self.rows.iter().enumerate() {
            for (jb, row_b) in rhs.rows.iter().enumerate() {
                if row_a.is_empty() || row_b.is_empty() {
                    continue;
                }
                let row = &mut rows[ja + jb];
                let width = row_a.len() + row_b.len() - 1;
                if row.len() < width {
                    row.resize_with(width, QRat::zero);
                }
                for (ia, a) in row_a.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (ib, b) in row_b.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        row[ia + ib] = &row[ia + ib] + &(a * b);
                    }
                }
            }
        }
        QPoly::from_rows(rows)
    }
}

/// Parse the canonical polynomial grammar: `+ - * / ^`, parentheses,
/// juxtaposition, the coefficient symbols `q` and `v`, and the variables
/// `x` and `y`. Division requires a variable-free divisor; exponents on
/// variable-bearing bases must be non-negative.
pub fn parse_qpoly(text: &str) -> Result<QPoly> {
    let expr = parse_expr(text)?;
    eval_qpoly(&expr)
}

fn eval_qpoly(e: &Expr) -> Result<QPoly> {
    match e {
        Expr::Int(n) => Ok(QPoly::constant(QRat::from_rational(
            Rational::from_integer(n.clone()),
        ))),
        Expr::Sym(Sym::Q) => Ok(QPoly::constant(QRat::q())),
        Expr::Sym(Sym::V) => Ok(QPoly::constant(QRat::v())),
        Expr::Sym(Sym::X) => Ok(QPoly::x()),
        Expr::Sym(Sym::Y) => Ok(QPoly::y()),
        Expr::Neg(a) => Ok(-eval_qpoly(a)?),
        Expr::Add(a, b) => Ok(&eval_qpoly(a)? + &eval_qpoly(b)?),
        Expr::Sub(a, b) => Ok(&eval_qpoly(a)? - &eval_qpoly(b)?),
        Expr::Mul(a, b) => Ok(&eval_qpoly(a)? * &eval_qpoly(b)?),
        Expr::Div(a, b) => {
            let num = eval_qpoly(a)?;
            let den = eval_qpoly(b)?.as_constant().ok_or_else(|| Error::Parse {
                detail: "cannot divide by a polynomial containing x or y".to_string(),
            })?;
            Ok(num.scale(&den.inv()?))
        }
        Expr::Pow(a, k) => {
            let base = eval_qpoly(a)?;
            if let Some(c) = base.as_constant() {
                return Ok(QPoly::constant(c.pow_signed(*k)?));
            }
            if *k < 0 {
                return Err(Error::Parse {
                    detail: format!("negative exponent {k} on a polynomial containing x or y"),
                });
            }
            if *k > u16::MAX as i64 {
                return Err(Error::Parse {
                    detail: format!("exponent {k} is too large"),
                });
            }
            Ok(base.pow(*k as usize))
        }
    }
}
