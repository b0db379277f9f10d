//! Exact truncated multivariate power series over the rationals.
//!
//! A [`TruncatedSeries`] stores the terms of total degree below its
//! truncation order. The last variable plays the role of the boundary
//! defining function `y`; several operations (`substitute_y`,
//! `divide_by_y`, [`TruncatedSeries::y_valuation`]) single it out.
//!
//! Binary operations return a series whose order is the minimum of the
//! operands' orders. Operations that genuinely lose precision (derivatives,
//! division by `y`) lower the order by one.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Exponent multi-index.
pub type Exponent = Vec<u32>;

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// The lowest power of a variable occurring in a series; `Infinite` for the
/// zero series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct TruncatedSeries {
    num_vars: usize,
    order: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl TruncatedSeries {
    pub fn zero(num_vars: usize, order: u32) -> Self {
        TruncatedSeries {
            num_vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, order: u32, c: Rational) -> Self {
        let mut s = Self::zero(num_vars, order);
        s.insert(vec![0; num_vars], c);
        s
    }

    pub fn one(num_vars: usize, order: u32) -> Self {
        Self::constant(num_vars, order, Rational::one())
    }

    /// The coordinate function of variable `index`.
    pub fn var(num_vars: usize, order: u32, index: usize) -> Result<Self> {
        check_index(index, num_vars)?;
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Ok(Self::monomial_unchecked(num_vars, order, e, Rational::one()))
    }

    /// The last variable, `y`.
    pub fn y(num_vars: usize, order: u32) -> Self {
        Self::var(num_vars, order, num_vars - 1).expect("num_vars is positive")
    }

    pub fn monomial(num_vars: usize, order: u32, exp: Exponent, c: Rational) -> Result<Self> {
        if exp.len() != num_vars {
            return Err(Error::VarMismatch {
                left: exp.len(),
                right: num_vars,
            });
        }
        Ok(Self::monomial_unchecked(num_vars, order, exp, c))
    }

    fn monomial_unchecked(num_vars: usize, order: u32, exp: Exponent, c: Rational) -> Self {
        let mut s = Self::zero(num_vars, order);
        s.insert(exp, c);
        s
    }

    /// Builds a series from arbitrary terms: duplicates are summed, zero
    /// coefficients dropped and terms at or above `order` truncated away.
    pub fn from_terms<I>(num_vars: usize, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut s = Self::zero(num_vars, order);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::VarMismatch {
                    left: e.len(),
                    right: num_vars,
                });
            }
            s.insert(e, c);
        }
        Ok(s)
    }

    /// Univariate series `c[0] + c[1] y + c[2] y^2 + ...`.
    pub fn univariate(order: u32, coeffs: &[Rational]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], c.clone()));
        Self::from_terms(1, order, terms).expect("univariate exponents have length 1")
    }

    fn insert(&mut self, e: Exponent, c: Rational) {
        if degree(&e) >= self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.num_vars])
    }

    /// Highest total degree present, `None` for the zero series.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    /// Lowest total degree present.
    pub fn total_valuation(&self) -> Valuation {
        self.terms
            .keys()
            .map(|e| degree(e))
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// Lowest exponent of the last variable `y`.
    pub fn y_valuation(&self) -> Valuation {
        self.terms
            .keys()
            .map(|e| e[self.num_vars - 1])
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// True when no term involves the last variable.
    pub fn is_free_of_y(&self) -> bool {
        self.terms.keys().all(|e| e[self.num_vars - 1] == 0)
    }

    /// Drops every term of degree `>= order`; the result order is
    /// `min(self.order, order)`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            num_vars: self.num_vars,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) < order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the stored terms as an exact polynomial known up to
    /// `order`. Raising the order asserts that the dropped tail is zero;
    /// lowering it is [`truncate`](Self::truncate).
    pub fn with_order(&self, order: u32) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        TruncatedSeries {
            num_vars: self.num_vars,
            order,
            terms: self.terms.clone(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.order);
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            num_vars: self.num_vars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.order);
        }
        TruncatedSeries {
            num_vars: self.num_vars,
            order: self.order,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let rhs: Vec<(&Exponent, &Rational, u32)> = other
            .terms
            .iter()
            .map(|(e, c)| (e, c, degree(e)))
            .filter(|(_, _, d)| *d < order)
            .collect();
        let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da >= order {
                continue;
            }
            for (eb, cb, db) in &rhs {
                if da + db >= order {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += ca * *cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            num_vars: self.num_vars,
            order,
            terms: acc,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.num_vars, self.order);
        for _ in 0..k {
            out = out.mul(self).expect("same variables");
        }
        out
    }

    /// Formal partial derivative; the order drops by one.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        check_index(var, self.num_vars)?;
        let mut out = Self::zero(self.num_vars, self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] -= 1;
            out.insert(e2, c * Rational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// Factors `y` out of a series vanishing on `{y = 0}`; the order drops
    /// by one.
    pub fn divide_by_y(&self) -> Result<Self> {
        let last = self.num_vars - 1;
        if self.terms.keys().any(|e| e[last] == 0) {
            return Err(Error::NotDivisible);
        }
        Ok(TruncatedSeries {
            num_vars: self.num_vars,
            order: self.order.saturating_sub(1),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[last] -= 1;
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Multiplies by `y`; exact, so the order rises by one.
    pub fn multiply_by_y(&self) -> Self {
        let last = self.num_vars - 1;
        TruncatedSeries {
            num_vars: self.num_vars,
            order: self.order + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[last] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Embeds a univariate series as a series in the last of `num_vars`
    /// variables.
    pub fn embed_as_y(&self, num_vars: usize) -> Result<Self> {
        if self.num_vars != 1 {
            return Err(Error::VarMismatch {
                left: self.num_vars,
                right: 1,
            });
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut full = vec![0; num_vars];
            full[num_vars - 1] = e[0];
            (full, c.clone())
        });
        Self::from_terms(num_vars, self.order, terms)
    }

    /// Replaces the last variable `y` by the univariate series `g(y)`.
    ///
    /// `g` must have zero constant term. The result order is
    /// `min(self.order, g.order)`.
    pub fn substitute_y(&self, g: &Self) -> Result<Self> {
        if g.num_vars != 1 {
            return Err(Error::InvalidSubstitution(format!(
                "substituted series must be univariate, got {} variables",
                g.num_vars
            )));
        }
        if !g.constant_term().is_zero() {
            return Err(Error::InvalidSubstitution(
                "substituted series has a non-zero constant term".into(),
            ));
        }
        let n = self.num_vars;
        let order = self.order.min(g.order);
        let g = g.embed_as_y(n)?.truncate(order);

        // Group by y-exponent: self = sum_b c_b(x) y^b.
        let mut by_power: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut x_part = e.clone();
            let b = x_part[n - 1];
            x_part[n - 1] = 0;
            by_power
                .entry(b)
                .or_insert_with(|| Self::zero(n, order))
                .insert(x_part, c.clone());
        }

        // Horner: (((c_B) g + c_{B-1}) g + ...) g^{b_min}.
        let mut acc = Self::zero(n, order);
        let mut prev: Option<u32> = None;
        for (&b, c) in by_power.iter().rev() {
            if let Some(p) = prev {
                acc = acc.mul(&g.pow(p - b))?;
            }
            acc = acc.add(c)?;
            prev = Some(b);
        }
        if let Some(p) = prev {
            acc = acc.mul(&g.pow(p))?;
        }
        Ok(acc.truncate(order))
    }

    /// Substitutes `subs[i]` for variable `i`, treating `self` as an exact
    /// polynomial. All substituted series must share their variable count;
    /// the result order is the minimum of their orders.
    pub fn compose_polynomial(&self, subs: &[Self]) -> Result<Self> {
        if subs.len() != self.num_vars {
            return Err(Error::VarMismatch {
                left: subs.len(),
                right: self.num_vars,
            });
        }
        let m = subs[0].num_vars;
        for s in subs {
            if s.num_vars != m {
                return Err(Error::VarMismatch {
                    left: s.num_vars,
                    right: m,
                });
            }
        }
        let order = subs.iter().map(|s| s.order).min().unwrap_or(self.order);
        let mut powers: Vec<Vec<Self>> = subs
            .iter()
            .map(|_| vec![Self::one(m, order)])
            .collect();
        let mut out = Self::zero(m, order);
        for (e, c) in &self.terms {
            let mut term = Self::constant(m, order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with non-zero constant term,
    /// by Newton iteration `t <- t (2 - s t)`.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.num_vars;
        let two = rational::int(2);
        let mut prec = 1.min(self.order);
        let mut t = Self::constant(n, prec, c.recip());
        while prec < self.order {
            prec = (2 * prec).min(self.order);
            let t_ext = t.with_order(prec);
            let st = self.truncate(prec).mul(&t_ext)?;
            let correction = Self::constant(n, prec, two.clone()).sub(&st)?;
            t = t_ext.mul(&correction)?;
        }
        Ok(t)
    }

    /// Square root with positive constant term, by Newton iteration
    /// `t <- t + (s - t^2) / (2 t)`.
    pub fn sqrt(&self) -> Result<Self> {
        let c = self.constant_term();
        if !c.is_positive() {
            return Err(Error::NoSquareRoot(format!(
                "constant term {} is not positive",
                rational::render(&c)
            )));
        }
        let root = rational::sqrt_exact(&c).ok_or_else(|| {
            Error::NoSquareRoot(format!(
                "constant term {} is not a rational square",
                rational::render(&c)
            ))
        })?;
        let n = self.num_vars;
        let half = rational::frac(1, 2);
        let mut prec = 1.min(self.order);
        let mut t = Self::constant(n, prec, root);
        while prec < self.order {
            prec = (2 * prec).min(self.order);
            let t_ext = t.with_order(prec);
            let residual = self.truncate(prec).sub(&t_ext.mul(&t_ext)?)?;
            let step = residual.mul(&t_ext.inverse()?)?.scale(&half);
            t = t_ext.add(&step)?;
        }
        Ok(t)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::VarMismatch {
                left: point.len(),
                right: self.num_vars,
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.num_vars {
            return Err(Error::VarMismatch {
                left: point.len(),
                right: self.num_vars,
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                point
                    .iter()
                    .zip(e)
                    .fold(rational::to_f64(c), |t, (x, &k)| t * x.powi(k as i32))
            })
            .sum())
    }
}

/// Lie bracket of two vector fields given by their component series in the
/// same coordinates: `[V, W]^i = sum_j V^j d_j W^i - W^j d_j V^i`.
pub fn vector_field_bracket(
    v: &[TruncatedSeries],
    w: &[TruncatedSeries],
) -> Result<Vec<TruncatedSeries>> {
    if v.len() != w.len() {
        return Err(Error::VarMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    let n = v.len();
    let order = v.iter().chain(w).map(|s| s.order).min().unwrap_or(0);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = TruncatedSeries::zero(v[i].num_vars, order.saturating_sub(1));
        for j in 0..n {
            if !v[j].is_zero() {
                acc = acc.add(&v[j].mul(&w[i].derivative(j)?)?)?;
            }
            if !w[j].is_zero() {
                acc = acc.sub(&w[j].mul(&v[i].derivative(j)?)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn check_index(index: usize, num_vars: usize) -> Result<()> {
    if index >= num_vars {
        return Err(Error::VarIndex { index, num_vars });
    }
    Ok(())
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", rational::render(c))?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*v{v}")?,
                    _ => write!(f, "*v{v}^{k}")?,
                }
            }
        }
        write!(f, " + O({})", self.order)
    }
}

/// Canonical JSON form of a series.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: usize,
    pub order: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl From<TruncatedSeries> for SeriesJson {
    fn from(s: TruncatedSeries) -> Self {
        SeriesJson::from(&s)
    }
}

impl From<&TruncatedSeries> for SeriesJson {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesJson {
            vars: s.num_vars,
            order: s.order,
            terms: s
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.vars == 0 {
            return Err(Error::Invalid("series needs at least one variable".into()));
        }
        let mut s = TruncatedSeries::zero(j.vars, j.order);
        for t in j.terms {
            if t.exp.len() != j.vars {
                return Err(Error::VarMismatch {
                    left: t.exp.len(),
                    right: j.vars,
                });
            }
            if degree(&t.exp) >= j.order {
                return Err(Error::Invalid(format!(
                    "term {:?} has degree at or above the order {}",
                    t.exp, j.order
                )));
            }
            if s.terms.contains_key(&t.exp) {
                return Err(Error::Invalid(format!("duplicate exponent {:?}", t.exp)));
            }
            let c = rational::parse(&format!("{}/{}", t.num, t.den))?;
            s.insert(t.exp, c);
        }
        Ok(s)
    }
}
