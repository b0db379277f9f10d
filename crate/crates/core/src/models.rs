//! Ball models of real hyperbolic space and their boundary charts.
//!
//! An element of `so(1,n)` is written `X = [[0, b^T], [b, A]]` with `A`
//! skew-symmetric. Its fundamental vector field on the Klein ball (the
//! projective compactification) is
//!
//! ```text
//! V(u) = b + A u - (b.u) u,
//! ```
//!
//! and on the Poincaré ball (the conformal compactification)
//!
//! ```text
//! W(v) = (1 + |v|^2) b / 2 - (b.v) v + A v.
//! ```
//!
//! Fundamental fields of the left action satisfy `[V_X, V_Y] = -V_[X,Y]`
//! with the bracket `[V, W] = (DW) V - (DV) W`.
//!
//! Boundary charts use `u = (1 - y) sigma(x)` with
//! `sigma(x) = F (sqrt(1 - |x|^2), x)`, where `F` is a rational orthogonal
//! frame whose first column is the base point `p0`.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};
use crate::series::{vector_field_bracket, TruncatedSeries, Valuation};
use crate::stretch::{pullback_smooth, CollarField, StretchGerm};

/// Order used for the polynomial model fields. Klein fields have degree 2
/// and Poincaré fields degree 3; the margin keeps brackets exact.
pub const MODEL_FIELD_ORDER: u32 = 8;

type Matrix = Vec<Vec<Rational>>;

fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![Rational::zero(); c]; r]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

/// An element `[[0, b^T], [b, A]]` of `so(1,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoostRotation {
    b: Vec<Rational>,
    a: Matrix,
}

impl BoostRotation {
    pub fn new(b: Vec<Rational>, a: Matrix) -> Result<Self> {
        let n = b.len();
        if n == 0 || a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "boost of length {n} needs an {n}x{n} rotation part"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if &a[i][j] + &a[j][i] != Rational::zero() {
                    return Err(Error::Invalid(format!(
                        "rotation part is not skew-symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(BoostRotation { b, a })
    }

    pub fn zero(n: usize) -> Self {
        BoostRotation {
            b: vec![Rational::zero(); n],
            a: zeros(n, n),
        }
    }

    /// The pure boost along `e_i`.
    pub fn boost(n: usize, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.b[i] = Rational::one();
        x
    }

    /// The rotation `E_ij - E_ji`.
    pub fn rotation(n: usize, i: usize, j: usize) -> Self {
        let mut x = Self::zero(n);
        x.a[i][j] = Rational::one();
        x.a[j][i] = -Rational::one();
        x
    }

    /// Standard basis of `so(1,n)`: boosts, then rotations `E_ij - E_ji`
    /// for `i < j`.
    pub fn basis(n: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0..n).map(|i| Self::boost(n, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                out.push(Self::rotation(n, i, j));
            }
        }
        out
    }

    /// Random element with small rational entries.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let q = |rng: &mut R| rational::frac(rng.random_range(-5..=5), rng.random_range(1..=4));
        let b = (0..n).map(|_| q(rng)).collect();
        let mut a = zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = q(rng);
                a[j][i] = -v.clone();
                a[i][j] = v;
            }
        }
        BoostRotation { b, a }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn boost_part(&self) -> &[Rational] {
        &self.b
    }

    pub fn rotation_part(&self) -> &Matrix {
        &self.a
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = zeros(n + 1, n + 1);
        for i in 0..n {
            m[0][i + 1] = self.b[i].clone();
            m[i + 1][0] = self.b[i].clone();
            for j in 0..n {
                m[i + 1][j + 1] = self.a[i][j].clone();
            }
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let n = m.len().checked_sub(1).filter(|&n| n > 0).ok_or_else(|| {
            Error::DimensionMismatch("so(1,n) matrices are at least 2x2".into())
        })?;
        if !m[0][0].is_zero() || (1..=n).any(|i| m[0][i] != m[i][0]) {
            return Err(Error::Invalid("matrix is not in so(1,n)".into()));
        }
        let b = (1..=n).map(|i| m[0][i].clone()).collect();
        let a = (1..=n).map(|i| m[i][1..].to_vec()).collect();
        Self::new(b, a)
    }

    /// Matrix commutator `[X, Y] = XY - YX`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let x = self.to_matrix();
        let y = other.to_matrix();
        let xy = mat_mul(&x, &y);
        let yx = mat_mul(&y, &x);
        let c: Matrix = xy
            .iter()
            .zip(&yx)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
            .collect();
        Self::from_matrix(&c)
    }
}

/// A polynomial vector field on the ball, one component per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<TruncatedSeries>,
}

impl PolyVectorField {
    pub fn new(components: Vec<TruncatedSeries>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty vector field".into()));
        }
        if let Some(s) = components.iter().find(|s| s.num_vars() != n) {
            return Err(Error::VarMismatch {
                left: s.num_vars(),
                right: n,
            });
        }
        Ok(PolyVectorField { components })
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn order(&self) -> u32 {
        self.components.iter().map(|c| c.order()).min().unwrap_or(0)
    }

    pub fn truncate(&self, order: u32) -> Self {
        PolyVectorField {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PolyVectorField {
            components: self.components.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// `u . V(u)` as a polynomial.
    pub fn radial_component(&self) -> Result<TruncatedSeries> {
        let n = self.n();
        let order = self.order();
        let mut acc = TruncatedSeries::zero(n, order);
        for (i, c) in self.components.iter().enumerate() {
            acc = acc.add(&TruncatedSeries::var(n, order, i)?.mul(c)?)?;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }
}

/// Lie bracket `[V, W] = (DW) V - (DV) W`.
pub fn field_bracket(v: &PolyVectorField, w: &PolyVectorField) -> Result<PolyVectorField> {
    PolyVectorField::new(vector_field_bracket(&v.components, &w.components)?)
}

/// `|u|^2` in `n` variables.
fn norm_squared(n: usize, order: u32) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(n, order);
    for i in 0..n {
        acc = acc.add(&TruncatedSeries::var(n, order, i)?.pow(2))?;
    }
    Ok(acc)
}

/// `b . u` in `n` variables.
fn linear_form(b: &[Rational], order: u32) -> Result<TruncatedSeries> {
    let n = b.len();
    let mut acc = TruncatedSeries::zero(n, order);
    for (i, bi) in b.iter().enumerate() {
        acc = acc.add(&TruncatedSeries::var(n, order, i)?.scale(bi))?;
    }
    Ok(acc)
}

/// `A u`, component `i`.
fn linear_map_row(a: &Matrix, i: usize, order: u32) -> Result<TruncatedSeries> {
    linear_form(&a[i], order)
}

/// Fundamental field of `X` on the Klein ball: `V(u) = b + A u - (b.u) u`.
pub fn klein_field(x: &BoostRotation) -> PolyVectorField {
    let n = x.n();
    let order = MODEL_FIELD_ORDER;
    let bu = linear_form(&x.b, order).expect("n variables");
    let components = (0..n)
        .map(|i| {
            let ui = TruncatedSeries::var(n, order, i)?;
            TruncatedSeries::constant(n, order, x.b[i].clone())
                .add(&linear_map_row(&x.a, i, order)?)?
                .sub(&bu.mul(&ui)?)
        })
        .collect::<Result<Vec<_>>>()
        .expect("consistent variables");
    PolyVectorField { components }
}

/// Closed form of the fundamental field of `X` on the Poincaré ball.
pub fn poincare_closed_form(x: &BoostRotation) -> PolyVectorField {
    let n = x.n();
    let order = MODEL_FIELD_ORDER;
    let half = rational::frac(1, 2);
    let bv = linear_form(&x.b, order).expect("n variables");
    let one_plus = TruncatedSeries::one(n, order)
        .add(&norm_squared(n, order).expect("n variables"))
        .expect("n variables");
    let components = (0..n)
        .map(|i| {
            let vi = TruncatedSeries::var(n, order, i)?;
            one_plus
                .scale(&(&half * &x.b[i]))
                .sub(&bv.mul(&vi)?)?
                .add(&linear_map_row(&x.a, i, order)?)
        })
        .collect::<Result<Vec<_>>>()
        .expect("consistent variables");
    PolyVectorField { components }
}

/// Fundamental field of `X` on the Poincaré ball.
///
/// The closed form is accepted only after checking that it is related to
/// the Klein field through the ball map `kappa(v) = 2v / (1 + |v|^2)`:
/// `D kappa(v) W(v) = V(kappa(v))`, cleared of denominators.
pub fn poincare_field(x: &BoostRotation) -> Result<PolyVectorField> {
    let w = poincare_closed_form(x);
    let n = x.n();
    let order = MODEL_FIELD_ORDER;
    let v = |i: usize| TruncatedSeries::var(n, order, i);
    let one_plus = TruncatedSeries::one(n, order).add(&norm_squared(n, order)?)?;
    let v_dot_w = w.radial_component()?;
    let bv = linear_form(&x.b, order)?;
    for i in 0..n {
        // 2 W (1 + |v|^2) - 4 v (v.W)
        let lhs = w.components[i]
            .mul(&one_plus)?
            .scale(&rational::int(2))
            .sub(&v(i)?.mul(&v_dot_w)?.scale(&rational::int(4)))?;
        // b (1 + |v|^2)^2 + 2 (1 + |v|^2) A v - 4 (b.v) v
        let rhs = one_plus
            .mul(&one_plus)?
            .scale(&x.b[i])
            .add(&one_plus.mul(&linear_map_row(&x.a, i, order)?)?.scale(&rational::int(2)))?
            .sub(&bv.mul(&v(i)?)?.scale(&rational::int(4)))?;
        if lhs != rhs {
            return Err(Error::InternalInconsistency(format!(
                "Poincaré closed form is not the pushforward of the Klein field (component {i})"
            )));
        }
    }
    Ok(w)
}

/// True when `u . V(u) = (b.u)(1 - |u|^2)` holds exactly.
pub fn klein_radial_identity(x: &BoostRotation) -> Result<bool> {
    let v = klein_field(x);
    let n = x.n();
    let order = v.order();
    let rhs = linear_form(&x.b, order)?.mul(
        &TruncatedSeries::one(n, order).sub(&norm_squared(n, order)?)?,
    )?;
    Ok(v.radial_component()? == rhs)
}

/// True when `v . W(v) = (b.v)(1 - |v|^2) / 2` holds exactly.
pub fn poincare_radial_identity(x: &BoostRotation) -> Result<bool> {
    let w = poincare_field(x)?;
    let n = x.n();
    let order = w.order();
    let rhs = linear_form(&x.b, order)?
        .mul(&TruncatedSeries::one(n, order).sub(&norm_squared(n, order)?)?)?
        .scale(&rational::frac(1, 2));
    Ok(w.radial_component()? == rhs)
}

/// Coordinates `(x, y)` near the boundary point `p0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryChart {
    p0: Vec<Rational>,
    /// Orthogonal matrix with first column `p0`.
    frame: Matrix,
    order: u32,
}

impl BoundaryChart {
    /// Chart at a rational unit vector. The frame is the Householder
    /// reflection exchanging `e_1` and `p0`, which stays rational.
    pub fn new(p0: Vec<Rational>, order: u32) -> Result<Self> {
        let n = p0.len();
        if n < 2 {
            return Err(Error::DimensionMismatch(
                "boundary charts need dimension at least 2".into(),
            ));
        }
        let norm: Rational = p0.iter().map(|c| c * c).sum();
        if !norm.is_one() {
            return Err(Error::Invalid("base point is not a unit vector".into()));
        }
        let mut w = p0.clone();
        w[0] -= Rational::one();
        let ww: Rational = w.iter().map(|c| c * c).sum();
        let mut frame = zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { Rational::one() } else { Rational::zero() };
                frame[i][j] = if ww.is_zero() {
                    id
                } else {
                    id - rational::int(2) * &w[i] * &w[j] / &ww
                };
            }
        }
        let ft = (0..n)
            .map(|i| (0..n).map(|j| frame[j][i].clone()).collect())
            .collect::<Matrix>();
        let gram = mat_mul(&ft, &frame);
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != if i == j { Rational::one() } else { Rational::zero() } {
                    return Err(Error::InternalInconsistency("frame is not orthonormal".into()));
                }
            }
        }
        Ok(BoundaryChart { p0, frame, order })
    }

    /// Chart at the coordinate vector `e_k`.
    pub fn at_axis(n: usize, k: usize, order: u32) -> Result<Self> {
        let mut p0 = vec![Rational::zero(); n];
        p0[k] = Rational::one();
        Self::new(p0, order)
    }

    pub fn n(&self) -> usize {
        self.p0.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.p0
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    pub fn with_order(&self, order: u32) -> Self {
        BoundaryChart {
            order,
            ..self.clone()
        }
    }

    /// `sigma(x)` as series in the collar variables.
    fn sigma(&self) -> Result<Vec<TruncatedSeries>> {
        let n = self.n();
        let order = self.order;
        let mut x_sq = TruncatedSeries::zero(n, order);
        let mut local = Vec::with_capacity(n);
        for j in 0..n - 1 {
            let xj = TruncatedSeries::var(n, order, j)?;
            x_sq = x_sq.add(&xj.pow(2))?;
            local.push(xj);
        }
        let s = TruncatedSeries::one(n, order).sub(&x_sq)?.sqrt()?;
        local.insert(0, s);
        (0..n)
            .map(|k| {
                let mut acc = TruncatedSeries::zero(n, order);
                for (j, l) in local.iter().enumerate() {
                    acc = acc.add(&l.scale(&self.frame[k][j]))?;
                }
                Ok(acc)
            })
            .collect()
    }
}

/// Expresses a sphere-tangent polynomial field in collar coordinates.
///
/// With `r = 1 - y`, `u = r sigma(x)`: `y' = -sigma . V(u)` and
/// `sigma' = (V(u) - (sigma . V(u)) sigma) / r`, whose frame coordinates
/// give `x'`.
pub fn to_collar(v: &PolyVectorField, chart: &BoundaryChart) -> Result<CollarField> {
    let n = v.n();
    if chart.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "field of dimension {n} in a chart of dimension {}",
            chart.n()
        )));
    }
    let order = chart.order;
    let sigma = chart.sigma()?;
    let r = TruncatedSeries::one(n, order).sub(&TruncatedSeries::y(n, order))?;
    let u: Vec<TruncatedSeries> = sigma.iter().map(|s| r.mul(s)).collect::<Result<_>>()?;
    let vu: Vec<TruncatedSeries> = v
        .components
        .iter()
        .map(|c| c.compose_polynomial(&u))
        .collect::<Result<_>>()?;

    let mut dot = TruncatedSeries::zero(n, order);
    for (s, c) in sigma.iter().zip(&vu) {
        dot = dot.add(&s.mul(c)?)?;
    }
    let normal = dot.neg();
    if normal.y_valuation() < Valuation::Finite(1) {
        return Err(Error::NotSphereTangent(
            "radial component does not vanish on the boundary".into(),
        ));
    }

    let inv_r = r.inverse()?;
    let sigma_dot: Vec<TruncatedSeries> = vu
        .iter()
        .zip(&sigma)
        .map(|(c, s)| c.sub(&dot.mul(s)?)?.mul(&inv_r))
        .collect::<Result<_>>()?;
    let tangential = (1..n)
        .map(|j| {
            let mut acc = TruncatedSeries::zero(n, order);
            for (k, sd) in sigma_dot.iter().enumerate() {
                acc = acc.add(&sd.scale(&chart.frame[k][j]))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    CollarField::new(tangential, normal)
}

/// Floating-point evaluation of a ball field in collar coordinates, without
/// any series truncation. `z = (x_1, ..., x_{n-1}, y)` with `|x| < 1`.
pub fn collar_eval_f64(v: &PolyVectorField, chart: &BoundaryChart, z: &[f64]) -> Result<Vec<f64>> {
    let n = v.n();
    if z.len() != n {
        return Err(Error::SampleOutOfRange(format!(
            "expected {n} coordinates, got {}",
            z.len()
        )));
    }
    let x = &z[..n - 1];
    let y = z[n - 1];
    let x_sq: f64 = x.iter().map(|c| c * c).sum();
    if x_sq >= 1.0 {
        return Err(Error::SampleOutOfRange("|x| must be below 1".into()));
    }
    let frame: Vec<Vec<f64>> = chart
        .frame
        .iter()
        .map(|r| r.iter().map(rational::to_f64).collect())
        .collect();
    let mut local = vec![(1.0 - x_sq).sqrt()];
    local.extend_from_slice(x);
    let sigma: Vec<f64> = (0..n)
        .map(|k| (0..n).map(|j| frame[k][j] * local[j]).sum())
        .collect();
    let r = 1.0 - y;
    let u: Vec<f64> = sigma.iter().map(|s| r * s).collect();
    let vu = v.eval_f64(&u)?;
    let dot: f64 = sigma.iter().zip(&vu).map(|(s, c)| s * c).sum();
    let sigma_dot: Vec<f64> = vu
        .iter()
        .zip(&sigma)
        .map(|(c, s)| (c - dot * s) / r)
        .collect();
    let mut out: Vec<f64> = (1..n)
        .map(|j| (0..n).map(|k| frame[k][j] * sigma_dot[k]).sum())
        .collect();
    out.push(-dot);
    Ok(out)
}

/// Germ of the Klein collar coordinate `y_K = 1 - |u|` as a function of the
/// Poincaré collar coordinate `y_P = 1 - |v|`, where `u = 2v / (1 + |v|^2)`.
pub fn klein_to_poincare_germ(order: u32) -> Result<StretchGerm> {
    if order < 3 {
        return Err(Error::Precondition(format!(
            "order {order} is too low to resolve a valuation-2 germ"
        )));
    }
    let one = TruncatedSeries::one(1, order);
    let r = one.sub(&TruncatedSeries::y(1, order))?;
    let abs_u = r
        .scale(&rational::int(2))
        .mul(&one.add(&r.pow(2))?.inverse()?)?;
    let germ = StretchGerm::new(one.sub(&abs_u)?)?;
    if germ.valuation() != 2 {
        return Err(Error::InternalInconsistency(format!(
            "Klein-to-Poincaré germ has valuation {}",
            germ.valuation()
        )));
    }
    Ok(germ)
}

/// Radius map from the Klein ball to the Poincaré ball,
/// `s -> s / (1 + sqrt(1 - s^2))`, as a series at the centre.
pub fn klein_to_poincare_radial(order: u32) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(1, order);
    let s = TruncatedSeries::y(1, order);
    let root = one.sub(&s.pow(2))?.sqrt()?;
    s.mul(&one.add(&root)?.inverse()?)
}

/// Radius map from the Poincaré ball to the Klein ball, `t -> 2t / (1 + t^2)`.
pub fn poincare_to_klein_radial(order: u32) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(1, order);
    let t = TruncatedSeries::y(1, order);
    t.scale(&rational::int(2)).mul(&one.add(&t.pow(2))?.inverse()?)
}

/// Per-component comparison of the stretched Klein field with the Poincaré
/// field in matched collar charts.
#[derive(Clone, Debug, Serialize)]
pub struct StretchComparison {
    pub order: u32,
    pub components: Vec<ComponentMatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentMatch {
    pub component: String,
    pub equal: bool,
}

impl StretchComparison {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.equal)
    }
}

/// Checks that the conformal compactification is the stretch of the
/// projective one by the Klein-to-Poincaré germ, for the field of `x`.
pub fn conformal_is_stretch_of_projective(
    x: &BoostRotation,
    chart: &BoundaryChart,
) -> Result<StretchComparison> {
    let germ = klein_to_poincare_germ(chart.order() + 2)?;
    compare_stretched_klein_with_poincare(x, chart, &germ)
}

/// The comparison behind [`conformal_is_stretch_of_projective`], with an
/// arbitrary germ in place of the Klein-to-Poincaré one.
pub fn compare_stretched_klein_with_poincare(
    x: &BoostRotation,
    chart: &BoundaryChart,
    germ: &StretchGerm,
) -> Result<StretchComparison> {
    if chart.order() < 6 {
        return Err(Error::Precondition(format!(
            "chart order {} is below 6",
            chart.order()
        )));
    }
    let klein = to_collar(&klein_field(x), chart)?;
    let stretched = pullback_smooth(&klein, germ)?;
    let poincare = to_collar(&poincare_field(x)?, chart)?;
    let order = stretched.order().min(poincare.order());
    let lhs = stretched.truncate(order).components();
    let rhs = poincare.truncate(order).components();
    let n = x.n();
    let components = lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .map(|(i, (a, b))| ComponentMatch {
            component: if i + 1 == n {
                "normal".to_string()
            } else {
                format!("tangential[{i}]")
            },
            equal: a == b,
        })
        .collect();
    Ok(StretchComparison { order, components })
}

/// A complex number with rational parts.
pub type ComplexRational = (Rational, Rational);

/// Real `2m x 2m` matrix of the differential at the origin of the
/// projective action of `g` (an `(m+1) x (m+1)` complex matrix) on the unit
/// ball of `C^m`, `z -> (g_i0 + g_ij z_j) / (g_00 + g_0j z_j)`.
pub fn projective_differential_at_origin(g: &[Vec<ComplexRational>]) -> Result<Matrix> {
    let size = g.len();
    if size < 2 || g.iter().any(|r| r.len() != size) {
        return Err(Error::DimensionMismatch("need a square matrix of size >= 2".into()));
    }
    let mul = |a: &ComplexRational, b: &ComplexRational| -> ComplexRational {
        (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
    };
    let g00 = &g[0][0];
    let norm = &g00.0 * &g00.0 + &g00.1 * &g00.1;
    if norm.is_zero() {
        return Err(Error::Invalid("g does not fix a neighbourhood of the origin".into()));
    }
    // 1 / g00^2
    let sq = mul(g00, g00);
    let sq_norm = &sq.0 * &sq.0 + &sq.1 * &sq.1;
    let inv_sq = (&sq.0 / &sq_norm, -&sq.1 / &sq_norm);
    let m = size - 1;
    let mut out = zeros(2 * m, 2 * m);
    for i in 1..size {
        for j in 1..size {
            let a = mul(&g[i][j], g00);
            let b = mul(&g[i][0], &g[0][j]);
            let d = mul(&(&a.0 - &b.0, &a.1 - &b.1), &inv_sq);
            let (r, c) = (2 * (i - 1), 2 * (j - 1));
            out[r][c] = d.0.clone();
            out[r][c + 1] = -d.1.clone();
            out[r + 1][c] = d.1.clone();
            out[r + 1][c + 1] = d.0;
        }
    }
    Ok(out)
}

/// Dimension of the eigenspace of `m` for the eigenvalue `lambda`.
pub fn eigenspace_dimension(m: &Matrix, lambda: &Rational) -> usize {
    let n = m.len();
    let shifted: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| if i == j { v - lambda } else { v.clone() })
                .collect()
        })
        .collect();
    n - linalg::rank(&shifted, n)
}

fn symmetry_multiplicities(differential: &Matrix) -> Result<(usize, usize)> {
    let plus = eigenspace_dimension(differential, &Rational::one());
    let minus = eigenspace_dimension(differential, &-Rational::one());
    if plus + minus != differential.len() {
        return Err(Error::InternalInconsistency(
            "geodesic symmetry differential is not an involution".into(),
        ));
    }
    Ok((plus, minus))
}

/// Multiplicities of the eigenvalues `+1` and `-1` of the differential at
/// the origin of the geodesic symmetry around the first complex line of
/// complex hyperbolic `m`-space, acting projectively on the ball of `C^m`.
pub fn complex_symmetry_multiplicities(m: usize) -> Result<(usize, usize)> {
    if !(2..=4).contains(&m) {
        return Err(Error::Precondition(format!("m = {m} is outside 2..=4")));
    }
    let g: Vec<Vec<ComplexRational>> = (0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| {
                    let re = match (i == j, i <= 1) {
                        (false, _) => Rational::zero(),
                        (true, true) => Rational::one(),
                        (true, false) => -Rational::one(),
                    };
                    (re, Rational::zero())
                })
                .collect()
        })
        .collect();
    symmetry_multiplicities(&projective_differential_at_origin(&g)?)
}

/// Real analogue: the symmetry around a geodesic through the centre of the
/// Klein ball of dimension `n`.
pub fn real_symmetry_multiplicities(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} is below 2")));
    }
    // diag(1, 1, -1, ..., -1) acting on [1 : u]; real part only.
    let size = n + 1;
    let mut diff = zeros(n, n);
    for i in 1..size {
        let gii = if i <= 1 { Rational::one() } else { -Rational::one() };
        // d_ij = (g_ij g_00 - g_i0 g_0j) / g_00^2 with g_00 = 1.
        diff[i - 1][i - 1] = gii;
    }
    symmetry_multiplicities(&diff)
}
