//! Stretching germs and the pullback of boundary-tangent vector fields.
//!
//! Near a boundary point, a stretching map reads `(x, y) -> (x, f(y))` in
//! collar coordinates. A vector field
//!
//! ```text
//! V = sum_i alpha_i(x, y) d/dx_i + beta(x, y) d/dy,    beta(x, 0) = 0
//! ```
//!
//! pulls back to
//!
//! ```text
//! sum_i alpha_i(x, f(y)) d/dx_i + beta_1(x, f(y)) (f/f')(y) d/dy,   beta = y beta_1,
//! ```
//!
//! which is analytic whenever `f/f'` is. For `f = y^p` the pullback acts on
//! monomials: `x^a y^b d/dx_i -> x^a y^(pb) d/dx_i` and
//! `x^a y^b d/dy -> (1/p) x^a y^(pb+1-p) d/dy`.
//!
//! Collar field components are jets; the pullbacks treat them as the
//! polynomial fields they store, so no image of a stored term is dropped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{vector_field_bracket, SeriesJson, TruncatedSeries, Valuation};

/// Germ at 0 of an analytic stretching function, stored as a univariate
/// series with zero constant term and positive lowest coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StretchGerm {
    series: TruncatedSeries,
    valuation: u32,
    leading_coeff: Rational,
    /// `q` with `f/f' = y q(y)`; `q(0) = 1/p`.
    ratio: TruncatedSeries,
}

impl StretchGerm {
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        if series.num_vars() != 1 {
            return Err(Error::NotAGerm(format!(
                "expected a univariate series, got {} variables",
                series.num_vars()
            )));
        }
        let Valuation::Finite(p) = series.y_valuation() else {
            return Err(Error::NotAGerm("zero series".into()));
        };
        if p == 0 {
            return Err(Error::NotAGerm("non-zero constant term, f(0) != 0".into()));
        }
        let leading_coeff = series.coeff(&[p]);
        if leading_coeff <= Rational::from_integer(0.into()) {
            return Err(Error::NotAGerm(format!(
                "lowest coefficient {} is not positive",
                rational::render(&leading_coeff)
            )));
        }

        // f = y^p u_f and f' = y^(p-1) u_f' with units u_f, u_f'.
        let mut unit_f = series.clone();
        for _ in 0..p {
            unit_f = unit_f.divide_by_y()?;
        }
        let mut unit_df = series.derivative(0)?;
        for _ in 1..p {
            unit_df = unit_df.divide_by_y()?;
        }
        let ratio = unit_f.mul(&unit_df.inverse()?)?;
        let p_rat = Rational::from_integer(p.into());
        if ratio.constant_term() * &p_rat != Rational::from_integer(1.into()) {
            return Err(Error::InternalInconsistency(
                "f/f' is not of the form (y/p) times a unit".into(),
            ));
        }
        Ok(StretchGerm {
            series,
            valuation: p,
            leading_coeff,
            ratio,
        })
    }

    /// The canonical representative `y -> y^p`, known to order `order`.
    pub fn power(p: u32, order: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::NotAGerm("exponent must be positive".into()));
        }
        if order <= p {
            return Err(Error::Precondition(format!(
                "order {order} too low to represent y^{p}"
            )));
        }
        Self::new(TruncatedSeries::monomial(
            1,
            order,
            vec![p],
            Rational::from_integer(1.into()),
        )?)
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    pub fn leading_coeff(&self) -> &Rational {
        &self.leading_coeff
    }

    pub fn order(&self) -> u32 {
        self.series.order()
    }

    /// A stretching function is trivial when it is a diffeomorphism.
    pub fn is_trivial(&self) -> bool {
        self.valuation == 1
    }

    /// `g^{-1} f` is a diffeomorphism at 0 exactly when the valuations agree.
    pub fn equivalent(&self, other: &StretchGerm) -> bool {
        self.valuation == other.valuation
    }

    /// The unit-like factor `q` in `f/f' = y q(y)`.
    pub fn ratio_factor(&self) -> &TruncatedSeries {
        &self.ratio
    }

    /// The germ of `f/f'`.
    pub fn f_over_fprime(&self) -> TruncatedSeries {
        self.ratio.multiply_by_y()
    }

    pub fn eval_f64(&self, y: f64) -> f64 {
        self.series.eval_f64(&[y]).expect("univariate")
    }

    pub fn derivative_f64(&self, y: f64) -> f64 {
        self.series
            .derivative(0)
            .and_then(|d| d.eval_f64(&[y]))
            .expect("univariate")
    }
}

/// A vector field near the boundary in collar coordinates
/// `(x_1, ..., x_{n-1}, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollarField {
    n: usize,
    tangential: Vec<TruncatedSeries>,
    normal: TruncatedSeries,
}

impl CollarField {
    /// Components are truncated to their common (minimum) order.
    pub fn new(tangential: Vec<TruncatedSeries>, normal: TruncatedSeries) -> Result<Self> {
        let n = tangential.len() + 1;
        if n < 2 {
            return Err(Error::DimensionMismatch(
                "a collar field needs at least one tangential component".into(),
            ));
        }
        for s in tangential.iter().chain(std::iter::once(&normal)) {
            if s.num_vars() != n {
                return Err(Error::VarMismatch {
                    left: s.num_vars(),
                    right: n,
                });
            }
        }
        let order = tangential
            .iter()
            .map(|s| s.order())
            .chain(std::iter::once(normal.order()))
            .min()
            .unwrap_or(0);
        Ok(CollarField {
            n,
            tangential: tangential.iter().map(|s| s.truncate(order)).collect(),
            normal: normal.truncate(order),
        })
    }

    pub fn from_components(mut components: Vec<TruncatedSeries>) -> Result<Self> {
        let normal = components
            .pop()
            .ok_or_else(|| Error::DimensionMismatch("no components".into()))?;
        Self::new(components, normal)
    }

    pub fn zero(n: usize, order: u32) -> Result<Self> {
        Self::new(
            vec![TruncatedSeries::zero(n, order); n - 1],
            TruncatedSeries::zero(n, order),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.normal.order()
    }

    pub fn tangential(&self) -> &[TruncatedSeries] {
        &self.tangential
    }

    pub fn normal(&self) -> &TruncatedSeries {
        &self.normal
    }

    /// Tangential components followed by the normal one.
    pub fn components(&self) -> Vec<TruncatedSeries> {
        let mut c = self.tangential.clone();
        c.push(self.normal.clone());
        c
    }

    /// Tangent to `{y = 0}`: no normal term is free of `y`.
    pub fn is_tangent(&self) -> bool {
        self.normal.y_valuation() >= Valuation::Finite(1)
    }

    pub fn is_zero(&self) -> bool {
        self.normal.is_zero() && self.tangential.iter().all(|s| s.is_zero())
    }

    pub fn truncate(&self, order: u32) -> Self {
        CollarField {
            n: self.n,
            tangential: self.tangential.iter().map(|s| s.truncate(order)).collect(),
            normal: self.normal.truncate(order),
        }
    }

    /// Vector-field bracket in collar coordinates.
    pub fn bracket(&self, other: &CollarField) -> Result<CollarField> {
        Self::from_components(vector_field_bracket(
            &self.components(),
            &other.components(),
        )?)
    }

    pub fn add(&self, other: &CollarField) -> Result<CollarField> {
        let comps = self
            .components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| a.add(&b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_components(comps)
    }

    pub fn scale(&self, c: &Rational) -> CollarField {
        CollarField {
            n: self.n,
            tangential: self.tangential.iter().map(|s| s.scale(c)).collect(),
            normal: self.normal.scale(c),
        }
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.tangential
            .iter()
            .chain(std::iter::once(&self.normal))
            .map(|s| s.eval_f64(point))
            .collect()
    }

    fn require_tangent(&self) -> Result<()> {
        if !self.is_tangent() {
            return Err(Error::NotTangent(format!(
                "normal component has y-valuation 0: {}",
                self.normal
            )));
        }
        Ok(())
    }
}

/// Pullback of a tangent collar field by `(x, y) -> (x, y^p)`.
///
/// The result order is `p (D - 1) + 1` for an input of order `D`, so that the
/// image of every stored monomial is kept.
pub fn pullback_analytic(vf: &CollarField, p: u32) -> Result<CollarField> {
    if p == 0 {
        return Err(Error::Precondition("stretch exponent must be positive".into()));
    }
    vf.require_tangent()?;
    let d = vf.order();
    let order = if d == 0 { 0 } else { p * (d - 1) + 1 };
    let last = vf.n - 1;
    let inv_p = Rational::new(1.into(), p.into());

    let tangential = vf
        .tangential
        .iter()
        .map(|s| {
            TruncatedSeries::from_terms(
                vf.n,
                order,
                s.terms().map(|(e, c)| {
                    let mut e = e.clone();
                    e[last] *= p;
                    (e, c.clone())
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let normal = TruncatedSeries::from_terms(
        vf.n,
        order,
        vf.normal.terms().map(|(e, c)| {
            let mut e = e.clone();
            e[last] = p * e[last] + 1 - p;
            (e, c * &inv_p)
        }),
    )?;
    CollarField::new(tangential, normal)
}

/// Pullback of a tangent collar field by `(x, y) -> (x, f(y))` for an
/// arbitrary stretching germ, through the factorization `beta = y beta_1`.
///
/// The precision is limited by the germ: `f / f'` is known to order
/// `G - p + 1` for a germ of order `G`, so every stretched term of a jet of
/// order `D` is kept only when `G >= p D`.
pub fn pullback_smooth(vf: &CollarField, f: &StretchGerm) -> Result<CollarField> {
    vf.require_tangent()?;
    let n = vf.n;
    let p = f.valuation();
    let d = vf.order();
    let target = if d == 0 { 0 } else { p * (d - 1) + 1 }.max(f.order());

    let tangential = vf
        .tangential
        .iter()
        .map(|s| s.with_order(target).substitute_y(f.series()))
        .collect::<Result<Vec<_>>>()?;

    let beta_1 = vf.normal.divide_by_y()?.with_order(target);
    let ratio = f.ratio_factor().embed_as_y(n)?;
    let normal = beta_1
        .substitute_y(f.series())?
        .mul(&ratio)?
        .multiply_by_y();
    CollarField::new(tangential, normal)
}

/// Valuations in `y` of every component of a collar field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationProfile {
    pub tangential: Vec<Valuation>,
    pub normal: Valuation,
}

pub fn valuation_profile(vf: &CollarField) -> ValuationProfile {
    ValuationProfile {
        tangential: vf.tangential.iter().map(|s| s.y_valuation()).collect(),
        normal: vf.normal.y_valuation(),
    }
}

/// Exponent law of the pullback by `y^p`: tangential `v -> p v`, normal
/// `v -> p v - p + 1`.
pub fn valuation_transform_law(profile: &ValuationProfile, p: u32) -> ValuationProfile {
    let map = |v: Valuation, shift: bool| match v {
        Valuation::Infinite => Valuation::Infinite,
        Valuation::Finite(v) if shift => Valuation::Finite((p * v + 1).saturating_sub(p)),
        Valuation::Finite(v) => Valuation::Finite(p * v),
    };
    ValuationProfile {
        tangential: profile.tangential.iter().map(|&v| map(v, false)).collect(),
        normal: map(profile.normal, true),
    }
}

/// Checks `pullback([V, W]) = [pullback(V), pullback(W)]` exactly, at the
/// order to which the bracket of the jets is determined.
pub fn bracket_commutes_with_pullback(v: &CollarField, w: &CollarField, p: u32) -> Result<bool> {
    let d = v.order().min(w.order());
    let cmp = d.saturating_sub(1);
    let lhs = pullback_analytic(&v.bracket(w)?, p)?.truncate(cmp);
    let pv = pullback_analytic(v, p)?.truncate(d);
    let pw = pullback_analytic(w, p)?.truncate(d);
    let rhs = pv.bracket(&pw)?.truncate(cmp);
    Ok(lhs == rhs)
}

/// Outcome of a numeric cross-validation.
#[derive(Clone, Debug, Serialize)]
pub struct NumericCheck {
    pub samples: usize,
    pub max_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Compares the symbolic pullback of `vf` by `f` with the chain rule
/// `(D Phi_f)^{-1} V(Phi_f(z))`, evaluating `V` from the jet itself.
pub fn numeric_pullback_check(
    vf: &CollarField,
    f: &StretchGerm,
    samples: &[Vec<f64>],
    tol: f64,
) -> Result<NumericCheck> {
    let jet = vf.clone();
    numeric_pullback_check_against(vf, |z| jet.eval_f64(z), f, samples, tol)
}

/// Like [`numeric_pullback_check`], with `V` evaluated by `original`, for
/// instance a closed-form field of which `vf` is a jet.
pub fn numeric_pullback_check_against<F>(
    vf: &CollarField,
    original: F,
    f: &StretchGerm,
    samples: &[Vec<f64>],
    tol: f64,
) -> Result<NumericCheck>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    for z in samples {
        if z.len() != vf.n {
            return Err(Error::SampleOutOfRange(format!(
                "sample has {} coordinates, field has {}",
                z.len(),
                vf.n
            )));
        }
        let y = z[vf.n - 1];
        if z.iter().any(|c| !c.is_finite()) || !(y > 0.0 && y < 1.0) {
            return Err(Error::SampleOutOfRange(format!(
                "sample {z:?} needs finite coordinates and y in (0, 1)"
            )));
        }
    }
    let symbolic = pullback_smooth(vf, f)?;
    let mut max_deviation: f64 = 0.0;
    for z in samples {
        let y = z[vf.n - 1];
        let mut image = z.clone();
        image[vf.n - 1] = f.eval_f64(y);
        let mut direct = original(&image)?;
        direct[vf.n - 1] /= f.derivative_f64(y);
        let sym = symbolic.eval_f64(z)?;
        for (a, b) in sym.iter().zip(&direct) {
            max_deviation = max_deviation.max((a - b).abs());
        }
    }
    Ok(NumericCheck {
        samples: samples.len(),
        max_deviation,
        tol,
        passed: max_deviation <= tol,
    })
}

/// Deterministic sample points with `x_i` uniform in `[-x_half_width,
/// x_half_width]` and `y` uniform in `y_range`.
pub fn sample_points(
    n: usize,
    count: usize,
    seed: u64,
    y_range: (f64, f64),
    x_half_width: f64,
) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut z: Vec<f64> = (0..n - 1)
                .map(|_| rng.random_range(-x_half_width..=x_half_width))
                .collect();
            z.push(rng.random_range(y_range.0..=y_range.1));
            z
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    #[serde(flatten)]
    series: SeriesJson,
    n: usize,
    role: String,
    index: usize,
}

#[derive(Serialize, Deserialize)]
struct CollarFieldJson {
    n: usize,
    components: Vec<ComponentJson>,
}

impl Serialize for CollarField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut components: Vec<ComponentJson> = self
            .tangential
            .iter()
            .enumerate()
            .map(|(i, t)| ComponentJson {
                series: t.into(),
                n: self.n,
                role: "tangential".into(),
                index: i,
            })
            .collect();
        components.push(ComponentJson {
            series: (&self.normal).into(),
            n: self.n,
            role: "normal".into(),
            index: 0,
        });
        CollarFieldJson {
            n: self.n,
            components,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CollarField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CollarFieldJson::deserialize(d)?;
        let mut tangential: Vec<Option<TruncatedSeries>> = vec![None; j.n.saturating_sub(1)];
        let mut normal = None;
        for c in j.components {
            if c.n != j.n {
                return Err(D::Error::custom("component dimension differs from field"));
            }
            let s = TruncatedSeries::try_from(c.series).map_err(D::Error::custom)?;
            match c.role.as_str() {
                "tangential" if c.index < tangential.len() && tangential[c.index].is_none() => {
                    tangential[c.index] = Some(s)
                }
                "normal" if normal.is_none() => normal = Some(s),
                other => {
                    return Err(D::Error::custom(format!(
                        "unexpected or duplicate component role {other:?} index {}",
                        c.index
                    )))
                }
            }
        }
        let tangential = tangential
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| D::Error::custom("missing tangential component"))?;
        let normal = normal.ok_or_else(|| D::Error::custom("missing normal component"))?;
        CollarField::new(tangential, normal).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GermJson {
    #[serde(flatten)]
    series: SeriesJson,
    #[serde(default)]
    valuation: Option<u32>,
}

impl Serialize for StretchGerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GermJson {
            series: (&self.series).into(),
            valuation: Some(self.valuation),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StretchGerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GermJson::deserialize(d)?;
        let series = TruncatedSeries::try_from(j.series).map_err(D::Error::custom)?;
        let germ = StretchGerm::new(series).map_err(D::Error::custom)?;
        if let Some(v) = j.valuation {
            if v != germ.valuation {
                return Err(D::Error::custom(format!(
                    "declared valuation {v} but series has valuation {}",
                    germ.valuation
                )));
            }
        }
        Ok(germ)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn mono(n: usize, order: u32, e: &[u32], c: Rational) -> TruncatedSeries {
        TruncatedSeries::monomial(n, order, e.to_vec(), c).unwrap()
    }

    fn uni(order: u32, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::univariate(order, &c.iter().map(|&k| int(k)).collect::<Vec<_>>())
    }

    /// y d/dy in two variables.
    fn radial(order: u32) -> CollarField {
        CollarField::new(
            vec![TruncatedSeries::zero(2, order)],
            mono(2, order, &[0, 1], int(1)),
        )
        .unwrap()
    }

    #[test]
    fn germ_construction() {
        let g = StretchGerm::new(uni(6, &[0, 0, 1])).unwrap();
        assert_eq!(g.valuation(), 2);
        assert_eq!(g.leading_coeff(), &int(1));
        assert!(!g.is_trivial());
        let id = StretchGerm::new(uni(6, &[0, 1])).unwrap();
        assert_eq!(id.valuation(), 1);
        assert!(id.is_trivial());
        assert!(matches!(
            StretchGerm::new(uni(6, &[1, 1])),
            Err(Error::NotAGerm(_))
        ));
        assert!(StretchGerm::new(TruncatedSeries::zero(1, 4)).is_err());
        assert!(StretchGerm::new(uni(4, &[0, -1])).is_err());
        assert!(StretchGerm::new(TruncatedSeries::y(2, 4)).is_err());
    }

    #[test]
    fn germ_ratio_is_y_over_p_times_unit() {
        // f = 2y + y^2: f/f' = y (1 + y/2) / (1 + y)
        let f = StretchGerm::new(uni(8, &[0, 2, 1])).unwrap();
        let expected = uni(7, &[2, 1])
            .mul(&uni(7, &[1, 1]).inverse().unwrap())
            .unwrap()
            .scale(&frac(1, 2));
        assert_eq!(f.ratio_factor(), &expected);
        let g = StretchGerm::power(3, 10).unwrap();
        assert_eq!(g.ratio_factor(), &TruncatedSeries::constant(1, 7, frac(1, 3)));
    }

    #[test]
    fn germ_equivalence() {
        let y2 = StretchGerm::power(2, 6).unwrap();
        let other = StretchGerm::new(uni(6, &[0, 0, 2, 1])).unwrap();
        let y3 = StretchGerm::power(3, 6).unwrap();
        assert!(y2.equivalent(&other));
        assert!(!y2.equivalent(&y3));
        assert!(y3.equivalent(&y3));
    }

    #[test]
    fn analytic_pullback_examples() {
        let v = pullback_analytic(&radial(6), 2).unwrap();
        assert_eq!(v.normal(), &mono(2, 11, &[0, 1], frac(1, 2)));

        let dx = CollarField::new(
            vec![TruncatedSeries::one(2, 5)],
            TruncatedSeries::zero(2, 5),
        )
        .unwrap();
        let pulled = pullback_analytic(&dx, 3).unwrap();
        assert_eq!(pulled.tangential()[0].terms().count(), 1);
        assert_eq!(pulled.tangential()[0].constant_term(), int(1));
        assert!(pulled.normal().is_zero());

        // x y d/dx + y^2 d/dy with p = 2
        let vf = CollarField::new(
            vec![mono(2, 6, &[1, 1], int(1))],
            mono(2, 6, &[0, 2], int(1)),
        )
        .unwrap();
        let pulled = pullback_analytic(&vf, 2).unwrap();
        assert_eq!(pulled.tangential()[0], mono(2, 11, &[1, 2], int(1)));
        assert_eq!(pulled.normal(), &mono(2, 11, &[0, 3], frac(1, 2)));
    }

    #[test]
    fn pullback_rejects_non_tangent() {
        let dy = CollarField::new(
            vec![TruncatedSeries::zero(2, 4)],
            TruncatedSeries::one(2, 4),
        )
        .unwrap();
        assert!(matches!(pullback_analytic(&dy, 2), Err(Error::NotTangent(_))));
        let g = StretchGerm::power(2, 8).unwrap();
        assert!(matches!(pullback_smooth(&dy, &g), Err(Error::NotTangent(_))));
    }

    #[test]
    fn smooth_pullback_examples() {
        let y2 = StretchGerm::power(2, 16).unwrap();
        let smooth = pullback_smooth(&radial(6), &y2).unwrap();
        let analytic = pullback_analytic(&radial(6), 2).unwrap();
        let d = smooth.order().min(analytic.order());
        assert_eq!(smooth.truncate(d), analytic.truncate(d));

        let id = StretchGerm::power(1, 8).unwrap();
        assert_eq!(pullback_smooth(&radial(6), &id).unwrap().truncate(6), radial(6));

        // y d/dx + x y d/dy under f = 2y + y^2
        let order = 8;
        let vf = CollarField::new(
            vec![mono(2, order, &[0, 1], int(1))],
            mono(2, order, &[1, 1], int(1)),
        )
        .unwrap();
        let f = StretchGerm::new(uni(order, &[0, 2, 1])).unwrap();
        let pulled = pullback_smooth(&vf, &f).unwrap();
        let fy = f.series().embed_as_y(2).unwrap();
        assert_eq!(pulled.tangential()[0], fy.truncate(pulled.order()));
        // x y (1 + y/2) / (1 + y)
        let x = TruncatedSeries::var(2, order, 0).unwrap();
        let y = TruncatedSeries::y(2, order);
        let num = TruncatedSeries::one(2, order)
            .add(&y.scale(&frac(1, 2)))
            .unwrap();
        let den = TruncatedSeries::one(2, order).add(&y).unwrap();
        let expected = x
            .mul(&y)
            .unwrap()
            .mul(&num)
            .unwrap()
            .mul(&den.inverse().unwrap())
            .unwrap();
        assert_eq!(pulled.normal(), &expected.truncate(pulled.order()));
    }

    #[test]
    fn valuation_profiles() {
        let p = valuation_profile(&radial(5));
        assert_eq!(p.tangential, vec![Valuation::Infinite]);
        assert_eq!(p.normal, Valuation::Finite(1));

        let vf = CollarField::new(
            vec![mono(2, 6, &[1, 2], int(1))],
            mono(2, 6, &[0, 3], int(1)),
        )
        .unwrap();
        let p = valuation_profile(&vf);
        assert_eq!(p.tangential, vec![Valuation::Finite(2)]);
        assert_eq!(p.normal, Valuation::Finite(3));
    }

    #[test]
    fn transform_law_examples() {
        let prof = |t: Valuation, n: Valuation| ValuationProfile {
            tangential: vec![t],
            normal: n,
        };
        let law = valuation_transform_law(&prof(Valuation::Finite(0), Valuation::Finite(1)), 2);
        assert_eq!(law.normal, Valuation::Finite(1));
        let law = valuation_transform_law(&prof(Valuation::Finite(0), Valuation::Finite(2)), 2);
        assert_eq!(law.normal, Valuation::Finite(3));
        let law = valuation_transform_law(&prof(Valuation::Finite(0), Valuation::Infinite), 5);
        assert_eq!(law.tangential, vec![Valuation::Finite(0)]);
        assert_eq!(law.normal, Valuation::Infinite);
    }

    #[test]
    fn numeric_check_radial_field() {
        let samples = sample_points(2, 20, 7, (0.1, 0.5), 0.3);
        let f = StretchGerm::power(2, 16).unwrap();
        let r = numeric_pullback_check(&radial(8), &f, &samples, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");

        let dx = CollarField::new(vec![TruncatedSeries::one(2, 5)], TruncatedSeries::zero(2, 5))
            .unwrap();
        let f = StretchGerm::power(3, 16).unwrap();
        let r = numeric_pullback_check(&dx, &f, &samples, 0.0).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn numeric_check_rejects_bad_samples() {
        let f = StretchGerm::power(2, 8).unwrap();
        let e = numeric_pullback_check(&radial(4), &f, &[vec![0.0, 1.5]], 1e-9);
        assert!(matches!(e, Err(Error::SampleOutOfRange(_))));
        let e = numeric_pullback_check(&radial(4), &f, &[vec![0.0]], 1e-9);
        assert!(matches!(e, Err(Error::SampleOutOfRange(_))));
    }

    #[test]
    fn truncated_germ_shows_up_numerically() {
        // A germ known only to low order cannot reproduce f/f' far from 0.
        let samples = sample_points(2, 10, 1, (0.85, 0.95), 0.1);
        let coarse = StretchGerm::new(uni(3, &[0, 2, 1])).unwrap();
        let r = numeric_pullback_check(&radial(2), &coarse, &samples, 1e-12).unwrap();
        assert!(!r.passed, "{r:?}");
    }

    #[test]
    fn json_round_trip() {
        let vf = CollarField::new(
            vec![mono(2, 6, &[1, 1], frac(1, 3))],
            mono(2, 6, &[0, 2], int(-1)),
        )
        .unwrap();
        let j = serde_json::to_value(&vf).unwrap();
        assert_eq!(j["components"][1]["role"], "normal");
        assert_eq!(j["components"][0]["n"], 2);
        let back: CollarField = serde_json::from_value(j).unwrap();
        assert_eq!(back, vf);

        let g = StretchGerm::power(2, 5).unwrap();
        let j = serde_json::to_value(&g).unwrap();
        assert_eq!(j["valuation"], 2);
        let back: StretchGerm = serde_json::from_value(j).unwrap();
        assert_eq!(back, g);
    }
}
