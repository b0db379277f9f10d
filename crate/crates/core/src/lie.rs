//! Matrix Lie algebras over the rationals: structure constants,
//! normalizers, centers and the algebra-level condition (A) proxy.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::rational::{self, Rational};

pub type Matrix = Vec<Vec<Rational>>;

fn zeros(n: usize) -> Matrix {
    vec![vec![Rational::zero(); n]; n]
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = zeros(n);
    m[i][j] = Rational::one();
    m
}

fn mat_add(a: &Matrix, b: &Matrix, sign: i64) -> Matrix {
    let s = rational::int(sign);
    a.iter()
        .zip(b)
        .map(|(r, t)| r.iter().zip(t).map(|(x, y)| x + &s * y).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

/// Matrix commutator `AB - BA`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_add(&mat_mul(a, b), &mat_mul(b, a), -1)
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    m.iter().flatten().cloned().collect()
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// A finite-dimensional Lie algebra of `d x d` rational matrices.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    name: String,
    matrix_dim: usize,
    basis: Vec<Matrix>,
    pivots: Vec<usize>,
    pivot_inverse: Matrix,
    constants: Vec<Vec<Vec<Rational>>>,
}

impl MatrixLieAlgebra {
    /// Validates sizes, linear independence and bracket closure, and
    /// computes the structure constants.
    pub fn new(name: impl Into<String>, matrix_dim: usize, basis: Vec<Matrix>) -> Result<Self> {
        let name = name.into();
        for (k, m) in basis.iter().enumerate() {
            if m.len() != matrix_dim || m.iter().any(|r| r.len() != matrix_dim) {
                return Err(Error::DimensionMismatch(format!(
                    "basis element {k} of {name} is not {matrix_dim}x{matrix_dim}"
                )));
            }
        }
        let flat: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
        let width = matrix_dim * matrix_dim;
        let ech = Echelon::new(&flat, width);
        if ech.rank() != basis.len() {
            return Err(Error::LinearDependence);
        }
        let pivots = ech.pivots().to_vec();
        let restricted: Matrix = pivots
            .iter()
            .map(|&p| flat.iter().map(|b| b[p].clone()).collect())
            .collect();
        let pivot_inverse = if basis.is_empty() {
            Vec::new()
        } else {
            linalg::inverse(&restricted).ok_or_else(|| {
                Error::InternalInconsistency("pivot block is singular".into())
            })?
        };
        let mut g = MatrixLieAlgebra {
            name,
            matrix_dim,
            basis,
            pivots,
            pivot_inverse,
            constants: Vec::new(),
        };
        g.constants = g.compute_structure_constants()?;
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coordinates of `m` over the basis, or `None` when `m` is outside the
    /// span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Rational>> {
        if m.len() != self.matrix_dim || m.iter().any(|r| r.len() != self.matrix_dim) {
            return None;
        }
        let flat = flatten(m);
        let rhs: Vec<Rational> = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        let coords: Vec<Rational> = self
            .pivot_inverse
            .iter()
            .map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum())
            .collect();
        if self.element(&coords) == *m {
            Some(coords)
        } else {
            None
        }
    }

    /// The matrix with the given coordinates.
    pub fn element(&self, coords: &[Rational]) -> Matrix {
        let mut out = zeros(self.matrix_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (orow, brow) in out.iter_mut().zip(b) {
                for (o, x) in orow.iter_mut().zip(brow) {
                    if !x.is_zero() {
                        *o += c * x;
                    }
                }
            }
        }
        out
    }

    fn compute_structure_constants(&self) -> Result<Vec<Vec<Vec<Rational>>>> {
        let d = self.dim();
        let mut c = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            c[i][i] = vec![Rational::zero(); d];
            for j in i + 1..d {
                let br = commutator(&self.basis[i], &self.basis[j]);
                let coords = self.coordinates(&br).ok_or_else(|| {
                    Error::NotClosed(format!(
                        "bracket of basis elements {i} and {j} leaves {}",
                        self.name
                    ))
                })?;
                c[j][i] = coords.iter().map(|x| -x).collect();
                c[i][j] = coords;
            }
        }
        Ok(c)
    }

    /// `c[i][j][k]` with `[X_i, X_j] = sum_k c[i][j][k] X_k`.
    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.constants
    }

    /// Bracket in coordinates.
    pub fn bracket_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                let w = ai * bj;
                for (o, c) in out.iter_mut().zip(&self.constants[i][j]) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Jacobi identity on the structure constants, checked on all basis
    /// triples.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let e = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        for i in 0..d {
            for j in i + 1..d {
                let ij = self.bracket_coords(&e(i), &e(j));
                for k in j + 1..d {
                    let a = self.bracket_coords(&ij, &e(k));
                    let b = self.bracket_coords(&self.bracket_coords(&e(j), &e(k)), &e(i));
                    let c = self.bracket_coords(&self.bracket_coords(&e(k), &e(i)), &e(j));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The whole algebra as a subalgebra of itself.
    pub fn whole(&self) -> Subalgebra {
        let d = self.dim();
        let span = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subalgebra { dim: d, span }
    }

    pub fn zero_subalgebra(&self) -> Subalgebra {
        Subalgebra {
            dim: self.dim(),
            span: Vec::new(),
        }
    }
}

impl fmt::Display for MatrixLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, {}x{} matrices)", self.name, self.dim(), self.matrix_dim, self.matrix_dim)
    }
}

/// A bracket-closed subspace, stored as a reduced basis of coefficient
/// vectors over the parent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    dim: usize,
    span: Vec<Vec<Rational>>,
}

impl Subalgebra {
    pub fn new(g: &MatrixLieAlgebra, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let d = g.dim();
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector of length {} in an algebra of dimension {d}",
                v.len()
            )));
        }
        let span = Echelon::new(&vectors, d).reduced_rows();
        for (i, a) in span.iter().enumerate() {
            for b in &span[i + 1..] {
                let br = g.bracket_coords(a, b);
                if !is_zero_vec(&br) && !linalg::span_contains(&span, &[br], d) {
                    return Err(Error::NotClosed("subspace is not a subalgebra".into()));
                }
            }
        }
        Ok(Subalgebra { dim: d, span })
    }

    /// Subalgebra spanned by the given matrices of `g`.
    pub fn from_matrices(g: &MatrixLieAlgebra, matrices: &[Matrix]) -> Result<Self> {
        let vectors = matrices
            .iter()
            .map(|m| {
                g.coordinates(m)
                    .ok_or_else(|| Error::Invalid(format!("matrix is not in {}", g.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, vectors)
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn span(&self) -> &[Vec<Rational>] {
        &self.span
    }

    pub fn contains(&self, other: &Subalgebra) -> bool {
        linalg::span_contains(&self.span, &other.span, self.dim)
    }
}

/// `{X : [X, h] in h}`.
pub fn normalizer(g: &MatrixLieAlgebra, h: &Subalgebra) -> Result<Subalgebra> {
    let d = g.dim();
    let ann = linalg::annihilator(h.span(), d);
    let ad: Vec<Vec<Vec<Rational>>> = h
        .span()
        .iter()
        .map(|hj| {
            (0..d)
                .map(|i| {
                    let mut e = vec![Rational::zero(); d];
                    e[i] = Rational::one();
                    g.bracket_coords(&e, hj)
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for cols in &ad {
        for w in &ann {
            let row: Vec<Rational> = cols
                .iter()
                .map(|v| v.iter().zip(w).map(|(a, b)| a * b).sum())
                .collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    Subalgebra::new(g, linalg::nullspace(&rows, d))
}

/// `{X : [X, Y] = 0 for all Y}`.
pub fn center(g: &MatrixLieAlgebra) -> Result<Subalgebra> {
    let d = g.dim();
    let c = g.structure_constants();
    let mut rows = Vec::new();
    for j in 0..d {
        for k in 0..d {
            let row: Vec<Rational> = (0..d).map(|i| c[i][j][k].clone()).collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    Subalgebra::new(g, linalg::nullspace(&rows, d))
}

/// Outcome of the algebra-level condition (A) test.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionA {
    pub algebra: String,
    pub algebra_dim: usize,
    pub subalgebra_dim: usize,
    pub normalizer_dim: usize,
    pub center_dim: usize,
    pub subalgebra_plus_center_dim: usize,
    pub holds: bool,
}

/// Proxy for condition (A): the normalizer of `h` equals `h + z(g)`.
pub fn condition_a_proxy(g: &MatrixLieAlgebra, h: &Subalgebra) -> Result<ConditionA> {
    let d = g.dim();
    let n = normalizer(g, h)?;
    let z = center(g)?;
    let sum: Vec<Vec<Rational>> = h.span().iter().chain(z.span()).cloned().collect();
    let sum_dim = linalg::rank(&sum, d);
    Ok(ConditionA {
        algebra: g.name().to_string(),
        algebra_dim: d,
        subalgebra_dim: h.dim(),
        normalizer_dim: n.dim(),
        center_dim: z.dim(),
        subalgebra_plus_center_dim: sum_dim,
        holds: linalg::same_span(n.span(), &sum, d),
    })
}

/// Block-diagonal direct sum of two algebras with the sum of subalgebras.
pub fn direct_product(
    g1: &MatrixLieAlgebra,
    h1: &Subalgebra,
    g2: &MatrixLieAlgebra,
    h2: &Subalgebra,
) -> Result<(MatrixLieAlgebra, Subalgebra)> {
    let (d1, d2) = (g1.matrix_dim(), g2.matrix_dim());
    let size = d1 + d2;
    let embed = |m: &Matrix, offset: usize| {
        let mut out = zeros(size);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[i + offset][j + offset] = x.clone();
            }
        }
        out
    };
    let basis = g1
        .basis()
        .iter()
        .map(|m| embed(m, 0))
        .chain(g2.basis().iter().map(|m| embed(m, d1)))
        .collect();
    let g = MatrixLieAlgebra::new(format!("{}*{}", g1.name(), g2.name()), size, basis)?;
    let (n1, n2) = (g1.dim(), g2.dim());
    let span = h1
        .span()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.resize(n1 + n2, Rational::zero());
            w
        })
        .chain(h2.span().iter().map(|v| {
            let mut w = vec![Rational::zero(); n1];
            w.extend(v.iter().cloned());
            w
        }))
        .collect();
    let h = Subalgebra::new(&g, span)?;
    Ok((g, h))
}

/// `so(1,n)` for the form `diag(-1, 1, ..., 1)`: boosts `E_0i + E_i0`, then
/// rotations `E_ij - E_ji`.
pub fn so_1n(n: usize) -> Result<MatrixLieAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("so(1,n) needs n >= 1".into()));
    }
    let d = n + 1;
    let mut basis = Vec::new();
    for i in 1..d {
        basis.push(mat_add(&unit(d, 0, i), &unit(d, i, 0), 1));
    }
    for i in 1..d {
        for j in i + 1..d {
            basis.push(mat_add(&unit(d, i, j), &unit(d, j, i), -1));
        }
    }
    MatrixLieAlgebra::new(format!("so(1,{n})"), d, basis)
}

/// `so(n)`: rotations `E_ij - E_ji`.
pub fn so_n(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 2 {
        return Err(Error::Precondition("so(n) needs n >= 2".into()));
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(mat_add(&unit(n, i, j), &unit(n, j, i), -1));
        }
    }
    MatrixLieAlgebra::new(format!("so({n})"), n, basis)
}

/// `se(n)` in the affine model: rotations in the top-left block, then
/// translations in the last column.
pub fn se_n(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 2 {
        return Err(Error::Precondition("se(n) needs n >= 2".into()));
    }
    let d = n + 1;
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(mat_add(&unit(d, i, j), &unit(d, j, i), -1));
        }
    }
    for i in 0..n {
        basis.push(unit(d, i, n));
    }
    MatrixLieAlgebra::new(format!("se({n})"), d, basis)
}

/// The abelian algebra of translations of `R^n` in the affine model.
pub fn abelian(n: usize) -> Result<MatrixLieAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("abelian(n) needs n >= 1".into()));
    }
    let basis = (0..n).map(|i| unit(n + 1, i, n)).collect();
    MatrixLieAlgebra::new(format!("abelian({n})"), n + 1, basis)
}

/// Real form of a complex matrix given as separate real and imaginary parts.
fn realify(re: &Matrix, im: &Matrix) -> Matrix {
    let n = re.len();
    let mut out = zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&re[i][j], &im[i][j]);
            out[2 * i][2 * j] = a.clone();
            out[2 * i][2 * j + 1] = -b.clone();
            out[2 * i + 1][2 * j] = b.clone();
            out[2 * i + 1][2 * j + 1] = a.clone();
        }
    }
    out
}

/// `su(1,m)` for the Hermitian form `diag(-1, 1, ..., 1)`, as real
/// `2(m+1) x 2(m+1)` matrices. The first `m^2` basis elements span the
/// maximal compact subalgebra `s(u(1) + u(m))`.
pub fn su_1m(m: usize) -> Result<MatrixLieAlgebra> {
    if m == 0 {
        return Err(Error::Precondition("su(1,m) needs m >= 1".into()));
    }
    let d = m + 1;
    let z = zeros(d);
    let mut basis = Vec::new();
    // Compact part: i(E_00 - E_kk), then E_kl - E_lk and i(E_kl + E_lk), k, l >= 1.
    for k in 1..d {
        basis.push(realify(&z, &mat_add(&unit(d, 0, 0), &unit(d, k, k), -1)));
    }
    for k in 1..d {
        for l in k + 1..d {
            basis.push(realify(&mat_add(&unit(d, k, l), &unit(d, l, k), -1), &z));
            basis.push(realify(&z, &mat_add(&unit(d, k, l), &unit(d, l, k), 1)));
        }
    }
    // Non-compact part: E_0k + E_k0 and i(E_k0 - E_0k).
    for k in 1..d {
        basis.push(realify(&mat_add(&unit(d, 0, k), &unit(d, k, 0), 1), &z));
        basis.push(realify(&z, &mat_add(&unit(d, k, 0), &unit(d, 0, k), -1)));
    }
    MatrixLieAlgebra::new(format!("su(1,{m})"), 2 * d, basis)
}

/// A built-in algebra together with the stabilizer of a base point.
#[derive(Clone, Debug)]
pub struct BuiltIn {
    pub algebra: MatrixLieAlgebra,
    pub stabilizer_name: String,
    pub stabilizer: Subalgebra,
}

fn first_k(g: &MatrixLieAlgebra, range: std::ops::Range<usize>) -> Result<Subalgebra> {
    let d = g.dim();
    let span = range
        .map(|i| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        })
        .collect();
    Subalgebra::new(g, span)
}

fn parse_args(s: &str, prefix: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Looks up `so(1,n)`, `so(n)`, `se(n)`, `abelian(n)` or `su(1,m)`.
pub fn builtin(name: &str) -> Result<BuiltIn> {
    let name = name.trim();
    let unknown = || Error::Parse(format!("unknown algebra {name:?}"));
    if let Some(args) = parse_args(name, "so") {
        return match args.as_slice() {
            [1, n] => {
                let g = so_1n(*n)?;
                let stab = first_k(&g, *n..g.dim())?;
                Ok(BuiltIn { stabilizer_name: format!("so({n})"), stabilizer: stab, algebra: g })
            }
            [n] => {
                let g = so_n(*n)?;
                let stab = g.whole();
                Ok(BuiltIn { stabilizer_name: format!("so({n})"), stabilizer: stab, algebra: g })
            }
            _ => Err(unknown()),
        };
    }
    if let Some([n]) = parse_args(name, "se").as_deref() {
        let g = se_n(*n)?;
        let stab = first_k(&g, 0..n * (n - 1) / 2)?;
        return Ok(BuiltIn { stabilizer_name: format!("so({n})"), stabilizer: stab, algebra: g });
    }
    if let Some([n]) = parse_args(name, "abelian").as_deref() {
        let g = abelian(*n)?;
        let stab = g.zero_subalgebra();
        return Ok(BuiltIn { stabilizer_name: "0".into(), stabilizer: stab, algebra: g });
    }
    if let Some([1, m]) = parse_args(name, "su").as_deref() {
        let g = su_1m(*m)?;
        let stab = first_k(&g, 0..m * m)?;
        return Ok(BuiltIn { stabilizer_name: format!("s(u(1)+u({m}))"), stabilizer: stab, algebra: g });
    }
    Err(unknown())
}

/// JSON description of an algebra: each basis element is a row-major list
/// of `matrix_dim^2` rationals, written as strings or integers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub matrix_dim: usize,
    pub basis: Vec<Vec<serde_json::Value>>,
}

/// JSON description of a subalgebra, either by coefficient vectors over
/// the parent basis or by matrices in the same layout as [`AlgebraJson`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubalgebraJson {
    #[serde(default)]
    pub span: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub basis: Option<Vec<Vec<serde_json::Value>>>,
}

fn parse_entry(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => rational::parse(s),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer; write rationals as strings"))),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

fn parse_matrix(entries: &[serde_json::Value], d: usize) -> Result<Matrix> {
    if entries.len() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "basis element has {} entries, expected {}",
            entries.len(),
            d * d
        )));
    }
    let flat = entries.iter().map(parse_entry).collect::<Result<Vec<_>>>()?;
    Ok(flat.chunks(d).map(|c| c.to_vec()).collect())
}

impl AlgebraJson {
    pub fn build(&self) -> Result<MatrixLieAlgebra> {
        let basis = self
            .basis
            .iter()
            .map(|b| parse_matrix(b, self.matrix_dim))
            .collect::<Result<Vec<_>>>()?;
        MatrixLieAlgebra::new(self.name.clone(), self.matrix_dim, basis)
    }
}

impl SubalgebraJson {
    pub fn build(&self, g: &MatrixLieAlgebra) -> Result<Subalgebra> {
        match (&self.span, &self.basis) {
            (Some(span), None) => {
                let vectors = span
                    .iter()
                    .map(|v| v.iter().map(parse_entry).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Subalgebra::new(g, vectors)
            }
            (None, Some(basis)) => {
                let mats = basis
                    .iter()
                    .map(|b| parse_matrix(b, g.matrix_dim()))
                    .collect::<Result<Vec<_>>>()?;
                Subalgebra::from_matrices(g, &mats)
            }
            _ => Err(Error::Parse(
                "subalgebra needs exactly one of \"span\" or \"basis\"".into(),
            )),
        }
    }
}

/// Resolves a subalgebra name relative to a built-in: `0`/`zero`, the
/// stabilizer name, or the algebra's own name (or `all`).
pub fn named_subalgebra(b: &BuiltIn, name: &str) -> Result<Subalgebra> {
    let name = name.trim();
    let compact = |s: &str| s.replace(' ', "");
    if name == "0" || name == "zero" {
        Ok(b.algebra.zero_subalgebra())
    } else if compact(name) == compact(&b.stabilizer_name) || (name == "u(m)" && b.algebra.name().starts_with("su(")) {
        Ok(b.stabilizer.clone())
    } else if name == "all" || compact(name) == compact(b.algebra.name()) {
        Ok(b.algebra.whole())
    } else {
        Err(Error::Parse(format!(
            "unknown subalgebra {name:?} of {}",
            b.algebra.name()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn coords_of(g: &MatrixLieAlgebra, m: &Matrix) -> Vec<Rational> {
        g.coordinates(m).expect("in the algebra")
    }

    #[test]
    fn so3_structure_constants_are_levi_civita() {
        let g = so_n(3).unwrap();
        // basis: L01, L02, L12 ; [L01, L02] = -L12 in this ordering
        let c = g.structure_constants();
        assert_eq!(c[0][1], vec![int(0), int(0), int(-1)]);
        assert_eq!(c[0][2], vec![int(0), int(1), int(0)]);
        assert_eq!(c[1][2], vec![int(-1), int(0), int(0)]);
        assert!(g.jacobi_holds());
    }

    #[test]
    fn abelian_constants_vanish() {
        let g = abelian(3).unwrap();
        assert!(g.structure_constants().iter().flatten().flatten().all(|x| x.is_zero()));
        assert_eq!(center(&g).unwrap().dim(), 3);
    }

    #[test]
    fn open_bracket_is_rejected() {
        let so3 = so_n(3).unwrap();
        let basis = so3.basis()[..2].to_vec();
        assert!(matches!(MatrixLieAlgebra::new("broken", 3, basis), Err(Error::NotClosed(_))));
        let dup = vec![so3.basis()[0].clone(), so3.basis()[0].clone()];
        assert!(matches!(MatrixLieAlgebra::new("dup", 3, dup), Err(Error::LinearDependence)));
    }

    #[test]
    fn coordinates_roundtrip() {
        let g = su_1m(2).unwrap();
        assert_eq!(g.dim(), 8);
        let v: Vec<Rational> = (0..8).map(|i| int(i as i64 - 3)).collect();
        assert_eq!(coords_of(&g, &g.element(&v)), v);
        assert!(g.coordinates(&zeros(6).iter().map(|_| vec![int(1); 6]).collect()).is_none());
        assert!(g.jacobi_holds());
    }

    #[test]
    fn normalizers() {
        let b = builtin("so(1,2)").unwrap();
        assert_eq!(normalizer(&b.algebra, &b.stabilizer).unwrap().dim(), 1);
        let b = builtin("se(2)").unwrap();
        let n = normalizer(&b.algebra, &b.stabilizer).unwrap();
        assert_eq!(n, b.stabilizer);
        let g = abelian(3).unwrap();
        let h = Subalgebra::new(&g, vec![vec![int(1), int(1), int(0)]]).unwrap();
        assert_eq!(normalizer(&g, &h).unwrap().dim(), 3);
    }

    #[test]
    fn normalizer_contains_subalgebra_and_center() {
        for name in ["so(1,3)", "se(3)", "abelian(2)", "su(1,2)", "so(4)"] {
            let b = builtin(name).unwrap();
            let n = normalizer(&b.algebra, &b.stabilizer).unwrap();
            assert!(n.contains(&b.stabilizer), "{name}");
            assert!(n.contains(&center(&b.algebra).unwrap()), "{name}");
        }
    }

    #[test]
    fn centers() {
        assert_eq!(center(&so_1n(3).unwrap()).unwrap().dim(), 0);
        assert_eq!(center(&se_n(2).unwrap()).unwrap().dim(), 0);
        assert_eq!(center(&su_1m(2).unwrap()).unwrap().dim(), 0);
    }

    #[test]
    fn condition_a_examples() {
        for name in ["so(1,2)", "so(1,3)", "se(2)", "se(3)", "abelian(4)", "su(1,2)"] {
            let b = builtin(name).unwrap();
            assert!(condition_a_proxy(&b.algebra, &b.stabilizer).unwrap().holds, "{name}");
        }
        // A nilpotent line in so(1,2) has a two-dimensional normalizer.
        let g = so_1n(2).unwrap();
        let h = Subalgebra::new(&g, vec![vec![int(1), int(0), int(1)]]).unwrap();
        let r = condition_a_proxy(&g, &h).unwrap();
        assert_eq!(r.normalizer_dim, 2);
        assert!(!r.holds);
    }

    #[test]
    fn products() {
        let a = builtin("so(1,2)").unwrap();
        let b = builtin("so(3)").unwrap();
        let (g, h) = direct_product(&a.algebra, &a.stabilizer, &b.algebra, &b.stabilizer).unwrap();
        assert_eq!(g.dim(), 6);
        assert_eq!(h.dim(), 4);
        let r = condition_a_proxy(&g, &h).unwrap();
        assert!(r.holds);
        let n1 = normalizer(&a.algebra, &a.stabilizer).unwrap().dim();
        let n2 = normalizer(&b.algebra, &b.stabilizer).unwrap().dim();
        assert_eq!(r.normalizer_dim, n1 + n2);
        let z = builtin("abelian(2)").unwrap();
        let (g, h) = direct_product(&z.algebra, &z.stabilizer, &z.algebra, &z.stabilizer).unwrap();
        assert!(condition_a_proxy(&g, &h).unwrap().holds);
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("so(1, 4)").unwrap().algebra.dim(), 10);
        assert_eq!(builtin("su(1,3)").unwrap().stabilizer.dim(), 9);
        assert!(builtin("sl(2)").is_err());
        let b = builtin("so(1,3)").unwrap();
        assert_eq!(named_subalgebra(&b, "so(3)").unwrap().dim(), 3);
        assert_eq!(named_subalgebra(&b, "zero").unwrap().dim(), 0);
        assert_eq!(named_subalgebra(&b, "so(1,3)").unwrap().dim(), 6);
        assert!(named_subalgebra(&b, "so(2)").is_err());
    }

    #[test]
    fn json_algebra() {
        let text = r#"{"name": "so(2)", "matrix_dim": 2, "basis": [["0", "1", "-1", 0]]}"#;
        let g: AlgebraJson = serde_json::from_str(text).unwrap();
        let g = g.build().unwrap();
        assert_eq!(g.dim(), 1);
        let h: SubalgebraJson = serde_json::from_str(r#"{"span": [["1/2"]]}"#).unwrap();
        assert_eq!(h.build(&g).unwrap().dim(), 1);
    }
}
