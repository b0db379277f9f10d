//! Exact linear algebra over the rationals.
//!
//! Rows are cleared of denominators and reduced with fraction-free
//! (Bareiss) elimination over the integers; rationals only reappear in the
//! final back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Integer row-echelon form produced by Bareiss elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    ncols: usize,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

impl Echelon {
    pub fn new(rows: &[Vec<Rational>], ncols: usize) -> Self {
        let mut a: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix");
                integer_row(r)
            })
            .collect();
        let m = a.len();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    // Still needs scaling to keep entries as minors.
                    for j in c + 1..ncols {
                        let v = &a[r][c] * &a[i][j];
                        let (q, rem) = v.div_rem(&prev);
                        debug_assert!(rem.is_zero());
                        a[i][j] = q;
                    }
                    continue;
                }
                for j in c + 1..ncols {
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    a[i][j] = q;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon {
            rows: a,
            pivots,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (i, &p) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[i];
                    let mut s = Rational::zero();
                    for j in p + 1..self.ncols {
                        if !row[j].is_zero() && !v[j].is_zero() {
                            s += Rational::from_integer(row[j].clone()) * &v[j];
                        }
                    }
                    v[p] = -s / Rational::from_integer(row[p].clone());
                }
                v
            })
            .collect()
    }

    /// Reduced row-echelon basis of the row space (pivot entries equal 1).
    pub fn reduced_rows(&self) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let lead = Rational::from_integer(row[p].clone());
                row.iter()
                    .map(|x| Rational::from_integer(x.clone()) / &lead)
                    .collect()
            })
            .collect();
        for i in (0..out.len()).rev() {
            let p = self.pivots[i];
            for k in 0..i {
                let factor = out[k][p].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in p..self.ncols {
                    let d = &factor * &out[i][j];
                    out[k][j] -= d;
                }
            }
        }
        out
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    Echelon::new(rows, ncols).rank()
}

/// Right nullspace `{v : A v = 0}` of the matrix with the given rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    Echelon::new(rows, ncols).nullspace()
}

/// Annihilator of a span: all `w` with `w . v = 0` for every spanning `v`.
pub fn annihilator(span: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    nullspace(span, dim)
}

/// True when the two families span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = rank(a, dim);
    let rb = rank(b, dim);
    if ra != rb {
        return false;
    }
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    rank(&both, dim) == ra
}

/// True when every vector of `a` lies in the span of `b`.
pub fn span_contains(b: &[Vec<Rational>], a: &[Vec<Rational>], dim: usize) -> bool {
    let rb = rank(b, dim);
    let both: Vec<Vec<Rational>> = b.iter().chain(a).cloned().collect();
    rank(&both, dim) == rb
}

/// Solves `A x = b`, returning one solution (free variables zero) or `None`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = Echelon::new(&aug, ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let rref = ech.reduced_rows();
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in rref.iter().zip(&ech.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let lead = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &lead;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..2 * n {
                let d = &factor * &a[c][j];
                a[i][j] -= d;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
