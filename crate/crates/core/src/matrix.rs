//! Dense square matrices over exact rings.
//!
//! `ExactMatrix` holds rationals, `PolyMatrix` holds polynomials in the
//! Hurwitz parameters. JSON form: `{ "dim": n, "rows": [["p/q", ...], ...] }`,
//! with polynomial entries written as expressions such as `"-u5"`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, GaussRational, MultiPoly, Rational};

/// Minimal exact ring interface shared by matrix entry types.
pub trait Ring: Clone + PartialEq + fmt::Debug + Zero + One {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for MultiPoly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for GaussRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

pub type ExactMatrix = Matrix<Rational>;
pub type PolyMatrix = Matrix<MultiPoly>;
pub type GaussMatrix = Matrix<GaussRational>;

impl<T: Ring> Matrix<T> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scalar(dim: usize, c: &T) -> Self {
        Self::from_fn(dim, |i, j| if i == j { c.clone() } else { T::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j).neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.dim, |i, j| c.mul(self.get(i, j)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            let mut acc = T::zero();
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = Ring::add(&acc, &Ring::mul(a, b));
                }
            }
            acc
        })
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j).add(self.get(j, i)).is_zero()))
    }

    pub fn principal_minor(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.dim);
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    /// `[[a, b], [c, d]]` from square `a`, `d` and rectangular `b`, `c`
    /// given as row lists.
    pub fn block(a: &Self, b: &[Vec<T>], c: &[Vec<T>], d: &Self) -> Self {
        let p = a.dim;
        let n = p + d.dim;
        Self::from_fn(n, |i, j| match (i < p, j < p) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b[i][j - p].clone(),
            (false, true) => c[i - p][j].clone(),
            (false, false) => d.get(i - p, j - p).clone(),
        })
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }
}

impl ExactMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::exactnum::int(v)).collect())
            .collect();
        Matrix::from_rows(rows).expect("square integer matrix")
    }

    /// Gauss-Jordan with partial pivoting (largest magnitude in the column).
    pub fn inverse(&self) -> Result<ExactMatrix> {
        let n = self.dim;
        let mut a: Vec<Vec<Rational>> = self.rows().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()))
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
        Matrix::from_rows(inv)
    }

    pub fn det(&self) -> Rational {
        let n = self.dim;
        let mut a: Vec<Vec<Rational>> = self.rows().map(|r| r.to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for j in col..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
        det
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows().map(|r| r.iter().map(crate::exactnum::to_f64).collect()).collect()
    }

    /// Largest absolute entry (exact).
    pub fn max_abs(&self) -> Rational {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl PolyMatrix {
    pub fn eval(&self, point: &[Rational]) -> Result<ExactMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.clone().with_arity(crate::exactnum::Family::U, point.len().max(p.arity())).eval(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { dim: self.dim, entries })
    }

    /// Fraction-free (Bareiss) solve of `A X = B`.
    ///
    /// Returns `(det A, det A * X)`; every division performed is exact, so
    /// both outputs are polynomials. Fails with `Singular` when `det A = 0`.
    pub fn solve_fraction_free(a: &PolyMatrix, b: &PolyMatrix) -> Result<(MultiPoly, PolyMatrix)> {
        let n = a.dim;
        assert_eq!(b.dim, n);
        let width = 2 * n;
        let mut m: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| {
                let mut row: Vec<MultiPoly> = a.entries[i * n..(i + 1) * n].to_vec();
                row.extend_from_slice(&b.entries[i * n..(i + 1) * n]);
                row
            })
            .collect();
        let mut sign_flip = false;
        let mut prev = MultiPoly::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
            if pivot != k {
                m.swap(k, pivot);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..width {
                    let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.div_exact(&prev)?;
                }
                m[i][k] = MultiPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = prev.clone();
        // Back substitution for det * X, column by column.
        let mut x = vec![vec![MultiPoly::zero(); n]; n];
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = &det * &m[i][n + col];
                for j in i + 1..n {
                    acc = &acc - &(&m[i][j] * &x[j][col]);
                }
                x[i][col] = acc.div_exact(&m[i][i])?;
            }
        }
        let det = if sign_flip { -det } else { det };
        let x = if sign_flip {
            x.into_iter().map(|r| r.into_iter().map(|p| -p).collect()).collect()
        } else {
            x
        };
        Ok((det, Matrix::from_rows(x)?))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Entry types that have a canonical string form in JSON.
pub trait JsonScalar: Sized {
    fn to_json_string(&self) -> String;
    fn from_json_str(s: &str) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json_string(&self) -> String {
        format_rational(self)
    }
    fn from_json_str(s: &str) -> Result<Self> {
        crate::exactnum::parse_rational(s)
    }
}

impl JsonScalar for MultiPoly {
    fn to_json_string(&self) -> String {
        self.to_string()
    }
    fn from_json_str(s: &str) -> Result<Self> {
        MultiPoly::from_str(s)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    rows: Vec<Vec<String>>,
}

impl<T: Ring + JsonScalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim,
            rows: self.rows().map(|r| r.iter().map(JsonScalar::to_json_string).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Ring + JsonScalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.rows.len() != raw.dim {
            return Err(de::Error::custom("row count does not match dim"));
        }
        let rows = raw
            .rows
            .iter()
            .map(|r| r.iter().map(|s| T::from_json_str(s)).collect::<Result<Vec<T>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn inverse_and_det() {
        let m = ExactMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
        assert_eq!(m.det(), int(18));
        let sing = ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert_eq!(sing.det(), int(0));
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        let m = ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.inverse().unwrap(), m);
        assert_eq!(m.det(), int(-1));
    }

    #[test]
    fn bareiss_solve_matches_inverse() {
        let u = MultiPoly::u;
        let a = PolyMatrix::from_rows(vec![vec![u(1), u(2)], vec![-u(2), u(1)]]).unwrap();
        let b = PolyMatrix::identity(2);
        let (det, x) = PolyMatrix::solve_fraction_free(&a, &b).unwrap();
        assert_eq!(det, &(&u(1) * &u(1)) + &(&u(2) * &u(2)));
        // det * A^{-1} = adj(A)
        assert_eq!(x, a.transpose());
        let point = [rat(3, 2), int(-2)];
        let d = det.eval(&point).unwrap();
        let inv = a.eval(&point).unwrap().inverse().unwrap();
        assert_eq!(x.eval(&point).unwrap(), inv.scale(&d));
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::from_fn(2, |i, j| rat(i as i64 - 3, j as i64 + 2));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"dim":2,"rows":[["-3/2","-1"],["-1","-2/3"]]}"#);
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"dim":3,"rows":[["1"]]}"#;
        assert!(serde_json::from_str::<ExactMatrix>(bad).is_err());
    }
}
