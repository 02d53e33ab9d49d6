//! Scaled Cayley transforms `O_n(u) = |u|^2 (u_1 I - S_n)(u_1 I + S_n)^{-1}`.
//!
//! The skew matrices are taken from the Hurwitz table:
//!
//! | n | parameters | `S_n` |
//! |---|-----------|-------|
//! | 2 | u1..u2  | skew part of `H_2` |
//! | 3 | u1..u4  | leading 3x3 block of `S_8` |
//! | 5 | u1..u8  | leading 5x5 block of `S_8` |
//! | 7 | u1..u8  | leading 7x7 block of `S_8` |
//! | 9 | u1..u16 | `S_8(u1..u8)` bordered by the column `(u9..u16)` |
//!
//! For n in {2, 3, 7} every entry of `O_n` is a quadratic form in `u`. For n in
//! {5, 9} only the last row and last column are; the interior entries are
//! rational functions (their denominator is the squared norm of the first
//! half of `u`). Exact checks for those two sizes therefore run at rational
//! points.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactnum::{norm_sq_poly, MultiPoly, Rational};
use crate::hurwitz::{u_vars, ParamVector, SignedPattern, H8_TABLE};
use crate::matrix::{ExactMatrix, Matrix, PolyMatrix, Ring};

pub const CAYLEY_DIMS: [usize; 5] = [2, 3, 5, 7, 9];

/// Number of parameters `u` feeding `S_n`.
pub fn source_len(n: usize) -> Result<usize> {
    match n {
        2 => Ok(2),
        3 => Ok(4),
        5 | 7 => Ok(8),
        9 => Ok(16),
        _ => Err(Error::UnsupportedDimension { what: "Cayley transform", n }),
    }
}

/// Signed-parameter pattern of `S_n`.
pub fn skew_pattern(n: usize) -> Result<SignedPattern> {
    source_len(n)?;
    let s8 = |i: usize, j: usize| match H8_TABLE[i][j] {
        1 | -1 => 0,
        c => c,
    };
    Ok(match n {
        9 => SignedPattern::from_fn(9, |i, j| match (i < 8, j < 8) {
            (true, true) => s8(i, j),
            (true, false) => 9 + i as i8,
            (false, true) => -(9 + j as i8),
            (false, false) => 0,
        }),
        _ => SignedPattern::from_fn(n, s8),
    })
}

pub fn cayley_skew(n: usize, u: &ParamVector) -> Result<ExactMatrix> {
    let pattern = skew_pattern(n)?;
    check_len(n, u)?;
    Ok(pattern.instantiate(u.entries()))
}

pub fn cayley_skew_symbolic(n: usize) -> Result<PolyMatrix> {
    Ok(skew_pattern(n)?.instantiate(&u_vars(source_len(n)?)))
}

/// `u_1 I + S_n`, the Hurwitz block whose inverse the transform needs.
pub fn hurwitz_block_symbolic(n: usize) -> Result<PolyMatrix> {
    let vars = u_vars(source_len(n)?);
    Ok(cayley_skew_symbolic(n)?.add(&PolyMatrix::scalar(n, &vars[0])))
}

fn check_len(n: usize, u: &ParamVector) -> Result<()> {
    let expected = source_len(n)?;
    if u.len() != expected {
        return Err(Error::LengthMismatch { expected, got: u.len() });
    }
    Ok(())
}

/// An orthogonal matrix stored multiplied by `scale_sq = |u|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledOrthogonal {
    pub dim: usize,
    pub matrix: ExactMatrix,
    pub scale_sq: Rational,
}

impl ScaledOrthogonal {
    /// The matrix divided by `scale_sq`.
    pub fn orthonormal(&self) -> ExactMatrix {
        let inv = Rational::from_integer(1.into()) / &self.scale_sq;
        self.matrix.scale(&inv)
    }

    /// `M M^t - scale_sq^2 I`.
    pub fn gram_residual(&self) -> ExactMatrix {
        let s2 = &self.scale_sq * &self.scale_sq;
        self.matrix.mul(&self.matrix.transpose()).sub(&ExactMatrix::scalar(self.dim, &s2))
    }
}

/// Exact scaled Cayley transform at a rational point.
///
/// `u_1 I + S_n` is invertible whenever `u_1 != 0`, since its product with
/// `u_1 I - S_n` is `u_1^2 I + S_n^t S_n`. For odd `n` it is singular at
/// `u_1 = 0`; there the polynomial form is evaluated instead when it exists
/// (n in {3, 7}), and `Error::Singular` is returned otherwise.
pub fn cayley_transform(n: usize, u: &ParamVector) -> Result<ScaledOrthogonal> {
    let s = cayley_skew(n, u)?;
    if u.is_zero() {
        return Err(Error::DegenerateParameter);
    }
    let scale_sq = u.norm_sq();
    let u1 = ExactMatrix::scalar(n, u.get(1));
    let plus = u1.add(&s);
    let minus = u1.sub(&s);
    let matrix = match plus.inverse() {
        Ok(inv) => minus.mul(&inv).scale(&scale_sq),
        Err(Error::Singular) if matches!(n, 2 | 3 | 7) => cayley_symbolic(n)?.eval(u.entries())?,
        Err(e) => return Err(e),
    };
    Ok(ScaledOrthogonal { dim: n, matrix, scale_sq })
}

fn symbolic_via_bareiss(n: usize) -> Result<PolyMatrix> {
    let vars = u_vars(source_len(n)?);
    let s = cayley_skew_symbolic(n)?;
    let u1 = PolyMatrix::scalar(n, &vars[0]);
    let plus = u1.add(&s);
    let minus = u1.sub(&s);
    let norm = norm_sq_poly(vars.len());
    // plus and minus commute, so (u1 I + S)^{-1} (u1 I - S) is the same matrix.
    let (det, adj_times_minus) = PolyMatrix::solve_fraction_free(&plus, &minus)?;
    let mut entries = Vec::with_capacity(n);
    for row in adj_times_minus.rows() {
        entries.push(row.iter().map(|p| (&norm * p).div_exact(&det)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(entries)
}

/// `O_n(u)` as a matrix of polynomials, for n in {2, 3, 7}.
pub fn cayley_symbolic(n: usize) -> Result<PolyMatrix> {
    static CACHE: [OnceLock<Result<PolyMatrix>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match n {
        2 => 0,
        3 => 1,
        7 => 2,
        5 | 9 => return Err(Error::UnsupportedDimension { what: "polynomial Cayley transform", n }),
        _ => return Err(Error::UnsupportedDimension { what: "Cayley transform", n }),
    };
    CACHE[slot].get_or_init(|| symbolic_via_bareiss(n)).clone()
}

/// Bareiss route for any supported n; fails with `NotDivisible` when some
/// entry of `O_n` is not a polynomial.
pub fn cayley_symbolic_attempt(n: usize) -> Result<PolyMatrix> {
    symbolic_via_bareiss(n)
}

fn weyl_generic<T: Ring>(s: &Matrix<T>, u1: &T, norm: &T) -> Matrix<T> {
    let n = s.dim();
    let two = Ring::add(&T::one(), &T::one());
    let lin = s.scale(&Ring::mul(&two, u1));
    let quad = s.mul(s).scale(&two);
    Matrix::scalar(n, norm).sub(&lin).add(&quad)
}

fn check_weyl_dim(n: usize) -> Result<()> {
    if matches!(n, 3 | 7) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { what: "Weyl form", n })
    }
}

/// `|u|^2 I - 2 u_1 S_n + 2 S_n^2` at a rational point, n in {3, 7}.
pub fn weyl_form(n: usize, u: &ParamVector) -> Result<ExactMatrix> {
    check_weyl_dim(n)?;
    let s = cayley_skew(n, u)?;
    Ok(weyl_generic(&s, u.get(1), &u.norm_sq()))
}

pub fn weyl_form_symbolic(n: usize) -> Result<PolyMatrix> {
    check_weyl_dim(n)?;
    let vars = u_vars(source_len(n)?);
    let s = cayley_skew_symbolic(n)?;
    Ok(weyl_generic(&s, &vars[0], &norm_sq_poly(vars.len())))
}

/// `S_n^3 + sigma^2 S_n` with `sigma^2 = u_2^2 + ... + u_N^2`; zero exactly
/// when the Weyl form is valid.
pub fn skew_cube_residual(n: usize) -> Result<PolyMatrix> {
    let len = source_len(n)?;
    let s = cayley_skew_symbolic(n)?;
    let first = MultiPoly::u(1).with_arity(crate::exactnum::Family::U, len);
    let sigma = &norm_sq_poly(len) - &(&first * &first);
    Ok(s.mul(&s).mul(&s).add(&s.scale(&sigma)))
}

/// `V_3 = (u4, -u3, u2)` and `V_7 = (u8, u7, -u6, -u5, u4, u3, -u2)`.
pub fn border_vector(n: usize) -> Result<Vec<MultiPoly>> {
    let signed: &[i8] = match n {
        3 => &[4, -3, 2],
        7 => &[8, 7, -6, -5, 4, 3, -2],
        _ => return Err(Error::UnsupportedDimension { what: "block identity", n }),
    };
    let vars = u_vars(source_len(n)?);
    Ok(signed
        .iter()
        .map(|&c| if c > 0 { vars[c as usize - 1].clone() } else { -&vars[(-c) as usize - 1] })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockIdentityReport<T> {
    pub n: usize,
    pub product: Matrix<T>,
    pub expected: Matrix<T>,
    pub residual: Matrix<T>,
    pub passed: bool,
}

/// Multiplies `[[H^t, V^t], [-V, u1]]` by `[[H^t, -V^t], [V, u1]]` and
/// compares with `[[O_n, 0], [0, |u|^2]]`.
pub fn block_identity(n: usize) -> Result<BlockIdentityReport<MultiPoly>> {
    let v = border_vector(n)?;
    let vars = u_vars(source_len(n)?);
    let ht = hurwitz_block_symbolic(n)?.transpose();
    let u1 = PolyMatrix::scalar(1, &vars[0]);
    let col = |sign: bool| -> Vec<Vec<MultiPoly>> {
        v.iter().map(|p| vec![if sign { p.clone() } else { -p }]).collect()
    };
    let row = |sign: bool| -> Vec<Vec<MultiPoly>> {
        vec![v.iter().map(|p| if sign { p.clone() } else { -p }).collect()]
    };
    let left = PolyMatrix::block(&ht, &col(true), &row(false), &u1);
    let right = PolyMatrix::block(&ht, &col(false), &row(true), &u1);
    let product = left.mul(&right);
    let o = cayley_symbolic(n)?;
    let zeros_col = vec![vec![MultiPoly::zero()]; n];
    let zeros_row = vec![vec![MultiPoly::zero(); n]];
    let expected = PolyMatrix::block(&o, &zeros_col, &zeros_row, &PolyMatrix::scalar(1, &norm_sq_poly(vars.len())));
    let residual = product.sub(&expected);
    let passed = residual.is_zero();
    Ok(BlockIdentityReport { n, product, expected, residual, passed })
}

/// The block identity evaluated at a rational point.
pub fn block_identity_at(n: usize, u: &ParamVector) -> Result<BlockIdentityReport<Rational>> {
    check_len(n, u)?;
    let sym = block_identity(n)?;
    let product = sym.product.eval(u.entries())?;
    let expected = sym.expected.eval(u.entries())?;
    let residual = product.sub(&expected);
    let passed = residual.is_zero();
    Ok(BlockIdentityReport { n, product, expected, residual, passed })
}

/// Residuals of `(u1 I + S) O - |u|^2 (u1 I - S)` and
/// `O (u1 I + S) - |u|^2 (u1 I - S)` at a rational point.
pub fn defining_relations_at(n: usize, u: &ParamVector) -> Result<(ExactMatrix, ExactMatrix)> {
    let o = cayley_transform(n, u)?;
    let s = cayley_skew(n, u)?;
    let u1 = ExactMatrix::scalar(n, u.get(1));
    let plus = u1.add(&s);
    let rhs = u1.sub(&s).scale(&o.scale_sq);
    Ok((plus.mul(&o.matrix).sub(&rhs), o.matrix.mul(&plus).sub(&rhs)))
}

/// The same two residuals as polynomial matrices, n in {2, 3, 7}.
pub fn defining_relations_symbolic(n: usize) -> Result<(PolyMatrix, PolyMatrix)> {
    let o = cayley_symbolic(n)?;
    let vars = u_vars(source_len(n)?);
    let s = cayley_skew_symbolic(n)?;
    let u1 = PolyMatrix::scalar(n, &vars[0]);
    let plus = u1.add(&s);
    let rhs = u1.sub(&s).scale(&norm_sq_poly(vars.len()));
    Ok((plus.mul(&o).sub(&rhs), o.mul(&plus).sub(&rhs)))
}

/// `det O - (|u|^2)^n` at a rational point.
pub fn determinant_defect(n: usize, u: &ParamVector) -> Result<Rational> {
    let o = cayley_transform(n, u)?;
    let expect = num_traits::pow(o.scale_sq.clone(), n);
    Ok(o.matrix.det() - expect)
}

/// `O O^t - (|u|^2)^2 I` symbolically, n in {2, 3, 7}.
pub fn gram_residual_symbolic(n: usize) -> Result<PolyMatrix> {
    let o = cayley_symbolic(n)?;
    let norm = norm_sq_poly(source_len(n)?);
    Ok(o.mul(&o.transpose()).sub(&PolyMatrix::scalar(n, &(&norm * &norm))))
}

/// Last column of `O_n` as the n-vector of quadratic forms it consists of,
/// from a rational evaluation; used to cross-check the quadratic maps.
pub fn last_column(o: &ScaledOrthogonal) -> Vec<Rational> {
    (0..o.dim).map(|i| o.matrix.get(i, o.dim - 1).clone()).collect()
}

pub fn last_row(o: &ScaledOrthogonal) -> Vec<Rational> {
    (0..o.dim).map(|j| o.matrix.get(o.dim - 1, j).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use std::str::FromStr;

    #[test]
    fn two_dimensional_example() {
        let u = ParamVector::from_i64(&[1, 1]).unwrap();
        let o = cayley_transform(2, &u).unwrap();
        assert_eq!(o.matrix, ExactMatrix::from_i64(&[&[0, -2], &[2, 0]]));
        assert_eq!(o.scale_sq, int(2));
    }

    #[test]
    fn degenerate_and_identity() {
        let zero = ParamVector::from_i64(&[0, 0, 0, 0]).unwrap();
        assert_eq!(cayley_transform(3, &zero), Err(Error::DegenerateParameter));
        let e1 = ParamVector::from_i64(&[1, 0, 0, 0]).unwrap();
        let o = cayley_transform(3, &e1).unwrap();
        assert_eq!(o.matrix, ExactMatrix::identity(3));
        assert_eq!(weyl_form(3, &e1).unwrap(), ExactMatrix::identity(3));
        assert!(matches!(cayley_transform(4, &e1), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn weyl_matches_reference_three_by_three() {
        let reference = [
            ["u1^2 - u2^2 - u3^2 + u4^2", "-2*u1*u2 - 2*u3*u4", "-2*u1*u3 + 2*u2*u4"],
            ["2*u1*u2 - 2*u3*u4", "u1^2 - u2^2 + u3^2 - u4^2", "-2*u1*u4 - 2*u2*u3"],
            ["2*u1*u3 + 2*u2*u4", "2*u1*u4 - 2*u2*u3", "u1^2 + u2^2 - u3^2 - u4^2"],
        ];
        let o = cayley_symbolic(3).unwrap();
        let w = weyl_form_symbolic(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let p = MultiPoly::from_str(reference[i][j]).unwrap();
                assert_eq!(o.get(i, j), &p, "entry ({i},{j})");
                assert_eq!(w.get(i, j), &p);
            }
        }
    }

    #[test]
    fn five_is_not_polynomial() {
        assert_eq!(cayley_symbolic_attempt(5), Err(Error::NotDivisible));
    }

    #[test]
    fn nine_pattern_is_skew() {
        let s = cayley_skew_symbolic(9).unwrap();
        assert!(s.is_antisymmetric());
        assert_eq!(s.get(0, 8), &MultiPoly::u(9).with_arity(crate::exactnum::Family::U, 16));
    }
}
