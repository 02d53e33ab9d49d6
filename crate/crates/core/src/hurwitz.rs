//! Hurwitz matrices `H_n`, their skew parts `S_n` and Clifford factors.
//!
//! `H_8` is the fixed 8x8 table below; `H_2` and `H_4` are its principal
//! minors. Row `j` of `H_8` is the Cayley-Dickson product `u * e_j`, so the
//! same doubling applied once more gives a 16x16 candidate. That candidate is
//! only returned if `H H^t = |u|^2 I` holds as a polynomial identity; it does
//! not (sedenion multiplication is not norm-preserving), so `n = 16` is
//! rejected with `Error::NotOrthogonal`.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{norm_sq_poly, Family, MultiPoly, Rational};
use crate::matrix::{ExactMatrix, Matrix, PolyMatrix, Ring};

/// Signed parameter indices of `H_8`: entry `k` means `+u_k`, `-k` means `-u_k`.
pub const H8_TABLE: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [-2, 1, 4, -3, 6, -5, -8, 7],
    [-3, -4, 1, 2, 7, 8, -5, -6],
    [-4, 3, -2, 1, 8, -7, 6, -5],
    [-5, -6, -7, -8, 1, 2, 3, 4],
    [-6, 5, -8, 7, -2, 1, -4, 3],
    [-7, 8, 5, -6, -3, 4, 1, -2],
    [-8, -7, 6, 5, -4, -3, 2, 1],
];

pub const SUPPORTED_DIMS: [usize; 4] = [2, 4, 8, 16];

/// Parameter vector `u`; its length is one of 2, 4, 8, 16.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamVector {
    entries: Vec<Rational>,
}

impl ParamVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if !SUPPORTED_DIMS.contains(&entries.len()) {
            return Err(Error::UnsupportedDimension { what: "parameter vector", n: entries.len() });
        }
        Ok(ParamVector { entries })
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| crate::exactnum::int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i - 1]
    }

    pub fn norm_sq(&self) -> Rational {
        self.entries.iter().map(|x| x * x).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn with_first_zeroed(&self) -> ParamVector {
        let mut entries = self.entries.clone();
        entries[0] = Rational::zero();
        ParamVector { entries }
    }

    pub fn scaled(&self, c: &Rational) -> ParamVector {
        ParamVector { entries: self.entries.iter().map(|x| x * c).collect() }
    }
}

/// A matrix whose entries are signed single parameters (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPattern {
    dim: usize,
    cells: Vec<i8>,
}

impl SignedPattern {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> i8) -> Self {
        let cells = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        SignedPattern { dim, cells }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell(&self, i: usize, j: usize) -> i8 {
        self.cells[i * self.dim + j]
    }

    /// Largest parameter index appearing in the pattern.
    pub fn num_params(&self) -> usize {
        self.cells.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Substitutes `vars[k-1]` for `u_k`.
    pub fn instantiate<T: Ring>(&self, vars: &[T]) -> Matrix<T> {
        Matrix::from_fn(self.dim, |i, j| match self.cell(i, j) {
            0 => T::zero(),
            c if c > 0 => vars[c as usize - 1].clone(),
            c => vars[(-c) as usize - 1].neg(),
        })
    }

    pub fn principal_minor(&self, k: usize) -> SignedPattern {
        SignedPattern::from_fn(k, |i, j| self.cell(i, j))
    }

    /// Same pattern with every `u_1` entry removed.
    pub fn without_first(&self) -> SignedPattern {
        SignedPattern::from_fn(self.dim, |i, j| match self.cell(i, j) {
            1 | -1 => 0,
            c => c,
        })
    }
}

/// Symbolic variables `u1..un`, each declared over `n` parameters.
pub fn u_vars(n: usize) -> Vec<MultiPoly> {
    (1..=n).map(|i| MultiPoly::u(i).with_arity(Family::U, n)).collect()
}

/// Basis product `e_a * e_b = sign * e_c` of the Cayley-Dickson algebra of
/// dimension `dim`, with `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
fn cd_basis_product(dim: usize, a: usize, b: usize) -> (i8, usize) {
    if dim == 1 {
        return (1, 0);
    }
    let h = dim / 2;
    let conj_sign = |k: usize| if k == 0 { 1 } else { -1 };
    match (a < h, b < h) {
        // (x, 0)(y, 0) = (xy, 0)
        (true, true) => cd_basis_product(h, a, b),
        // (x, 0)(0, y) = (0, y x)
        (true, false) => {
            let (s, c) = cd_basis_product(h, b - h, a);
            (s, c + h)
        }
        // (0, x)(y, 0) = (0, x conj(y))
        (false, true) => {
            let (s, c) = cd_basis_product(h, a - h, b);
            (s * conj_sign(b), c + h)
        }
        // (0, x)(0, y) = (-conj(y) x, 0)
        (false, false) => {
            let (s, c) = cd_basis_product(h, b - h, a - h);
            (-s * conj_sign(b - h), c)
        }
    }
}

/// Left-multiplication table of the Cayley-Dickson algebra: row `j` lists
/// the coordinates of `u * e_j`.
pub fn cayley_dickson_pattern(dim: usize) -> SignedPattern {
    let mut cells = vec![0i8; dim * dim];
    for k in 0..dim {
        for j in 0..dim {
            let (s, c) = cd_basis_product(dim, k, j);
            cells[j * dim + c] = s * (k as i8 + 1);
        }
    }
    SignedPattern { dim, cells }
}

fn unchecked_pattern(n: usize) -> Result<SignedPattern> {
    match n {
        2 | 4 | 8 => Ok(SignedPattern::from_fn(n, |i, j| H8_TABLE[i][j])),
        16 => Ok(cayley_dickson_pattern(16)),
        _ => Err(Error::UnsupportedDimension { what: "Hurwitz matrix", n }),
    }
}

/// Residual `H H^t - |u|^2 I`, computed symbolically.
pub fn orthogonality_residual(pattern: &SignedPattern) -> PolyMatrix {
    let n = pattern.num_params();
    let h = pattern.instantiate(&u_vars(n));
    let norm = norm_sq_poly(n);
    h.mul(&h.transpose()).sub(&PolyMatrix::scalar(pattern.dim(), &norm))
}

fn validated(n: usize) -> Result<&'static SignedPattern> {
    static CACHE: OnceLock<[std::result::Result<SignedPattern, Error>; 4]> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        SUPPORTED_DIMS.map(|d| {
            let p = unchecked_pattern(d)?;
            let residual = orthogonality_residual(&p);
            if residual.is_zero() {
                Ok(p)
            } else {
                Err(Error::NotOrthogonal {
                    what: format!("Hurwitz doubling H_{d}"),
                    detail: format!(
                        "{} of {} entries of H H^t - |u|^2 I are nonzero polynomials",
                        residual.nnz(),
                        d * d
                    ),
                })
            }
        })
    });
    let idx = SUPPORTED_DIMS
        .iter()
        .position(|&d| d == n)
        .ok_or(Error::UnsupportedDimension { what: "Hurwitz matrix", n })?;
    table[idx].as_ref().map_err(Clone::clone)
}

/// The signed-parameter pattern of `H_n`, accepted only if orthogonal.
pub fn hurwitz_pattern(n: usize) -> Result<SignedPattern> {
    validated(n).cloned()
}

/// The 16x16 doubling candidate, returned without the orthogonality gate.
pub fn doubling_candidate_16() -> SignedPattern {
    cayley_dickson_pattern(16)
}

fn check_len(n: usize, u: &ParamVector) -> Result<()> {
    if u.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: u.len() });
    }
    Ok(())
}

pub fn build_hurwitz(n: usize, u: &ParamVector) -> Result<ExactMatrix> {
    let pattern = validated(n)?;
    check_len(n, u)?;
    Ok(pattern.instantiate(u.entries()))
}

pub fn hurwitz_symbolic(n: usize) -> Result<PolyMatrix> {
    Ok(validated(n)?.instantiate(&u_vars(n)))
}

/// `S_n = H_n` with `u_1 = 0`.
pub fn skew_part(n: usize, u: &ParamVector) -> Result<ExactMatrix> {
    let pattern = validated(n)?;
    check_len(n, u)?;
    Ok(pattern.without_first().instantiate(u.entries()))
}

pub fn skew_part_symbolic(n: usize) -> Result<PolyMatrix> {
    Ok(validated(n)?.without_first().instantiate(&u_vars(n)))
}

/// Coefficient matrix of `u_k` in `H_n`.
pub fn coefficient_matrix(pattern: &SignedPattern, k: usize) -> ExactMatrix {
    let k = k as i8;
    ExactMatrix::from_fn(pattern.dim(), |i, j| match pattern.cell(i, j) {
        c if c == k => crate::exactnum::int(1),
        c if c == -k => crate::exactnum::int(-1),
        _ => Rational::zero(),
    })
}

/// `Gamma_2..Gamma_n` with `Gamma_i = -(dH_n/du_i)^t`, so that
/// `H_n = u_1 I - sum_i u_i Gamma_i^t`.
pub fn clifford_factors(n: usize) -> Result<Vec<ExactMatrix>> {
    if !matches!(n, 4 | 8 | 16) {
        return Err(Error::UnsupportedDimension { what: "Clifford factors", n });
    }
    let pattern = validated(n)?;
    Ok((2..=n).map(|k| coefficient_matrix(pattern, k).transpose().neg()).collect())
}

/// `Gamma_i Gamma_j + Gamma_j Gamma_i + 2 delta_ij I` for one pair.
pub fn anticommutator_defect(gi: &ExactMatrix, gj: &ExactMatrix, same: bool) -> ExactMatrix {
    let n = gi.dim();
    let anti = gi.mul(gj).add(&gj.mul(gi));
    if same {
        anti.add(&ExactMatrix::scalar(n, &crate::exactnum::int(2)))
    } else {
        anti
    }
}

/// `u_1 I - sum u_i Gamma_i^t` built symbolically from the factors.
pub fn reconstruct_from_factors(n: usize, factors: &[ExactMatrix]) -> PolyMatrix {
    let vars = u_vars(n);
    let mut acc = PolyMatrix::scalar(n, &vars[0]);
    for (k, g) in factors.iter().enumerate() {
        let term = g.transpose().map(|c| vars[k + 1].scale(c));
        acc = acc.sub(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn h2_is_top_left_minor() {
        let u = ParamVector::new(vec![rat(2, 3), int(-5)]).unwrap();
        let h = build_hurwitz(2, &u).unwrap();
        let expect = ExactMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) | (1, 1) => rat(2, 3),
            (0, 1) => int(-5),
            _ => int(5),
        });
        assert_eq!(h, expect);
    }

    #[test]
    fn unit_first_parameter_gives_identity() {
        let u = ParamVector::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(build_hurwitz(8, &u).unwrap(), ExactMatrix::identity(8));
        let u4 = ParamVector::from_i64(&[1, 0, 0, 0]).unwrap();
        assert!(skew_part(4, &u4).unwrap().is_zero());
    }

    #[test]
    fn skew_part_examples() {
        let u = ParamVector::from_i64(&[7, 3]).unwrap();
        let s = skew_part(2, &u).unwrap();
        assert_eq!(s, ExactMatrix::from_i64(&[&[0, 3], &[-3, 0]]));
        let s8 = skew_part_symbolic(8).unwrap();
        assert!(s8.add(&s8.transpose()).is_zero());
    }

    #[test]
    fn cayley_dickson_reproduces_table() {
        let cd = cayley_dickson_pattern(8);
        let table = SignedPattern::from_fn(8, |i, j| H8_TABLE[i][j]);
        assert_eq!(cd, table);
        assert_eq!(cayley_dickson_pattern(4), table.principal_minor(4));
        assert_eq!(cayley_dickson_pattern(2), table.principal_minor(2));
    }

    #[test]
    fn errors() {
        let u = ParamVector::from_i64(&[1, 2, 3, 4]).unwrap();
        assert!(matches!(build_hurwitz(3, &u), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(build_hurwitz(8, &u), Err(Error::LengthMismatch { expected: 8, got: 4 })));
        assert!(ParamVector::from_i64(&[1, 2, 3]).is_err());
        assert!(matches!(clifford_factors(2), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn sixteen_doubling_is_rejected() {
        let residual = orthogonality_residual(&doubling_candidate_16());
        assert!(!residual.is_zero());
        let u = ParamVector::new((1..=16).map(int).collect()).unwrap();
        assert!(matches!(build_hurwitz(16, &u), Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn gamma_2_squares_to_minus_identity_n4() {
        let g = clifford_factors(4).unwrap();
        assert_eq!(g[0].mul(&g[0]), ExactMatrix::identity(4).neg());
    }
}
