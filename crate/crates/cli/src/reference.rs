//! Published reference values, transcribed once and shared by the
//! verification suite and the acceptance tests.

use std::str::FromStr;

use hurwitz_core::exactnum::{Family, MultiPoly};
use hurwitz_core::matrix::PolyMatrix;

/// The scaled 3x3 Cayley matrix in the four parameters `u1..u4`.
pub const CAYLEY_3: [[&str; 3]; 3] = [
    ["u1^2 - u2^2 - u3^2 + u4^2", "-2*u1*u2 - 2*u3*u4", "-2*u1*u3 + 2*u2*u4"],
    ["2*u1*u2 - 2*u3*u4", "u1^2 - u2^2 + u3^2 - u4^2", "-2*u1*u4 - 2*u2*u3"],
    ["2*u1*u3 + 2*u2*u4", "2*u1*u4 - 2*u2*u3", "u1^2 + u2^2 - u3^2 - u4^2"],
];

/// The first generating matrix of so(8), `H_8^1`.
pub const H8_FIRST: [[&str; 8]; 8] = [
    ["u1", "-u2", "-u3", "-u4", "u5", "-u6", "-u7", "-u8"],
    ["u2", "u1", "u4", "-u3", "u6", "u5", "-u8", "u7"],
    ["u3", "-u4", "u1", "u2", "u7", "u8", "u5", "-u6"],
    ["u4", "u3", "-u2", "u1", "u8", "-u7", "u6", "u5"],
    ["-u5", "-u6", "-u7", "-u8", "u1", "u2", "u3", "u4"],
    ["u6", "-u5", "-u8", "u7", "-u2", "u1", "-u4", "u3"],
    ["u7", "u8", "-u5", "-u6", "-u3", "u4", "u1", "-u2"],
    ["u8", "-u7", "u6", "-u5", "-u4", "-u3", "u2", "u1"],
];

/// `(k, [(sign, i, j); 4])`: the coefficient of `u_k` as a signed sum of `Σ_ij`.
pub type Bracket = (usize, [(i64, usize, usize); 4]);

/// The seven skew brackets of `H_8^1`.
pub const H8_FIRST_BRACKETS: [Bracket; 7] = [
    (2, [(-1, 1, 2), (1, 3, 4), (1, 5, 6), (-1, 7, 8)]),
    (3, [(-1, 1, 3), (-1, 2, 4), (1, 5, 7), (1, 6, 8)]),
    (4, [(-1, 1, 4), (1, 2, 3), (-1, 6, 7), (1, 5, 8)]),
    (5, [(1, 1, 5), (1, 2, 6), (1, 3, 7), (1, 4, 8)]),
    (6, [(-1, 1, 6), (1, 2, 5), (-1, 3, 8), (1, 4, 7)]),
    (7, [(-1, 1, 7), (1, 2, 8), (1, 3, 5), (-1, 4, 6)]),
    (8, [(-1, 1, 8), (-1, 2, 7), (1, 3, 6), (1, 4, 5)]),
];

/// `H_5^1`, linear in `u1..u8`.
pub const H5_FIRST: [[&str; 5]; 5] = [
    ["u1", "u2", "u3", "u4", "u5"],
    ["-u2", "u1", "u4", "-u3", "u6"],
    ["-u3", "-u4", "u1", "u2", "u7"],
    ["-u4", "u3", "-u2", "u1", "u8"],
    ["-u5", "-u6", "-u7", "-u8", "u1"],
];

/// Parses a table of polynomial strings in `u1..u_arity`.
pub fn poly_matrix<const N: usize>(rows: &[[&str; N]; N], arity: usize) -> PolyMatrix {
    PolyMatrix::from_fn(N, |i, j| {
        MultiPoly::from_str(rows[i][j]).expect("reference entries parse").with_arity(Family::U, arity)
    })
}
