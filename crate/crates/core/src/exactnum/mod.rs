//! Exact scalars and multivariate polynomials.

mod gauss;
mod poly;
mod rational;

pub use gauss::GaussRational;
pub use poly::{Composer, Family, Monomial, MultiPoly, Var, MAX_VARS};
pub use rational::{
    abs, format_rational, int, parse_rational, parse_rational_list, rat, serde_str, to_f64, Rational,
};

/// Sum of squares of the first `n` parameters, `u1^2 + ... + un^2`.
pub fn norm_sq_poly(n: usize) -> MultiPoly {
    (1..=n).fold(MultiPoly::zero_in(Family::U, n), |acc, i| {
        let v = MultiPoly::u(i);
        &acc + &(&v * &v)
    })
}

/// Sum of squares of `u_from..=u_to`.
pub fn partial_norm_sq_poly(from: usize, to: usize, arity: usize) -> MultiPoly {
    (from..=to).fold(MultiPoly::zero_in(Family::U, arity), |acc, i| {
        let v = MultiPoly::u(i);
        &acc + &(&v * &v)
    })
}
