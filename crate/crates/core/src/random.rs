//! Seeded random inputs for the property checks: small rationals, parameter
//! vectors and polynomials in the target variables.

use rand::Rng;

use crate::exactnum::{rat, Family, Monomial, MultiPoly, Rational};
use crate::hurwitz::ParamVector;

/// A rational `p/q` with `|p| <= 9` and `1 <= q <= 6`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng);
        if q != rat(0, 1) {
            return q;
        }
    }
}

/// A parameter vector of length `len` that is not identically zero.
pub fn random_param_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> ParamVector {
    loop {
        let entries: Vec<Rational> = (0..len).map(|_| random_rational(rng)).collect();
        let u = ParamVector::new(entries).expect("supported parameter length");
        if !u.is_zero() {
            return u;
        }
    }
}

/// A random polynomial in `x1..xn` of total degree at most `max_degree`
/// with up to `max_terms` terms.
pub fn random_x_poly<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32, max_terms: usize) -> MultiPoly {
    let count = rng.gen_range(1..=max_terms);
    let terms = (0..count).map(|_| {
        let degree = rng.gen_range(0..=max_degree);
        let mut m = Monomial::one();
        for _ in 0..degree {
            m.0[rng.gen_range(0..n)] += 1;
        }
        (m, random_nonzero_rational(rng))
    });
    MultiPoly::from_terms(Family::X, n, terms)
}

/// Like `random_param_vector` but with `u_1 != 0`, where every scaled Cayley
/// transform is defined by the inverse formula.
pub fn random_generic_param_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> ParamVector {
    let mut entries: Vec<Rational> = (0..len).map(|_| random_rational(rng)).collect();
    entries[0] = random_nonzero_rational(rng);
    ParamVector::new(entries).expect("supported parameter length")
}
