//! Exact check of `Delta_u (f o x) = 4 |u|^2 (Delta_x f) o x` for the
//! quadratic maps of `ksmap`, plus the Jacobian identities behind it.

use std::collections::HashMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{int, norm_sq_poly, partial_norm_sq_poly, Composer, Family, Monomial, MultiPoly, Var};
use crate::ksmap::{quadratic_map, QuadraticMap, Side};
use crate::linalg::null_space;

/// `sum_v d^2 p / dv^2` over the given variables.
pub fn laplacian(p: &MultiPoly, vars: &[Var]) -> Result<MultiPoly> {
    let mut acc = match p.family() {
        Some(f) => MultiPoly::zero_in(f, p.arity()),
        None => MultiPoly::zero(),
    };
    for &v in vars {
        if p.is_constant() && p.family().is_none() {
            // Constants carry no variable list; their Laplacian is zero.
            continue;
        }
        let d2 = p.partial(v)?.partial(v)?;
        acc = &acc + &d2;
    }
    Ok(acc)
}

fn u_list(n: usize) -> Vec<Var> {
    (1..=n).map(Var::u).collect()
}

fn x_list(n: usize) -> Vec<Var> {
    (1..=n).map(Var::x).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaplaceReport {
    pub n: usize,
    pub side: Side,
    pub test_poly: MultiPoly,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub residual: MultiPoly,
    pub passed: bool,
}

impl Serialize for LaplaceReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaplaceReport", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("side", &self.side)?;
        st.serialize_field("test_poly", &self.test_poly.to_string())?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        if self.passed {
            st.skip_field("residual")?;
        } else {
            st.serialize_field("residual", &self.residual.to_string())?;
        }
        st.serialize_field("passed", &self.passed)?;
        st.end()
    }
}

/// Brings a test polynomial into `x1..xn` form or rejects it.
fn normalize_test_poly(f: &MultiPoly, n: usize) -> Result<MultiPoly> {
    match f.family() {
        Some(Family::U) if !f.is_constant() => {
            return Err(Error::FamilyMismatch("test polynomial must be in x variables".into()))
        }
        _ => {}
    }
    if f.arity() > n && f.family() == Some(Family::X) {
        return Err(Error::ArityMismatch { expected: n, got: f.arity() });
    }
    let mut out = MultiPoly::zero_in(Family::X, n);
    for (m, c) in f.terms() {
        if m.support_len() > n {
            return Err(Error::ArityMismatch { expected: n, got: m.support_len() });
        }
        out = &out + &MultiPoly::from_terms(Family::X, n, [(*m, c.clone())]);
    }
    Ok(out)
}

fn report(map: &QuadraticMap, f: MultiPoly, lhs: MultiPoly, rhs: MultiPoly) -> LaplaceReport {
    let residual = &lhs - &rhs;
    let passed = residual.num_terms() == 0;
    LaplaceReport { n: map.n_target, side: map.side, test_poly: f, lhs, rhs, residual, passed }
}

/// Direct check along an explicit map: composes, then differentiates.
pub fn verify_along(map: &QuadraticMap, f: &MultiPoly) -> Result<LaplaceReport> {
    let n = map.n_target;
    let f = normalize_test_poly(f, n)?;
    let big_n = map.n_source;
    let comps = map.components();
    let lhs = laplacian(&f.compose(comps)?, &u_list(big_n))?;
    let delta_f = laplacian(&f, &x_list(n))?;
    let pulled = if delta_f.num_terms() == 0 {
        MultiPoly::zero_in(Family::U, big_n)
    } else {
        delta_f.with_arity(Family::X, n).compose(comps)?
    };
    let rhs = &norm_sq_poly(big_n).scale(&int(4)) * &pulled;
    Ok(report(map, f, lhs, rhs))
}

/// `verify_along` for the cached map of target dimension `n`.
pub fn verify_factorization(n: usize, side: Side, f: &MultiPoly) -> Result<LaplaceReport> {
    verify_along(quadratic_map(n, side)?, f)
}

/// Runs many test polynomials along one map, reusing the image of every
/// monomial and the Laplacian of that image. Both sides of the identity are
/// linear in `f`, so this equals `verify_along` term by term.
pub struct FactorizationChecker<'m> {
    map: &'m QuadraticMap,
    composer: Composer<'m>,
    lap_images: HashMap<Monomial, MultiPoly>,
    four_norm: MultiPoly,
}

impl<'m> FactorizationChecker<'m> {
    pub fn new(map: &'m QuadraticMap) -> Self {
        FactorizationChecker {
            map,
            composer: Composer::new(map.components()),
            lap_images: HashMap::new(),
            four_norm: norm_sq_poly(map.n_source).scale(&int(4)),
        }
    }

    fn monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly::from_terms(Family::X, self.map.n_target, [(*m, int(1))])
    }

    fn lap_image(&mut self, m: &Monomial) -> Result<MultiPoly> {
        if let Some(p) = self.lap_images.get(m) {
            return Ok(p.clone());
        }
        let mono = self.monomial(m);
        let img = self.composer.compose(&mono)?;
        let lap = laplacian(&img, &u_list(self.map.n_source))?;
        self.lap_images.insert(*m, lap.clone());
        Ok(lap)
    }

    pub fn check(&mut self, f: &MultiPoly) -> Result<LaplaceReport> {
        let n = self.map.n_target;
        let big_n = self.map.n_source;
        let f = normalize_test_poly(f, n)?;
        let mut lhs = MultiPoly::zero_in(Family::U, big_n);
        for (m, c) in f.terms() {
            lhs = &lhs + &self.lap_image(m)?.scale(c);
        }
        let delta_f = laplacian(&f, &x_list(n))?;
        let pulled = if delta_f.num_terms() == 0 {
            MultiPoly::zero_in(Family::U, big_n)
        } else {
            self.composer.compose(&delta_f.with_arity(Family::X, n))?
        };
        let rhs = &self.four_norm * &pulled;
        Ok(report(self.map, f, lhs, rhs))
    }
}

/// All monomials of total degree `d` in `n` variables, in lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, slot: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if slot + 1 == n {
            cur.0[slot] = left as u8;
            out.push(*cur);
            cur.0[slot] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur.0[slot] = e as u8;
            rec(n, slot + 1, left - e, cur, out);
        }
        cur.0[slot] = 0;
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 0, d, &mut Monomial::one(), &mut out);
    }
    out
}

/// Basis of the harmonic polynomials of degree `d` in `x1..xn`, computed as
/// the kernel of the Laplacian on the monomial basis.
pub fn harmonic_basis_by_kernel(n: usize, d: u32) -> Vec<MultiPoly> {
    let source = monomials_of_degree(n, d);
    if d < 2 {
        return source.iter().map(|m| MultiPoly::from_terms(Family::X, n, [(*m, int(1))])).collect();
    }
    let target = monomials_of_degree(n, d - 2);
    let index: HashMap<Monomial, usize> = target.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut rows = vec![vec![int(0); source.len()]; target.len()];
    for (col, m) in source.iter().enumerate() {
        for slot in 0..n {
            let e = m.0[slot];
            if e >= 2 {
                let mut t = *m;
                t.0[slot] -= 2;
                rows[index[&t]][col] += int(e as i64 * (e as i64 - 1));
            }
        }
    }
    null_space(rows, source.len())
        .into_iter()
        .map(|v| MultiPoly::from_terms(Family::X, n, source.iter().copied().zip(v)))
        .collect()
}

/// Harmonic polynomials of degree `d`: `x_i` for `d = 1`; `x_i x_j` and
/// `x_1^2 - x_j^2` for `d = 2`; the Laplacian kernel for `d = 3`.
pub fn harmonic_basis(n: usize, d: u32) -> Result<Vec<MultiPoly>> {
    let x = |i: usize| MultiPoly::x(i).with_arity(Family::X, n);
    match d {
        0 => Ok(vec![MultiPoly::constant(int(1)).with_arity(Family::X, n)]),
        1 => Ok((1..=n).map(x).collect()),
        2 => {
            let mut out = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(&x(i) * &x(j));
                }
            }
            for j in 2..=n {
                out.push(&(&x(1) * &x(1)) - &(&x(j) * &x(j)));
            }
            Ok(out)
        }
        3 => Ok(harmonic_basis_by_kernel(n, 3)),
        _ => Err(Error::OutOfDeskScale(format!("harmonic degree {d} exceeds 3"))),
    }
}

/// Harmonic bases for every degree `1..=max_degree`, concatenated.
pub fn harmonic_monomial_suite(n: usize, max_degree: u32) -> Result<Vec<MultiPoly>> {
    if max_degree > 3 {
        return Err(Error::OutOfDeskScale(format!("harmonic degree {max_degree} exceeds 3")));
    }
    let mut out = Vec::new();
    for d in 1..=max_degree {
        out.extend(harmonic_basis(n, d)?);
    }
    Ok(out)
}

/// The Jacobian identities that make the factorization work.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianReport {
    pub n: usize,
    pub side: Side,
    /// `sum_i (dx_k/du_i)(dx_l/du_i) = 4 |u|^2 delta_kl` over all components.
    pub gram_full: bool,
    /// The last component is orthogonal to every other one in that pairing.
    pub last_orthogonal: bool,
    /// Summing over the first half of `u` only gives `4 rho_2^2 delta_kl`
    /// for `k, l < n`.
    pub first_half_gives_rho2: bool,
    /// Summing over the second half gives `4 rho_1^2 delta_kl`.
    pub second_half_gives_rho1: bool,
    /// Every component is itself harmonic in `u`.
    pub components_harmonic: bool,
}

impl JacobianReport {
    pub fn all_hold(&self) -> bool {
        self.gram_full && self.last_orthogonal && self.first_half_gives_rho2 && self.second_half_gives_rho1 && self.components_harmonic
    }
}

pub fn jacobian_identities(map: &QuadraticMap) -> Result<JacobianReport> {
    let n = map.n_target;
    let big_n = map.n_source;
    let half = big_n / 2;
    let jac = map.jacobian();
    let zero = MultiPoly::zero_in(Family::U, big_n);
    let pair = |k: usize, l: usize, range: std::ops::Range<usize>| {
        range.fold(zero.clone(), |acc, i| &acc + &(&jac[k][i] * &jac[l][i]))
    };
    let four = int(4);
    let full_norm = norm_sq_poly(big_n).scale(&four);
    let rho1 = partial_norm_sq_poly(1, half, big_n).scale(&four);
    let rho2 = partial_norm_sq_poly(half + 1, big_n, big_n).scale(&four);
    let mut gram_full = true;
    let mut last_orthogonal = true;
    let mut first_half = true;
    let mut second_half = true;
    for k in 0..n {
        for l in 0..n {
            let g = pair(k, l, 0..big_n);
            let expect = if k == l { &full_norm } else { &zero };
            gram_full &= &g == expect;
            if k == n - 1 && l < n - 1 {
                last_orthogonal &= g.num_terms() == 0;
            }
            if k < n - 1 && l < n - 1 {
                let (e1, e2) = if k == l { (&rho2, &rho1) } else { (&zero, &zero) };
                first_half &= &pair(k, l, 0..half) == e1;
                second_half &= &pair(k, l, half..big_n) == e2;
            }
        }
    }
    let vars = u_list(big_n);
    let components_harmonic = map
        .components()
        .iter()
        .map(|c| laplacian(c, &vars))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|p| p.num_terms() == 0);
    Ok(JacobianReport {
        n,
        side: map.side,
        gram_full,
        last_orthogonal,
        first_half_gives_rho2: first_half,
        second_half_gives_rho1: second_half,
        components_harmonic,
    })
}

/// The right map for n = 3 with the sign of one term of `x_1` flipped.
pub fn corrupted_map() -> Result<QuadraticMap> {
    Ok(quadratic_map(3, Side::Right)?.with_flipped_term(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::from_str(s).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        let xs = x_list(3);
        assert_eq!(laplacian(&p("x1^2"), &xs[..1]).unwrap(), MultiPoly::constant(int(2)));
        assert_eq!(laplacian(&p("x1*x2"), &xs[..2]).unwrap().num_terms(), 0);
        let split = p("u1^2 + u2^2 - u3^2 - u4^2");
        let lap = laplacian(&(&split * &split), &u_list(4)).unwrap();
        assert_eq!(lap, norm_sq_poly(4).scale(&int(8)));
        assert!(laplacian(&p("u1"), &[Var::u(2)]).is_err());
    }

    #[test]
    fn small_examples() {
        let r = verify_factorization(3, Side::Right, &p("x3")).unwrap();
        assert!(r.passed && r.lhs.num_terms() == 0);
        let r = verify_factorization(3, Side::Right, &p("x3^2")).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, norm_sq_poly(4).scale(&int(8)));
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(harmonic_basis(3, 1).unwrap().len(), 3);
        assert_eq!(harmonic_basis(3, 2).unwrap().len(), 5);
        assert_eq!(harmonic_basis(5, 2).unwrap().len(), 14);
        assert_eq!(harmonic_basis_by_kernel(5, 2).len(), 14);
        assert_eq!(harmonic_basis(9, 3).unwrap().len(), 165 - 9);
        assert!(matches!(harmonic_monomial_suite(3, 4), Err(Error::OutOfDeskScale(_))));
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn rejects_foreign_variables() {
        assert!(verify_factorization(3, Side::Left, &p("x4")).is_err());
        assert!(verify_factorization(3, Side::Left, &p("u1")).is_err());
    }
}
