//! Quadratic maps `u in R^N -> x in R^n`, `N = 2(n-1)`, read off the last
//! column (right side) or last row (left side) of the scaled Cayley matrix.
//!
//! With `H = u_1 I + S_n` restricted to its leading `(n-1)` block and `s` the
//! last column of `S_n` above the diagonal:
//!
//! * right: `x' = -2 H^t s`, the first `n-1` entries of the last column;
//! * left:  `x' =  2 H s`, the first `n-1` entries of the last row;
//! * both:  `x_n = rho_1^2 - rho_2^2`, the squared norms of the two halves of `u`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::cayley::{cayley_skew_symbolic, source_len};
use crate::error::{Error, Result};
use crate::exactnum::{int, norm_sq_poly, partial_norm_sq_poly, Family, MultiPoly, Rational, Var};
use crate::hurwitz::{u_vars, ParamVector};
use crate::matrix::Ring;

pub const MAP_DIMS: [usize; 4] = [2, 3, 5, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!("side must be left or right, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticMap {
    pub n_target: usize,
    pub n_source: usize,
    pub side: Side,
    components: Vec<MultiPoly>,
}

impl QuadraticMap {
    /// Wraps explicit components; each must be a polynomial in `u1..u_{n_source}`.
    pub fn from_components(side: Side, n_source: usize, components: Vec<MultiPoly>) -> Result<Self> {
        let components = components
            .into_iter()
            .map(|c| {
                if c.family() == Some(Family::X) && !c.is_constant() {
                    return Err(Error::FamilyMismatch("map components must be polynomials in u".into()));
                }
                if c.arity() > n_source {
                    return Err(Error::ArityMismatch { expected: n_source, got: c.arity() });
                }
                Ok(c.with_arity(Family::U, n_source))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadraticMap { n_target: components.len(), n_source, side, components })
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn apply(&self, u: &ParamVector) -> Result<Vec<Rational>> {
        if u.len() != self.n_source {
            return Err(Error::LengthMismatch { expected: self.n_source, got: u.len() });
        }
        self.components.iter().map(|c| c.eval(u.entries())).collect()
    }

    pub fn apply_f64(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.n_source {
            return Err(Error::LengthMismatch { expected: self.n_source, got: u.len() });
        }
        self.components.iter().map(|c| c.eval_f64(u)).collect()
    }

    /// `sum x_i^2 - (|u|^2)^2`.
    pub fn norm_composition_residual(&self) -> MultiPoly {
        let norm = norm_sq_poly(self.n_source);
        let sum = self.components.iter().fold(MultiPoly::zero_in(Family::U, self.n_source), |acc, c| &acc + &(c * c));
        &sum - &(&norm * &norm)
    }

    pub fn is_homogeneous_quadratic(&self) -> bool {
        self.components.iter().all(|c| c.is_homogeneous(2))
    }

    /// `dx_k / du_i` for every component `k` and source variable `i`.
    pub fn jacobian(&self) -> Vec<Vec<MultiPoly>> {
        self.components
            .iter()
            .map(|c| {
                (1..=self.n_source)
                    .map(|i| c.partial(Var::u(i)).expect("component arity equals n_source"))
                    .collect()
            })
            .collect()
    }

    /// A copy with the sign of one term of one component flipped.
    pub fn with_flipped_term(&self, component: usize, term: usize) -> QuadraticMap {
        let c = &self.components[component];
        let flipped = MultiPoly::from_terms(
            Family::U,
            self.n_source,
            c.terms().enumerate().map(|(k, (m, a))| (*m, if k == term { -a.clone() } else { a.clone() })),
        );
        let mut out = self.clone();
        out.components[component] = flipped;
        out
    }
}

fn build(n: usize, side: Side) -> Result<QuadraticMap> {
    if !MAP_DIMS.contains(&n) {
        return Err(Error::UnsupportedDimension { what: "quadratic map", n });
    }
    let big_n = source_len(n)?;
    let vars = u_vars(big_n);
    let s = cayley_skew_symbolic(n)?;
    let m = n - 1;
    let h = |i: usize, j: usize| {
        let e = s.get(i, j).clone();
        if i == j {
            &e + &vars[0]
        } else {
            e
        }
    };
    let col: Vec<MultiPoly> = (0..m).map(|i| s.get(i, m).clone()).collect();
    let two = int(2);
    let mut components: Vec<MultiPoly> = (0..m)
        .map(|k| {
            let sum = (0..m).fold(MultiPoly::zero_in(Family::U, big_n), |acc, j| {
                let coeff = match side {
                    Side::Right => h(j, k).neg(),
                    Side::Left => h(k, j),
                };
                &acc + &(&coeff * &col[j])
            });
            sum.scale(&two)
        })
        .collect();
    let half = big_n / 2;
    let rho1 = partial_norm_sq_poly(1, half, big_n);
    let rho2 = partial_norm_sq_poly(half + 1, big_n, big_n);
    components.push(&rho1 - &rho2);
    QuadraticMap::from_components(side, big_n, components)
}

/// The cached map for target dimension `n` in {2, 3, 5, 9}.
pub fn quadratic_map(n: usize, side: Side) -> Result<&'static QuadraticMap> {
    static CACHE: [[OnceLock<Result<QuadraticMap>>; 2]; 4] = [
        [OnceLock::new(), OnceLock::new()],
        [OnceLock::new(), OnceLock::new()],
        [OnceLock::new(), OnceLock::new()],
        [OnceLock::new(), OnceLock::new()],
    ];
    let slot = MAP_DIMS
        .iter()
        .position(|&d| d == n)
        .ok_or(Error::UnsupportedDimension { what: "quadratic map", n })?;
    let side_slot = match side {
        Side::Left => 0,
        Side::Right => 1,
    };
    CACHE[slot][side_slot].get_or_init(|| build(n, side)).as_ref().map_err(Clone::clone)
}

pub fn last_column_map(n: usize) -> Result<&'static QuadraticMap> {
    quadratic_map(n, Side::Right)
}

pub fn last_row_map(n: usize) -> Result<&'static QuadraticMap> {
    quadratic_map(n, Side::Left)
}

pub fn apply_map(m: &QuadraticMap, u: &ParamVector) -> Result<Vec<Rational>> {
    m.apply(u)
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    n_target: usize,
    n_source: usize,
    side: Side,
    components: Vec<String>,
}

impl Serialize for QuadraticMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson {
            n_target: self.n_target,
            n_source: self.n_source,
            side: self.side,
            components: self.components.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MapJson::deserialize(d)?;
        let comps = raw
            .components
            .iter()
            .map(|c| MultiPoly::from_str(c))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        let map = QuadraticMap::from_components(raw.side, raw.n_source, comps).map_err(de::Error::custom)?;
        if map.n_target != raw.n_target {
            return Err(de::Error::custom("component count does not match n_target"));
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dim_examples() {
        let m = last_column_map(3).unwrap();
        let e1 = ParamVector::from_i64(&[1, 0, 0, 0]).unwrap();
        assert_eq!(m.apply(&e1).unwrap(), vec![int(0), int(0), int(1)]);
        let e3 = ParamVector::from_i64(&[0, 0, 1, 0]).unwrap();
        assert_eq!(m.apply(&e3).unwrap(), vec![int(0), int(0), int(-1)]);
        let reference = ["-2*u1*u3 + 2*u2*u4", "-2*u1*u4 - 2*u2*u3", "u1^2 + u2^2 - u3^2 - u4^2"];
        for (c, p) in m.components().iter().zip(reference) {
            assert_eq!(c, &MultiPoly::from_str(p).unwrap());
        }
    }

    #[test]
    fn levi_civita_columns() {
        let r = last_column_map(2).unwrap();
        assert_eq!(r.components()[0], MultiPoly::from_str("-2*u1*u2").unwrap());
        let l = last_row_map(2).unwrap();
        assert_eq!(l.components()[0], MultiPoly::from_str("2*u1*u2").unwrap());
    }

    #[test]
    fn unsupported() {
        assert!(quadratic_map(4, Side::Left).is_err());
        assert!(quadratic_map(7, Side::Right).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = last_row_map(5).unwrap();
        let s = serde_json::to_string(m).unwrap();
        let back: QuadraticMap = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, m);
    }
}
