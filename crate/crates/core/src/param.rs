//! Angle parameterizations of the source spaces of the quadratic maps.
//!
//! * Cayley-Klein angles on `R^4`, mapped to `R^3`;
//! * the six-angle parameterization of `R^8` built from two `SU(2)` factors
//!   and a diagonal phase, mapped to `R^5` by the left map;
//! * hyperspherical coordinates on single and doubled spheres.
//!
//! Everything here is binary64; the exact modules anchor the identities.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ksmap::{quadratic_map, Side};

/// Named angles in radians plus a radius, as typed on the command line
/// (`r=1,theta=0.5,...`). Missing angles read as 0 and a missing radius as 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AngleSet {
    values: BTreeMap<String, f64>,
}

impl AngleSet {
    pub fn parse(s: &str) -> Result<AngleSet> {
        let mut values = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got {part:?}")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad number in {part:?}")))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("angle {k} is not finite")));
            }
            values.insert(k.trim().to_string(), v);
        }
        if values.get("r").is_some_and(|r| *r < 0.0) {
            return Err(Error::Parse("r must be nonnegative".into()));
        }
        Ok(AngleSet { values })
    }

    pub fn get(&self, name: &str) -> f64 {
        self.values.get(name).copied().unwrap_or(if name == "r" { 1.0 } else { 0.0 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CayleyKleinAngles {
    pub r: f64,
    pub theta: f64,
    pub psi: f64,
    pub phi: f64,
}

impl CayleyKleinAngles {
    pub fn from_set(a: &AngleSet) -> Self {
        CayleyKleinAngles { r: a.get("r"), theta: a.get("theta"), psi: a.get("psi"), phi: a.get("phi") }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        CayleyKleinAngles {
            r: rng.gen_range(0.1..3.0),
            theta: rng.gen_range(0.0..PI),
            psi: rng.gen_range(0.0..2.0 * PI),
            phi: rng.gen_range(0.0..2.0 * PI),
        }
    }
}

/// `u = sqrt(r) (sin(t/2) cos(psi - phi), sin(t/2) sin(psi - phi),
///               cos(t/2) cos(psi + phi), cos(t/2) sin(psi + phi))`.
pub fn cayley_klein(a: &CayleyKleinAngles) -> [f64; 4] {
    let s = a.r.sqrt();
    let (sh, ch) = (a.theta / 2.0).sin_cos();
    [
        s * sh * (a.psi - a.phi).cos(),
        s * sh * (a.psi - a.phi).sin(),
        s * ch * (a.psi + a.phi).cos(),
        s * ch * (a.psi + a.phi).sin(),
    ]
}

/// Image of `cayley_klein(a)` under the n = 3 map of the given side: a
/// point of the sphere of radius `r` at polar angle `pi - theta`, with
/// azimuth `2 psi` (right) or `2 phi` (left).
pub fn cayley_klein_target(side: Side, a: &CayleyKleinAngles) -> [f64; 3] {
    let (s, c) = a.theta.sin_cos();
    match side {
        Side::Right => [-a.r * s * (2.0 * a.psi).cos(), -a.r * s * (2.0 * a.psi).sin(), -a.r * c],
        Side::Left => [a.r * s * (2.0 * a.phi).cos(), a.r * s * (2.0 * a.phi).sin(), -a.r * c],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct R8Angles {
    pub r: f64,
    pub eta: f64,
    pub chi: f64,
    pub theta: f64,
    pub psi: f64,
    pub theta_p: f64,
    pub psi_p: f64,
}

impl R8Angles {
    pub fn from_set(a: &AngleSet) -> Self {
        R8Angles {
            r: a.get("r"),
            eta: a.get("eta"),
            chi: a.get("chi"),
            theta: a.get("theta"),
            psi: a.get("psi"),
            theta_p: a.get("theta_p"),
            psi_p: a.get("psi_p"),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        R8Angles {
            r: rng.gen_range(0.1..3.0),
            eta: rng.gen_range(0.0..PI),
            chi: rng.gen_range(0.0..PI),
            theta: rng.gen_range(0.0..PI),
            psi: rng.gen_range(0.0..2.0 * PI),
            theta_p: rng.gen_range(0.0..PI),
            psi_p: rng.gen_range(0.0..2.0 * PI),
        }
    }
}

/// Phase convention for the `t_i` of the `SU(2) x SU(2)` factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phases {
    /// `t_1 = e^{-i psi/2} cos(theta/2)`, `t_2 = e^{+i psi/2} sin(theta/2)`,
    /// likewise `t_3, t_4`.
    Direct,
    /// The complex conjugate phases; the convention that lands on the
    /// spherical target.
    Conjugated,
}

/// `t_1 .. t_5` (with `t_5 = e^{-i chi/2}` in both conventions).
pub fn t_values(a: &R8Angles, phases: Phases) -> [Complex64; 5] {
    let sign = match phases {
        Phases::Direct => -1.0,
        Phases::Conjugated => 1.0,
    };
    let e = |angle: f64| Complex64::from_polar(1.0, angle);
    [
        e(sign * a.psi / 2.0) * (a.theta / 2.0).cos(),
        e(-sign * a.psi / 2.0) * (a.theta / 2.0).sin(),
        e(sign * a.psi_p / 2.0) * (a.theta_p / 2.0).cos(),
        e(-sign * a.psi_p / 2.0) * (a.theta_p / 2.0).sin(),
        e(-a.chi / 2.0),
    ]
}

type C2 = [[Complex64; 2]; 2];

fn su2(a: Complex64, b: Complex64) -> C2 {
    [[a, b], [-b.conj(), a.conj()]]
}

fn mul2(x: &C2, y: &C2) -> C2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// `w_1 .. w_4` from the two products
/// `A diag(t5, conj t5) B` and `A diag(conj t5, t5) B`.
pub fn w_values(a: &R8Angles, phases: Phases) -> [Complex64; 4] {
    let [t1, t2, t3, t4, t5] = t_values(a, phases);
    let left = su2(t1, t2);
    let right = su2(t3, t4);
    let zero = Complex64::new(0.0, 0.0);
    let d1 = [[t5, zero], [zero, t5.conj()]];
    let d2 = [[t5.conj(), zero], [zero, t5]];
    let w12 = mul2(&mul2(&left, &d1), &right);
    let w34 = mul2(&mul2(&left, &d2), &right);
    [w12[0][0], w12[0][1], w34[0][0], w34[0][1]]
}

/// `u in R^8` with `u_{2k-1} + i u_{2k} = z_k` and
/// `z = sqrt(r) (cos(eta/2) w_1, cos(eta/2) w_2, sin(eta/2) w_3, sin(eta/2) w_4)`.
pub fn param_r8_with(a: &R8Angles, phases: Phases) -> [f64; 8] {
    let w = w_values(a, phases);
    let s = a.r.sqrt();
    let (sh, ch) = (a.eta / 2.0).sin_cos();
    let z = [w[0] * s * ch, w[1] * s * ch, w[2] * s * sh, w[3] * s * sh];
    let mut u = [0.0; 8];
    for (k, zk) in z.iter().enumerate() {
        u[2 * k] = zk.re;
        u[2 * k + 1] = zk.im;
    }
    u
}

pub fn param_r8(a: &R8Angles) -> [f64; 8] {
    param_r8_with(a, Phases::Conjugated)
}

pub fn spherical_target(a: &R8Angles) -> [f64; 5] {
    let (se, ce) = a.eta.sin_cos();
    let (sc, cc) = a.chi.sin_cos();
    let (st, ct) = a.theta_p.sin_cos();
    let (sp, cp) = a.psi_p.sin_cos();
    [a.r * se * cc, a.r * se * sc * ct, a.r * se * sc * st * sp, a.r * se * sc * st * cp, a.r * ce]
}

/// The two entries `conj(w1) w3 + w2 conj(w4)` and
/// `conj(w1) w4 - w2 conj(w3)`, with their closed forms.
pub fn overlap_closed_forms(a: &R8Angles, phases: Phases) -> [(Complex64, Complex64); 2] {
    let [w1, w2, w3, w4] = w_values(a, phases);
    let (sc, cc) = a.chi.sin_cos();
    let (st, ct) = a.theta_p.sin_cos();
    let (sp, cp) = a.psi_p.sin_cos();
    [
        (w1.conj() * w3 + w2 * w4.conj(), Complex64::new(cc, sc * ct)),
        (w1.conj() * w4 - w2 * w3.conj(), Complex64::new(sc * st * sp, sc * st * cp)),
    ]
}

/// `[[conj w1, -w2], [conj w2, w1]] [[w3, w4], [-conj w4, conj w3]]`.
pub fn left_side_product(w: &[Complex64; 4]) -> C2 {
    let [w1, w2, w3, w4] = *w;
    mul2(&[[w1.conj(), -w2], [w2.conj(), w1]], &su2(w3, w4))
}

/// `[[w1, w2], [-conj w2, conj w1]] [[conj w3, -w4], [conj w4, conj w3]]`,
/// the right-side analogue; constructed for display only.
pub fn right_side_product(w: &[Complex64; 4]) -> C2 {
    let [w1, w2, w3, w4] = *w;
    mul2(&su2(w1, w2), &[[w3.conj(), -w4], [w4.conj(), w3.conj()]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Left,
    Right,
    Double,
}

/// Point on the unit sphere: `(sin t_m * y(t_1..t_{m-1}), cos t_m)` with
/// `y() = (1)`.
fn sphere(angles: &[f64]) -> Vec<f64> {
    match angles.split_last() {
        None => vec![1.0],
        Some((&last, rest)) => {
            let (s, c) = last.sin_cos();
            let mut out: Vec<f64> = sphere(rest).into_iter().map(|y| s * y).collect();
            out.push(c);
            out
        }
    }
}

/// Hyperspherical coordinates.
///
/// `Left` and `Right` take `n - 1` angles `(t_1, ..., t_{n-1})` and return
/// `n` coordinates; the right sphere differs only in which angles the caller
/// passes. `Double` takes `2n - 3` angles
/// `(t_1, ..., t_{n-2}, t_{n-1}, t'_{n-2}, ..., t'_1)` and returns `2(n-1)`
/// coordinates: `sin(t_{n-1}/2)` times the unit sphere point of
/// `t_1..t_{n-2}`, then `cos(t_{n-1}/2)` times the point of
/// `t'_1..t'_{n-2}` in reverse order.
pub fn hyperspherical(n: usize, angles: &[f64], variant: Variant) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::UnsupportedDimension { what: "hyperspherical coordinates", n });
    }
    match variant {
        Variant::Left | Variant::Right => {
            if angles.len() != n - 1 {
                return Err(Error::ArityMismatch { expected: n - 1, got: angles.len() });
            }
            Ok(sphere(angles))
        }
        Variant::Double => {
            if angles.len() != 2 * n - 3 {
                return Err(Error::ArityMismatch { expected: 2 * n - 3, got: angles.len() });
            }
            let m = n - 2;
            let (sh, ch) = (angles[m] / 2.0).sin_cos();
            let primed: Vec<f64> = angles[m + 1..].iter().rev().copied().collect();
            let mut out: Vec<f64> = sphere(&angles[..m]).into_iter().map(|y| sh * y).collect();
            out.extend(sphere(&primed).into_iter().rev().map(|y| ch * y));
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub target: &'static str,
    pub trials: usize,
    pub max_component_residual: f64,
    pub max_norm_residual: f64,
    /// Largest deviation in the two closed forms of `conj(w1) w3 + ...`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_overlap_residual: Option<f64>,
}

/// Maps random Cayley-Klein points through the n = 3 map of `side`.
pub fn verify_cayley_klein<R: Rng + ?Sized>(rng: &mut R, trials: usize, side: Side) -> Result<RoundTripReport> {
    let map = quadratic_map(3, side)?;
    let mut comp: f64 = 0.0;
    let mut norm: f64 = 0.0;
    for _ in 0..trials {
        let a = CayleyKleinAngles::random(rng);
        let u = cayley_klein(&a);
        let x = map.apply_f64(&u)?;
        let target = cayley_klein_target(side, &a);
        comp = x.iter().zip(target).map(|(p, q)| (p - q).abs()).fold(comp, f64::max);
        norm = norm.max((u.iter().map(|v| v * v).sum::<f64>() - a.r).abs());
    }
    Ok(RoundTripReport {
        target: "r4r3",
        trials,
        max_component_residual: comp,
        max_norm_residual: norm,
        max_overlap_residual: None,
    })
}

/// Maps random six-angle points of `R^8` through the left n = 5 map and
/// compares with `spherical_target`.
pub fn verify_r8<R: Rng + ?Sized>(rng: &mut R, trials: usize, phases: Phases) -> Result<RoundTripReport> {
    let map = quadratic_map(5, Side::Left)?;
    let mut comp: f64 = 0.0;
    let mut norm: f64 = 0.0;
    let mut overlap: f64 = 0.0;
    for _ in 0..trials {
        let a = R8Angles::random(rng);
        let u = param_r8_with(&a, phases);
        let x = map.apply_f64(&u)?;
        comp = x.iter().zip(spherical_target(&a)).map(|(p, q)| (p - q).abs()).fold(comp, f64::max);
        norm = norm.max((u.iter().map(|v| v * v).sum::<f64>() - a.r).abs());
        for (lhs, rhs) in overlap_closed_forms(&a, phases) {
            overlap = overlap.max((lhs - rhs).norm());
        }
    }
    Ok(RoundTripReport {
        target: "r8r5",
        trials,
        max_component_residual: comp,
        max_norm_residual: norm,
        max_overlap_residual: Some(overlap),
    })
}
