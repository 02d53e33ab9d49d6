//! Small-`l` Wigner `D` matrices and Clebsch-Gordan coefficients, and the
//! product rule
//!
//! ```text
//! D^{l1}_{0,m1} D^{l2}_{m2,0} = sum_l <l1 0; l2 m2 | l m2> <l1 m1; l2 0 | l m1> D^l_{m2,m1}
//! ```
//!
//! Conventions: Condon-Shortley phases, active `zyz` rotations,
//! `D^l_{m',m}(α, β, γ) = e^{-i m' α} d^l_{m',m}(β) e^{-i m γ}` and
//! `d^l(β) = exp(-i β J_y)`. Matrix rows and columns run over `m = l, l-1, ..., -l`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_L: i32 = 2;

fn check_l(l: i32) -> Result<()> {
    if !(0..=MAX_L).contains(&l) {
        return Err(Error::OutOfDeskScale(format!("angular momentum l = {l} exceeds {MAX_L}")));
    }
    Ok(())
}

fn index(l: i32, m: i32) -> usize {
    (l - m) as usize
}

/// Matrix of `J_+` in the basis `m = l..-l`.
fn raising(l: i32) -> DMatrix<f64> {
    let d = (2 * l + 1) as usize;
    let mut jp = DMatrix::zeros(d, d);
    for m in -l..l {
        let c = f64::from(l * (l + 1) - m * (m + 1)).sqrt();
        jp[(index(l, m + 1), index(l, m))] = c;
    }
    jp
}

/// `d^l(β)`, obtained as `exp(β A)` with `A = -i J_y = -(J_+ - J_-)/2`.
pub fn small_d(l: i32, beta: f64) -> Result<DMatrix<f64>> {
    check_l(l)?;
    Ok(small_d_any(l, beta))
}

fn small_d_any(l: i32, beta: f64) -> DMatrix<f64> {
    let jp = raising(l);
    let a = (jp.transpose() - jp) * (0.5 * beta);
    a.exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        EulerAngles { alpha, beta, gamma }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        EulerAngles { alpha: rng.gen_range(0.0..2.0 * PI), beta: rng.gen_range(0.0..=PI), gamma: rng.gen_range(0.0..2.0 * PI) }
    }
}

/// The full `(2l+1) x (2l+1)` matrix `D^l(α, β, γ)`.
pub fn wigner_matrix(l: i32, angles: EulerAngles) -> Result<DMatrix<Complex64>> {
    check_l(l)?;
    Ok(wigner_matrix_any(l, angles))
}

/// Used for the coupled representations of the product rule, where `l`
/// reaches `l1 + l2`.
fn wigner_matrix_any(l: i32, angles: EulerAngles) -> DMatrix<Complex64> {
    let d = small_d_any(l, angles.beta);
    let phase = |m: i32, angle: f64| Complex64::from_polar(1.0, -f64::from(m) * angle);
    DMatrix::from_fn(d.nrows(), d.ncols(), |r, c| {
        let (mr, mc) = (l - r as i32, l - c as i32);
        phase(mr, angles.alpha) * d[(r, c)] * phase(mc, angles.gamma)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WignerIndex {
    pub l: i32,
    pub m_row: i32,
    pub m_col: i32,
}

impl WignerIndex {
    pub fn new(l: i32, m_row: i32, m_col: i32) -> Result<Self> {
        check_l(l)?;
        if m_row.abs() > l || m_col.abs() > l {
            return Err(Error::BadIndices { n: (2 * l + 1) as usize, i: m_row.unsigned_abs() as usize, j: m_col.unsigned_abs() as usize });
        }
        Ok(WignerIndex { l, m_row, m_col })
    }
}

#[allow(non_snake_case)]
pub fn wigner_D(idx: WignerIndex, angles: EulerAngles) -> Result<Complex64> {
    let d = wigner_matrix(idx.l, angles)?;
    Ok(d[(index(idx.l, idx.m_row), index(idx.l, idx.m_col))])
}

/// Coupled states `|l m>` of `l1 x l2` as vectors over the product basis
/// `|m1>|m2>` (row-major in `m1`, then `m2`, each running from `l_i` down).
struct Coupling {
    l1: i32,
    l2: i32,
    states: Vec<(i32, i32, Vec<f64>)>,
}

impl Coupling {
    fn product_index(&self, m1: i32, m2: i32) -> usize {
        index(self.l1, m1) * (2 * self.l2 + 1) as usize + index(self.l2, m2)
    }

    fn lower(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for m1 in -self.l1..=self.l1 {
            for m2 in -self.l2..=self.l2 {
                let c = v[self.product_index(m1, m2)];
                if c == 0.0 {
                    continue;
                }
                if m1 > -self.l1 {
                    let f = f64::from(self.l1 * (self.l1 + 1) - m1 * (m1 - 1)).sqrt();
                    out[self.product_index(m1 - 1, m2)] += f * c;
                }
                if m2 > -self.l2 {
                    let f = f64::from(self.l2 * (self.l2 + 1) - m2 * (m2 - 1)).sqrt();
                    out[self.product_index(m1, m2 - 1)] += f * c;
                }
            }
        }
        out
    }

    fn new(l1: i32, l2: i32) -> Coupling {
        let mut c = Coupling { l1, l2, states: Vec::new() };
        let dim = ((2 * l1 + 1) * (2 * l2 + 1)) as usize;
        for l in ((l1 - l2).abs()..=l1 + l2).rev() {
            // Highest weight: the unit vector in the M = l subspace orthogonal
            // to every state of larger total l.
            let mut v = Vec::new();
            for m1 in (-l1..=l1).rev() {
                let m2 = l - m1;
                if m2.abs() > l2 {
                    continue;
                }
                let mut w = vec![0.0; dim];
                w[c.product_index(m1, m2)] = 1.0;
                for _ in 0..2 {
                    for (_, m, s) in &c.states {
                        if *m == l {
                            let dot: f64 = w.iter().zip(s).map(|(a, b)| a * b).sum();
                            w.iter_mut().zip(s).for_each(|(a, b)| *a -= dot * b);
                        }
                    }
                }
                if w.iter().map(|a| a * a).sum::<f64>() > 1e-6 {
                    v = w;
                    break;
                }
            }
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            let lead = v[c.product_index(l1, l - l1)];
            let s = if lead < 0.0 { -1.0 } else { 1.0 } / norm;
            v.iter_mut().for_each(|a| *a *= s);
            let mut m = l;
            loop {
                let next = (m > -l).then(|| c.lower(&v));
                c.states.push((l, m, v));
                let Some(w) = next else { break };
                let f = f64::from(l * (l + 1) - m * (m - 1)).sqrt();
                v = w.into_iter().map(|a| a / f).collect();
                m -= 1;
            }
        }
        c
    }

    fn coefficient(&self, m1: i32, m2: i32, l: i32, m: i32) -> f64 {
        self.states
            .iter()
            .find(|(sl, sm, _)| *sl == l && *sm == m)
            .map_or(0.0, |(_, _, v)| v[self.product_index(m1, m2)])
    }
}

/// `<l1 m1; l2 m2 | l m>`; zero whenever a selection rule fails.
pub fn clebsch_gordan(l1: i32, m1: i32, l2: i32, m2: i32, l: i32, m: i32) -> Result<f64> {
    check_l(l1)?;
    check_l(l2)?;
    if m1.abs() > l1 || m2.abs() > l2 || m.abs() > l || m1 + m2 != m || l < (l1 - l2).abs() || l > l1 + l2 {
        return Ok(0.0);
    }
    Ok(Coupling::new(l1, l2).coefficient(m1, m2, l, m))
}

/// Largest deviation of `sum_{m1,m2} <..|l m><..|l' m'>` from `δ δ`.
pub fn cg_orthogonality_residual(l1: i32, l2: i32) -> Result<f64> {
    check_l(l1)?;
    check_l(l2)?;
    let c = Coupling::new(l1, l2);
    let mut worst: f64 = 0.0;
    for (la, ma, va) in &c.states {
        for (lb, mb, vb) in &c.states {
            let dot: f64 = va.iter().zip(vb).map(|(a, b)| a * b).sum();
            let expected = if (la, ma) == (lb, mb) { 1.0 } else { 0.0 };
            worst = worst.max((dot - expected).abs());
        }
    }
    Ok(worst)
}

/// Largest entry of `D D^† - I`.
pub fn unitarity_residual(l: i32, angles: EulerAngles) -> Result<f64> {
    let d = wigner_matrix(l, angles)?;
    let p = &d * d.adjoint();
    let n = p.nrows();
    Ok((0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (p[(i, j)] - if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).norm())
        .fold(0.0, f64::max))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BisphericalReport {
    pub l1: i32,
    pub l2: i32,
    pub trials: usize,
    pub terms_checked: usize,
    pub max_residual: f64,
    pub max_unitarity_residual: f64,
}

/// Checks the product rule for every `(m1, m2)` at one rotation; returns the
/// largest residual.
pub fn product_residual(l1: i32, l2: i32, angles: EulerAngles) -> Result<f64> {
    let d1 = wigner_matrix(l1, angles)?;
    let d2 = wigner_matrix(l2, angles)?;
    let coupled: Vec<(i32, DMatrix<Complex64>)> =
        ((l1 - l2).abs()..=l1 + l2).map(|l| (l, wigner_matrix_any(l, angles))).collect();
    let c = Coupling::new(l1, l2);
    let mut worst: f64 = 0.0;
    for m1 in -l1..=l1 {
        for m2 in -l2..=l2 {
            let lhs = d1[(index(l1, 0), index(l1, m1))] * d2[(index(l2, m2), index(l2, 0))];
            let rhs: Complex64 = coupled
                .iter()
                .filter(|(l, _)| m1.abs() <= *l && m2.abs() <= *l)
                .map(|(l, d)| {
                    let w = c.coefficient(0, m2, *l, m2) * c.coefficient(m1, 0, *l, m1);
                    d[(index(*l, m2), index(*l, m1))] * w
                })
                .sum();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// The product rule at `trials` random rotations.
pub fn verify_bispherical_product<R: Rng + ?Sized>(l1: i32, l2: i32, rng: &mut R, trials: usize) -> Result<BisphericalReport> {
    check_l(l1)?;
    check_l(l2)?;
    let mut report = BisphericalReport {
        l1,
        l2,
        trials,
        terms_checked: 0,
        max_residual: 0.0,
        max_unitarity_residual: 0.0,
    };
    for _ in 0..trials {
        let a = EulerAngles::random(rng);
        report.max_residual = report.max_residual.max(product_residual(l1, l2, a)?);
        for l in [l1, l2] {
            report.max_unitarity_residual = report.max_unitarity_residual.max(unitarity_residual(l, a)?);
        }
        report.terms_checked += ((2 * l1 + 1) * (2 * l2 + 1)) as usize;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l1_entries() {
        let b = 0.7_f64;
        let d = small_d(1, b).unwrap();
        assert!((d[(1, 1)] - b.cos()).abs() < 1e-14);
        assert!((d[(0, 1)] + b.sin() / 2f64.sqrt()).abs() < 1e-14);
        assert!((d[(0, 0)] - (1.0 + b.cos()) / 2.0).abs() < 1e-14);
        assert!(small_d(3, b).is_err());
    }

    #[test]
    fn cg_examples() {
        assert!((clebsch_gordan(1, 1, 1, 1, 2, 2).unwrap() - 1.0).abs() < 1e-14);
        assert!((clebsch_gordan(1, 0, 1, 0, 2, 0).unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((clebsch_gordan(1, 0, 1, 0, 0, 0).unwrap() + (1.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!(clebsch_gordan(1, 0, 1, 0, 1, 0).unwrap().abs() < 1e-14);
        assert_eq!(clebsch_gordan(1, 1, 1, 0, 2, 0).unwrap(), 0.0);
    }
}
