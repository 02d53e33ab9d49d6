//! The adjoint basis `Σ_ij` of so(n), linear decompositions of Hurwitz-type
//! matrices in that basis, Sylvester-Hadamard sign tables, the generating
//! matrices of so(4), so(8) and so(16), and the ten so(5) generators.
//!
//! Generating matrices for `n = 8` start from the bracket layout
//!
//! ```text
//! H = u1 [identity] + sum_k u_k [ s_1 Σ_a1b1 + s_2 Σ_a2b2 + ... ]
//! ```
//!
//! where every `u_k` with `k > 1` owns a perfect matching of `{1..n}` and a
//! row of signs. The parameters are split into groups that share a square
//! ±1 sign table; the `p`-th generating matrix gives the parameter in row `r`
//! of its group the sign row `(r + p) mod g`. Because each table is
//! orthogonal, the `n/2` cyclic shifts put `n/2` independent sign vectors on
//! every matching and the extracted skew coefficients span so(n).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, rat, Family, GaussRational, MultiPoly, Rational, Var};
use crate::hurwitz::ParamVector;
use crate::linalg::{SparseSpan, SparseVec};
use crate::matrix::{ExactMatrix, GaussMatrix, Matrix, PolyMatrix};

/// Elementary antisymmetric matrix with `+1` at `(i, j)` and `-1` at `(j, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjointElement {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl AdjointElement {
    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |r, c| {
            if (r + 1, c + 1) == (self.i, self.j) {
                int(1)
            } else if (r + 1, c + 1) == (self.j, self.i) {
                int(-1)
            } else {
                Rational::zero()
            }
        })
    }

    pub fn label(&self) -> String {
        sigma_label(self.i, self.j)
    }
}

fn sigma_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("Σ{i}{j}")
    } else {
        format!("Σ{i},{j}")
    }
}

pub fn sigma(n: usize, i: usize, j: usize) -> Result<AdjointElement> {
    if i == 0 || i >= j || j > n {
        return Err(Error::BadIndices { n, i, j });
    }
    Ok(AdjointElement { n, i, j })
}

/// `L_ij` realized as `Σ_ij`, with `L_ji = -L_ij` for `i > j`.
fn l(n: usize, i: usize, j: usize) -> ExactMatrix {
    if i < j {
        sigma(n, i, j).expect("valid indices").matrix()
    } else {
        sigma(n, j, i).expect("valid indices").matrix().neg()
    }
}

/// One signed adjoint element inside a coefficient bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTerm {
    pub coeff: Rational,
    pub i: usize,
    pub j: usize,
}

/// The coefficient matrix of one parameter, split into a diagonal part, a
/// symmetric off-diagonal part and a skew part in the `Σ` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub diagonal: Vec<Rational>,
    pub symmetric: Vec<(usize, usize, Rational)>,
    pub skew: Vec<SigmaTerm>,
}

impl Coefficient {
    fn empty(n: usize) -> Self {
        Coefficient { diagonal: vec![Rational::zero(); n], symmetric: Vec::new(), skew: Vec::new() }
    }

    pub fn has_identity_part(&self) -> bool {
        self.diagonal.iter().any(|d| !d.is_zero())
    }

    pub fn skew_matrix(&self, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n);
        for t in &self.skew {
            let (a, b) = (t.i - 1, t.j - 1);
            m.set(a, b, m.get(a, b) + &t.coeff);
            m.set(b, a, m.get(b, a) - &t.coeff);
        }
        m
    }

    pub fn matrix(&self, n: usize) -> ExactMatrix {
        let mut m = self.skew_matrix(n);
        for (k, d) in self.diagonal.iter().enumerate() {
            m.set(k, k, m.get(k, k) + d);
        }
        for (i, j, c) in &self.symmetric {
            let (a, b) = (i - 1, j - 1);
            m.set(a, b, m.get(a, b) + c);
            m.set(b, a, m.get(b, a) + c);
        }
        m
    }

    /// The skew bracket in the form `-Σ12 + Σ34 + Σ56 - Σ78`.
    pub fn bracket(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.skew.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&sigma_label(t.i, t.j));
        }
        out
    }

    /// Signed `(i, j)` pairs, order-independent, for comparisons.
    pub fn skew_set(&self) -> BTreeSet<(Rational, usize, usize)> {
        self.skew.iter().map(|t| (t.coeff.clone(), t.i, t.j)).collect()
    }
}

/// A matrix linear in `u_1..u_arity`, stored parameter by parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingMatrix {
    pub n: usize,
    pub arity: usize,
    pub coeffs: BTreeMap<usize, Coefficient>,
}

impl GeneratingMatrix {
    pub fn coefficient(&self, k: usize) -> Option<&Coefficient> {
        self.coeffs.get(&k)
    }

    pub fn coefficient_matrix(&self, k: usize) -> ExactMatrix {
        self.coeffs.get(&k).map_or_else(|| ExactMatrix::zeros(self.n), |c| c.matrix(self.n))
    }

    /// Skew coefficient matrices of every parameter that has a skew part.
    pub fn skew_matrices(&self) -> Vec<(usize, ExactMatrix)> {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.skew.is_empty())
            .map(|(k, c)| (*k, c.skew_matrix(self.n)))
            .collect()
    }

    /// `sum_k u_k C_k` as a polynomial matrix.
    pub fn reconstruct(&self) -> PolyMatrix {
        let mut out = PolyMatrix::from_fn(self.n, |_, _| MultiPoly::zero_in(Family::U, self.arity));
        for k in self.coeffs.keys() {
            let c = self.coefficient_matrix(*k);
            let u = MultiPoly::u(*k).with_arity(Family::U, self.arity);
            for i in 0..self.n {
                for j in 0..self.n {
                    let e = c.get(i, j);
                    if !e.is_zero() {
                        out.set(i, j, out.get(i, j) + &u.scale(e));
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, u: &ParamVector) -> Result<ExactMatrix> {
        if u.len() != self.arity {
            return Err(Error::LengthMismatch { expected: self.arity, got: u.len() });
        }
        let mut out = ExactMatrix::zeros(self.n);
        for (k, c) in &self.coeffs {
            out = out.add(&c.matrix(self.n).scale(&u.entries()[k - 1]));
        }
        Ok(out)
    }
}

impl fmt::Display for GeneratingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.has_identity_part() {
                let diag: Vec<String> = c.diagonal.iter().map(format_rational).collect();
                write!(f, "u{k}[diag({})]", diag.join(", "))?;
            } else {
                write!(f, "u{k}[{}]", c.bracket())?;
            }
        }
        Ok(())
    }
}

/// Splits a matrix linear in `u` into per-parameter coefficients.
pub fn decompose_adjoint(h: &PolyMatrix) -> Result<GeneratingMatrix> {
    let n = h.dim();
    let mut arity = 0;
    let mut mats: BTreeMap<usize, ExactMatrix> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let e = h.get(i, j);
            if e.family() == Some(Family::X) && !e.is_zero() {
                return Err(Error::FamilyMismatch("generating matrices are linear in u".into()));
            }
            arity = arity.max(e.arity());
            for (m, c) in e.terms() {
                let slots: Vec<usize> = (0..e.arity()).filter(|&s| m.exponent(s) > 0).collect();
                match m.degree() {
                    0 => return Err(Error::ConstantTerm { i: i + 1, j: j + 1 }),
                    1 => {
                        let k = slots[0] + 1;
                        let mat = mats.entry(k).or_insert_with(|| ExactMatrix::zeros(n));
                        mat.set(i, j, mat.get(i, j) + c);
                    }
                    _ => return Err(Error::Nonlinear(Var::u(slots[0] + 1))),
                }
            }
        }
    }
    let half = rat(1, 2);
    let mut coeffs = BTreeMap::new();
    for (k, m) in mats {
        let mut c = Coefficient::empty(n);
        for i in 0..n {
            c.diagonal[i] = m.get(i, i).clone();
            for j in i + 1..n {
                let sym = (m.get(i, j) + m.get(j, i)) * &half;
                let skew = (m.get(i, j) - m.get(j, i)) * &half;
                if !sym.is_zero() {
                    c.symmetric.push((i + 1, j + 1, sym));
                }
                if !skew.is_zero() {
                    c.skew.push(SigmaTerm { coeff: skew, i: i + 1, j: j + 1 });
                }
            }
        }
        coeffs.insert(k, c);
    }
    Ok(GeneratingMatrix { n, arity, coeffs })
}

/// Sylvester's Hadamard matrix of order `2^m`, `1 <= m <= 4`.
pub fn hadamard_sylvester(m: usize) -> Result<ExactMatrix> {
    if !(1..=4).contains(&m) {
        return Err(Error::UnsupportedDimension { what: "Sylvester-Hadamard order exponent", n: m });
    }
    let mut h = ExactMatrix::from_i64(&[&[1]]);
    for _ in 0..m {
        let d = h.dim();
        h = ExactMatrix::from_fn(2 * d, |i, j| {
            let e = h.get(i % d, j % d).clone();
            if i >= d && j >= d {
                -e
            } else {
                e
            }
        });
    }
    Ok(h)
}

/// Sign tables read off the eight brackets of the `H_8^1` decomposition,
/// rows for `u1..u4` and `u5..u8` respectively.
pub const H8_SIGNS_FIRST: [[i64; 4]; 4] = [[1, 1, 1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1], [-1, 1, -1, 1]];
pub const H8_SIGNS_SECOND: [[i64; 4]; 4] = [[1, 1, 1, 1], [-1, 1, -1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1]];

/// Slot order of each bracket of `H_8^1`; `u1`'s slot `j` is the diagonal
/// pair `(j, j + 4)`.
const H8_SLOTS: [[(usize, usize); 4]; 8] = [
    [(1, 5), (2, 6), (3, 7), (4, 8)],
    [(1, 2), (3, 4), (5, 6), (7, 8)],
    [(1, 3), (2, 4), (5, 7), (6, 8)],
    [(1, 4), (2, 3), (6, 7), (5, 8)],
    [(1, 5), (2, 6), (3, 7), (4, 8)],
    [(1, 6), (2, 5), (3, 8), (4, 7)],
    [(1, 7), (2, 8), (3, 5), (4, 6)],
    [(1, 8), (2, 7), (3, 6), (4, 5)],
];

/// Perfect matching `i <-> i xor (k-1)` on `1..n`, pairs ordered by their
/// smaller index; for `k = 1` the diagonal pairs `(j, j + n/2)`.
fn xor_slots(n: usize, k: usize) -> Vec<(usize, usize)> {
    if k == 1 {
        return (1..=n / 2).map(|j| (j, j + n / 2)).collect();
    }
    (0..n).filter(|&a| a < (a ^ (k - 1))).map(|a| (a + 1, (a ^ (k - 1)) + 1)).collect()
}

struct SignGroup {
    params: Vec<usize>,
    signs: Vec<Vec<i64>>,
}

struct Scheme {
    n: usize,
    slots: Box<dyn Fn(usize) -> Vec<(usize, usize)>>,
    groups: Vec<SignGroup>,
}

impl Scheme {
    fn for_dim(n: usize) -> Result<Scheme> {
        match n {
            8 => Ok(Scheme {
                n,
                slots: Box::new(|k| H8_SLOTS[k - 1].to_vec()),
                groups: vec![
                    SignGroup { params: vec![1, 2, 3, 4], signs: H8_SIGNS_FIRST.iter().map(|r| r.to_vec()).collect() },
                    SignGroup { params: vec![5, 6, 7, 8], signs: H8_SIGNS_SECOND.iter().map(|r| r.to_vec()).collect() },
                ],
            }),
            16 => {
                let h = hadamard_sylvester(4)?;
                let row = |k: usize| -> Vec<i64> {
                    (0..8).map(|c| if h.get(k - 1, c).is_negative() { -1 } else { 1 }).collect()
                };
                Ok(Scheme {
                    n,
                    slots: Box::new(move |k| xor_slots(16, k)),
                    groups: vec![
                        SignGroup { params: (1..=8).collect(), signs: (1..=8).map(row).collect() },
                        SignGroup { params: (9..=16).collect(), signs: (9..=16).map(row).collect() },
                    ],
                })
            }
            _ => Err(Error::UnsupportedDimension { what: "sign-table generating matrices", n }),
        }
    }

    fn matrix(&self, p: usize) -> GeneratingMatrix {
        let n = self.n;
        let mut coeffs = BTreeMap::new();
        for g in &self.groups {
            let len = g.signs.len();
            for (r, &k) in g.params.iter().enumerate() {
                let signs = &g.signs[(r + p) % len];
                let mut c = Coefficient::empty(n);
                for (&(a, b), &s) in (self.slots)(k).iter().zip(signs) {
                    if k == 1 {
                        c.diagonal[a - 1] = int(s);
                        c.diagonal[b - 1] = int(s);
                    } else {
                        c.skew.push(SigmaTerm { coeff: int(s), i: a, j: b });
                    }
                }
                coeffs.insert(k, c);
            }
        }
        GeneratingMatrix { n, arity: n, coeffs }
    }
}

/// `u1 I + sum_k u_{k+2} parts[k]`.
fn linear_in_u(n: usize, parts: &[ExactMatrix]) -> PolyMatrix {
    let arity = parts.len() + 1;
    let u = |k: usize| MultiPoly::u(k).with_arity(Family::U, arity);
    let mut h = PolyMatrix::from_fn(n, |i, j| if i == j { u(1) } else { MultiPoly::zero_in(Family::U, arity) });
    for (k, m) in parts.iter().enumerate() {
        let v = u(k + 2);
        for i in 0..n {
            for j in 0..n {
                let e = m.get(i, j);
                if !e.is_zero() {
                    h.set(i, j, h.get(i, j) + &v.scale(e));
                }
            }
        }
    }
    h
}

/// The two commuting spins `S_a`, `T_a` realized in dimension `n >= 4`.
fn spins(n: usize) -> ([ExactMatrix; 3], [ExactMatrix; 3]) {
    let s = [l(n, 2, 3).add(&l(n, 1, 4)), l(n, 3, 1).add(&l(n, 2, 4)), l(n, 1, 2).add(&l(n, 3, 4))];
    let t = [l(n, 2, 3).sub(&l(n, 1, 4)), l(n, 3, 1).sub(&l(n, 2, 4)), l(n, 1, 2).sub(&l(n, 3, 4))];
    (s, t)
}

/// Hatted spins: the embeddings that appear in the Hurwitz matrices, equal to
/// the plain generators except that the second component changes sign.
fn hatted(spin: &[ExactMatrix; 3]) -> [ExactMatrix; 3] {
    [spin[0].clone(), spin[1].neg(), spin[2].clone()]
}

/// `H_4^1 = u1 I + u2 Ŝ3 + u3 Ŝ2 + u4 Ŝ1`.
pub fn h4_first() -> PolyMatrix {
    let (s, _) = spins(4);
    let h = hatted(&s);
    linear_in_u(4, &[h[2].clone(), h[1].clone(), h[0].clone()])
}

/// `H_4^2 = u1 I + u2 T̂3 + u3 T̂2 + u4 T1`.
pub fn h4_second() -> PolyMatrix {
    let (_, t) = spins(4);
    let h = hatted(&t);
    linear_in_u(4, &[h[2].clone(), h[1].clone(), h[0].clone()])
}

fn h5(spin: &[ExactMatrix; 3]) -> PolyMatrix {
    let h = hatted(spin);
    linear_in_u(
        5,
        &[h[2].clone(), h[1].clone(), h[0].clone(), l(5, 1, 5), l(5, 2, 5), l(5, 3, 5), l(5, 4, 5)],
    )
}

/// `H_5^1 = u1 I + u2 Ŝ3 + u3 Ŝ2 + u4 Ŝ1 + u5 Û1 + u6 Û2 + u7 V̂1 + u8 V̂2`.
pub fn h5_first() -> PolyMatrix {
    h5(&spins(5).0)
}

/// `H_5^1` with the `S` spin replaced by `T`.
pub fn h5_second() -> PolyMatrix {
    h5(&spins(5).1)
}

pub const GENERATING_DIMS: [usize; 3] = [4, 8, 16];

fn check_span(n: usize, mats: &[GeneratingMatrix]) -> Result<()> {
    let mut span = SparseSpan::new();
    for m in mats {
        for (_, s) in m.skew_matrices() {
            span.insert(&to_sparse(&s));
        }
    }
    let expected = n * (n - 1) / 2;
    if span.rank() != expected {
        return Err(Error::SpanDeficiency { achieved: span.rank(), expected });
    }
    Ok(())
}

/// The `n/2` generating matrices for `n` in {4, 8, 16}, accepted only when
/// their skew coefficients span so(n).
pub fn generating_matrices(n: usize) -> Result<Vec<GeneratingMatrix>> {
    let mats = match n {
        4 => vec![decompose_adjoint(&h4_first())?, decompose_adjoint(&h4_second())?],
        8 | 16 => {
            let scheme = Scheme::for_dim(n)?;
            (0..n / 2).map(|p| scheme.matrix(p)).collect()
        }
        _ => return Err(Error::UnsupportedDimension { what: "generating matrices", n }),
    };
    check_span(n, &mats)?;
    Ok(mats)
}

/// The skew coefficient matrices of all generating matrices, labelled
/// `G[p][u_k]` with `p` counted from 1.
pub fn extracted_generators(n: usize) -> Result<GeneratorSet> {
    let mats = generating_matrices(n)?;
    let items = mats
        .iter()
        .enumerate()
        .flat_map(|(p, m)| m.skew_matrices().into_iter().map(move |(k, s)| (format!("G[{}][u_{k}]", p + 1), s)))
        .collect();
    GeneratorSet::new(n, items)
}

/// A labelled list of antisymmetric matrices of a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub n: usize,
    pub labels: Vec<String>,
    pub generators: Vec<ExactMatrix>,
}

impl GeneratorSet {
    pub fn new(n: usize, items: Vec<(String, ExactMatrix)>) -> Result<Self> {
        let mut labels = Vec::with_capacity(items.len());
        let mut generators = Vec::with_capacity(items.len());
        for (label, m) in items {
            if m.dim() != n {
                return Err(Error::LengthMismatch { expected: n, got: m.dim() });
            }
            if !m.is_antisymmetric() {
                return Err(Error::NotAntisymmetric(label));
            }
            labels.push(label);
            generators.push(m);
        }
        Ok(GeneratorSet { n, labels, generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&ExactMatrix> {
        self.labels.iter().position(|l| l == label).map(|k| &self.generators[k])
    }

    /// Rank of the generators as vectors in `R^{n x n}`.
    pub fn rank(&self) -> usize {
        let mut span = SparseSpan::new();
        for g in &self.generators {
            span.insert(&to_sparse(g));
        }
        span.rank()
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Item<'a> {
            label: &'a str,
            matrix: &'a ExactMatrix,
        }
        let mut st = s.serialize_struct("GeneratorSet", 2)?;
        st.serialize_field("n", &self.n)?;
        let items: Vec<Item> =
            self.labels.iter().zip(&self.generators).map(|(label, matrix)| Item { label, matrix }).collect();
        st.serialize_field("generators", &items)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Item {
            label: String,
            matrix: ExactMatrix,
        }
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            generators: Vec<Item>,
        }
        let raw = Raw::deserialize(d)?;
        GeneratorSet::new(raw.n, raw.generators.into_iter().map(|i| (i.label, i.matrix)).collect())
            .map_err(de::Error::custom)
    }
}

/// All `Σ_ij`, `i < j`, as a generator set.
pub fn sigma_basis(n: usize) -> GeneratorSet {
    let items = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let e = AdjointElement { n, i, j };
            (e.label(), e.matrix())
        })
        .collect();
    GeneratorSet::new(n, items).expect("Σ matrices are antisymmetric")
}

pub const SO5_LABELS: [&str; 10] = ["S_1", "S_2", "S_3", "T_1", "T_2", "T_3", "U_1", "U_2", "V_1", "V_2"];

/// The ten so(5) generators with `L_ij` realized as `Σ_ij`.
pub fn so5_generators() -> GeneratorSet {
    let (s, t) = spins(5);
    let rest = [l(5, 1, 5), l(5, 2, 5), l(5, 3, 5), l(5, 4, 5)];
    let mats = s.into_iter().chain(t).chain(rest);
    GeneratorSet::new(5, SO5_LABELS.iter().map(|l| l.to_string()).zip(mats).collect())
        .expect("so(5) generators are antisymmetric")
}

fn to_sparse(m: &ExactMatrix) -> SparseVec {
    m.entries().iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(k, e)| (k, e.clone())).collect()
}

fn sparse_commutator(a: &SparseVec, b: &SparseVec, n: usize) -> SparseVec {
    let mut out = SparseVec::new();
    let mut acc = |x: &SparseVec, y: &SparseVec, sign: &Rational| {
        for (ka, va) in x {
            let (i, k) = (ka / n, ka % n);
            for (kb, vb) in y.range(k * n..(k + 1) * n) {
                let j = kb % n;
                let e = out.entry(i * n + j).or_insert_with(Rational::zero);
                *e += sign * va * vb;
            }
        }
    };
    acc(a, b, &int(1));
    acc(b, a, &int(-1));
    out.retain(|_, v| !v.is_zero());
    out
}

/// `[g_a, g_b]` expressed over the generator set, plus what lies outside it.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorEntry {
    pub a: usize,
    pub b: usize,
    pub coefficients: Vec<(usize, Rational)>,
    pub residual: Vec<(usize, usize, Rational)>,
}

impl CommutatorEntry {
    pub fn closed(&self) -> bool {
        self.residual.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTable {
    pub n: usize,
    pub labels: Vec<String>,
    pub entries: Vec<CommutatorEntry>,
}

impl CommutatorTable {
    pub fn is_closed(&self) -> bool {
        self.entries.iter().all(CommutatorEntry::closed)
    }

    /// Entry for the ordered pair `a < b`.
    pub fn entry(&self, a: usize, b: usize) -> Option<&CommutatorEntry> {
        self.entries.iter().find(|e| e.a == a && e.b == b)
    }

    /// Coefficient of generator `c` in `[g_a, g_b]`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Rational {
        let (lo, hi, sign) = if a < b { (a, b, int(1)) } else { (b, a, int(-1)) };
        if a == b {
            return Rational::zero();
        }
        self.entry(lo, hi)
            .and_then(|e| e.coefficients.iter().find(|(k, _)| *k == c))
            .map_or_else(Rational::zero, |(_, v)| v * sign)
    }

    pub fn expression(&self, e: &CommutatorEntry) -> String {
        if e.coefficients.is_empty() && e.residual.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = e
            .coefficients
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    self.labels[*k].clone()
                } else if (-c).is_one() {
                    format!("-{}", self.labels[*k])
                } else {
                    format!("{}*{}", format_rational(c), self.labels[*k])
                }
            })
            .collect();
        if !e.residual.is_empty() {
            parts.push(format!("<residual with {} nonzero entries>", e.residual.len()));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for CommutatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "[{}, {}] = {}", self.labels[e.a], self.labels[e.b], self.expression(e))?;
        }
        Ok(())
    }
}

impl Serialize for CommutatorTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            generator: &'a str,
            #[serde(with = "crate::exactnum::serde_str")]
            coeff: Rational,
        }
        #[derive(Serialize)]
        struct Row<'a> {
            a: &'a str,
            b: &'a str,
            terms: Vec<Term<'a>>,
            closed: bool,
        }
        let rows: Vec<Row> = self
            .entries
            .iter()
            .filter(|e| !e.coefficients.is_empty() || !e.residual.is_empty())
            .map(|e| Row {
                a: &self.labels[e.a],
                b: &self.labels[e.b],
                terms: e
                    .coefficients
                    .iter()
                    .map(|(k, c)| Term { generator: &self.labels[*k], coeff: c.clone() })
                    .collect(),
                closed: e.closed(),
            })
            .collect();
        let mut st = s.serialize_struct("CommutatorTable", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("closed", &self.is_closed())?;
        st.serialize_field("nonzero_commutators", &rows)?;
        st.end()
    }
}

/// Structure constants of `g` for every pair `a < b`, by explicit matrix
/// multiplication.
pub fn commutator_table(g: &GeneratorSet) -> CommutatorTable {
    let n = g.n;
    let vecs: Vec<SparseVec> = g.generators.iter().map(to_sparse).collect();
    let mut span = SparseSpan::new();
    for v in &vecs {
        span.insert(v);
    }
    let pairs: Vec<(usize, usize)> = (0..vecs.len()).flat_map(|a| (a + 1..vecs.len()).map(move |b| (a, b))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(a, b)| {
            let c = sparse_commutator(&vecs[a], &vecs[b], n);
            let (coeffs, residual) = span.decompose(&c);
            CommutatorEntry {
                a,
                b,
                coefficients: coeffs.into_iter().collect(),
                residual: residual.into_iter().map(|(k, v)| (k / n + 1, k % n + 1, v)).collect(),
            }
        })
        .collect();
    CommutatorTable { n, labels: g.labels.clone(), entries }
}

/// Dimension of the Lie algebra generated by `g`, computed by adjoining
/// commutators until the span stops growing.
pub fn lie_closure_rank(g: &GeneratorSet) -> usize {
    let n = g.n;
    let ambient = n * (n - 1) / 2;
    let mut span = SparseSpan::new();
    let mut basis: Vec<SparseVec> = Vec::new();
    for v in g.generators.iter().map(to_sparse) {
        if span.insert(&v) {
            basis.push(v);
        }
    }
    let mut frontier = 0;
    while frontier < basis.len() && span.rank() < ambient {
        let end = basis.len();
        for b in frontier..end {
            for a in 0..b {
                let c = sparse_commutator(&basis[a], &basis[b], n);
                if span.insert(&c) {
                    basis.push(c);
                }
            }
        }
        frontier = end;
    }
    span.rank()
}

fn complexify(re: &ExactMatrix, im: &ExactMatrix) -> GaussMatrix {
    Matrix::from_fn(re.dim(), |i, j| GaussRational::new(re.get(i, j).clone(), im.get(i, j).clone()))
}

/// `λ` with `[h, x] = λ x`, when `x` is nonzero and such a `λ` exists.
pub fn eigen_coefficient(h: &GaussMatrix, x: &GaussMatrix) -> Option<GaussRational> {
    let pivot = x.entries().iter().position(|e| !e.is_zero())?;
    let c = h.commutator(x);
    let lambda = c.entries()[pivot].checked_div(&x.entries()[pivot])?;
    let scaled = x.scale(&lambda);
    (scaled == c).then_some(lambda)
}

/// One ladder relation test: the complex combination `element` under
/// `ad(cartan)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderCheck {
    pub cartan: &'static str,
    pub element: String,
    pub eigenvalue: Option<GaussRational>,
}

/// Raising and lowering combinations of the so(5) generators, in the form
/// `a ± i b` and, where a real form `a ± b` is also in circulation, that one
/// too. `V±` is tested both as `L35 ± i L45` and as `L25 ± i L45`.
pub fn ladder_checks() -> Vec<LadderCheck> {
    let g = so5_generators();
    let m = |label: &str| g.get(label).expect("known label").clone();
    let zero = ExactMatrix::zeros(5);
    let combos: Vec<(String, GaussMatrix)> = vec![
        ("U1 + i U2".into(), complexify(&m("U_1"), &m("U_2"))),
        ("U1 - i U2".into(), complexify(&m("U_1"), &m("U_2").neg())),
        ("V1 + i V2 (L35 + i L45)".into(), complexify(&m("V_1"), &m("V_2"))),
        ("V1 - i V2 (L35 - i L45)".into(), complexify(&m("V_1"), &m("V_2").neg())),
        ("L25 + i L45".into(), complexify(&l(5, 2, 5), &l(5, 4, 5))),
        ("L25 - i L45".into(), complexify(&l(5, 2, 5), &l(5, 4, 5).neg())),
        ("S1 + i S2".into(), complexify(&m("S_1"), &m("S_2"))),
        ("S1 - i S2".into(), complexify(&m("S_1"), &m("S_2").neg())),
        ("S1 + S2".into(), complexify(&m("S_1").add(&m("S_2")), &zero)),
        ("S1 - S2".into(), complexify(&m("S_1").sub(&m("S_2")), &zero)),
        ("T1 + i T2".into(), complexify(&m("T_1"), &m("T_2"))),
        ("T1 - i T2".into(), complexify(&m("T_1"), &m("T_2").neg())),
        ("T1 + T2".into(), complexify(&m("T_1").add(&m("T_2")), &zero)),
        ("T1 - T2".into(), complexify(&m("T_1").sub(&m("T_2")), &zero)),
    ];
    let cartans = [("S_3", complexify(&m("S_3"), &zero)), ("T_3", complexify(&m("T_3"), &zero))];
    let mut out = Vec::new();
    for (name, h) in &cartans {
        for (label, x) in &combos {
            out.push(LadderCheck { cartan: name, element: label.clone(), eigenvalue: eigen_coefficient(h, x) });
        }
    }
    out
}

/// Which index quadruples a commutation rule gets right, judged against the
/// matrices `Σ_ij` with `L_ij = i Σ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleComparison {
    pub n: usize,
    pub checked: usize,
    pub swapped_mismatches: Vec<[usize; 4]>,
    pub corrected_mismatches: Vec<[usize; 4]>,
}

type RuleTerms = [(i64, usize, usize); 4];

/// The form with the index pairs crossed,
/// `[L_ij, L_kl] = i (δik L_jl + δjk L_ik - δil L_jk - δjl L_il)`.
fn swapped_rule(i: usize, j: usize, k: usize, l: usize) -> RuleTerms {
    let d = |a: usize, b: usize| i64::from(a == b);
    [(d(i, k), j, l), (d(j, k), i, k), (-d(i, l), j, k), (-d(j, l), i, l)]
}

/// `[L_ij, L_kl] = i (δjk L_il + δil L_jk - δik L_jl - δjl L_ik)`.
fn corrected_rule(i: usize, j: usize, k: usize, l: usize) -> RuleTerms {
    let d = |a: usize, b: usize| i64::from(a == b);
    [(d(j, k), i, l), (d(i, l), j, k), (-d(i, k), j, l), (-d(j, l), i, k)]
}

fn rule_matrix(n: usize, terms: &RuleTerms) -> ExactMatrix {
    terms.iter().filter(|(c, a, b)| *c != 0 && a != b).fold(ExactMatrix::zeros(n), |acc, (c, a, b)| {
        acc.add(&l(n, *a, *b).scale(&int(*c)))
    })
}

/// With `L = i Σ`, `[L_ij, L_kl] = i sum c L_ab` is equivalent to
/// `[Σ_ij, Σ_kl] = sum c Σ_ab`; both rules are tested on every pair `i < j`,
/// `k < l`.
pub fn compare_commutation_rules(n: usize) -> RuleComparison {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut out = RuleComparison { n, checked: 0, swapped_mismatches: Vec::new(), corrected_mismatches: Vec::new() };
    for &(i, j) in &pairs {
        for &(k, m) in &pairs {
            let truth = l(n, i, j).commutator(&l(n, k, m));
            out.checked += 1;
            if rule_matrix(n, &swapped_rule(i, j, k, m)) != truth {
                out.swapped_mismatches.push([i, j, k, m]);
            }
            if rule_matrix(n, &corrected_rule(i, j, k, m)) != truth {
                out.corrected_mismatches.push([i, j, k, m]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_definition() {
        assert_eq!(sigma(3, 1, 2).unwrap().matrix(), ExactMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        assert!(sigma(3, 2, 2).is_err());
        assert!(sigma(3, 2, 1).is_err());
        assert!(sigma(3, 0, 1).is_err());
        assert!(sigma(3, 1, 4).is_err());
        let a = sigma(4, 1, 2).unwrap().matrix();
        let b = sigma(4, 2, 3).unwrap().matrix();
        assert_eq!(a.commutator(&b), sigma(4, 1, 3).unwrap().matrix());
    }

    #[test]
    fn hadamard() {
        assert_eq!(hadamard_sylvester(1).unwrap(), ExactMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        for m in 1..=4 {
            let h = hadamard_sylvester(m).unwrap();
            let d = 1 << m;
            assert_eq!(h.mul(&h.transpose()), ExactMatrix::scalar(d, &int(d as i64)));
        }
        assert!(hadamard_sylvester(0).is_err());
        assert!(hadamard_sylvester(5).is_err());
    }

    #[test]
    fn xor_matchings_are_perfect() {
        for k in 2..=16 {
            let slots = xor_slots(16, k);
            let covered: BTreeSet<usize> = slots.iter().flat_map(|&(a, b)| [a, b]).collect();
            assert_eq!(covered.len(), 16);
        }
    }

    #[test]
    fn nonlinear_and_constant_entries_rejected() {
        let mut h = PolyMatrix::from_fn(2, |_, _| MultiPoly::zero_in(Family::U, 2));
        h.set(0, 1, MultiPoly::u(1).pow(2));
        assert_eq!(decompose_adjoint(&h), Err(Error::Nonlinear(Var::u(1))));
        h.set(0, 1, MultiPoly::constant(int(1)));
        assert_eq!(decompose_adjoint(&h), Err(Error::ConstantTerm { i: 1, j: 2 }));
    }

    #[test]
    fn generator_set_json_round_trip() {
        let g = so5_generators();
        let text = serde_json::to_string(&g).unwrap();
        let back: GeneratorSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn closure_small() {
        let one = GeneratorSet::new(3, vec![("a".into(), sigma(3, 1, 2).unwrap().matrix())]).unwrap();
        assert_eq!(lie_closure_rank(&one), 1);
        let two = GeneratorSet::new(
            3,
            vec![("a".into(), sigma(3, 1, 2).unwrap().matrix()), ("b".into(), sigma(3, 2, 3).unwrap().matrix())],
        )
        .unwrap();
        assert_eq!(lie_closure_rank(&two), 3);
        let table = commutator_table(&two);
        assert!(!table.is_closed());
    }
}
