//! Multivariate polynomials with exact rational coefficients.
//!
//! Variables come in two families: the Hurwitz parameters `u1..u16` and the
//! target coordinates `x1..x9`. A polynomial lives in one family and uses the
//! first `arity` variables of it. Exponent vectors are dense `[u8; 16]`
//! arrays, so a polynomial in `u1..u4` is also a valid polynomial in
//! `u1..u16`; binary operations take the larger arity. Mixing the families in
//! one arithmetic operation panics, and `compose` is the only way to move
//! from `x` to `u`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    U,
    X,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::U => 'u',
            Family::X => 'x',
        }
    }

    /// Largest index a variable of this family may carry.
    pub fn max_index(self) -> usize {
        match self {
            Family::U => 16,
            Family::X => 9,
        }
    }
}

/// A variable identifier such as `u3` or `x1` (indices are 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn u(index: usize) -> Var {
        assert!((1..=16).contains(&index), "u{index} out of range");
        Var { family: Family::U, index }
    }

    pub fn x(index: usize) -> Var {
        assert!((1..=9).contains(&index), "x{index} out of range");
        Var { family: Family::X, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; MAX_VARS])
    }

    /// `v_{slot+1}^1`, slot is 0-based.
    pub fn var(slot: usize) -> Monomial {
        let mut e = [0; MAX_VARS];
        e[slot] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, slot: usize) -> u8 {
        self.0[slot]
    }

    /// Highest slot with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    /// `self / other` when every exponent of `other` fits.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    /// Graded order: total degree first, then reverse-lex on exponents so
    /// that `u1^2 > u1*u2 > u2^2`.
    fn graded_key(&self) -> (u32, [u8; MAX_VARS]) {
        (self.degree(), self.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.support_len()])
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    family: Option<Family>,
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.is_constant() || self.family == other.family)
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly { family: None, arity: 0, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> MultiPoly {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    /// The zero polynomial declared over `family` with `arity` variables.
    pub fn zero_in(family: Family, arity: usize) -> MultiPoly {
        assert!(arity <= family.max_index());
        MultiPoly { family: Some(family), arity, terms: BTreeMap::new() }
    }

    pub fn var(v: Var) -> MultiPoly {
        let mut p = MultiPoly::zero_in(v.family, v.index);
        p.terms.insert(Monomial::var(v.index - 1), int(1));
        p
    }

    pub fn u(i: usize) -> MultiPoly {
        MultiPoly::var(Var::u(i))
    }

    pub fn x(i: usize) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }

    /// Builds a polynomial from explicit terms; zero coefficients are dropped.
    pub fn from_terms(
        family: Family,
        arity: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero_in(family, arity);
        for (m, c) in terms {
            assert!(m.support_len() <= arity, "monomial exceeds declared arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The ordered variable list `v1..v_arity`.
    pub fn variables(&self) -> Vec<Var> {
        match self.family {
            Some(family) => (1..=self.arity).map(|index| Var { family, index }).collect(),
            None => Vec::new(),
        }
    }

    /// Redeclares the arity (must cover every variable actually used).
    pub fn with_arity(mut self, family: Family, arity: usize) -> MultiPoly {
        if let Some(f) = self.family {
            assert_eq!(f, family, "family mismatch");
        }
        assert!(self.terms.keys().all(|m| m.support_len() <= arity));
        self.family = Some(family);
        self.arity = arity;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn merged_space(&self, other: &MultiPoly) -> (Option<Family>, usize) {
        let family = match (self.family, other.family) {
            (Some(a), Some(b)) if a != b => {
                if self.is_constant() {
                    Some(b)
                } else if other.is_constant() {
                    Some(a)
                } else {
                    panic!("cannot combine polynomials over different variable families")
                }
            }
            (Some(a), _) => Some(a),
            (None, b) => b,
        };
        let arity = match (self.family == family, other.family == family) {
            (true, true) => self.arity.max(other.arity),
            (true, false) => self.arity,
            (false, true) => other.arity,
            (false, false) => 0,
        };
        (family, arity)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly { family: self.family, arity: self.arity, terms: BTreeMap::new() };
        }
        MultiPoly {
            family: self.family,
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(int(1));
        acc.family = self.family;
        acc.arity = self.arity;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_var(&self, v: Var) -> Result<usize> {
        match self.family {
            Some(f) if f == v.family && v.index >= 1 && v.index <= self.arity => Ok(v.index - 1),
            _ => Err(Error::UnknownVariable(v)),
        }
    }

    /// Exact value at `point` (length must equal the arity).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (slot, &e) in m.0.iter().enumerate().take(self.arity) {
                if e > 0 {
                    t *= num_traits::pow(point[slot].clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation, used only to compare against angle
    /// parameterizations.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                m.0.iter()
                    .enumerate()
                    .take(self.arity)
                    .fold(c, |acc, (slot, &e)| acc * point[slot].powi(e as i32))
            })
            .sum())
    }

    /// Exact partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Result<MultiPoly> {
        let slot = self.check_var(v)?;
        let mut out = MultiPoly::zero_in(v.family, self.arity);
        for (m, c) in &self.terms {
            let e = m.0[slot];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[slot] -= 1;
            out.add_term(dm, c * int(e as i64));
        }
        Ok(out)
    }

    /// `self(subst_1, ..., subst_k)` where `k` is the arity of `self`.
    pub fn compose(&self, subst: &[MultiPoly]) -> Result<MultiPoly> {
        if subst.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: subst.len() });
        }
        let mut powers: HashMap<(usize, u8), MultiPoly> = HashMap::new();
        let mut out = subst
            .iter()
            .fold(MultiPoly::zero(), |acc, s| {
                let (family, arity) = acc.merged_space(s);
                MultiPoly { family, arity, terms: BTreeMap::new() }
            });
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (slot, &e) in m.0.iter().enumerate().take(self.arity) {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((slot, e)).or_insert_with(|| subst[slot].pow(e as u32));
                t = &t * &*p;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact division; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let lead = |p: &MultiPoly| {
            p.terms
                .iter()
                .max_by_key(|(m, _)| m.graded_key())
                .map(|(m, c)| (*m, c.clone()))
        };
        let (dm, dc) = lead(divisor).ok_or(Error::NotDivisible)?;
        let (family, arity) = self.merged_space(divisor);
        let mut rem = self.clone();
        let mut quot = MultiPoly { family, arity, terms: BTreeMap::new() };
        while let Some((rm, rc)) = lead(&rem) {
            let qm = rm.div(&dm).ok_or(Error::NotDivisible)?;
            let qc = rc / &dc;
            let step = MultiPoly { family, arity, terms: BTreeMap::from([(qm, qc)]) };
            rem = &rem - &(&step * divisor);
            quot.add_term(qm, step.terms.into_values().next().unwrap());
        }
        Ok(quot)
    }

    fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.0.graded_key()));
        v
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(int(1))
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (family, arity) = self.merged_space(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = MultiPoly { family, arity, terms: big.terms.clone() };
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (family, arity) = self.merged_space(rhs);
        let mut out = MultiPoly { family, arity, terms: self.terms.clone() };
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (family, arity) = self.merged_space(rhs);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        MultiPoly {
            family,
            arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            family: self.family,
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.family.unwrap_or(Family::U).letter();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if m.degree() == 0 || !mag.is_one() {
                factors.push(format_rational(&mag));
            }
            for (slot, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{letter}{}", slot + 1)),
                    _ => factors.push(format!("{letter}{}^{e}", slot + 1)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the `Display` form: `-2*u1*u3 + u2^2 - 1/2`.
    fn from_str(s: &str) -> Result<MultiPoly> {
        let mut family: Option<Family> = None;
        let mut arity = 0usize;
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split into signed terms; a sign directly after '^' or '*' is not a term break.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('*') | Some('/')) {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        pieces.push((negative, current));

        for (negative, body) in pieces {
            let mut coeff = int(1);
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                let first = factor.chars().next().ok_or_else(|| Error::Parse(format!("empty factor in {s:?}")))?;
                if first == 'u' || first == 'x' {
                    let fam = if first == 'u' { Family::U } else { Family::X };
                    if family.is_some_and(|f| f != fam) {
                        return Err(Error::FamilyMismatch(s.to_string()));
                    }
                    family = Some(fam);
                    let (idx, exp) = match factor[1..].split_once('^') {
                        Some((i, e)) => (i, e.parse::<u8>().map_err(|_| Error::Parse(factor.to_string()))?),
                        None => (&factor[1..], 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| Error::Parse(factor.to_string()))?;
                    if idx == 0 || idx > fam.max_index() {
                        return Err(Error::Parse(format!("variable index out of range: {factor}")));
                    }
                    arity = arity.max(idx);
                    mono.0[idx - 1] += exp;
                } else {
                    coeff *= parse_rational(factor)?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((mono, coeff));
        }
        let mut p = match family {
            Some(f) => MultiPoly::zero_in(f, arity),
            None => MultiPoly::zero(),
        };
        for (m, c) in terms {
            p.add_term(m, c);
        }
        Ok(p)
    }
}

/// Caches the images of monomials under a fixed substitution, so many
/// compositions along the same map share work.
pub struct Composer<'a> {
    subst: &'a [MultiPoly],
    cache: HashMap<Monomial, MultiPoly>,
}

impl<'a> Composer<'a> {
    pub fn new(subst: &'a [MultiPoly]) -> Self {
        Composer { subst, cache: HashMap::new() }
    }

    fn image(&mut self, m: &Monomial) -> MultiPoly {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let result = match (0..MAX_VARS).find(|&s| m.0[s] > 0) {
            None => MultiPoly::constant(int(1)),
            Some(slot) => {
                let mut rest = *m;
                rest.0[slot] -= 1;
                let tail = self.image(&rest);
                &tail * &self.subst[slot]
            }
        };
        self.cache.insert(*m, result.clone());
        result
    }

    pub fn compose(&mut self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.arity() != self.subst.len() && !(f.is_constant() && f.arity() == 0) {
            return Err(Error::ArityMismatch { expected: self.subst.len(), got: f.arity() });
        }
        let mut out = self
            .subst
            .iter()
            .fold(MultiPoly::zero(), |acc, s| {
                let (family, arity) = acc.merged_space(s);
                MultiPoly { family, arity, terms: BTreeMap::new() }
            });
        for (m, c) in f.terms() {
            let img = self.image(m);
            out = &out + &img.scale(c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn u(i: usize) -> MultiPoly {
        MultiPoly::u(i)
    }

    #[test]
    fn eval_examples() {
        let p = &(&u(1) * &u(1)) - &(&u(2) * &u(2));
        assert_eq!(p.eval(&[int(1), int(1)]).unwrap(), int(0));
        assert_eq!(p.eval(&[int(2), int(1)]).unwrap(), int(3));
        let q = (&u(1) * &u(2)).scale(&int(2));
        assert_eq!(q.eval(&[rat(1, 2), int(3)]).unwrap(), int(3));
        assert_eq!(
            p.eval(&[int(1)]),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn partial_examples() {
        let p = &(&u(1) * &u(1)) - &(&u(2) * &u(2));
        assert_eq!(p.partial(Var::u(1)).unwrap(), u(1).scale(&int(2)));
        let q = &u(1) * &u(1);
        let q = q.with_arity(Family::U, 2);
        assert!(q.partial(Var::u(2)).unwrap().is_zero());
        let r = &(&u(1) * &u(2)) * &u(3);
        assert_eq!(r.partial(Var::u(1)).unwrap(), &u(2) * &u(3));
        assert_eq!(r.partial(Var::u(4)), Err(Error::UnknownVariable(Var::u(4))));
        assert_eq!(r.partial(Var::x(1)), Err(Error::UnknownVariable(Var::x(1))));
    }

    #[test]
    fn compose_examples() {
        let f = &MultiPoly::x(1) + &MultiPoly::x(2);
        assert_eq!(f.compose(&[u(1), u(2)]).unwrap(), &u(1) + &u(2));
        let g = &MultiPoly::x(1) * &MultiPoly::x(1);
        let s = &u(1) + &u(2);
        let expect = &(&(&u(1) * &u(1)) + &(&u(1) * &u(2)).scale(&int(2))) + &(&u(2) * &u(2));
        assert_eq!(g.compose(&[s]).unwrap(), expect);
        assert!(g.compose(&[]).is_err());
    }

    #[test]
    fn display_and_parse() {
        let p = &(&(&u(1) * &u(1)) - &(&u(2) * &u(2)).scale(&rat(2, 3))) + &MultiPoly::constant(int(-5));
        let s = p.to_string();
        assert_eq!(s, "u1^2 - 2/3*u2^2 - 5");
        assert_eq!(s.parse::<MultiPoly>().unwrap(), p);
        assert_eq!("-u5".parse::<MultiPoly>().unwrap(), -&u(5));
        assert_eq!("0".parse::<MultiPoly>().unwrap(), MultiPoly::zero());
        assert!("u1 + ".parse::<MultiPoly>().is_err());
        assert!("u1*x2".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = &u(1) + &u(2);
        let b = &(&u(1) * &u(3)) - &u(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!((&prod + &u(4)).div_exact(&a), Err(Error::NotDivisible));
    }

    #[test]
    fn zero_terms_never_stored() {
        let p = &u(1) - &u(1);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn composer_matches_compose() {
        let subst = vec![&u(1) * &u(2), &u(3) - &u(1)];
        let f: MultiPoly = "x1^2*x2 - 3*x2^3 + x1 + 7".parse().unwrap();
        let mut c = Composer::new(&subst);
        assert_eq!(c.compose(&f).unwrap(), f.compose(&subst).unwrap());
    }
}
