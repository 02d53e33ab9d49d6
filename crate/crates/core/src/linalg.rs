//! Rectangular exact linear algebra: reduced row echelon form, rank, null
//! spaces, and an incremental sparse span with coordinate recovery.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactnum::Rational;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..ncols {
                let t = &f * &rows[r][j];
                rows[i][j] -= t;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{ x : A x = 0 }` for the matrix with the given rows.
pub fn null_space(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub type SparseVec = BTreeMap<usize, Rational>;

fn axpy(target: &mut SparseVec, factor: &Rational, source: &SparseVec) {
    for (k, v) in source {
        let t = factor * v;
        let entry = target.entry(*k).or_insert_with(Rational::zero);
        *entry += t;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct SpanRow {
    pivot: usize,
    vector: SparseVec,
    combo: SparseVec,
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Every stored row remembers how it is built from the inserted generators,
/// so `decompose` returns coordinates with respect to the generators.
#[derive(Clone, Debug, Default)]
pub struct SparseSpan {
    rows: Vec<SpanRow>,
    row_of_pivot: BTreeMap<usize, usize>,
    inserted: usize,
}

impl SparseSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of `insert` calls so far; generator indices run `0..inserted`.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residual = v.clone();
        let mut coeffs = SparseVec::new();
        let hits: Vec<(usize, Rational)> = residual
            .iter()
            .filter(|(k, _)| self.row_of_pivot.contains_key(k))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        for (col, c) in hits {
            let row = &self.rows[self.row_of_pivot[&col]];
            axpy(&mut residual, &-c.clone(), &row.vector);
            axpy(&mut coeffs, &c, &row.combo);
        }
        (coeffs, residual)
    }

    /// Adds a generator; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (coeffs, residual) = self.reduce(v);
        let Some((&pivot, lead)) = residual.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let mut combo = SparseVec::from([(index, Rational::one())]);
        axpy(&mut combo, &-Rational::one(), &coeffs);
        let vector: SparseVec = residual.iter().map(|(k, c)| (*k, c * &inv)).collect();
        let combo: SparseVec = combo.iter().map(|(k, c)| (*k, c * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Some(c) = row.vector.get(&pivot).cloned() {
                axpy(&mut row.vector, &-c.clone(), &vector);
                axpy(&mut row.combo, &-c, &combo);
            }
        }
        self.row_of_pivot.insert(pivot, self.rows.len());
        self.rows.push(SpanRow { pivot, vector, combo });
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).1.is_empty()
    }

    /// Coordinates of `v` over the inserted generators plus the part of `v`
    /// outside the span (empty when `v` lies in it).
    pub fn decompose(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        self.reduce(v)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }
}
