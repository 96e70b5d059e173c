//! Sparse row echelon forms over a field.

use std::collections::HashMap;

use crate::field::Field;

/// Sparse vector: `(index, value)` pairs, indices strictly increasing,
/// values nonzero.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

/// `a - c * b` for sparse vectors.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form under construction. Rows are kept with leading
/// coefficient one and pairwise distinct leading indices; only leading
/// entries are eliminated on insertion.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F>>,
    pivot_of: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Reduces until the leading index is not a pivot (or the vector is zero).
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((col, c)) = v.first().cloned() {
            match self.pivot_of.get(&col) {
                Some(&r) => v = axpy(&self.field, &v, &c, &self.rows[r]),
                None => break,
            }
        }
        v
    }

    /// Canonical representative modulo the row space: no entry sits in a
    /// pivot column.
    pub fn reduce_full(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut i = 0;
        while i < v.len() {
            let (col, c) = v[i].clone();
            match self.pivot_of.get(&col) {
                Some(&r) => v = axpy(&self.field, &v, &c, &self.rows[r]),
                None => i += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a vector; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let inv = self.field.inv(&v[0].1);
        if !self.field.is_one(&inv) {
            for e in &mut v {
                e.1 = self.field.mul(&e.1, &inv);
            }
        }
        self.pivot_of.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Like `insert`, carrying a combination vector alongside. Returns the
    /// combination when the vector reduces to zero.
    fn insert_tracked(
        &mut self,
        combos: &mut Vec<SparseVec<F>>,
        mut v: SparseVec<F>,
        mut combo: SparseVec<F>,
    ) -> Option<SparseVec<F>> {
        while let Some((col, c)) = v.first().cloned() {
            match self.pivot_of.get(&col) {
                Some(&r) => {
                    v = axpy(&self.field, &v, &c, &self.rows[r]);
                    combo = axpy(&self.field, &combo, &c, &combos[r]);
                }
                None => break,
            }
        }
        if v.is_empty() {
            return Some(combo);
        }
        let inv = self.field.inv(&v[0].1);
        for e in v.iter_mut().chain(combo.iter_mut()) {
            e.1 = self.field.mul(&e.1, &inv);
        }
        self.pivot_of.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        combos.push(combo);
        None
    }

    /// Basis of `{ c : Σ c_i rows[i] = 0 }`, each vector indexed by row.
    pub fn left_kernel(field: &F, rows: Vec<SparseVec<F>>) -> Vec<SparseVec<F>> {
        let mut ech = Echelon::new(field);
        let mut combos = Vec::new();
        let mut kernel = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            if let Some(k) = ech.insert_tracked(&mut combos, row, vec![(i, field.one())]) {
                kernel.push(k);
            }
        }
        kernel
    }

    /// Rank of a list of vectors.
    pub fn rank_of(field: &F, rows: impl IntoIterator<Item = SparseVec<F>>) -> usize {
        let mut ech = Echelon::new(field);
        for r in rows {
            ech.insert(r);
        }
        ech.rank()
    }
}
