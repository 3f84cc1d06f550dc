//! Sparse exact linear algebra: incremental row echelon forms, kernels and
//! row-space comparison.

use crate::scalar::Field;

/// A sparse vector as `(column, value)` pairs, sorted by column, no zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, F::one())] }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> F {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn lead(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut out = vec![F::zero(); n];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(c, v)| (*c, v.clone() * s.clone())).collect() }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &F, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, s.clone() * b[j].1.clone()));
                j += 1;
            } else {
                let v = a[i].1.clone() + s.clone() * b[j].1.clone();
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-F::one(), other)
    }

    pub fn map_columns(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(c, v)| (f(*c), v.clone())).collect())
    }

    /// Makes the leading entry one.
    pub fn normalized(&self) -> Self {
        match self.entries.first() {
            Some((_, l)) => self.scale(&(F::one() / l.clone())),
            None => self.clone(),
        }
    }
}

/// A row echelon form kept fully reduced: every pivot column is zero in all
/// other rows and every pivot entry is one.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    /// rows sorted by pivot column
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the pivots; the result has no pivot-column entries.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v = v.clone();
        // pivots of later rows never reappear after eliminating earlier ones
        // because rows are fully reduced, so one pass over v's columns suffices
        let mut k = 0;
        loop {
            let next = v.entries.iter().find(|(c, _)| {
                self.pivots.binary_search(c).is_ok() && *c >= k
            });
            let Some((c, val)) = next.cloned() else { break };
            let idx = self.pivots.binary_search(&c).unwrap();
            v = v.axpy(&-val, &self.rows[idx]);
            k = c + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        let r = r.normalized();
        let p = r.lead().unwrap().0;
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.axpy(&-c, &r);
            }
        }
        let pos = self.pivots.binary_search(&p).unwrap_err();
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }

    /// Equality of row spaces (the reduced forms are unique).
    pub fn same_span(&self, other: &Echelon<F>) -> bool {
        self.pivots == other.pivots && self.rows == other.rows
    }

    /// `self ⊂ other` as row spaces.
    pub fn is_subspace_of(&self, other: &Echelon<F>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn into_rows(self) -> Vec<SparseVec<F>> {
        self.rows
    }
}

/// Left kernel of the matrix with the given rows: all `c` with `Σ c_i v_i = 0`.
///
/// Returned vectors live in `F^{vectors.len()}`.
pub fn left_kernel<F: Field>(vectors: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    // augment each row with a unit tag placed after the data columns
    let mut ech = Echelon::new(ncols + vectors.len());
    let mut kernel = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut pairs = v.entries().to_vec();
        pairs.push((ncols + i, F::one()));
        let aug = SparseVec::from_pairs(pairs);
        let r = ech.reduce(&aug);
        match r.lead() {
            Some((c, _)) if c >= ncols => {
                kernel.push(SparseVec::from_pairs(r.entries().iter().map(|(c, v)| (c - ncols, v.clone())).collect()));
            }
            _ => {}
        }
        ech.insert(r);
    }
    kernel
}

/// Kernel of the linear map sending basis vector `i` of the source to `images[i]`.
pub fn kernel<F: Field>(images: &[SparseVec<F>], target_dim: usize) -> Vec<SparseVec<F>> {
    left_kernel(images, target_dim)
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(vectors: &[SparseVec<F>], ncols: usize) -> usize {
    Echelon::from_rows(ncols, vectors.iter().cloned()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};
    use proptest::prelude::*;

    fn v(x: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&x.iter().map(|&a| int(a)).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_basics() {
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[1, 2, 3])));
        assert!(e.insert(v(&[2, 4, 7])));
        assert!(!e.insert(v(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 2]);
        assert_eq!(e.free_columns(), vec![1]);
        assert!(e.contains(&v(&[0, 0, 5])));
        assert!(!e.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn kernel_example() {
        let k = left_kernel(&[v(&[1, 1]), v(&[2, 2]), v(&[0, 1])], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_dense(3), vec![int(-2), int(1), int(0)]);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..7)) {
            let vs: Vec<_> = rows.iter().map(|r| v(r)).collect();
            let r = rank(&vs, 4);
            let k = left_kernel(&vs, 4);
            prop_assert_eq!(r + k.len(), vs.len());
            for c in &k {
                let mut acc = SparseVec::new();
                for (i, x) in c.entries() {
                    acc = acc.axpy(x, &vs[*i]);
                }
                prop_assert!(acc.is_zero());
            }
        }

        #[test]
        fn span_is_order_independent(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 0..5)) {
            let vs: Vec<_> = rows.iter().map(|r| v(r)).collect();
            let a = Echelon::from_rows(3, vs.iter().cloned());
            let b = Echelon::from_rows(3, vs.iter().rev().cloned());
            prop_assert!(a.same_span(&b));
        }
    }
}
