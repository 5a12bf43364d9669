//! Dense bit-packed vectors and row elimination over the two-element field.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for k in ones {
            v.flip(k);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    pub fn set(&mut self, k: usize, value: bool) {
        if self.get(k) != value {
            self.flip(k);
        }
    }

    pub fn flip(&mut self, k: usize) {
        assert!(k < self.len, "bit {k} out of range for length {}", self.len);
        self.words[k / 64] ^= 1 << (k % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&k| self.get(k))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.len + other.len);
        for k in self.ones() {
            out.flip(k);
        }
        for k in other.ones() {
            out.flip(self.len + k);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> F2Vector {
        F2Vector::from_indices(end - start, self.ones().filter(|&k| k >= start && k < end).map(|k| k - start))
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (0..self.len).map(|k| if self.get(k) { '1' } else { '0' }).collect();
        write!(f, "F2Vector({bits})")
    }
}

/// Rows of a matrix over F2, all of length `ncols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    ncols: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn new(ncols: usize, rows: Vec<F2Vector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "row length mismatch");
        Self { ncols, rows }
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::new(
            ncols,
            rows.iter()
                .map(|r| F2Vector::from_indices(ncols, r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(k, _)| k)))
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        RowEchelon::new(self.rows.clone(), self.ncols).rank()
    }

    /// Basis of `{ c : Σ c_k row_k = 0 }`, vectors of length `nrows`.
    pub fn left_kernel(&self) -> Vec<F2Vector> {
        let n = self.rows.len();
        let augmented: Vec<F2Vector> =
            self.rows.iter().enumerate().map(|(k, r)| r.concat(&F2Vector::from_indices(n, [k]))).collect();
        // Eliminating on the first `ncols` columns only leaves the kernel in
        // the rows whose left block reduced to zero.
        let mut pivots: Vec<(usize, F2Vector)> = Vec::new();
        let mut kernel = Vec::new();
        for mut row in augmented {
            for (p, prow) in &pivots {
                if row.get(*p) {
                    row.xor_assign(prow);
                }
            }
            match row.first_one().filter(|&p| p < self.ncols) {
                Some(p) => {
                    for (_, prow) in pivots.iter_mut() {
                        if prow.get(p) {
                            prow.xor_assign(&row);
                        }
                    }
                    pivots.push((p, row));
                }
                None => kernel.push(row.slice(self.ncols, self.ncols + n)),
            }
        }
        kernel
    }
}

/// Reduced row echelon form of a set of vectors, pivots in column order.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ncols: usize,
    /// `(pivot column, row)` sorted by pivot column; every other row is
    /// zero in each pivot column.
    rows: Vec<(usize, F2Vector)>,
}

impl RowEchelon {
    pub fn new(vectors: impl IntoIterator<Item = F2Vector>, ncols: usize) -> Self {
        let mut ech = Self { ncols, rows: Vec::new() };
        for v in vectors {
            ech.insert(v);
        }
        ech
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: F2Vector) -> bool {
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn basis(&self) -> impl Iterator<Item = &F2Vector> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Coordinates of `v` in the echelon basis, or `None` outside the span.
    pub fn coordinates(&self, v: &F2Vector) -> Option<F2Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(F2Vector::from_indices(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, (p, _))| v.get(*p)).map(|(k, _)| k),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_and_kernel() {
        let m = F2Matrix::from_dense(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.left_kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], F2Vector::from_indices(3, [0, 1, 2]));
    }

    #[test]
    fn vector_bits_cross_word_boundary() {
        let mut v = F2Vector::zeros(130);
        v.flip(129);
        v.flip(3);
        assert_eq!(v.first_one(), Some(3));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(v.count_ones(), 2);
        let w = v.concat(&F2Vector::from_indices(2, [1]));
        assert_eq!(w.ones().collect::<Vec<_>>(), vec![3, 129, 131]);
        assert_eq!(w.slice(129, 132), F2Vector::from_indices(3, [0, 2]));
    }

    #[test]
    fn coordinates_in_echelon_basis() {
        let a = F2Vector::from_indices(4, [0, 1]);
        let b = F2Vector::from_indices(4, [1, 2]);
        let ech = RowEchelon::new([a.clone(), b.clone()], 4);
        let mut sum = a.clone();
        sum.xor_assign(&b);
        let c = ech.coordinates(&sum).unwrap();
        let mut rebuilt = F2Vector::zeros(4);
        for (k, row) in ech.basis().enumerate() {
            if c.get(k) {
                rebuilt.xor_assign(row);
            }
        }
        assert_eq!(rebuilt, sum);
        assert!(ech.coordinates(&F2Vector::from_indices(4, [3])).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..12, 1usize..70).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
                F2Matrix::new(
                    c,
                    rows.iter()
                        .map(|bits| {
                            F2Vector::from_indices(c, bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k))
                        })
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.left_kernel().len(), m.nrows());
            for c in m.left_kernel() {
                let mut acc = F2Vector::zeros(m.ncols());
                for k in c.ones() {
                    acc.xor_assign(&m.rows()[k]);
                }
                prop_assert!(acc.is_zero());
            }
        }
    }
}
