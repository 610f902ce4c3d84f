//! Bit-packed vectors and matrices over F2.

use std::fmt;

const WORD: usize = 64;

/// A fixed-length vector over F2, packed into u64 words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    /// Low `len` bits of `mask` (requires `len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask & low_mask(len);
        }
        v
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVec({s})")
    }
}

pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= WORD {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A dense F2 matrix stored as bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Self { cols, rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b);
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            let parity = r
                .words
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.n_rows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones_iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        F2Matrix {
            cols: other.cols,
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r.clone());
        }
        basis.rank()
    }

    /// Basis of the column space, i.e. the image of `v -> self * v`.
    pub fn column_space(&self) -> EchelonBasis {
        let t = self.transpose();
        let mut basis = EchelonBasis::new(self.rows.len());
        for c in t.rows {
            basis.insert(c);
        }
        basis
    }

    /// Basis of the kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        // reduced row echelon form, then one kernel vector per free column
        let mut rows: Vec<BitVec> = self.rows.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let is_pivot = {
            let mut m = vec![false; self.cols];
            for &c in &pivots {
                m[c] = true;
            }
            m
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (k, &pc) in pivots.iter().enumerate() {
                    if rows[k].get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// An F2 subspace kept in echelon form keyed by lowest set bit.
///
/// After [`EchelonBasis::reduce_fully`] each pivot bit appears in exactly one basis vector,
/// so reducing a vector gives a canonical coset representative supported off the pivots.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    pivot_of: Vec<Option<usize>>,
    vectors: Vec<BitVec>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            pivot_of: vec![None; len],
            vectors: Vec::new(),
        }
    }

    pub fn from_vectors(len: usize, vs: impl IntoIterator<Item = BitVec>) -> Self {
        let mut b = Self::new(len);
        for v in vs {
            b.insert(v);
        }
        b.reduce_fully();
        b
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[BitVec] {
        &self.vectors
    }

    /// Pivot positions, one per basis vector in the same order.
    pub fn pivots(&self) -> Vec<usize> {
        self.vectors
            .iter()
            .map(|v| v.first_one().unwrap())
            .collect()
    }

    /// Reduces `v` against the basis; returns the residue (zero iff `v` is in the span).
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        // increasing pivot order: xor-ing the vector with pivot p only touches bits >= p
        for p in 0..self.len {
            if let Some(k) = self.pivot_of[p] {
                if v.get(p) {
                    v.xor_assign(&self.vectors[k]);
                }
            }
        }
        v
    }

    /// Inserts `v`; returns true if the rank grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        while let Some(p) = v.first_one() {
            match self.pivot_of[p] {
                Some(k) => v.xor_assign(&self.vectors[k]),
                None => {
                    self.pivot_of[p] = Some(self.vectors.len());
                    self.vectors.push(v);
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        while let Some(p) = v.first_one() {
            match self.pivot_of[p] {
                Some(k) => v.xor_assign(&self.vectors[k]),
                None => return false,
            }
        }
        true
    }

    /// Clears every pivot bit from all other basis vectors.
    pub fn reduce_fully(&mut self) {
        let mut order: Vec<usize> = (0..self.vectors.len()).collect();
        order.sort_by_key(|&k| self.vectors[k].first_one());
        for &k in order.iter().rev() {
            let p = self.vectors[k].first_one().unwrap();
            let pv = self.vectors[k].clone();
            for (m, v) in self.vectors.iter_mut().enumerate() {
                if m != k && v.get(p) {
                    v.xor_assign(&pv);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bit_ops() {
        let mut v = BitVec::zeros(130);
        v.set(3, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.first_one(), Some(3));
        assert_eq!(v.ones_iter().collect::<Vec<_>>(), vec![3, 129]);
        v.flip(3);
        assert_eq!(v.first_one(), Some(129));
        assert_eq!(BitVec::ones(70).count_ones(), 70);
        assert_eq!(BitVec::from_mask(5, 0xff).to_mask(), 0x1f);
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        // rows: 110, 011, 101 -> rank 2 over F2
        let rows = vec![
            BitVec::from_indices(3, [0, 1]),
            BitVec::from_indices(3, [1, 2]),
            BitVec::from_indices(3, [0, 2]),
        ];
        let m = F2Matrix::from_rows(3, rows);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], BitVec::ones(3));
        assert!(m.mul_vec(&ker[0]).is_zero());
        assert_eq!(m.column_space().rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(bits in proptest::collection::vec(any::<bool>(), 35)) {
            let rows: Vec<BitVec> = bits.chunks(7)
                .map(|c| BitVec::from_indices(7, c.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)))
                .collect();
            let m = F2Matrix::from_rows(7, rows);
            let ker = m.kernel();
            prop_assert_eq!(m.rank() + ker.len(), 7);
            for k in &ker {
                prop_assert!(m.mul_vec(k).is_zero());
            }
            prop_assert_eq!(m.transpose().rank(), m.rank());
            let basis = m.column_space();
            for j in 0..7 {
                let col = m.mul_vec(&BitVec::from_indices(7, [j]));
                prop_assert!(basis.contains(&col));
            }
        }
    }
}
