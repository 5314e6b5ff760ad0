//! Dense linear algebra over the two-element field.
//!
//! Rows are packed into 64-bit words and elimination XORs whole words at a
//! time. All public operations leave their inputs untouched.

use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with ones at the given positions. Panics on an out-of-range index.
    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVector::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Low `len` bits of `mask`, bit `i` of the mask becoming entry `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut v = BitVector::zeros(len);
        if len > 0 {
            let keep = if len >= WORD_BITS {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = mask & keep;
        }
        v
    }

    /// The first (up to) 64 entries as a mask.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Entries set here but not in `other`.
    pub fn and_not(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    /// Complement within `0..len`.
    pub fn not(&self) -> BitVector {
        let mut out = BitVector {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    pub fn is_subset_of(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// A dense `n_rows x n_cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let stride = words_for(n_cols);
        BitMatrix {
            n_rows,
            n_cols,
            stride,
            data: vec![0; stride * n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `n_cols` is needed for the
    /// empty case.
    pub fn from_rows(n_cols: usize, rows: &[BitVector]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), n_cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n_cols, "row {i} has length {} not {n_cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n_rows && j < self.n_cols, "entry ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n_rows && j < self.n_cols, "entry ({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let bit = 1u64 << (j % WORD_BITS);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.n_rows && j < self.n_cols, "entry ({i},{j}) out of range");
        self.data[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.n_cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        for w in 0..self.stride {
            let v = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= v;
        }
    }

    /// `row[i] ^= v`.
    pub fn xor_row_with(&mut self, i: usize, v: &BitVector) {
        assert_eq!(v.len(), self.n_cols);
        for (a, b) in self.row_words_mut(i).iter_mut().zip(v.words()) {
            *a ^= b;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i))
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.n_cols);
        let mut out = BitVector::zeros(self.n_rows);
        for i in 0..self.n_rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        BitMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.n_rows == self.n_cols
            && (0..self.n_rows).all(|i| (i + 1..self.n_cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduces a copy to reduced row-echelon form; returns it and the pivot
    /// column of each nonzero row.
    fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.n_cols {
            if r == self.n_rows {
                break;
            }
            let (w, bit) = (c / WORD_BITS, 1u64 << (c % WORD_BITS));
            let Some(p) = (r..self.n_rows).find(|&i| m.data[i * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..self.n_rows {
                if i != r && m.data[i * m.stride + w] & bit != 0 {
                    m.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            write!(f, "  ")?;
            for j in 0..self.n_cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Rank over GF(2).
pub fn rank_f2(m: &BitMatrix) -> usize {
    if m.n_cols == 0 || m.n_rows == 0 {
        return 0;
    }
    if m.n_cols <= WORD_BITS {
        let mut rows: Vec<u64> = (0..m.n_rows).map(|i| m.data[i * m.stride]).collect();
        return rank_of_rows(&mut rows);
    }
    m.rref().1.len()
}

/// Rank of a matrix whose rows fit in one word each. The slice is used as
/// scratch space.
pub fn rank_of_rows(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot_row = rows[i];
        if pivot_row == 0 {
            continue;
        }
        rank += 1;
        let low = pivot_row & pivot_row.wrapping_neg();
        for r in &mut rows[i + 1..] {
            if *r & low != 0 {
                *r ^= pivot_row;
            }
        }
    }
    rank
}

/// A basis of the right null space `{v : M v = 0}`.
pub fn kernel_basis_f2(m: &BitMatrix) -> Vec<BitVector> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.n_cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.n_cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(m.n_cols);
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if reduced.get(r, free) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}
