//! Dense GF(2) vectors and matrices.
//!
//! Vectors are bit-packed into 64-bit words, bit `i` living at
//! `words[i / 64] >> (i % 64)`. Matrices are stored row-major as a list of
//! packed rows. Everything here is immutable once built and safe to share.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    words: SmallVec<[u64; 2]>,
    len: usize,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: SmallVec::from_elem(0, word_count(len)),
            len,
        }
    }

    /// Builds a vector from a slice of bits; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `'0'`/`'1'` characters. Returns the offending
    /// column (0-based) on failure.
    pub fn parse01(s: &str) -> std::result::Result<Self, usize> {
        let mut v = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(i),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        self.get(i) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// `self += other` over GF(2). Panics if the lengths differ.
    #[inline]
    pub fn xor_assign(&mut self, other: &BinaryVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BinaryVector) -> BinaryVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BinaryVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Iterator over the indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
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

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().collect()
    }

    /// The first `t` components.
    pub fn prefix(&self, t: usize) -> BinaryVector {
        assert!(t <= self.len);
        let mut words: SmallVec<[u64; 2]> = self.words[..word_count(t)].into();
        if !t.is_multiple_of(WORD_BITS) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (t % WORD_BITS)) - 1;
            }
        }
        BinaryVector { words, len: t }
    }

    /// Returns a copy extended (or truncated) to `len` bits, padding with zeros.
    pub fn resized(&self, len: usize) -> BinaryVector {
        if len <= self.len {
            return self.prefix(len);
        }
        let mut out = BinaryVector::zeros(len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out
    }

    /// Lexicographic order on the bit sequence `(b_0, b_1, ...)`, shorter
    /// sequences first when one is a prefix of the other.
    pub fn cmp_lex(&self, other: &BinaryVector) -> Ordering {
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if (a >> bit) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

/// An echelon basis grown one vector at a time.
///
/// Every stored vector has its pivot (lowest set bit) cleared in all vectors
/// inserted after it, so reducing against the vectors in insertion order is
/// exact. This also means any insertion-order prefix of the basis is itself a
/// valid echelon basis of the span of the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    vectors: Vec<BinaryVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[BinaryVector] {
        &self.vectors
    }

    /// Reduces `v` against the first `prefix` basis vectors.
    pub fn reduce_with_prefix(&self, v: &mut BinaryVector, prefix: usize) {
        for (b, &p) in self.vectors[..prefix].iter().zip(&self.pivots[..prefix]) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
    }

    pub fn reduce(&self, v: &mut BinaryVector) {
        self.reduce_with_prefix(v, self.vectors.len());
    }

    pub fn contains(&self, v: &BinaryVector) -> bool {
        self.contains_with_prefix(v, self.vectors.len())
    }

    /// Membership in the span of the first `prefix` inserted vectors.
    pub fn contains_with_prefix(&self, v: &BinaryVector, prefix: usize) -> bool {
        let mut w = v.clone();
        self.reduce_with_prefix(&mut w, prefix);
        w.is_zero()
    }

    /// Inserts `v` if it is independent of the current span; returns whether
    /// the dimension grew.
    pub fn insert(&mut self, v: &BinaryVector) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.clone();
        self.reduce(&mut w);
        match w.first_one() {
            Some(p) => {
                self.vectors.push(w);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// Output of [`BinaryMatrix::row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction {
    /// Reduced row-echelon form, same shape as the input.
    pub reduced: BinaryMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BinaryVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BinaryVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {} columns",
                bad.len(),
                cols
            )));
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from `'0'`/`'1'` strings, one per row. Intended for
    /// literals in tests and examples; panics on malformed input.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BinaryVector::parse01(r).expect("matrix literal must be 0/1"))
            .collect();
        Self::from_rows(cols, rows).expect("matrix literal must be rectangular")
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BinaryVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Column `j` as a vector of length `num_rows`.
    pub fn column(&self, j: usize) -> BinaryVector {
        let mut c = BinaryVector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<BinaryVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> BinaryMatrix {
        BinaryMatrix {
            cols: self.rows.len(),
            rows: self.columns(),
        }
    }

    /// `M · v`, i.e. the syndrome of `v` when `M` is a parity-check matrix.
    pub fn mat_vec_mul(&self, v: &BinaryVector) -> Result<BinaryVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} times matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = BinaryVector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ`; zero exactly when every row of `self` is orthogonal
    /// to every row of `other`.
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{} columns vs {} columns",
                self.cols, other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| other.mat_vec_mul(r))
            .collect::<Result<Vec<_>>>()?;
        BinaryMatrix::from_rows(other.rows.len(), rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BinaryVector::is_zero)
    }

    /// Gaussian elimination to reduced row-echelon form.
    pub fn row_reduce(&self) -> RowReduction {
        let mut rows = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && r.get(col) {
                    r.xor_assign(&pivot_row);
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        RowReduction {
            reduced: BinaryMatrix {
                cols: self.cols,
                rows,
            },
            rank,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r);
        }
        basis.dim()
    }

    pub fn is_full_row_rank(&self) -> bool {
        self.rank() == self.rows.len()
    }

    /// Echelon basis of the row space.
    pub fn row_space(&self) -> EchelonBasis {
        let mut basis = EchelonBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r);
        }
        basis
    }

    /// A basis of `{ x : self · x = 0 }`, one row per free column of the
    /// reduced form.
    pub fn null_space(&self) -> BinaryMatrix {
        let rr = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - rr.rank);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BinaryVector::zeros(self.cols);
            v.set(free, true);
            for (i, &pc) in rr.pivot_cols.iter().enumerate() {
                if rr.reduced.rows[i].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        BinaryMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns onto {} columns",
                other.cols, self.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BinaryMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Rows `range` as a new matrix.
    pub fn row_slice(&self, range: std::ops::Range<usize>) -> BinaryMatrix {
        BinaryMatrix {
            cols: self.cols,
            rows: self.rows[range].to_vec(),
        }
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.rows.len(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

/// `M · v` as a free function.
pub fn mat_vec_mul(m: &BinaryMatrix, v: &BinaryVector) -> Result<BinaryVector> {
    m.mat_vec_mul(v)
}

pub fn row_reduce(m: &BinaryMatrix) -> RowReduction {
    m.row_reduce()
}

/// Returns rows `E` such that `[small; E]` is a full-rank basis of the row
/// space of `large`. The rows of `E` are taken verbatim from `large`, in
/// order, skipping those already in the span.
pub fn extend_basis(small: &BinaryMatrix, large: &BinaryMatrix) -> Result<BinaryMatrix> {
    if small.num_cols() != large.num_cols() {
        return Err(Error::Dimension(format!(
            "bases of length {} and {}",
            small.num_cols(),
            large.num_cols()
        )));
    }
    for m in [small, large] {
        let rank = m.rank();
        if rank != m.num_rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: m.num_rows(),
            });
        }
    }
    let large_span = large.row_space();
    if let Some(row) = small.rows().iter().position(|r| !large_span.contains(r)) {
        return Err(Error::NotNested { row });
    }
    let mut span = small.row_space();
    let extra = large
        .rows()
        .iter()
        .filter(|r| span.insert(r))
        .cloned()
        .collect();
    BinaryMatrix::from_rows(large.num_cols(), extra)
}
