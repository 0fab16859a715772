//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are packed 64 coordinates per word, lowest index in the lowest
//! bit. Matrices are row-major sequences of vectors. All public operations
//! return new values.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2). Bits beyond `len` are always zero.
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

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `value`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.mask_tail();
        }
        v
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), words_for(len));
        let mut v = BitVector { len, words };
        v.mask_tail();
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse01(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Self::from_bools(&bits))
    }

    fn mask_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 coordinates as an integer.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
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

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    /// Size of the common support.
    pub fn and_weight(&self, other: &BitVector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        self.and_weight(other) % 2 == 1
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut r = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            r.set(i, true);
        }
        for i in other.iter_ones() {
            r.set(self.len + i, true);
        }
        r
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        let mut r = BitVector::zeros(end - start);
        for i in self.iter_ones().filter(|&i| i >= start && i < end) {
            r.set(i - start, true);
        }
        r
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Result of reduced row-echelon reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dim(format!(
                "row of length {} in matrix with {} columns",
                r.len(),
                cols
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses rows of `0`/`1` strings. Panics on bad input; meant for literals.
    pub fn from_strs(rows: &[&str]) -> Self {
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|s| {
                let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                BitVector::parse01(&s).expect("0/1 literal")
            })
            .collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows, cols).expect("rectangular literal")
    }

    /// Parses the matrix file format: one row of `0`/`1` characters per
    /// line, with blank lines and `#` comments ignored. Spaces inside a row
    /// are allowed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut cols = None;
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            let v = BitVector::parse01(&s)
                .ok_or_else(|| Error::parse(i + 1, format!("row `{t}` contains characters other than 0/1")))?;
            match cols {
                None => cols = Some(v.len()),
                Some(c) if c != v.len() => {
                    return Err(Error::parse(i + 1, format!("row has length {}, expected {c}", v.len())));
                }
                _ => {}
            }
            rows.push(v);
        }
        let cols = cols.ok_or_else(|| Error::parse(1, "matrix file has no rows"))?;
        Self::from_rows(rows, cols)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.rows[i].set(j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.rows[i].set(j, v);
    }

    pub fn set_row(&mut self, i: usize, row: BitVector) {
        assert_eq!(row.len(), self.cols);
        self.rows[i] = row;
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.cols)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "inner dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix {
            cols: other.cols,
            rows,
        }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.cols, other.cols);
        BitMatrix {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.xor(b))
                .collect(),
        }
    }

    /// `self · x` for a column vector `x` of length `ncols`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        let mut out = BitVector::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// `x · self` for a row vector `x` of length `nrows`.
    pub fn vec_mul(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.nrows());
        let mut out = BitVector::zeros(self.cols);
        for i in x.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.nrows(), other.nrows());
        BitMatrix {
            cols: self.cols + other.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> BitMatrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BitMatrix {
        BitMatrix {
            cols: c1 - c0,
            rows: self.rows[r0..r1].iter().map(|r| r.slice(c0, c1)).collect(),
        }
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Rref {
            matrix: BitMatrix {
                cols: self.cols,
                rows,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_basis(&self) -> BitMatrix {
        let r = self.rref();
        BitMatrix {
            cols: self.cols,
            rows: r.matrix.rows.into_iter().take(r.rank).collect(),
        }
    }

    /// Returns `x` with `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        if b.len() != self.nrows() {
            return Err(Error::dim(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.nrows()
            )));
        }
        let mut aug = self.clone();
        for (i, r) in aug.rows.iter_mut().enumerate() {
            let mut ext = BitVector::zeros(self.cols + 1);
            for j in r.iter_ones() {
                ext.set(j, true);
            }
            if b.get(i) {
                ext.set(self.cols, true);
            }
            *r = ext;
        }
        aug.cols += 1;
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &p) in red.pivots.iter().enumerate() {
            if red.matrix.rows[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis (as rows) of the right kernel `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> BitMatrix {
        let red = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::unit(self.cols, free);
            for (r, &p) in red.pivots.iter().enumerate() {
                if red.matrix.rows[r].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.cols;
        let red = self.hstack(&Self::identity(n)).rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(red.matrix.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.cols
    }

    /// Flattens row-major into a vector of length `rows·cols`.
    pub fn flatten(&self) -> BitVector {
        let mut v = BitVector::zeros(self.nrows() * self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                v.set(i * self.cols + j, true);
            }
        }
        v
    }

    pub fn unflatten(v: &BitVector, rows: usize, cols: usize) -> BitMatrix {
        assert_eq!(v.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for k in v.iter_ones() {
            m.rows[k / cols].set(k % cols, true);
        }
        m
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Incremental echelon basis that remembers how each reduced row was formed
/// from the inserted vectors, so any vector in the span can be written as a
/// combination of the originals.
#[derive(Clone, Debug)]
pub struct RowReducer {
    len: usize,
    inserted: usize,
    echelon: Vec<(usize, BitVector, BitVector)>,
}

impl RowReducer {
    pub fn new(len: usize) -> Self {
        RowReducer {
            len,
            inserted: 0,
            echelon: Vec::new(),
        }
    }

    /// Reducer over the rows of `m`; rows must be independent for
    /// coordinates to be unique.
    pub fn from_rows(m: &BitMatrix) -> Self {
        let mut r = Self::new(m.ncols());
        for row in m.rows() {
            r.push(row.clone());
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_inner(&self, v: &BitVector, combo_len: usize) -> (BitVector, BitVector) {
        let mut v = v.clone();
        let mut combo = BitVector::zeros(combo_len);
        for (p, row, c) in &self.echelon {
            if v.get(*p) {
                v.xor_assign(row);
                for i in c.iter_ones() {
                    combo.flip(i);
                }
            }
        }
        (v, combo)
    }

    /// Inserts a vector; returns `true` if it increased the rank.
    pub fn push(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len);
        let idx = self.inserted;
        self.inserted += 1;
        for (_, _, c) in &mut self.echelon {
            let mut grown = BitVector::zeros(idx + 1);
            for i in c.iter_ones() {
                grown.set(i, true);
            }
            *c = grown;
        }
        let (rest, mut combo) = self.reduce_inner(&v, idx + 1);
        match rest.first_one() {
            None => false,
            Some(p) => {
                combo.set(idx, true);
                self.echelon.push((p, rest, combo));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce_inner(v, self.inserted).0.is_zero()
    }

    /// Coefficients over the inserted vectors expressing `v`, if `v` is in
    /// the span.
    pub fn coordinates(&self, v: &BitVector) -> Option<BitVector> {
        let (rest, combo) = self.reduce_inner(v, self.inserted);
        rest.is_zero().then_some(combo)
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BitVector::parse01(&s).ok_or_else(|| D::Error::custom(format!("`{s}` is not a 0/1 string")))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    cols: usize,
    rows: Vec<BitVector>,
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            cols: self.cols,
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        BitMatrix::from_rows(r.rows, r.cols).map_err(D::Error::custom)
    }
}
