//! Binary linear codes, standard code families, CSS pairs and coset states.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::poly::{factor_cyclic, Gf2Poly};

/// Largest code dimension enumerated word by word.
pub const MAX_ENUMERATION_DIM: usize = 24;

/// A binary linear `[n, k]` code given by a full-rank generator matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
}

impl LinearCode {
    /// Requires a full-rank `k x n` generator; the rows are kept verbatim.
    pub fn from_generator(generator: BitMatrix) -> Result<Self> {
        let k = generator.nrows();
        let r = generator.rank();
        if r != k {
            return Err(Error::param(format!(
                "generator has {k} rows but rank {r}"
            )));
        }
        Ok(LinearCode {
            n: generator.ncols(),
            generator,
        })
    }

    /// Code spanned by the rows of `m`, which may be dependent.
    pub fn from_spanning(m: &BitMatrix) -> Self {
        LinearCode {
            n: m.ncols(),
            generator: m.row_basis(),
        }
    }

    pub fn zero(n: usize) -> Self {
        LinearCode {
            n,
            generator: BitMatrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        LinearCode {
            n,
            generator: BitMatrix::identity(n),
        }
    }

    pub fn repetition(n: usize) -> Self {
        LinearCode {
            n,
            generator: BitMatrix::from_rows(vec![BitVector::ones(n)], n).expect("width n"),
        }
    }

    /// Hamming code of redundancy `m`: `[2^m - 1, 2^m - 1 - m, 3]`. Column
    /// `j` of the parity check is the binary expansion of `j + 1`.
    pub fn hamming(m: usize) -> Result<Self> {
        Ok(Self::simplex(m)?.dual())
    }

    /// Simplex code `[2^m - 1, m, 2^(m-1)]`, the dual of [`LinearCode::hamming`].
    pub fn simplex(m: usize) -> Result<Self> {
        if !(2..=10).contains(&m) {
            return Err(Error::param(format!("Hamming/simplex redundancy m = {m} outside 2..=10")));
        }
        let n = (1 << m) - 1;
        let h = BitMatrix::from_fn(m, n, |i, j| ((j + 1) >> i) & 1 == 1);
        Self::from_generator(h)
    }

    /// Reed–Muller code `RM(r, m)` of length `2^m`. Rows are the monomials
    /// of degree `<= r` ordered by degree, then lexicographically by
    /// variable set. Coordinate `j` is the point whose bit `i` is `x_i`.
    pub fn reed_muller(r: usize, m: usize) -> Result<Self> {
        if r > m || m > 12 {
            return Err(Error::param(format!("RM({r}, {m}) requires 0 <= r <= m <= 12")));
        }
        let n = 1usize << m;
        let rows: Vec<BitVector> = rm_monomials(r, m)
            .into_iter()
            .map(|mask| {
                let mut v = BitVector::zeros(n);
                for j in (0..n).filter(|&j| j & mask == mask) {
                    v.set(j, true);
                }
                v
            })
            .collect();
        Self::from_generator(BitMatrix::from_rows(rows, n)?)
    }

    pub fn cyclic(spec: &CyclicCodeSpec) -> Self {
        let n = spec.n;
        let deg = spec.g.degree().expect("nonzero generator polynomial");
        let rows = (0..n - deg)
            .map(|i| {
                let mut v = BitVector::zeros(n);
                for e in spec.g.exponents() {
                    v.set(e + i, true);
                }
                v
            })
            .collect();
        Self::from_generator(BitMatrix::from_rows(rows, n).expect("width n"))
            .expect("shifts of a generator polynomial are independent")
    }

    /// Narrow-sense binary BCH code `[31, 21, 5]` with zeros at `α` and `α^3`,
    /// `α` a root of `X^5 + X^2 + 1`.
    pub fn bch_31_21() -> Self {
        let spec = CyclicCodeSpec::from_zeros(31, &Gf2Poly::from_exponents(&[0, 2, 5]), &[1, 3])
            .expect("valid BCH parameters");
        Self::cyclic(&spec)
    }

    /// The `[31, 10, 12]` dual of [`LinearCode::bch_31_21`].
    pub fn bch_dual_31_10() -> Self {
        Self::bch_31_21().dual()
    }

    /// A self-orthogonal `[22, 7, 8]` code whose automorphism group has
    /// order 336.
    pub fn self_orthogonal_22_7() -> Self {
        let g = BitMatrix::from_strs(&[
            "1000100001100010101010",
            "0100100001101001010111",
            "0010100001010011011000",
            "0001000100100001101011",
            "0000010101011111100010",
            "0000001100100110101100",
            "0000000011111111111111",
        ]);
        Self::from_generator(g).expect("full rank literal")
    }

    pub fn construct(family: &CodeFamily) -> Result<Self> {
        match family {
            CodeFamily::Hamming(m) => Self::hamming(*m),
            CodeFamily::Simplex(m) => Self::simplex(*m),
            CodeFamily::ReedMuller { r, m } => Self::reed_muller(*r, *m),
            CodeFamily::Cyclic(spec) => Ok(Self::cyclic(spec)),
            CodeFamily::Bch31_21 => Ok(Self::bch_31_21()),
            CodeFamily::SelfOrthogonal22_7 => Ok(Self::self_orthogonal_22_7()),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            n: self.n,
            generator: self.generator.kernel_basis(),
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.n && RowReducer::from_rows(&self.generator).contains(v)
    }

    /// Row-space inclusion `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        if self.n != other.n {
            return false;
        }
        let r = RowReducer::from_rows(&other.generator);
        self.generator.rows().iter().all(|row| r.contains(row))
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.generator.row_basis() == other.generator.row_basis()
    }

    /// Calls `f` on every codeword (including zero) in Gray-code order.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&BitVector)) -> Result<()> {
        gray_enumerate(&self.generator, |_, w| f(w))
    }

    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        let mut out = Vec::new();
        self.for_each_codeword(|w| out.push(w.clone()))?;
        Ok(out)
    }

    /// Number of codewords of each weight `0..=n`, by enumeration.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n + 1];
        self.for_each_codeword(|w| dist[w.weight()] += 1)?;
        Ok(dist)
    }

    /// Minimum nonzero weight. Enumerates whichever of the code and its dual
    /// is smaller, using the MacWilliams transform for the dual route.
    pub fn minimum_distance(&self) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(Error::param("minimum distance of the zero code is undefined"));
        }
        let dist = if k <= self.n - k {
            self.weight_distribution()?
        } else {
            let dual = self.dual();
            macwilliams(&dual.weight_distribution()?, dual.k())
        };
        Ok(dist
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .expect("k >= 1 gives a nonzero word"))
    }

    /// All codewords of minimum nonzero weight.
    pub fn minimum_weight_words(&self) -> Result<Vec<BitVector>> {
        let mut best = usize::MAX;
        let mut words = Vec::new();
        self.for_each_codeword(|w| {
            let wt = w.weight();
            if wt == 0 || wt > best {
                return;
            }
            if wt < best {
                best = wt;
                words.clear();
            }
            words.push(w.clone());
        })?;
        Ok(words)
    }

    pub fn classify(&self) -> Classification {
        let rows = self.generator.rows();
        let self_orthogonal = rows
            .iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)));
        let doubly_even = self_orthogonal && rows.iter().all(|r| r.weight() % 4 == 0);
        Classification {
            self_orthogonal,
            doubly_even,
            contains_all_one: self.contains(&BitVector::ones(self.n)),
        }
    }

    /// Parses the code file format: a header line `n k` followed by `k`
    /// rows of `n` characters from `{0, 1}`. Lines starting with `#` are
    /// comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n k` header"))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(Error::parse(hl, format!("expected `n k`, found `{header}`")));
        }
        let n: usize = nums[0]
            .parse()
            .map_err(|_| Error::parse(hl, format!("bad length `{}`", nums[0])))?;
        let k: usize = nums[1]
            .parse()
            .map_err(|_| Error::parse(hl, format!("bad dimension `{}`", nums[1])))?;
        let mut rows = Vec::with_capacity(k);
        for (ln, l) in lines {
            let l = l.trim();
            let v = BitVector::parse01(l)
                .ok_or_else(|| Error::parse(ln, format!("row `{l}` contains characters other than 0/1")))?;
            if v.len() != n {
                return Err(Error::parse(ln, format!("row has length {}, expected {n}", v.len())));
            }
            rows.push(v);
        }
        if rows.len() != k {
            return Err(Error::parse(hl, format!("header declares {k} rows, found {}", rows.len())));
        }
        Self::from_generator(BitMatrix::from_rows(rows, n)?)
            .map_err(|e| Error::parse(hl, e.to_string()))
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.k());
        for r in self.generator.rows() {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}]", self.n, self.k())
    }
}

fn rm_monomials(r: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for d in 0..=r {
        let mut of_degree: Vec<usize> =
            (0..1usize << m).filter(|s| s.count_ones() as usize == d).collect();
        of_degree.sort_by_key(|&s| (0..m).map(|i| (s >> i) & 1 == 0).collect::<Vec<_>>());
        out.extend(of_degree);
    }
    out
}

/// Degree of each generator row of [`LinearCode::reed_muller`], in order.
pub fn rm_row_degrees(r: usize, m: usize) -> Vec<usize> {
    rm_monomials(r, m)
        .into_iter()
        .map(|s| s.count_ones() as usize)
        .collect()
}

/// Enumerates the row span of `basis` in Gray-code order, passing the Gray
/// index (bit `i` = coefficient of row `i`) and the word.
pub(crate) fn gray_enumerate(
    basis: &BitMatrix,
    mut f: impl FnMut(u64, &BitVector),
) -> Result<()> {
    let k = basis.nrows();
    if k > MAX_ENUMERATION_DIM {
        return Err(Error::Capacity(format!(
            "enumerating 2^{k} words exceeds the 2^{MAX_ENUMERATION_DIM} cap"
        )));
    }
    let mut word = BitVector::zeros(basis.ncols());
    let mut gray = 0u64;
    f(gray, &word);
    for i in 1u64..(1u64 << k) {
        let bit = i.trailing_zeros() as usize;
        gray ^= 1 << bit;
        word.xor_assign(basis.row(bit));
        f(gray, &word);
    }
    Ok(())
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Krawtchouk polynomial `K_j(i)` for length `n`.
fn krawtchouk(n: usize, j: usize, i: usize) -> i128 {
    (0..=j as i64)
        .map(|s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            sign * binomial(i as i64, s) * binomial((n - i) as i64, j as i64 - s)
        })
        .sum()
}

/// Weight distribution of the dual of a `[n, k]` code with distribution
/// `dist` (length `n + 1`).
pub fn macwilliams(dist: &[u64], k: usize) -> Vec<u64> {
    let n = dist.len() - 1;
    assert!(n <= 100, "MacWilliams transform limited to n <= 100");
    (0..=n)
        .map(|j| {
            let s: i128 = dist
                .iter()
                .enumerate()
                .map(|(i, &a)| a as i128 * krawtchouk(n, j, i))
                .sum();
            let q = s >> k;
            debug_assert_eq!(q << k, s, "MacWilliams sum not divisible by |C|");
            q as u64
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub self_orthogonal: bool,
    pub doubly_even: bool,
    pub contains_all_one: bool,
}

/// Cyclic code of odd length `n` with generator polynomial `g | X^n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCodeSpec {
    n: usize,
    g: Gf2Poly,
}

impl CyclicCodeSpec {
    pub fn new(n: usize, g: Gf2Poly) -> Result<Self> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::param(format!("cyclic codes need odd length, got {n}")));
        }
        if g.is_zero() || !g.divides(&Gf2Poly::x_n_minus_one(n)) {
            return Err(Error::param(format!("{g} does not divide X^{n} - 1")));
        }
        Ok(CyclicCodeSpec { n, g })
    }

    /// Generator polynomial whose zeros include `α^e` for each `e` in
    /// `exponents` (and their conjugates), where `α = X^((2^m - 1)/n)` in
    /// `GF(2)[X]/(modulus)` and `m = deg modulus`.
    pub fn from_zeros(n: usize, modulus: &Gf2Poly, exponents: &[usize]) -> Result<Self> {
        let m = modulus.degree().unwrap_or(0);
        if !modulus.is_irreducible() || m > 60 || ((1u64 << m) - 1) % n as u64 != 0 {
            return Err(Error::param(format!(
                "modulus {modulus} does not give a primitive n-th root of unity for n = {n}"
            )));
        }
        let alpha = poly_pow_mod(&Gf2Poly::x(), ((1u64 << m) - 1) / n as u64, modulus);
        let mut g = Gf2Poly::one();
        for f in factor_cyclic(n)? {
            let is_zero_of = exponents
                .iter()
                .any(|&e| eval_mod(&f, &poly_pow_mod(&alpha, e as u64, modulus), modulus).is_zero());
            if is_zero_of {
                g = g.mul(&f);
            }
        }
        Self::new(n, g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_poly(&self) -> &Gf2Poly {
        &self.g
    }

    /// Check polynomial `(X^n - 1) / g`.
    pub fn check_poly(&self) -> Gf2Poly {
        Gf2Poly::x_n_minus_one(self.n).divrem(&self.g).0
    }

    pub fn dimension(&self) -> usize {
        self.n - self.g.degree().expect("nonzero")
    }

    /// The dual cyclic code, generated by the reciprocal of the check
    /// polynomial.
    pub fn dual(&self) -> CyclicCodeSpec {
        CyclicCodeSpec {
            n: self.n,
            g: self.check_poly().reciprocal(),
        }
    }
}

pub(crate) fn poly_pow_mod(base: &Gf2Poly, mut e: u64, modulus: &Gf2Poly) -> Gf2Poly {
    let mut acc = Gf2Poly::one().rem(modulus);
    let mut b = base.rem(modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_mod(&b, modulus);
        }
        b = b.mul_mod(&b, modulus);
        e >>= 1;
    }
    acc
}

/// `f(x) mod modulus` by Horner's rule.
pub(crate) fn eval_mod(f: &Gf2Poly, x: &Gf2Poly, modulus: &Gf2Poly) -> Gf2Poly {
    let mut acc = Gf2Poly::zero();
    for i in (0..=f.degree().unwrap_or(0)).rev() {
        acc = acc.mul_mod(x, modulus);
        if f.coeff(i) {
            acc = acc.add(&Gf2Poly::one());
        }
    }
    acc.rem(modulus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeFamily {
    Hamming(usize),
    Simplex(usize),
    ReedMuller { r: usize, m: usize },
    Cyclic(CyclicCodeSpec),
    Bch31_21,
    SelfOrthogonal22_7,
}

/// CSS code from nested codes `c2 ⊆ c1`, with a basis of `c1` split into
/// coset representatives (`logical_basis`) and a basis of `c2`
/// (`inner_basis`).
#[derive(Clone, Debug)]
pub struct CssCode {
    c1: LinearCode,
    c2: LinearCode,
    logical_basis: BitMatrix,
    inner_basis: BitMatrix,
    reducer: RowReducer,
    outer_checks: BitMatrix,
    inner_checks: BitMatrix,
    /// `n × k1` matrix sending a word of `c1` to its coordinates.
    coord_map: BitMatrix,
}

impl CssCode {
    /// Deterministic basis: `inner_basis` is the reduced echelon basis of
    /// `c2`; logical rows are the rows of the reduced echelon form of `c1`,
    /// in pivot order, that are independent of everything chosen so far.
    pub fn from_pair(c1: LinearCode, c2: LinearCode) -> Result<Self> {
        if c1.n() != c2.n() {
            return Err(Error::dim(format!("lengths {} and {}", c1.n(), c2.n())));
        }
        if !c2.is_subcode_of(&c1) {
            return Err(Error::NotNested(
                "inner code is not contained in the outer code".into(),
            ));
        }
        let inner = c2.generator().row_basis();
        let mut r = RowReducer::from_rows(&inner);
        let mut logical = BitMatrix::zeros(0, c1.n());
        for row in c1.generator().row_basis().rows() {
            if r.push(row.clone()) {
                logical.push_row(row.clone());
            }
        }
        Self::with_bases(c1, c2, logical, inner)
    }

    /// Same pair with caller-chosen coset representatives.
    pub fn with_logical_basis(&self, logical: BitMatrix) -> Result<Self> {
        Self::with_bases(
            self.c1.clone(),
            self.c2.clone(),
            logical,
            self.inner_basis.clone(),
        )
    }

    fn with_bases(
        c1: LinearCode,
        c2: LinearCode,
        logical: BitMatrix,
        inner: BitMatrix,
    ) -> Result<Self> {
        let k = c1.k() - c2.k();
        if logical.nrows() != k || logical.ncols() != c1.n() {
            return Err(Error::dim(format!(
                "logical basis must be {k} x {}, got {} x {}",
                c1.n(),
                logical.nrows(),
                logical.ncols()
            )));
        }
        if logical.rows().iter().any(|r| !c1.contains(r)) {
            return Err(Error::param("logical representative outside the outer code"));
        }
        let stacked = logical.vstack(&inner);
        if stacked.rank() != c1.k() {
            return Err(Error::param(
                "logical representatives are not independent modulo the inner code",
            ));
        }
        let reducer = RowReducer::from_rows(&stacked);
        let coord_map = right_inverse(&stacked);
        Ok(CssCode {
            outer_checks: c1.dual().generator().clone(),
            inner_checks: c2.dual().generator().clone(),
            c1,
            c2,
            logical_basis: logical,
            inner_basis: inner,
            reducer,
            coord_map,
        })
    }

    /// CSS code of a self-orthogonal `c`: the pair `(dual(c), c)`.
    pub fn from_self_orthogonal(c: LinearCode) -> Result<Self> {
        Self::from_pair(c.dual(), c)
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    /// Number of logical qubits.
    pub fn k(&self) -> usize {
        self.logical_basis.nrows()
    }

    pub fn logical_basis(&self) -> &BitMatrix {
        &self.logical_basis
    }

    pub fn inner_basis(&self) -> &BitMatrix {
        &self.inner_basis
    }

    /// Coordinates of `v ∈ c1` over the stacked basis (logical rows first).
    pub fn coordinates(&self, v: &BitVector) -> Option<BitVector> {
        self.reducer.coordinates(v)
    }

    /// Coordinates of a word known to lie in `c1`.
    pub(crate) fn coordinates_unchecked(&self, v: &BitVector) -> BitVector {
        self.coord_map.vec_mul(v)
    }

    /// `true` iff `v` lies in `c1` (`inner = false`) or `c2` (`inner = true`).
    pub(crate) fn satisfies_checks(&self, v: &BitVector, inner: bool) -> bool {
        let h = if inner { &self.inner_checks } else { &self.outer_checks };
        h.rows().iter().all(|r| !r.dot(v))
    }

    /// Logical label of the coset containing `v`, if `v ∈ c1`.
    pub fn decode_label(&self, v: &BitVector) -> Option<BitVector> {
        self.coordinates(v).map(|c| c.slice(0, self.k()))
    }

    /// `true` if `c1` is the dual of `c2`.
    pub fn is_dual_containing(&self) -> bool {
        self.c1.same_code(&self.c2.dual())
    }

    pub fn parameters(&self) -> Result<CssParameters> {
        let k = self.k();
        let d = if k == 0 {
            None
        } else {
            let basis = self.inner_basis.vstack(&self.logical_basis);
            let k2 = self.inner_basis.nrows();
            let mut best = usize::MAX;
            gray_enumerate(&basis, |g, w| {
                if g >> k2 != 0 {
                    best = best.min(w.weight());
                }
            })?;
            Some(best)
        };
        Ok(CssParameters { n: self.n(), k, d })
    }

    pub fn coset_state(&self, beta: &BitVector) -> Result<CosetState> {
        if beta.len() != self.k() {
            return Err(Error::dim(format!(
                "label of length {} for {} logical qubits",
                beta.len(),
                self.k()
            )));
        }
        Ok(CosetState {
            beta: beta.clone(),
            representative: self.logical_basis.vec_mul(beta),
        })
    }
}

/// `M` with `b · M = I` for a full-row-rank `b`, supported on the rows of
/// a set of pivot columns.
fn right_inverse(b: &BitMatrix) -> BitMatrix {
    let (k, n) = (b.nrows(), b.ncols());
    let bt = b.transpose();
    let mut r = RowReducer::new(k);
    let mut pivots = Vec::with_capacity(k);
    for (j, col) in bt.rows().iter().enumerate() {
        if pivots.len() == k {
            break;
        }
        if r.push(col.clone()) {
            pivots.push(j);
        }
    }
    let square = BitMatrix::from_fn(k, k, |i, t| b.get(i, pivots[t]));
    let inv = square.inverse().expect("pivot columns are independent");
    let mut m = BitMatrix::zeros(n, k);
    for (t, &p) in pivots.iter().enumerate() {
        m.set_row(p, inv.row(t).clone());
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssParameters {
    pub n: usize,
    pub k: usize,
    /// Minimum weight over `c1 \ c2`; `None` when `k = 0`.
    pub d: Option<usize>,
}

/// A CSS basis state, tracked combinatorially as the coset
/// `representative + c2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetState {
    pub beta: BitVector,
    pub representative: BitVector,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_examples() {
        let full = LinearCode::full(6);
        assert_eq!(full.dual().k(), 0);
        let s = LinearCode::hamming(4).unwrap().dual();
        assert_eq!((s.n(), s.k()), (15, 4));
        let d = s.weight_distribution().unwrap();
        assert_eq!(d[8], 15);
        assert_eq!(d.iter().sum::<u64>(), 16);
        let c = LinearCode::self_orthogonal_22_7();
        let cd = c.dual();
        assert_eq!((cd.n(), cd.k()), (22, 15));
        assert!(c.is_subcode_of(&cd));
        assert!(cd.dual().same_code(&c));
    }

    #[test]
    fn distances() {
        assert_eq!(LinearCode::repetition(9).minimum_distance().unwrap(), 9);
        assert_eq!(LinearCode::self_orthogonal_22_7().minimum_distance().unwrap(), 8);
        assert_eq!(LinearCode::bch_dual_31_10().minimum_distance().unwrap(), 12);
        assert_eq!(LinearCode::bch_31_21().minimum_distance().unwrap(), 5);
        assert!(LinearCode::zero(5).minimum_distance().is_err());
    }

    #[test]
    fn families() {
        let rm03 = LinearCode::reed_muller(0, 3).unwrap();
        assert!(rm03.same_code(&LinearCode::repetition(8)));
        let rm14 = LinearCode::reed_muller(1, 4).unwrap();
        assert_eq!((rm14.n(), rm14.k(), rm14.minimum_distance().unwrap()), (16, 5, 8));
        let bch = LinearCode::bch_31_21();
        assert_eq!((bch.n(), bch.k()), (31, 21));
        assert!(LinearCode::reed_muller(4, 3).is_err());
        assert!(CyclicCodeSpec::new(7, Gf2Poly::from_exponents(&[0, 2])).is_err());
        assert!(CyclicCodeSpec::new(8, Gf2Poly::one()).is_err());
    }

    #[test]
    fn classification() {
        let s = LinearCode::simplex(4).unwrap();
        let c = s.classify();
        assert!(c.self_orthogonal && c.doubly_even);
        // cross-check by enumerating all 16 words
        assert!(s.codewords().unwrap().iter().all(|w| w.weight() % 4 == 0));
        let c = LinearCode::self_orthogonal_22_7().classify();
        assert!(c.self_orthogonal && !c.doubly_even);
        assert!(LinearCode::hamming(4).unwrap().classify().contains_all_one);
        assert!(!s.classify().contains_all_one);
    }

    #[test]
    fn css_pairs() {
        let h = LinearCode::hamming(4).unwrap();
        let s = LinearCode::simplex(4).unwrap();
        let css = CssCode::from_pair(h.clone(), s.clone()).unwrap();
        assert_eq!(css.k(), 7);
        assert_eq!(css.parameters().unwrap().d, Some(3));
        let c = LinearCode::self_orthogonal_22_7();
        let css = CssCode::from_self_orthogonal(c.clone()).unwrap();
        assert_eq!(css.k(), 8);
        assert_eq!(css.parameters().unwrap().d, Some(4));
        let deg = CssCode::from_pair(c.clone(), c.clone()).unwrap();
        assert_eq!(deg.k(), 0);
        assert_eq!(deg.parameters().unwrap().d, None);
        assert!(matches!(
            CssCode::from_pair(s, h),
            Err(Error::NotNested(_))
        ));
    }

    #[test]
    fn coset_states() {
        let css = CssCode::from_pair(
            LinearCode::hamming(4).unwrap(),
            LinearCode::simplex(4).unwrap(),
        )
        .unwrap();
        let zero = css.coset_state(&BitVector::zeros(7)).unwrap();
        assert!(zero.representative.is_zero());
        for i in 0..7 {
            let st = css.coset_state(&BitVector::unit(7, i)).unwrap();
            assert_eq!(&st.representative, css.logical_basis().row(i));
        }
        let a = css.coset_state(&BitVector::parse01("1010011").unwrap()).unwrap();
        let b = css.coset_state(&BitVector::parse01("0110100").unwrap()).unwrap();
        assert!(!css.c2().contains(&a.representative.xor(&b.representative)));
        assert_eq!(css.decode_label(&a.representative).unwrap(), a.beta);
        assert!(css.coset_state(&BitVector::zeros(6)).is_err());
    }

    #[test]
    fn cyclic_dual_spec() {
        let spec = CyclicCodeSpec::from_zeros(31, &Gf2Poly::from_exponents(&[0, 2, 5]), &[1, 3]).unwrap();
        let dual = spec.dual();
        assert_eq!(dual.dimension(), 10);
        assert!(LinearCode::cyclic(&dual).same_code(&LinearCode::bch_dual_31_10()));
    }

    #[test]
    fn nesting_chains() {
        for m in 3..=5 {
            let s = LinearCode::simplex(m).unwrap();
            assert!(s.is_subcode_of(&LinearCode::hamming(m).unwrap()));
        }
        for m in 1..=5 {
            for r in 0..m {
                let a = LinearCode::reed_muller(r, m).unwrap();
                let b = LinearCode::reed_muller(r + 1, m).unwrap();
                assert!(a.is_subcode_of(&b), "RM({r},{m}) ⊆ RM({},{m})", r + 1);
            }
        }
    }

    #[test]
    fn macwilliams_matches_enumeration() {
        let codes = vec![
            LinearCode::hamming(3).unwrap(),
            LinearCode::hamming(4).unwrap(),
            LinearCode::self_orthogonal_22_7(),
            LinearCode::reed_muller(1, 4).unwrap(),
            LinearCode::reed_muller(2, 4).unwrap(),
        ];
        for c in codes {
            let direct = c.dual().weight_distribution().unwrap();
            let via = macwilliams(&c.weight_distribution().unwrap(), c.k());
            assert_eq!(direct, via, "{c:?}");
        }
    }

    #[test]
    fn file_format_round_trip() {
        let c = LinearCode::self_orthogonal_22_7();
        let text = c.serialize();
        assert_eq!(LinearCode::parse(&text).unwrap().serialize(), text);
        let commented = format!("# a comment\n{}# trailing\n", text);
        assert_eq!(LinearCode::parse(&commented).unwrap().serialize(), text);
        assert!(matches!(LinearCode::parse("3 1\n10x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(LinearCode::parse("3 2\n101\n").is_err());
        assert!(LinearCode::parse("3 2\n101\n101\n").is_err());
        assert!(LinearCode::parse("").is_err());
    }
}
