//! Matrix groups over GF(2) acting on row vectors.
//!
//! Orders come from a stabilizer chain over the unit-vector base
//! `e_0, e_1, ...`. The chain is grown by random Schreier–Sims, which only
//! ever yields a lower bound; it is promoted to an exact order by one of
//! three certificates: the bound equals `|GL(d, 2)|`, it meets an upper
//! bound supplied by the caller, or every Schreier generator sifts.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};

/// Largest dimension of a packed matrix.
pub const MAX_PACKED_DIM: usize = 32;

/// Square matrix with row `i` in the low bits of `rows[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackedMat {
    d: u8,
    rows: [u64; MAX_PACKED_DIM],
}

impl PackedMat {
    pub fn identity(d: usize) -> Self {
        let mut rows = [0u64; MAX_PACKED_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(d) {
            *r = 1 << i;
        }
        PackedMat { d: d as u8, rows }
    }

    pub fn from_bitmatrix(m: &BitMatrix) -> Result<Self> {
        let d = m.nrows();
        if !m.is_square() || d > MAX_PACKED_DIM {
            return Err(Error::dim(format!(
                "packed matrices must be square with dimension <= {MAX_PACKED_DIM}, got {} x {}",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut rows = [0u64; MAX_PACKED_DIM];
        for (i, r) in m.rows().iter().enumerate() {
            rows[i] = r.to_u64();
        }
        Ok(PackedMat { d: d as u8, rows })
    }

    pub fn to_bitmatrix(&self) -> BitMatrix {
        let d = self.dim();
        let rows = (0..d).map(|i| BitVector::from_u64(d, self.rows[i])).collect();
        BitMatrix::from_rows(rows, d).expect("square")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d as usize
    }

    /// Row vector times matrix.
    #[inline]
    pub fn act(&self, mut v: u64) -> u64 {
        let mut acc = 0;
        while v != 0 {
            let i = v.trailing_zeros() as usize;
            acc ^= self.rows[i];
            v &= v - 1;
        }
        acc
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &PackedMat) -> PackedMat {
        let mut rows = [0u64; MAX_PACKED_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(self.dim()) {
            *r = other.act(self.rows[i]);
        }
        PackedMat { d: self.d, rows }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim()).all(|i| self.rows[i] == 1 << i)
    }

    pub fn inverse(&self) -> Option<PackedMat> {
        let d = self.dim();
        let mut a = self.rows;
        let mut inv = PackedMat::identity(d).rows;
        for c in 0..d {
            let p = (c..d).find(|&r| (a[r] >> c) & 1 == 1)?;
            a.swap(c, p);
            inv.swap(c, p);
            for r in 0..d {
                if r != c && (a[r] >> c) & 1 == 1 {
                    a[r] ^= a[c];
                    inv[r] ^= inv[c];
                }
            }
        }
        Some(PackedMat { d: self.d, rows: inv })
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }
}

impl fmt::Debug for PackedMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_bitmatrix())
    }
}

/// `|GL(n, q)|`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let qn = BigUint::from(q).pow(n as u32);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - BigUint::from(q).pow(i as u32)))
}

/// `|SL(n, q)|` for a prime power `q`.
pub fn sl_order(n: usize, q: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::param("SL(0, q) is not defined here; need n >= 1"));
    }
    if !is_prime_power(q) {
        return Err(Error::param(format!("q = {q} is not a prime power")));
    }
    Ok(gl_order(n, q) / BigUint::from(q - 1))
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q % p == 0).expect("q >= 2");
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The lower bound reached `|GL(d, 2)|`.
    GeneralLinear,
    /// The lower bound met a structural upper bound (described).
    UpperBound(String),
    /// Every Schreier generator of the chain sifted to the identity.
    SchreierVerified,
    /// No certificate applied; the value is a lower bound only.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOrder {
    #[serde(with = "biguint_string")]
    pub value: BigUint,
    pub exact: bool,
    pub certificate: Certificate,
}

pub(crate) mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct OrderOptions {
    /// Known upper bound on the order with a short justification.
    pub upper_bound: Option<(BigUint, String)>,
    /// Maximum number of Schreier generators checked by the deterministic
    /// certificate.
    pub verify_budget: u64,
    /// Largest basic orbit stored.
    pub orbit_cap: usize,
    /// Consecutive random elements that must sift before stopping.
    pub confidence: u32,
    pub seed: u64,
}

impl Default for OrderOptions {
    fn default() -> Self {
        OrderOptions {
            upper_bound: None,
            verify_budget: 400_000,
            orbit_cap: 1 << 22,
            confidence: 40,
            seed: 0x5eed_0f_0a1d,
        }
    }
}

/// Schreier table for one basic orbit: for each orbit vector, the index of
/// the generator whose application reached it (or `ROOT`).
#[derive(Clone)]
enum OrbitTable {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

const ABSENT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

impl OrbitTable {
    fn new(d: usize) -> Self {
        if d <= 18 {
            OrbitTable::Dense(vec![ABSENT; 1 << d])
        } else {
            OrbitTable::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn get(&self, v: u64) -> u32 {
        match self {
            OrbitTable::Dense(t) => t[v as usize],
            OrbitTable::Sparse(m) => *m.get(&v).unwrap_or(&ABSENT),
        }
    }

    #[inline]
    fn set(&mut self, v: u64, s: u32) {
        match self {
            OrbitTable::Dense(t) => t[v as usize] = s,
            OrbitTable::Sparse(m) => {
                m.insert(v, s);
            }
        }
    }
}

#[derive(Clone)]
struct ChainLevel {
    base: u64,
    gens: Vec<usize>,
    table: OrbitTable,
    orbit: Vec<u64>,
}

/// Stabilizer chain of a matrix group over the base `e_0, ..., e_{d-1}`.
#[derive(Clone)]
pub struct StabChain {
    d: usize,
    strong: Vec<PackedMat>,
    strong_inv: Vec<PackedMat>,
    levels: Vec<ChainLevel>,
    order: GroupOrder,
}

impl StabChain {
    fn empty(d: usize) -> Self {
        StabChain {
            d,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: (0..d)
                .map(|i| ChainLevel {
                    base: 1 << i,
                    gens: Vec::new(),
                    table: OrbitTable::new(0),
                    orbit: vec![1 << i],
                })
                .collect(),
            order: GroupOrder {
                value: BigUint::one(),
                exact: false,
                certificate: Certificate::LowerBound,
            },
        }
    }

    fn rebuild_orbit(&mut self, lvl: usize, cap: usize) -> Result<()> {
        let d = self.d;
        let level = &mut self.levels[lvl];
        let mut table = OrbitTable::new(d);
        table.set(level.base, ROOT);
        let mut orbit = vec![level.base];
        let mut k = 0;
        while k < orbit.len() {
            let v = orbit[k];
            for &s in &level.gens {
                let w = self.strong[s].act(v);
                if table.get(w) == ABSENT {
                    table.set(w, s as u32);
                    orbit.push(w);
                    if orbit.len() > cap {
                        return Err(Error::Capacity(format!(
                            "basic orbit exceeds the cap of {cap} vectors"
                        )));
                    }
                }
            }
            k += 1;
        }
        level.table = table;
        level.orbit = orbit;
        Ok(())
    }

    /// Sifts from level `from`; returns the residue and the level where it
    /// stopped (`d` when it passed every level).
    fn sift(&self, mut g: PackedMat, from: usize) -> (PackedMat, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let mut v = g.act(level.base);
            if level.table_is_trivial() {
                if v != level.base {
                    return (g, i);
                }
                continue;
            }
            if level.table.get(v) == ABSENT {
                return (g, i);
            }
            while v != level.base {
                let s = level.table.get(v) as usize;
                g = g.mul(&self.strong_inv[s]);
                v = self.strong_inv[s].act(v);
            }
        }
        (g, self.d)
    }

    fn add_strong(&mut self, h: PackedMat, upto: usize, cap: usize) -> Result<()> {
        let idx = self.strong.len();
        self.strong.push(h);
        self.strong_inv.push(h.inverse().expect("group elements are invertible"));
        for lvl in 0..=upto {
            self.levels[lvl].gens.push(idx);
            self.rebuild_orbit(lvl, cap)?;
        }
        Ok(())
    }

    /// Adds `g` if it does not sift; returns whether the chain grew.
    fn absorb(&mut self, g: PackedMat, cap: usize) -> Result<bool> {
        let (h, j) = self.sift(g, 0);
        if j == self.d {
            debug_assert!(h.is_identity(), "fixing every unit vector forces the identity");
            return Ok(false);
        }
        self.add_strong(h, j, cap)?;
        Ok(true)
    }

    fn lower_bound(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn transversal(&self, lvl: usize, mut v: u64) -> PackedMat {
        let level = &self.levels[lvl];
        let mut path = Vec::new();
        while v != level.base {
            let s = level.table.get(v) as usize;
            path.push(s);
            v = self.strong_inv[s].act(v);
        }
        path.iter()
            .rev()
            .fold(PackedMat::identity(self.d), |acc, &s| acc.mul(&self.strong[s]))
    }

    /// First Schreier generator that fails to sift, scanning levels from
    /// the deepest. `None` if all pass or the budget is too small (second
    /// component `false`).
    fn schreier_check(&self, budget: u64) -> (Option<(PackedMat, usize)>, bool) {
        let total: u64 = self
            .levels
            .iter()
            .map(|l| (l.orbit.len() * l.gens.len()) as u64)
            .sum();
        if total > budget {
            return (None, false);
        }
        for lvl in (0..self.d).rev() {
            let level = &self.levels[lvl];
            if level.gens.is_empty() {
                continue;
            }
            let bad = level
                .orbit
                .par_iter()
                .enumerate()
                .filter_map(|(idx, &v)| {
                    let u = self.transversal(lvl, v);
                    for &s in &level.gens {
                        let (r, j) = self.sift(u.mul(&self.strong[s]), lvl);
                        if j < self.d || !r.is_identity() {
                            return Some((idx, r, j));
                        }
                    }
                    None
                })
                .min_by_key(|(idx, _, _)| *idx);
            if let Some((_, r, j)) = bad {
                return (Some((r, j)), true);
            }
        }
        (None, true)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> &GroupOrder {
        &self.order
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Membership by sifting. Only conclusive when the order is exact.
    pub fn contains(&self, g: &BitMatrix) -> bool {
        match PackedMat::from_bitmatrix(g) {
            Ok(p) if p.dim() == self.d => {
                let (r, j) = self.sift(p, 0);
                j == self.d && r.is_identity()
            }
            _ => false,
        }
    }
}

impl ChainLevel {
    fn table_is_trivial(&self) -> bool {
        self.gens.is_empty()
    }
}

/// A group generated by invertible square matrices.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    generators: Vec<BitMatrix>,
}

impl MatrixGroup {
    pub fn new(dim: usize, generators: Vec<BitMatrix>) -> Result<Self> {
        for g in &generators {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::dim(format!(
                    "generator is {} x {}, group dimension {dim}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixGroup { dim, generators })
    }

    pub fn trivial(dim: usize) -> Self {
        MatrixGroup {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.generators
    }

    /// The group `{ P g P⁻¹ }`.
    pub fn conjugate(&self, p: &BitMatrix) -> Result<MatrixGroup> {
        let pi = p.inverse().ok_or(Error::Singular)?;
        MatrixGroup::new(
            self.dim,
            self.generators.iter().map(|g| p.mul(g).mul(&pi)).collect(),
        )
    }

    /// The group of transposes.
    pub fn transposed(&self) -> MatrixGroup {
        MatrixGroup {
            dim: self.dim,
            generators: self.generators.iter().map(BitMatrix::transpose).collect(),
        }
    }

    pub fn order(&self) -> Result<GroupOrder> {
        Ok(self.chain(&OrderOptions::default())?.order.clone())
    }

    pub fn order_with(&self, opts: &OrderOptions) -> Result<GroupOrder> {
        Ok(self.chain(opts)?.order.clone())
    }

    /// Builds a stabilizer chain by random Schreier–Sims and certifies it
    /// where possible.
    pub fn chain(&self, opts: &OrderOptions) -> Result<StabChain> {
        let d = self.dim;
        if d > MAX_PACKED_DIM {
            return Err(Error::Capacity(format!(
                "matrix groups limited to dimension {MAX_PACKED_DIM}, got {d}"
            )));
        }
        let gens: Vec<PackedMat> = self
            .generators
            .iter()
            .map(PackedMat::from_bitmatrix)
            .collect::<Result<_>>()?;
        let mut chain = StabChain::empty(d);
        if d == 0 {
            chain.order = GroupOrder {
                value: BigUint::one(),
                exact: true,
                certificate: Certificate::SchreierVerified,
            };
            return Ok(chain);
        }
        for g in &gens {
            chain.absorb(*g, opts.orbit_cap)?;
        }
        let gl = gl_order(d, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut pool = RandomPool::new(d, &gens, &mut rng);
        loop {
            let mut streak = 0;
            while streak < opts.confidence && chain.lower_bound() < gl {
                if chain.absorb(pool.next(&mut rng), opts.orbit_cap)? {
                    streak = 0;
                } else {
                    streak += 1;
                }
            }
            let lb = chain.lower_bound();
            let certificate = if lb == gl {
                Some(Certificate::GeneralLinear)
            } else if let Some((ub, why)) = opts.upper_bound.as_ref().filter(|(ub, _)| *ub == lb) {
                debug_assert_eq!(ub, &lb);
                Some(Certificate::UpperBound(why.clone()))
            } else {
                match chain.schreier_check(opts.verify_budget) {
                    (Some((r, j)), _) => {
                        chain.add_strong(r, j, opts.orbit_cap)?;
                        continue;
                    }
                    (None, true) => Some(Certificate::SchreierVerified),
                    (None, false) => None,
                }
            };
            if let Some((ub, why)) = &opts.upper_bound {
                if &lb > ub {
                    return Err(Error::Infeasible(format!(
                        "computed lower bound {lb} exceeds the claimed upper bound {ub} ({why})"
                    )));
                }
            }
            chain.order = match certificate {
                Some(c) => GroupOrder {
                    value: lb,
                    exact: true,
                    certificate: c,
                },
                None => GroupOrder {
                    value: lb,
                    exact: false,
                    certificate: Certificate::LowerBound,
                },
            };
            return Ok(chain);
        }
    }

    /// All elements by closure, for groups with at most `cap` elements.
    pub fn elements(&self, cap: usize) -> Result<Vec<BitMatrix>> {
        Ok(self.packed_elements(cap)?.iter().map(PackedMat::to_bitmatrix).collect())
    }

    pub(crate) fn packed_elements(&self, cap: usize) -> Result<Vec<PackedMat>> {
        let gens: Vec<PackedMat> = self
            .generators
            .iter()
            .map(PackedMat::from_bitmatrix)
            .collect::<Result<_>>()?;
        let id = PackedMat::identity(self.dim);
        let mut seen: HashSet<PackedMat> = HashSet::from([id]);
        let mut out = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.mul(g);
                if seen.insert(y) {
                    if out.len() >= cap {
                        return Err(Error::Capacity(format!("group has more than {cap} elements")));
                    }
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }
}

struct RandomPool {
    pool: Vec<PackedMat>,
    acc: PackedMat,
}

impl RandomPool {
    fn new(d: usize, gens: &[PackedMat], rng: &mut impl Rng) -> Self {
        let mut pool: Vec<PackedMat> = if gens.is_empty() {
            vec![PackedMat::identity(d)]
        } else {
            gens.to_vec()
        };
        let base = pool.clone();
        while pool.len() < 10 {
            pool.push(base[pool.len() % base.len()]);
        }
        let mut p = RandomPool {
            acc: PackedMat::identity(pool[0].dim()),
            pool,
        };
        for _ in 0..60 {
            p.next(rng);
        }
        p
    }

    /// Product replacement step.
    fn next(&mut self, rng: &mut impl Rng) -> PackedMat {
        let n = self.pool.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        self.pool[i] = if rng.gen_bool(0.5) {
            self.pool[i].mul(&self.pool[j])
        } else {
            self.pool[j].mul(&self.pool[i])
        };
        self.acc = self.acc.mul(&self.pool[i]);
        self.acc
    }
}

/// The GF(2)-algebra generated by a set of square matrices.
#[derive(Clone, Debug)]
pub struct AlgebraSpan {
    pub k: usize,
    pub basis: Vec<BitMatrix>,
    reducer: RowReducer,
}

impl AlgebraSpan {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.k * self.k
    }

    pub fn contains(&self, m: &BitMatrix) -> bool {
        m.nrows() == self.k && m.ncols() == self.k && self.reducer.contains(&m.flatten())
    }

    /// Coefficients of `m` over [`AlgebraSpan::basis`].
    pub fn coordinates(&self, m: &BitMatrix) -> Option<BitVector> {
        self.reducer.coordinates(&m.flatten())
    }
}

/// Closure of the span of `gens` under left and right multiplication by
/// the generators.
pub fn algebra_span(gens: &[BitMatrix]) -> Result<AlgebraSpan> {
    let k = gens
        .first()
        .ok_or_else(|| Error::param("algebra of an empty generator list"))?
        .nrows();
    if gens.iter().any(|g| g.nrows() != k || g.ncols() != k) {
        return Err(Error::dim("algebra generators must share one square shape"));
    }
    let mut reducer = RowReducer::new(k * k);
    let mut basis = Vec::new();
    let mut frontier = Vec::new();
    for g in gens {
        if reducer.push(g.flatten()) {
            basis.push(g.clone());
            frontier.push(g.clone());
        }
    }
    while let Some(a) = frontier.pop() {
        for g in gens {
            for p in [a.mul(g), g.mul(&a)] {
                if reducer.push(p.flatten()) {
                    basis.push(p.clone());
                    frontier.push(p);
                }
            }
        }
    }
    // rebuild so coordinates refer to `basis` only
    let reducer = RowReducer::from_rows(&BitMatrix::from_rows(
        basis.iter().map(BitMatrix::flatten).collect(),
        k * k,
    )?);
    Ok(AlgebraSpan { k, basis, reducer })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_matrix(images: &[usize]) -> BitMatrix {
        let k = images.len();
        BitMatrix::from_fn(k, k, |i, j| images[i] == j)
    }

    #[test]
    fn packed_roundtrip_and_inverse() {
        let m = BitMatrix::from_strs(&["110", "011", "001"]);
        let p = PackedMat::from_bitmatrix(&m).unwrap();
        assert_eq!(p.to_bitmatrix(), m);
        assert!(p.mul(&p.inverse().unwrap()).is_identity());
        assert_eq!(p.mul(&p).to_bitmatrix(), m.mul(&m));
        assert!(PackedMat::from_bitmatrix(&BitMatrix::from_strs(&["11", "11"])).unwrap().inverse().is_none());
    }

    #[test]
    fn small_orders() {
        let g = MatrixGroup::new(3, vec![BitMatrix::identity(3)]).unwrap();
        assert_eq!(g.order().unwrap().value, BigUint::one());
        let g = MatrixGroup::new(2, vec![BitMatrix::from_strs(&["01", "10"])]).unwrap();
        let o = g.order().unwrap();
        assert_eq!(o.value, BigUint::from(2u32));
        assert!(o.exact);
        let cnots = MatrixGroup::new(
            2,
            vec![BitMatrix::from_strs(&["10", "11"]), BitMatrix::from_strs(&["11", "01"])],
        )
        .unwrap();
        assert_eq!(cnots.order().unwrap().value, sl_order(2, 2).unwrap());
        assert_eq!(cnots.elements(100).unwrap().len(), 6);
    }

    #[test]
    fn orders_match_closure() {
        // a few groups small enough to enumerate
        let sets = vec![
            vec![perm_matrix(&[1, 2, 3, 4, 0]), perm_matrix(&[1, 0, 2, 3, 4])],
            vec![perm_matrix(&[1, 2, 3, 4, 5, 6, 0])],
            vec![
                BitMatrix::from_strs(&["1100", "0100", "0010", "0001"]),
                perm_matrix(&[1, 2, 3, 0]),
            ],
        ];
        for gens in sets {
            let g = MatrixGroup::new(gens[0].nrows(), gens).unwrap();
            let o = g.order().unwrap();
            assert!(o.exact);
            assert_eq!(o.value, BigUint::from(g.elements(1 << 20).unwrap().len()));
        }
    }

    #[test]
    fn sl_orders() {
        assert_eq!(sl_order(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(sl_order(2, 3).unwrap(), BigUint::from(24u32));
        assert!(sl_order(12, 2).unwrap() * 6u32 > BigUint::one() << 144);
        let b = sl_order(10, 2).unwrap();
        assert!(&b * &b * 6u32 > BigUint::one() << 199);
        assert!(sl_order(0, 2).is_err());
        assert!(sl_order(2, 6).is_err());
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(algebra_span(&[BitMatrix::identity(4)]).unwrap().dimension(), 1);
        for k in 2..7 {
            let c = perm_matrix(&(0..k).map(|i| (i + 1) % k).collect::<Vec<_>>());
            assert_eq!(algebra_span(&[c]).unwrap().dimension(), k);
        }
        let a = algebra_span(&[perm_matrix(&[1, 2, 0]), perm_matrix(&[1, 0, 2])]).unwrap();
        // permutation module of S3 over GF(2) splits off the all-one vector
        assert_eq!(a.dimension(), 5);
        assert!(a.contains(&BitMatrix::identity(3)));
    }

    #[test]
    fn membership_after_exact_order() {
        let gens = vec![perm_matrix(&[1, 2, 3, 4, 0]), perm_matrix(&[1, 0, 2, 3, 4])];
        let g = MatrixGroup::new(5, gens).unwrap();
        let c = g.chain(&OrderOptions::default()).unwrap();
        assert!(c.contains(&perm_matrix(&[4, 3, 2, 1, 0])));
        assert!(!c.contains(&BitMatrix::from_strs(&["11000", "01000", "00100", "00010", "00001"])));
    }
}
