//! Structure of the logical action: invariant subspaces, per-block groups,
//! the two-block group generated with transversal CNOTs, and checks for
//! cyclic and Reed–Muller families.
//!
//! All matrices here use the column convention of
//! [`crate::logical::InducedAction::logical_matrix`].

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{CssCode, CyclicCodeSpec, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::logical::{block_diagonal, induced_action, transversal_cnot, CnotDirection};
use crate::matgroup::{
    algebra_span, gl_order, GroupOrder, MatrixGroup, OrderOptions, PackedMat,
};
use crate::perm::{PermGroup, Permutation};
use crate::poly::{factor_cyclic, Gf2Poly};

/// Subspaces are stored as reduced row-echelon bases.
fn canonical(m: &BitMatrix) -> BitMatrix {
    m.row_basis()
}

fn span_of(rows: Vec<BitVector>, d: usize) -> BitMatrix {
    canonical(&BitMatrix::from_rows(rows, d).expect("uniform width"))
}

fn is_subspace(a: &BitMatrix, b: &BitMatrix) -> bool {
    let r = RowReducer::from_rows(b);
    a.rows().iter().all(|v| r.contains(v))
}

fn sum(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    canonical(&a.vstack(b))
}

fn annihilator(a: &BitMatrix) -> BitMatrix {
    canonical(&a.kernel_basis())
}

fn intersection(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    annihilator(&sum(&annihilator(a), &annihilator(b)))
}

/// Smallest subspace containing `seed` and invariant under every `g`
/// (acting on column vectors).
pub fn spin(gens: &[BitMatrix], seed: &[BitVector], d: usize) -> BitMatrix {
    let mut r = RowReducer::new(d);
    let mut basis = Vec::new();
    let mut queue: Vec<BitVector> = seed.to_vec();
    while let Some(v) = queue.pop() {
        if r.push(v.clone()) {
            for g in gens {
                queue.push(g.mul_vec(&v));
            }
            basis.push(v);
        }
    }
    span_of(basis, d)
}

fn is_invariant(gens: &[BitMatrix], w: &BitMatrix) -> bool {
    let r = RowReducer::from_rows(w);
    gens.iter().all(|g| w.rows().iter().all(|v| r.contains(&g.mul_vec(v))))
}

/// Invariant subspaces found by spinning, arranged as the longest chain
/// plus an invariant direct-sum decomposition when one was found.
#[derive(Clone, Debug)]
pub struct InvariantChain {
    pub dim: usize,
    /// Ascending chain from `0` to the whole space.
    pub subspaces: Vec<BitMatrix>,
    /// All invariant subspaces discovered.
    pub lattice: Vec<BitMatrix>,
    /// Invariant subspaces whose direct sum is the whole space.
    pub decomposition: Option<Vec<BitMatrix>>,
}

impl InvariantChain {
    /// The trivial chain `0 ⊂ V`.
    pub fn trivial(dim: usize) -> Self {
        InvariantChain {
            dim,
            subspaces: vec![BitMatrix::zeros(0, dim), BitMatrix::identity(dim)],
            lattice: Vec::new(),
            decomposition: None,
        }
    }

    /// Dimensions of the successive quotients, in chain order.
    pub fn block_dims(&self) -> Vec<usize> {
        self.subspaces.windows(2).map(|w| w[1].nrows() - w[0].nrows()).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.subspaces.len() == 2
    }
}

const LATTICE_CAP: usize = 256;

/// Discovers invariant subspaces by spinning seeds under the group and,
/// through annihilators, under its transpose. Seeds are the unit vectors
/// and fixed vectors of each generator.
pub fn invariant_subspaces(g: &MatrixGroup) -> InvariantChain {
    let d = g.dim();
    if d == 0 {
        return InvariantChain::trivial(0);
    }
    let gens = g.generators().to_vec();
    let tgens: Vec<BitMatrix> = gens.iter().map(BitMatrix::transpose).collect();
    let full = BitMatrix::identity(d);
    let mut found: Vec<BitMatrix> = Vec::new();
    let record = |w: BitMatrix, found: &mut Vec<BitMatrix>| {
        if w.nrows() > 0 && w.nrows() < d && !found.contains(&w) {
            found.push(w);
        }
    };
    for (gs, dual) in [(&gens, false), (&tgens, true)] {
        for seed in seeds(gs, d) {
            let w = spin(gs, &[seed], d);
            let w = if dual { annihilator(&w) } else { w };
            record(w, &mut found);
        }
    }
    // close under sum and intersection
    let mut i = 0;
    while i < found.len() && found.len() < LATTICE_CAP {
        for j in 0..i {
            let (a, b) = (found[i].clone(), found[j].clone());
            record(sum(&a, &b), &mut found);
            record(intersection(&a, &b), &mut found);
        }
        i += 1;
    }
    debug_assert!(found.iter().all(|w| is_invariant(&gens, w)));
    let subspaces = longest_chain(&found, d, &full);
    let decomposition = direct_decomposition(&found, d);
    InvariantChain {
        dim: d,
        subspaces,
        lattice: found,
        decomposition,
    }
}

fn seeds(gens: &[BitMatrix], d: usize) -> Vec<BitVector> {
    let mut out: Vec<BitVector> = (0..d).map(|i| BitVector::unit(d, i)).collect();
    for g in gens {
        let fixed = g.add(&BitMatrix::identity(d)).kernel_basis();
        let f = fixed.nrows();
        if f == 0 {
            continue;
        }
        if f <= 4 {
            for mask in 1u32..(1 << f) {
                let mut v = BitVector::zeros(d);
                for b in 0..f {
                    if mask >> b & 1 == 1 {
                        v.xor_assign(fixed.row(b));
                    }
                }
                out.push(v);
            }
        } else {
            out.extend(fixed.rows().iter().cloned());
        }
    }
    out
}

fn longest_chain(found: &[BitMatrix], d: usize, full: &BitMatrix) -> Vec<BitMatrix> {
    let mut nodes: Vec<BitMatrix> = found.to_vec();
    nodes.sort_by_key(|w| w.nrows());
    // best[i]: longest chain from 0 ending at nodes[i]
    let mut best: Vec<(usize, Option<usize>)> = vec![(1, None); nodes.len()];
    for i in 0..nodes.len() {
        for j in 0..i {
            if nodes[j].nrows() < nodes[i].nrows()
                && is_subspace(&nodes[j], &nodes[i])
                && best[j].0 + 1 > best[i].0
            {
                best[i] = (best[j].0 + 1, Some(j));
            }
        }
    }
    let mut chain = vec![full.clone()];
    if let Some(end) = (0..nodes.len()).max_by_key(|&i| (best[i].0, std::cmp::Reverse(i))) {
        let mut cur = Some(end);
        while let Some(c) = cur {
            chain.push(nodes[c].clone());
            cur = best[c].1;
        }
    }
    chain.push(BitMatrix::zeros(0, d));
    chain.reverse();
    chain
}

fn direct_decomposition(found: &[BitMatrix], d: usize) -> Option<Vec<BitMatrix>> {
    let mut atoms: Vec<&BitMatrix> = found
        .iter()
        .filter(|w| !found.iter().any(|u| u.nrows() < w.nrows() && is_subspace(u, w)))
        .collect();
    atoms.sort_by_key(|w| w.nrows());
    let mut r = RowReducer::new(d);
    let mut parts = Vec::new();
    for a in atoms {
        let mut trial = r.clone();
        if a.rows().iter().all(|v| trial.push(v.clone())) {
            r = trial;
            parts.push(a.clone());
        }
    }
    (r.rank() == d && parts.len() > 1).then_some(parts)
}

/// Action of each generator on each successive quotient of the chain.
pub fn restricted_block_group(g: &MatrixGroup, chain: &InvariantChain) -> Result<Vec<MatrixGroup>> {
    let d = g.dim();
    if chain.dim != d {
        return Err(Error::dim(format!("chain in dimension {}, group in {d}", chain.dim)));
    }
    for w in &chain.subspaces {
        if !is_invariant(g.generators(), w) {
            return Err(Error::param("chain contains a subspace that is not invariant"));
        }
    }
    let mut out = Vec::new();
    for pair in chain.subspaces.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        if !is_subspace(lower, upper) {
            return Err(Error::param("chain is not ascending"));
        }
        let mut r = RowReducer::from_rows(lower);
        let mut complement = Vec::new();
        for v in upper.rows() {
            if r.push(v.clone()) {
                complement.push(v.clone());
            }
        }
        let stacked = lower.vstack(&BitMatrix::from_rows(complement.clone(), d)?);
        let coords = RowReducer::from_rows(&stacked);
        let lo = lower.nrows();
        let delta = complement.len();
        let gens = g
            .generators()
            .iter()
            .map(|m| {
                let mut block = BitMatrix::zeros(delta, delta);
                for (j, q) in complement.iter().enumerate() {
                    let c = coords.coordinates(&m.mul_vec(q)).expect("invariant subspace");
                    for i in 0..delta {
                        block.set(i, j, c.get(lo + i));
                    }
                }
                block
            })
            .collect();
        out.push(MatrixGroup::new(delta, gens)?);
    }
    Ok(out)
}

/// Generators of the two-block group: both transversal CNOTs and
/// `diag(T, I)`, `diag(I, T)` for each logical generator `T`.
pub fn g12_from_generators(t1_gens: &[BitMatrix], k: usize) -> Result<MatrixGroup> {
    let mut gens = vec![
        transversal_cnot(k, CnotDirection::FirstControls)?.into_matrix(),
        transversal_cnot(k, CnotDirection::SecondControls)?.into_matrix(),
    ];
    let id = BitMatrix::identity(k);
    for t in t1_gens.iter().filter(|t| !t.is_identity()) {
        gens.push(block_diagonal(t, &id));
        gens.push(block_diagonal(&id, t));
    }
    MatrixGroup::new(2 * k, gens)
}

/// The two-block group of a CSS code with the given joint automorphisms.
pub fn build_g12(css: &CssCode, aut: &PermGroup) -> Result<MatrixGroup> {
    g12_from_generators(&t1_generators(css, aut)?, css.k())
}

/// Logical generators of a CSS code from the generators of its joint
/// automorphism group.
pub fn t1_generators(css: &CssCode, aut: &PermGroup) -> Result<Vec<BitMatrix>> {
    crate::logical::logical_generators(css, aut)
}

/// Change of basis putting the blocks of a decomposition on consecutive
/// coordinates: returns `Q` with `Q g Q⁻¹` block diagonal.
fn adapted_basis(parts: &[BitMatrix], d: usize) -> Result<BitMatrix> {
    let rows: Vec<BitVector> = parts.iter().flat_map(|p| p.rows().iter().cloned()).collect();
    let b = BitMatrix::from_rows(rows, d)?;
    // columns of bᵀ are the new basis vectors
    b.transpose().inverse().ok_or(Error::Singular)
}

fn block_ranges(dims: &[usize]) -> Vec<(usize, usize)> {
    let mut start = 0;
    dims.iter()
        .map(|&d| {
            let r = (start, start + d);
            start += d;
            r
        })
        .collect()
}

/// Order of the two-block group. When the logical action decomposes as a
/// direct sum, the group preserves each doubled block, which bounds the
/// order by the product of the general linear groups on those blocks; the
/// chain is computed in the adapted basis where basic orbits stay small.
pub fn g12_order(t1_gens: &[BitMatrix], k: usize, decomposition: Option<&[BitMatrix]>) -> Result<GroupOrder> {
    let g12 = g12_from_generators(t1_gens, k)?;
    let Some(parts) = decomposition else {
        return g12.order();
    };
    let q = adapted_basis(parts, k)?;
    let dims: Vec<usize> = parts.iter().map(BitMatrix::nrows).collect();
    // interleave so each block's two copies are adjacent
    let mut perm = Vec::with_capacity(2 * k);
    for &(a, b) in &block_ranges(&dims) {
        perm.extend(a..b);
        perm.extend(k + a..k + b);
    }
    let reorder = BitMatrix::from_fn(2 * k, 2 * k, |i, j| perm[i] == j);
    let big_q = reorder.mul(&block_diagonal(&q, &q));
    let adapted = g12.conjugate(&big_q)?;
    let doubled: Vec<usize> = dims.iter().map(|d| 2 * d).collect();
    let ranges = block_ranges(&doubled);
    for g in adapted.generators() {
        for (bi, &(a, b)) in ranges.iter().enumerate() {
            for (bj, &(c, e)) in ranges.iter().enumerate() {
                if bi != bj && !g.submatrix(a, b, c, e).is_zero() {
                    return Err(Error::Infeasible(
                        "two-block group does not preserve the doubled decomposition".into(),
                    ));
                }
            }
        }
    }
    let bound = doubled.iter().fold(BigUint::one(), |acc, &d| acc * gl_order(d, 2));
    let why = format!(
        "preserves a direct sum of blocks of dimensions {doubled:?}; bound is the product of |GL(d, 2)|"
    );
    adapted.order_with(&OrderOptions {
        upper_bound: Some((bound, why)),
        ..OrderOptions::default()
    })
}

/// Generators of the single-block subgroup in a basis adapted to an
/// invariant decomposition, together with the per-block groups.
#[derive(Clone, Debug)]
pub struct SingleBlockAnalysis {
    pub block_dims: Vec<usize>,
    /// Algebra dimension of the logical generators.
    pub algebra_dimension: usize,
    /// Per block: every matrix unit of the block lies in the algebra.
    pub block_algebra_full: Vec<bool>,
    /// The single-block group: conjugated logical generators plus the
    /// block transvections obtained from commutators of realizable
    /// off-diagonal CNOT blocks.
    pub group: MatrixGroup,
    pub block_groups: Vec<MatrixGroup>,
    pub block_orders: Vec<GroupOrder>,
}

/// Builds the single-block group. A transvection `I + E_ik` inside a block
/// is added when `E_ii` and `E_ik` are in the algebra: then both
/// off-diagonal blocks are realizable and their commutator is
/// `diag(I + E_ik, I)`.
pub fn single_block_group(t1_gens: &[BitMatrix], k: usize, parts: Option<&[BitMatrix]>) -> Result<SingleBlockAnalysis> {
    let whole = [BitMatrix::identity(k)];
    let parts: &[BitMatrix] = parts.unwrap_or(&whole);
    let q = adapted_basis(parts, k)?;
    let qi = q.inverse().ok_or(Error::Singular)?;
    let conj: Vec<BitMatrix> = t1_gens.iter().map(|g| q.mul(g).mul(&qi)).collect();
    let algebra = if conj.is_empty() {
        algebra_span(&[BitMatrix::identity(k)])?
    } else {
        algebra_span(&conj)?
    };
    let dims: Vec<usize> = parts.iter().map(BitMatrix::nrows).collect();
    let unit = |i: usize, j: usize| BitMatrix::from_fn(k, k, |a, b| a == i && b == j);
    let mut gens = conj.clone();
    let mut full = Vec::new();
    for &(a, b) in &block_ranges(&dims) {
        let mut all = true;
        for i in a..b {
            for j in a..b {
                let in_alg = algebra.contains(&unit(i, j));
                all &= in_alg;
                if i != j && in_alg && algebra.contains(&unit(i, i)) {
                    gens.push(BitMatrix::identity(k).add(&unit(i, j)));
                }
            }
        }
        full.push(all);
    }
    let group = MatrixGroup::new(k, gens)?;
    let mut subspaces = vec![BitMatrix::zeros(0, k)];
    for &(_, b) in &block_ranges(&dims) {
        subspaces.push(span_of((0..b).map(|i| BitVector::unit(k, i)).collect(), k));
    }
    let chain = InvariantChain {
        dim: k,
        subspaces,
        lattice: Vec::new(),
        decomposition: None,
    };
    let block_groups = restricted_block_group(&group, &chain)?;
    let block_orders = block_groups.iter().map(|g| g.order()).collect::<Result<Vec<_>>>()?;
    Ok(SingleBlockAnalysis {
        block_dims: dims,
        algebra_dimension: algebra.dimension(),
        block_algebra_full: full,
        group,
        block_groups,
        block_orders,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicBlocks {
    /// Degrees of the irreducible factors of `g2 / g1`, ascending.
    pub factor_degrees: Vec<usize>,
    /// `n >= δ²`, the counting condition for a full block algebra.
    pub spanning_possible: Vec<bool>,
    /// Dimension of the algebra generated by the cyclic shift on each block.
    pub shift_algebra_dims: Vec<usize>,
}

/// Companion matrix of a monic polynomial: multiplication by `X` on
/// `GF(2)[X]/(f)` in the basis `1, X, ..., X^(δ-1)`, column convention.
pub fn companion(f: &Gf2Poly) -> BitMatrix {
    let d = f.degree().unwrap_or(0);
    BitMatrix::from_fn(d, d, |i, j| if j + 1 < d { i == j + 1 } else { f.coeff(i) })
}

pub fn cyclic_block_structure(spec1: &CyclicCodeSpec, spec2: &CyclicCodeSpec) -> Result<CyclicBlocks> {
    if spec1.n() != spec2.n() {
        return Err(Error::dim(format!("lengths {} and {}", spec1.n(), spec2.n())));
    }
    let (h, rem) = spec2.generator_poly().divrem(spec1.generator_poly());
    if !rem.is_zero() {
        return Err(Error::NotNested(format!(
            "{} does not divide {}",
            spec1.generator_poly(),
            spec2.generator_poly()
        )));
    }
    let mut factors: Vec<Gf2Poly> = factor_cyclic(spec1.n())?
        .into_iter()
        .filter(|f| f.divides(&h))
        .collect();
    factors.sort_by_key(|f| f.degree());
    let mut out = CyclicBlocks {
        factor_degrees: Vec::new(),
        spanning_possible: Vec::new(),
        shift_algebra_dims: Vec::new(),
    };
    for f in factors {
        let d = f.degree().expect("nonzero");
        out.factor_degrees.push(d);
        out.spanning_possible.push(spec1.n() >= d * d);
        out.shift_algebra_dims.push(algebra_span(&[companion(&f)])?.dimension());
    }
    Ok(out)
}

/// Coordinate permutation of the affine map `x ↦ A x + b` on `GF(2)^m`,
/// points indexed by their integer value.
pub fn affine_permutation(m: usize, a: &BitMatrix, b: u64) -> Result<Permutation> {
    let n = 1usize << m;
    let images = (0..n)
        .map(|p| (a.mul_vec(&BitVector::from_u64(m, p as u64)).to_u64() ^ b) as usize)
        .collect();
    Permutation::from_images(images)
}

/// Generators of `AGL(m, 2)`: unit translations and elementary
/// transvections `x_i += x_j`.
pub fn agl_generators(m: usize) -> Result<Vec<Permutation>> {
    let id = BitMatrix::identity(m);
    let mut gens = Vec::new();
    for i in 0..m {
        gens.push(affine_permutation(m, &id, 1 << i)?);
        for j in 0..m {
            if i != j {
                let mut a = id.clone();
                a.set(i, j, true);
                gens.push(affine_permutation(m, &a, 0)?);
            }
        }
    }
    Ok(gens)
}

/// CSS code `RM(r+s, m) / RM(r, m)` whose logical rows are the monomials
/// of degrees `r+1 ..= r+s`, in the order of the generator matrix.
pub fn rm_css(r: usize, s: usize, m: usize) -> Result<(CssCode, Vec<usize>)> {
    if s == 0 || r + s > m || m > 5 {
        return Err(Error::param(format!("need 0 <= r < r+s <= m <= 5, got r={r}, s={s}, m={m}")));
    }
    let outer = LinearCode::reed_muller(r + s, m)?;
    let inner = LinearCode::reed_muller(r, m)?;
    let k2 = inner.k();
    let logical = outer.generator().submatrix(k2, outer.k(), 0, outer.n());
    let degrees = crate::codes::rm_row_degrees(r + s, m)[k2..].to_vec();
    let css = CssCode::from_pair(outer, inner)?.with_logical_basis(logical)?;
    Ok((css, degrees))
}

/// Checks that every `AGL(m, 2)` generator acts block-triangularly with
/// respect to the degree filtration of the logical monomials: a monomial
/// of degree `e` is mapped into the span of monomials of degree `<= e`.
pub fn rm_block_check(r: usize, s: usize, m: usize) -> Result<bool> {
    let (css, degrees) = rm_css(r, s, m)?;
    for p in agl_generators(m)? {
        let t1 = induced_action(&css, &p)?.t1;
        for (j, &dj) in degrees.iter().enumerate() {
            for (l, &dl) in degrees.iter().enumerate() {
                if dl > dj && t1.get(j, l) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Similarity-invariant fingerprint: element order and ranks of powers of
/// a few small polynomials evaluated at the matrix.
fn signature(h: &PackedMat) -> Vec<usize> {
    let i = BitMatrix::identity(h.dim());
    let hm = h.to_bitmatrix();
    let h2 = hm.mul(&hm);
    let h3 = h2.mul(&hm);
    let polys = [
        hm.add(&i),
        h2.add(&hm).add(&i),
        h3.add(&hm).add(&i),
        h3.add(&h2).add(&i),
    ];
    let mut sig = vec![element_order(h)];
    for p in &polys {
        let mut acc = p.clone();
        for _ in 0..3 {
            sig.push(acc.rank());
            acc = acc.mul(p);
        }
    }
    sig
}

fn element_order(h: &PackedMat) -> usize {
    let mut x = *h;
    let mut n = 1;
    while !x.is_identity() {
        x = x.mul(h);
        n += 1;
    }
    n
}

/// A basis change aligning our logical group with a set of printed
/// generators.
#[derive(Clone, Debug)]
pub struct Alignment {
    /// `P` with `P h_i P⁻¹ = target_i` for some group elements `h_i`.
    pub p: BitMatrix,
    /// The group elements matched to each target.
    pub preimages: Vec<BitMatrix>,
}

/// Largest group enumerated when searching for an alignment.
pub const ALIGNMENT_GROUP_CAP: usize = 200_000;

/// Searches for `P` and elements `h_1, h_2` of `group` with
/// `P h_i P⁻¹ = targets[i]` for two targets. `h_1` runs over conjugacy
/// class representatives; `h_2` over all elements passing invariant
/// filters; each candidate pair is a linear system in `P`.
pub fn align_generators(group: &MatrixGroup, targets: &[BitMatrix]) -> Result<Option<Alignment>> {
    if targets.len() != 2 {
        return Err(Error::param("alignment expects exactly two target generators"));
    }
    let k = group.dim();
    let elems = group.packed_elements(ALIGNMENT_GROUP_CAP)?;
    let t: Vec<PackedMat> = targets.iter().map(PackedMat::from_bitmatrix).collect::<Result<_>>()?;
    let (sig1, sig2) = (signature(&t[0]), signature(&t[1]));
    let sig12 = signature(&t[0].mul(&t[1]));
    let sigs: Vec<Vec<usize>> = elems.iter().map(signature).collect();
    let reps = class_representatives(group, &elems)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &r in &reps {
        if sigs[r] != sig1 {
            continue;
        }
        let h1 = elems[r];
        for (j, h2) in elems.iter().enumerate() {
            if sigs[j] != sig2 || signature(&h1.mul(h2)) != sig12 {
                continue;
            }
            let pairs = [(h1.to_bitmatrix(), targets[0].clone()), (h2.to_bitmatrix(), targets[1].clone())];
            if let Some(p) = solve_intertwiner(&pairs, k, &mut rng) {
                return Ok(Some(Alignment {
                    p,
                    preimages: vec![pairs[0].0.clone(), pairs[1].0.clone()],
                }));
            }
        }
    }
    Ok(None)
}

fn class_representatives(group: &MatrixGroup, elems: &[PackedMat]) -> Result<Vec<usize>> {
    use std::collections::HashMap;
    let index: HashMap<PackedMat, usize> = elems.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let gens: Vec<(PackedMat, PackedMat)> = group
        .generators()
        .iter()
        .map(|g| {
            let p = PackedMat::from_bitmatrix(g)?;
            Ok((p, p.inverse().ok_or(Error::Singular)?))
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; elems.len()];
    let mut reps = Vec::new();
    for start in 0..elems.len() {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for (g, gi) in &gens {
                let y = gi.mul(&elems[x]).mul(g);
                let yi = index[&y];
                if !seen[yi] {
                    seen[yi] = true;
                    stack.push(yi);
                }
            }
        }
    }
    Ok(reps)
}

/// Invertible `P` with `P h = g P` for every pair, if one exists.
fn solve_intertwiner(pairs: &[(BitMatrix, BitMatrix)], k: usize, rng: &mut impl Rng) -> Option<BitMatrix> {
    let mut eqs = BitMatrix::zeros(0, k * k);
    for (h, g) in pairs {
        for a in 0..k {
            for b in 0..k {
                // (P h)_{ab} + (g P)_{ab} = 0
                let mut row = BitVector::zeros(k * k);
                for c in 0..k {
                    if h.get(c, b) {
                        row.flip(a * k + c);
                    }
                    if g.get(a, c) {
                        row.flip(c * k + b);
                    }
                }
                eqs.push_row(row);
            }
        }
    }
    let sols = eqs.kernel_basis();
    let dim = sols.nrows();
    if dim == 0 {
        return None;
    }
    let try_mask = |mask: &dyn Fn(usize) -> bool| {
        let mut v = BitVector::zeros(k * k);
        for i in (0..dim).filter(|&i| mask(i)) {
            v.xor_assign(sols.row(i));
        }
        let p = BitMatrix::unflatten(&v, k, k);
        p.is_invertible().then_some(p)
    };
    if dim <= 12 {
        for m in 1u32..(1 << dim) {
            if let Some(p) = try_mask(&|i| m >> i & 1 == 1) {
                return Some(p);
            }
        }
        None
    } else {
        (0..400).find_map(|_| {
            let bits: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.5)).collect();
            try_mask(&|i| bits[i])
        })
    }
}

/// Logical basis realizing the label change `β' = P β`.
pub fn realign_css(css: &CssCode, p: &BitMatrix) -> Result<CssCode> {
    let pit = p.inverse().ok_or(Error::Singular)?.transpose();
    css.with_logical_basis(pit.mul(css.logical_basis()))
}

/// Outcome of comparing the logical image group with two printed
/// generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FidelityReport {
    /// Printed matrices act on labels as columns (`true`) or rows.
    pub column_convention: Option<bool>,
    pub computed_order: GroupOrder,
    pub printed_order: GroupOrder,
    /// Each printed generator lies in the realigned image group.
    pub members: Vec<bool>,
}

impl FidelityReport {
    pub fn holds(&self) -> bool {
        self.column_convention.is_some()
            && self.computed_order.value == self.printed_order.value
            && self.members.iter().all(|&m| m)
    }
}

/// Finds a logical basis in which the printed matrices are literally
/// logical images of automorphisms, then checks order equality and
/// membership in that basis. Both label conventions are tried.
pub fn printed_generator_fidelity(css: &CssCode, aut: &PermGroup, printed: &[BitMatrix]) -> Result<FidelityReport> {
    let gens = t1_generators(css, aut)?;
    let image = MatrixGroup::new(css.k(), gens)?;
    let computed_order = image.order()?;
    let printed_order = MatrixGroup::new(css.k(), printed.to_vec())?.order()?;
    for column in [true, false] {
        let targets: Vec<BitMatrix> = if column {
            printed.to_vec()
        } else {
            printed.iter().map(BitMatrix::transpose).collect()
        };
        let Some(al) = align_generators(&image, &targets)? else {
            continue;
        };
        let realigned = realign_css(css, &al.p)?;
        let chain = MatrixGroup::new(css.k(), t1_generators(&realigned, aut)?)?.chain(&OrderOptions::default())?;
        return Ok(FidelityReport {
            column_convention: Some(column),
            members: targets.iter().map(|t| chain.contains(t)).collect(),
            computed_order: chain.order().clone(),
            printed_order,
        });
    }
    Ok(FidelityReport {
        column_convention: None,
        computed_order,
        printed_order,
        members: vec![false; printed.len()],
    })
}

/// Largest outer-code dimension for which the report enumerates the
/// minimum distance.
pub const REPORT_DISTANCE_MAX_DIM: usize = 26;

/// Structure of the logical action of a CSS code.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureReport {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    #[serde(with = "crate::matgroup::biguint_string")]
    pub aut_order: BigUint,
    pub image_order: GroupOrder,
    pub algebra_dimension: usize,
    pub algebra_full: bool,
    /// Dimensions of the quotients of the longest invariant chain found.
    pub chain_dims: Vec<usize>,
    /// Dimensions of an invariant direct-sum decomposition, if found.
    pub direct_sum_dims: Option<Vec<usize>>,
    /// Blocks used for the single-block groups, in basis order.
    pub block_dims: Vec<usize>,
    /// Orders of the single-block group on each block.
    pub block_orders: Vec<GroupOrder>,
    pub g12_order: GroupOrder,
}

pub fn structure_report(css: &CssCode, aut: &PermGroup) -> Result<StructureReport> {
    let k = css.k();
    let gens = t1_generators(css, aut)?;
    let image = MatrixGroup::new(k, gens.clone())?;
    let chain = invariant_subspaces(&image);
    let parts = chain.decomposition.clone();
    let single = single_block_group(&gens, k, parts.as_deref())?;
    let d = if css.c1().k() <= REPORT_DISTANCE_MAX_DIM {
        css.parameters()?.d
    } else {
        None
    };
    Ok(StructureReport {
        n: css.n(),
        k,
        d,
        aut_order: aut.order(),
        image_order: image.order()?,
        algebra_dimension: single.algebra_dimension,
        algebra_full: single.algebra_dimension == k * k,
        chain_dims: chain.block_dims(),
        direct_sum_dims: parts.as_ref().map(|p| p.iter().map(BitMatrix::nrows).collect()),
        block_dims: single.block_dims,
        block_orders: single.block_orders,
        g12_order: g12_order(&gens, k, parts.as_deref())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_matrix(images: &[usize]) -> BitMatrix {
        let k = images.len();
        BitMatrix::from_fn(k, k, |i, j| images[j] == i)
    }

    #[test]
    fn spinning_permutation_module() {
        let g = MatrixGroup::new(
            3,
            vec![perm_matrix(&[1, 2, 0]), perm_matrix(&[1, 0, 2])],
        )
        .unwrap();
        let c = invariant_subspaces(&g);
        assert_eq!(c.block_dims(), vec![1, 2]);
        for w in &c.lattice {
            assert!(is_invariant(g.generators(), w));
        }
        // all-one line and the even-weight plane are complementary in odd length
        assert_eq!(c.decomposition.as_ref().map(Vec::len), Some(2));
    }

    #[test]
    fn trivial_chain_gives_whole_group() {
        let g = MatrixGroup::new(3, vec![perm_matrix(&[1, 2, 0])]).unwrap();
        let blocks = restricted_block_group(&g, &InvariantChain::trivial(3)).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].generators(), g.generators());
    }

    #[test]
    fn g12_trivial_aut() {
        let g = g12_from_generators(&[], 1).unwrap();
        assert_eq!(g.order().unwrap().value, BigUint::from(6u32));
        assert_eq!(g.elements(10).unwrap().len(), 6);
    }

    #[test]
    fn companion_algebra() {
        let f = Gf2Poly::from_exponents(&[0, 2, 5]);
        let c = companion(&f);
        assert_eq!(algebra_span(&[c.clone()]).unwrap().dimension(), 5);
        // c satisfies f
        let mut acc = BitMatrix::zeros(5, 5);
        let mut pw = BitMatrix::identity(5);
        for i in 0..=5 {
            if f.coeff(i) {
                acc = acc.add(&pw);
            }
            pw = pw.mul(&c);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn rm_checks() {
        assert!(rm_block_check(1, 1, 3).unwrap());
        assert!(rm_block_check(0, 3, 3).unwrap());
        assert!(rm_block_check(1, 2, 5).unwrap());
        assert!(rm_block_check(2, 3, 4).is_err());
    }

    #[test]
    fn alignment_recovers_conjugation() {
        let g = MatrixGroup::new(
            4,
            vec![perm_matrix(&[1, 2, 3, 0]), perm_matrix(&[1, 0, 2, 3])],
        )
        .unwrap();
        let p = BitMatrix::from_strs(&["1100", "0110", "0011", "0001"]);
        let pi = p.inverse().unwrap();
        let targets: Vec<BitMatrix> =
            g.generators().iter().map(|h| p.mul(h).mul(&pi)).collect();
        let a = align_generators(&g, &targets).unwrap().expect("conjugate exists");
        let ai = a.p.inverse().unwrap();
        for (h, t) in a.preimages.iter().zip(&targets) {
            assert_eq!(&a.p.mul(h).mul(&ai), t);
        }
    }
}
