//! Permutation automorphism groups of binary codes and additive codes.
//!
//! The search runs on "points" (coordinates). Each point carries one or more
//! columns of a generator matrix per channel. A bijection of points is an
//! automorphism exactly when, in every channel, some invertible linear map
//! sends each point's columns to the columns of its image. The backtrack
//! tracks that map incrementally and prunes with pair invariants computed
//! from low-weight words.

use crate::codes::{gray_enumerate, LinearCode, MAX_ENUMERATION_DIM};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::perm::{PermGroup, Permutation};

/// Default number of search nodes before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Largest degree accepted by the exhaustive oracles.
pub const BRUTE_FORCE_MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// `true` iff permuting each generator row of `c` by `p` stays in `c`.
pub fn is_automorphism(c: &LinearCode, p: &Permutation) -> Result<bool> {
    if p.degree() != c.n() {
        return Err(Error::dim(format!(
            "permutation of degree {} on a code of length {}",
            p.degree(),
            c.n()
        )));
    }
    let r = RowReducer::from_rows(c.generator());
    Ok(c
        .generator()
        .rows()
        .iter()
        .all(|row| r.contains(&p.apply_unchecked(row))))
}

pub fn automorphism_group(c: &LinearCode) -> Result<PermGroup> {
    automorphism_group_with(c, &SearchOptions::default())
}

pub fn automorphism_group_with(c: &LinearCode, opts: &SearchOptions) -> Result<PermGroup> {
    intersect_aut_with(std::slice::from_ref(c), opts)
}

/// Permutations preserving both codes.
pub fn intersect_aut(c1: &LinearCode, c2: &LinearCode) -> Result<PermGroup> {
    intersect_aut_with(&[c1.clone(), c2.clone()], &SearchOptions::default())
}

/// Joint automorphism group of any number of codes of equal length.
pub fn intersect_aut_with(codes: &[LinearCode], opts: &SearchOptions) -> Result<PermGroup> {
    let n = codes
        .first()
        .ok_or_else(|| Error::param("no codes given"))?
        .n();
    if let Some(c) = codes.iter().find(|c| c.n() != n) {
        return Err(Error::dim(format!("lengths {n} and {}", c.n())));
    }
    let channels = codes
        .iter()
        .map(|c| {
            // Aut(C) = Aut(C^⊥); the smaller generator is cheaper everywhere.
            let d = c.dual();
            let g = if d.k() < c.k() { d.generator().clone() } else { c.generator().clone() };
            Channel::new(&g, n, 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let group = search_group(n, channels, opts)?;
    for g in group.generators() {
        for c in codes {
            if !is_automorphism(c, g)? {
                return Err(Error::NotAutomorphism(format!(
                    "search returned {g}, which does not preserve {c:?}"
                )));
            }
        }
    }
    Ok(group)
}

/// Exhaustive filter over all `n!` permutations, for `n <= 8`.
pub fn brute_force_aut(c: &LinearCode) -> Result<PermGroup> {
    brute_force_filter(c.n(), |p| is_automorphism(c, p).expect("degree matches"))
}

/// Group of all permutations of degree `n <= 8` accepted by `pred`.
pub fn brute_force_filter(n: usize, mut pred: impl FnMut(&Permutation) -> bool) -> Result<PermGroup> {
    if n > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::Capacity(format!(
            "exhaustive search over S_{n} exceeds the n <= {BRUTE_FORCE_MAX_DEGREE} limit"
        )));
    }
    let mut found = PermGroup::trivial(n);
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut consider = |a: &[usize], found: &mut PermGroup| {
        let p = Permutation::from_images(a.to_vec()).expect("bijection");
        if !found.contains(&p) && pred(&p) {
            let mut gens = found.generators().to_vec();
            gens.push(p);
            *found = PermGroup::new(n, gens).expect("same degree");
        }
    };
    consider(&a, &mut found);
    // Heap's algorithm
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            consider(&a, &mut found);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(found)
}

/// One linear constraint family: every point has `per_point` columns over
/// `m` generator rows, and a single linear map must act on all of them.
pub(crate) struct Channel {
    m: usize,
    cols: Vec<Vec<u64>>,
    /// Generator rows as `per_point * n`-bit words, for invariant enumeration.
    generator: BitMatrix,
    per_point: usize,
}

impl Channel {
    /// `g` has `per_point * n` columns; point `i` owns columns `i, n + i, ...`.
    pub(crate) fn new(g: &BitMatrix, n: usize, per_point: usize) -> Result<Self> {
        let g = g.row_basis();
        let m = g.nrows();
        if m > 64 {
            return Err(Error::Capacity(format!(
                "automorphism search supports generator rank <= 64, got {m}"
            )));
        }
        let cols = (0..n)
            .map(|i| {
                (0..per_point)
                    .map(|t| {
                        (0..m).fold(0u64, |acc, r| acc | ((g.get(r, t * n + i) as u64) << r))
                    })
                    .collect()
            })
            .collect();
        Ok(Channel {
            m,
            cols,
            generator: g,
            per_point,
        })
    }
}

/// Partial linear map recorded as pairs `(u, w)` meaning `u ↦ w`, kept in
/// two echelon forms (keyed on `u` and on `w`) so both well-definedness and
/// injectivity can be checked per insertion.
#[derive(Clone)]
struct PairBasis {
    fwd: [u128; 64],
    bwd: [u128; 64],
}

enum Reduced {
    Consistent,
    Independent(usize),
    Conflict,
}

fn reduce(basis: &[u128; 64], mut p: u128) -> Reduced {
    loop {
        let u = p as u64;
        if u == 0 {
            return if p >> 64 == 0 { Reduced::Consistent } else { Reduced::Conflict };
        }
        let b = 63 - u.leading_zeros() as usize;
        if basis[b] == 0 {
            return Reduced::Independent(b);
        }
        p ^= basis[b];
    }
}

fn swap_halves(p: u128) -> u128 {
    p.rotate_left(64)
}

impl PairBasis {
    fn new() -> Self {
        PairBasis {
            fwd: [0; 64],
            bwd: [0; 64],
        }
    }

    /// Adds `u ↦ w`. On success returns the slots written (for undo).
    fn insert(&mut self, u: u64, w: u64) -> Option<(Option<usize>, Option<usize>)> {
        let p = (u as u128) | ((w as u128) << 64);
        let f = match reduce(&self.fwd, p) {
            Reduced::Conflict => return None,
            r => r,
        };
        let b = match reduce(&self.bwd, swap_halves(p)) {
            Reduced::Conflict => return None,
            r => r,
        };
        let mut slots = (None, None);
        if let Reduced::Independent(s) = f {
            self.fwd[s] = reduced_value(&self.fwd, p);
            slots.0 = Some(s);
        }
        if let Reduced::Independent(s) = b {
            self.bwd[s] = reduced_value(&self.bwd, swap_halves(p));
            slots.1 = Some(s);
        }
        Some(slots)
    }

    fn undo(&mut self, slots: (Option<usize>, Option<usize>)) {
        if let Some(s) = slots.0 {
            self.fwd[s] = 0;
        }
        if let Some(s) = slots.1 {
            self.bwd[s] = 0;
        }
    }
}

fn reduced_value(basis: &[u128; 64], mut p: u128) -> u128 {
    loop {
        let u = p as u64;
        if u == 0 {
            return p;
        }
        let b = 63 - u.leading_zeros() as usize;
        if basis[b] == 0 {
            return p;
        }
        p ^= basis[b];
    }
}

struct Search {
    n: usize,
    channels: Vec<Channel>,
    bases: Vec<PairBasis>,
    inv: Vec<u64>,
    /// Hashed triple counts, indexed `(i * n + j) * n + l`; empty if unused.
    tri: Vec<u64>,
    color: Vec<u64>,
    order: Vec<usize>,
    img: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNMAPPED: usize = usize::MAX;

type Undo = Vec<(usize, (Option<usize>, Option<usize>))>;

/// Words enumerated for invariants are capped to keep setup cost bounded.
const INVARIANT_WORK_CAP: u64 = 60_000_000;

/// Triple invariants are kept for degrees up to this bound.
const TRIPLE_MAX_DEGREE: usize = 64;

/// Triple invariants are checked against pairs among this many of the
/// earliest mapped points.
const TRIPLE_CHECK_POINTS: usize = 8;

fn mix(x: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Search {
    fn new(n: usize, channels: Vec<Channel>, budget: u64) -> Result<Self> {
        let mut inv = vec![0u64; n * n];
        let mut tri = if n <= TRIPLE_MAX_DEGREE { vec![0u64; n * n * n] } else { Vec::new() };
        for (ci, ch) in channels.iter().enumerate() {
            add_invariants(&mut inv, &mut tri, n, ci as u64, ch)?;
        }
        let color = refine_colors(&inv, n);
        let order = search_order(n, &channels);
        Ok(Search {
            n,
            bases: channels.iter().map(|_| PairBasis::new()).collect(),
            channels,
            inv,
            tri,
            color,
            order,
            img: vec![UNMAPPED; n],
            used: vec![false; n],
            mapped: Vec::with_capacity(n),
            nodes: 0,
            budget,
        })
    }

    /// Tries `x ↦ y`; on success the mapping is recorded and an undo token
    /// returned.
    fn try_map(&mut self, x: usize, y: usize) -> Option<Undo> {
        if self.used[y] || self.color[x] != self.color[y] {
            return None;
        }
        let n = self.n;
        for &b in &self.mapped {
            if self.inv[b * n + x] != self.inv[self.img[b] * n + y] {
                return None;
            }
        }
        if !self.tri.is_empty() {
            let head = &self.mapped[..self.mapped.len().min(TRIPLE_CHECK_POINTS)];
            for (a, &b1) in head.iter().enumerate() {
                let c1 = self.img[b1];
                for &b2 in &head[a + 1..] {
                    let c2 = self.img[b2];
                    if self.tri[(b1 * n + b2) * n + x] != self.tri[(c1 * n + c2) * n + y] {
                        return None;
                    }
                }
            }
        }
        let mut undo = Vec::new();
        for (ci, ch) in self.channels.iter().enumerate() {
            for t in 0..ch.per_point {
                match self.bases[ci].insert(ch.cols[x][t], ch.cols[y][t]) {
                    Some(slots) => undo.push((ci, slots)),
                    None => {
                        for (cj, s) in undo.into_iter().rev() {
                            self.bases[cj].undo(s);
                        }
                        return None;
                    }
                }
            }
        }
        self.img[x] = y;
        self.used[y] = true;
        self.mapped.push(x);
        Some(undo)
    }

    fn unmap(&mut self, x: usize, undo: Undo) {
        debug_assert_eq!(self.mapped.last(), Some(&x));
        self.mapped.pop();
        self.used[self.img[x]] = false;
        self.img[x] = UNMAPPED;
        for (ci, s) in undo.into_iter().rev() {
            self.bases[ci].undo(s);
        }
    }

    fn candidates(&mut self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for y in 0..self.n {
            if let Some(undo) = self.try_map(x, y) {
                self.unmap(x, undo);
                out.push(y);
            }
        }
        out
    }

    /// Depth-first completion of the current partial map. The next point
    /// is the unmapped one with the fewest consistent images; a point with
    /// none prunes the node.
    fn complete(&mut self) -> Result<bool> {
        if self.mapped.len() == self.n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Capacity("node budget".into()));
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..self.n {
            if self.img[x] != UNMAPPED {
                continue;
            }
            let c = self.candidates(x);
            if c.is_empty() {
                return Ok(false);
            }
            if best.as_ref().map_or(true, |(_, b)| c.len() < b.len()) {
                let single = c.len() == 1;
                best = Some((x, c));
                if single {
                    break;
                }
            }
        }
        let (x, cands) = best.expect("some point is unmapped");
        for y in cands {
            if let Some(undo) = self.try_map(x, y) {
                if self.complete()? {
                    return Ok(true);
                }
                self.unmap(x, undo);
            }
        }
        Ok(false)
    }

    fn reset(&mut self) {
        self.img.iter_mut().for_each(|v| *v = UNMAPPED);
        self.used.iter_mut().for_each(|v| *v = false);
        self.mapped.clear();
        self.bases.iter_mut().for_each(|b| *b = PairBasis::new());
    }

    /// Looks for an element fixing `order[..level]` pointwise and sending
    /// `order[level]` to `gamma`.
    fn find_element(&mut self, level: usize, gamma: usize) -> Result<Option<Permutation>> {
        self.reset();
        for l in 0..level {
            let b = self.order[l];
            if self.try_map(b, b).is_none() {
                unreachable!("the identity is always consistent");
            }
        }
        if self.try_map(self.order[level], gamma).is_none() {
            return Ok(None);
        }
        if self.complete()? {
            let p = Permutation::from_images(self.img.clone()).expect("complete bijection");
            Ok(Some(p))
        } else {
            Ok(None)
        }
    }
}

/// Adds hashed counts of the two lowest nonzero support weights of the
/// channel's code to the pair and triple invariants. Low-weight words of
/// codes with rich symmetry often form 2-designs, which makes pair counts
/// uniform; triples still separate points there.
fn add_invariants(inv: &mut [u64], tri: &mut [u64], n: usize, salt: u64, ch: &Channel) -> Result<()> {
    if ch.m == 0 || ch.m > MAX_ENUMERATION_DIM {
        return Ok(());
    }
    let support = |w: &BitVector| -> Vec<(usize, u64)> {
        (0..n)
            .filter_map(|i| {
                let s = (0..ch.per_point).fold(0u64, |acc, t| acc | ((w.get(t * n + i) as u64) << t));
                (s != 0).then_some((i, s))
            })
            .collect()
    };
    let mut dist = vec![0u64; n + 1];
    gray_enumerate(&ch.generator, |_, w| dist[support(w).len()] += 1)?;
    let weights: Vec<usize> = (1..=n).filter(|&w| dist[w] > 0).take(2).collect();
    let mut work = 0u64;
    let classes: Vec<usize> = weights
        .into_iter()
        .filter(|&w| {
            work += dist[w] * (w * w * w) as u64;
            work <= INVARIANT_WORK_CAP
        })
        .collect();
    if classes.is_empty() {
        return Ok(());
    }
    gray_enumerate(&ch.generator, |_, w| {
        let supp = support(w);
        if let Some(ci) = classes.iter().position(|&c| c == supp.len()) {
            for &(i, si) in &supp {
                for &(j, sj) in &supp {
                    let key = mix(salt << 40 | (ci as u64) << 32 | si << 16 | sj);
                    inv[i * n + j] = inv[i * n + j].wrapping_add(key);
                    if !tri.is_empty() {
                        for &(l, sl) in &supp {
                            let t = &mut tri[(i * n + j) * n + l];
                            *t = t.wrapping_add(mix(key ^ sl << 8));
                        }
                    }
                }
            }
        }
    })?;
    Ok(())
}

/// Iterated color refinement of points by invariant rows.
fn refine_colors(inv: &[u64], n: usize) -> Vec<u64> {
    let mut color: Vec<u64> = (0..n).map(|i| inv[i * n + i]).collect();
    let mut classes = count_classes(&color);
    loop {
        let next: Vec<u64> = (0..n)
            .map(|i| {
                let mut row: Vec<(u64, u64)> =
                    (0..n).filter(|&j| j != i).map(|j| (color[j], inv[i * n + j])).collect();
                row.sort_unstable();
                row.iter().fold(mix(color[i]), |h, &(a, b)| mix(h ^ mix(a) ^ b.rotate_left(17)))
            })
            .collect();
        let c = count_classes(&next);
        color = next;
        if c == classes {
            return color;
        }
        classes = c;
    }
}

fn count_classes(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Points whose columns grow the spanned space go first, so later points
/// are forced by linearity.
fn search_order(n: usize, channels: &[Channel]) -> Vec<usize> {
    let mut spans: Vec<RowReducer> = channels.iter().map(|c| RowReducer::new(c.m.max(1))).collect();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    loop {
        let gain = |i: usize, spans: &[RowReducer]| -> usize {
            channels
                .iter()
                .zip(spans)
                .map(|(ch, s)| {
                    let mut s = s.clone();
                    ch.cols[i]
                        .iter()
                        .filter(|&&c| s.push(BitVector::from_u64(ch.m.max(1), c)))
                        .count()
                })
                .sum()
        };
        let best = (0..n).filter(|&i| !placed[i]).max_by_key(|&i| (gain(i, &spans), std::cmp::Reverse(i)));
        match best {
            Some(i) if gain(i, &spans) > 0 => {
                for (ch, s) in channels.iter().zip(spans.iter_mut()) {
                    for &c in &ch.cols[i] {
                        s.push(BitVector::from_u64(ch.m.max(1), c));
                    }
                }
                placed[i] = true;
                order.push(i);
            }
            _ => break,
        }
    }
    order.extend((0..n).filter(|&i| !placed[i]));
    order
}

/// Builds the full group by searching, level by level from the deepest,
/// for elements of each point stabilizer that reach points not yet in the
/// known orbit.
pub(crate) fn search_group(n: usize, channels: Vec<Channel>, opts: &SearchOptions) -> Result<PermGroup> {
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let mut s = Search::new(n, channels, opts.node_budget)?;
    let mut gens: Vec<Permutation> = Vec::new();
    for level in (0..n).rev() {
        let base_point = s.order[level];
        let prefix = &s.order[..level].to_vec();
        let fixes_prefix = |g: &Permutation| prefix.iter().all(|&b| g.image(b) == b);
        let level_gens: Vec<Permutation> = gens.iter().filter(|g| fixes_prefix(g)).cloned().collect();
        let deeper_gens: Vec<Permutation> =
            level_gens.iter().filter(|g| g.image(base_point) == base_point).cloned().collect();
        let mut reached = orbit_of(n, base_point, &level_gens);
        let mut excluded = vec![false; n];
        for &b in prefix {
            excluded[b] = true;
        }
        let mut current_gens = level_gens;
        for gamma in 0..n {
            if reached[gamma] || excluded[gamma] || s.color[gamma] != s.color[base_point] {
                continue;
            }
            let found = match s.find_element(level, gamma) {
                Ok(f) => f,
                Err(Error::Capacity(_)) => {
                    let partial = PermGroup::new(n, gens)?;
                    return Err(Error::SearchBudget {
                        budget: opts.node_budget,
                        partial_order: partial.order().to_string(),
                        partial: Box::new(partial),
                    });
                }
                Err(e) => return Err(e),
            };
            match found {
                Some(g) => {
                    gens.push(g.clone());
                    current_gens.push(g);
                    reached = orbit_of(n, base_point, &current_gens);
                }
                None => {
                    // the whole orbit of gamma under the stabilizer of the
                    // base point is unreachable too
                    for c in orbit_points(n, gamma, &deeper_gens) {
                        excluded[c] = true;
                    }
                }
            }
        }
    }
    PermGroup::new(n, gens)
}

fn orbit_points(n: usize, p: usize, gens: &[Permutation]) -> Vec<usize> {
    let seen = orbit_of(n, p, gens);
    (0..n).filter(|&i| seen[i]).collect()
}

fn orbit_of(n: usize, p: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[p] = true;
    let mut stack = vec![p];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}
