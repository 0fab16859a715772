//! Additive stabilizer codes over `GF(4)`, their permutation automorphisms
//! and the symplectic action of those automorphisms on logical operators.
//!
//! A symbol is stored as its `(x, z)` bit pair: `0 ↔ (0,0)`, `1 ↔ (1,0)`
//! (Pauli X), `ω ↔ (0,1)` (Pauli Z), `ω² ↔ (1,1)` (Pauli Y). The `2n`-bit
//! image of a vector is its x-part followed by its z-part.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aut::{brute_force_filter, search_group, Channel, SearchOptions};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf4Vector {
    x: BitVector,
    z: BitVector,
}

impl Gf4Vector {
    pub fn zeros(n: usize) -> Self {
        Gf4Vector {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn from_parts(x: BitVector, z: BitVector) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::dim(format!("x-part {} and z-part {}", x.len(), z.len())));
        }
        Ok(Gf4Vector { x, z })
    }

    /// Parses symbols `0`, `1`, `w` (ω) and `W` (ω²); spaces are ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let symbols: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = Self::zeros(symbols.len());
        for (i, c) in symbols.into_iter().enumerate() {
            let (x, z) = match c {
                '0' => (false, false),
                '1' => (true, false),
                'w' => (false, true),
                'W' => (true, true),
                other => {
                    return Err(Error::param(format!("unknown GF(4) symbol {other:?}")));
                }
            };
            v.x.set(i, x);
            v.z.set(i, z);
        }
        Ok(v)
    }

    /// From a `2n`-bit image.
    pub fn from_binary(v: &BitVector) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::dim(format!("binary image of odd length {}", v.len())));
        }
        let n = v.len() / 2;
        Ok(Gf4Vector {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x_part(&self) -> &BitVector {
        &self.x
    }

    pub fn z_part(&self) -> &BitVector {
        &self.z
    }

    pub fn to_binary(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn add(&self, other: &Gf4Vector) -> Gf4Vector {
        Gf4Vector {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn permute(&self, p: &Permutation) -> Result<Gf4Vector> {
        Ok(Gf4Vector {
            x: p.apply(&self.x)?,
            z: p.apply(&self.z)?,
        })
    }
}

impl fmt::Display for Gf4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => '0',
                (true, false) => '1',
                (false, true) => 'w',
                (true, true) => 'W',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf4Vector({self})")
    }
}

/// `Σ (u_x v_z + u_z v_x)`; `false` iff the Pauli operators commute.
pub fn symplectic_inner(u: &Gf4Vector, v: &Gf4Vector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::dim(format!("lengths {} and {}", u.len(), v.len())));
    }
    Ok(u.x.dot(&v.z) ^ u.z.dot(&v.x))
}

fn inner_unchecked(u: &Gf4Vector, v: &Gf4Vector) -> bool {
    u.x.dot(&v.z) ^ u.z.dot(&v.x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    stabilizers: Vec<Gf4Vector>,
    logical_x: Vec<Gf4Vector>,
    logical_z: Vec<Gf4Vector>,
}

impl StabilizerCode {
    /// Validates commutation relations and independence; the error lists
    /// every violation.
    pub fn new(stabilizers: Vec<Gf4Vector>, logical_x: Vec<Gf4Vector>, logical_z: Vec<Gf4Vector>) -> Result<Self> {
        let n = stabilizers
            .iter()
            .chain(&logical_x)
            .chain(&logical_z)
            .map(Gf4Vector::len)
            .next()
            .ok_or_else(|| Error::param("empty stabilizer code"))?;
        let named: Vec<(String, &Gf4Vector)> = stabilizers
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("stabilizer {}", i + 1), v))
            .chain(logical_x.iter().enumerate().map(|(i, v)| (format!("logical X{}", i + 1), v)))
            .chain(logical_z.iter().enumerate().map(|(i, v)| (format!("logical Z{}", i + 1), v)))
            .collect();
        if let Some((name, v)) = named.iter().find(|(_, v)| v.len() != n) {
            return Err(Error::dim(format!("{name} has length {}, expected {n}", v.len())));
        }
        let k = logical_x.len();
        if logical_z.len() != k {
            return Err(Error::param(format!(
                "{k} logical X operators but {} logical Z operators",
                logical_z.len()
            )));
        }
        if stabilizers.len() + k != n {
            return Err(Error::param(format!(
                "{} stabilizers and {k} logical pairs do not fit n = {n}",
                stabilizers.len()
            )));
        }
        let s = stabilizers.len();
        let mut problems = Vec::new();
        for a in 0..named.len() {
            for b in a + 1..named.len() {
                let anticommute = inner_unchecked(named[a].1, named[b].1);
                // only X_i with Z_i should anticommute
                let paired = a >= s && a < s + k && b == a + k;
                if anticommute != paired {
                    let verb = if anticommute { "anticommute" } else { "commute" };
                    problems.push(format!("{} and {} {verb}", named[a].0, named[b].0));
                }
            }
        }
        let mut r = RowReducer::new(2 * n);
        for (name, v) in &named {
            if !r.push(v.to_binary()) {
                problems.push(format!("{name} depends on the rows above it"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidStabilizer(problems));
        }
        Ok(StabilizerCode {
            n,
            stabilizers,
            logical_x,
            logical_z,
        })
    }

    /// Completes a set of commuting, independent stabilizers with logical
    /// operators by symplectic Gram–Schmidt on the normalizer.
    pub fn from_stabilizers(stabilizers: Vec<Gf4Vector>, n: usize) -> Result<Self> {
        let (lx, lz) = complete_logicals(&stabilizers, n)?;
        Self::new(stabilizers, lx, lz)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn stabilizers(&self) -> &[Gf4Vector] {
        &self.stabilizers
    }

    pub fn logical_x(&self) -> &[Gf4Vector] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[Gf4Vector] {
        &self.logical_z
    }

    /// Stabilizer rows as `2n`-bit images.
    pub fn stabilizer_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.stabilizers.iter().map(Gf4Vector::to_binary).collect(), 2 * self.n)
            .expect("uniform length")
    }

    /// Text form accepted by [`load_stabilizer`].
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, section) in [&self.stabilizers, &self.logical_x, &self.logical_z].iter().enumerate() {
            if i > 0 {
                out.push_str("---\n");
            }
            for v in section.iter() {
                out.push_str(&format!("{v}\n"));
            }
        }
        out
    }
}

fn complete_logicals(stabilizers: &[Gf4Vector], n: usize) -> Result<(Vec<Gf4Vector>, Vec<Gf4Vector>)> {
    // normalizer: v with <v, s> = 0 for all s, i.e. (s_z | s_x) · v = 0
    let swapped = BitMatrix::from_rows(
        stabilizers.iter().map(|s| s.z.concat(&s.x)).collect(),
        2 * n,
    )?;
    let normalizer = swapped.kernel_basis();
    let mut span = RowReducer::new(2 * n);
    for s in stabilizers {
        span.push(s.to_binary());
    }
    let mut pool: Vec<Gf4Vector> = normalizer
        .rows()
        .iter()
        .map(Gf4Vector::from_binary)
        .collect::<Result<_>>()?;
    let (mut xs, mut zs) = (Vec::new(), Vec::new());
    loop {
        pool.retain(|v| !span.contains(&v.to_binary()));
        let Some(x) = pool.pop() else { break };
        let zi = pool
            .iter()
            .position(|v| inner_unchecked(&x, v))
            .ok_or_else(|| Error::param("stabilizers are not independent or do not commute"))?;
        let z = pool.swap_remove(zi);
        for v in pool.iter_mut() {
            let mut w = v.clone();
            if inner_unchecked(v, &z) {
                w = w.add(&x);
            }
            if inner_unchecked(v, &x) {
                w = w.add(&z);
            }
            *v = w;
        }
        span.push(x.to_binary());
        span.push(z.to_binary());
        xs.push(x);
        zs.push(z);
    }
    Ok((xs, zs))
}

/// Parses rows of `0 1 w W` symbols. Sections for stabilizers, logical X
/// and logical Z are separated by lines `---`; with a single section the
/// logical operators are completed automatically. `#` starts a comment.
pub fn load_stabilizer(text: &str) -> Result<StabilizerCode> {
    let mut sections: Vec<Vec<Gf4Vector>> = vec![Vec::new()];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "---" {
            sections.push(Vec::new());
            continue;
        }
        let v = Gf4Vector::parse(line).map_err(|e| Error::parse(no + 1, e.to_string()))?;
        sections.last_mut().expect("nonempty").push(v);
    }
    match sections.len() {
        1 => {
            let stabs = sections.pop().expect("one section");
            let n = stabs.first().map(Gf4Vector::len).ok_or_else(|| Error::parse(1, "no rows"))?;
            StabilizerCode::from_stabilizers(stabs, n)
        }
        3 => {
            let lz = sections.pop().expect("three");
            let lx = sections.pop().expect("three");
            let stabs = sections.pop().expect("three");
            StabilizerCode::new(stabs, lx, lz)
        }
        s => Err(Error::parse(1, format!("expected 1 or 3 sections separated by ---, found {s}"))),
    }
}

/// `true` iff `p` maps the additive span of the stabilizers onto itself.
pub fn stab_is_automorphism(code: &StabilizerCode, p: &Permutation) -> Result<bool> {
    if p.degree() != code.n() {
        return Err(Error::dim(format!(
            "permutation of degree {} on a code of length {}",
            p.degree(),
            code.n()
        )));
    }
    let r = RowReducer::from_rows(&code.stabilizer_matrix());
    for s in code.stabilizers() {
        if !r.contains(&s.permute(p)?.to_binary()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest length accepted by [`stab_aut_group`].
pub const MAX_STABILIZER_DEGREE: usize = 16;

pub fn stab_aut_group(code: &StabilizerCode) -> Result<PermGroup> {
    stab_aut_group_with(code, &SearchOptions::default())
}

/// Permutation automorphisms of the stabilizer span, searched as a binary
/// code of length `2n` whose coordinates `i` and `n + i` move together.
pub fn stab_aut_group_with(code: &StabilizerCode, opts: &SearchOptions) -> Result<PermGroup> {
    let n = code.n();
    if n > MAX_STABILIZER_DEGREE {
        return Err(Error::Capacity(format!(
            "stabilizer automorphism search is limited to n <= {MAX_STABILIZER_DEGREE}"
        )));
    }
    let group = if code.stabilizers().is_empty() {
        PermGroup::symmetric(n)
    } else {
        search_group(n, vec![Channel::new(&code.stabilizer_matrix(), n, 2)?], opts)?
    };
    for g in group.generators() {
        if !stab_is_automorphism(code, g)? {
            return Err(Error::NotAutomorphism(format!("search returned {g}")));
        }
    }
    Ok(group)
}

/// Exhaustive oracle for `n <= 8`.
pub fn brute_force_stab_aut(code: &StabilizerCode) -> Result<PermGroup> {
    brute_force_filter(code.n(), |p| stab_is_automorphism(code, p).expect("degree matches"))
}

/// Symplectic form `J = (0 I; I 0)` on `2k` coordinates.
pub fn symplectic_form(k: usize) -> BitMatrix {
    BitMatrix::from_fn(2 * k, 2 * k, |i, j| i + k == j || j + k == i)
}

/// Matrix of an automorphism on the logical operators, rows `X1..Xk`
/// then `Z1..Zk`: row `i` holds the coefficients of the permuted `i`-th
/// logical operator modulo the stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    m: BitMatrix,
}

impl SymplecticMatrix {
    pub fn new(m: BitMatrix) -> Result<Self> {
        if !m.is_square() || m.nrows() % 2 != 0 {
            return Err(Error::dim(format!("{}x{} is not 2k x 2k", m.nrows(), m.ncols())));
        }
        let j = symplectic_form(m.nrows() / 2);
        if m.mul(&j).mul(&m.transpose()) != j {
            return Err(Error::param("matrix does not preserve the symplectic form"));
        }
        Ok(SymplecticMatrix { m })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }

    /// `true` when the logical X span is mapped to itself.
    pub fn preserves_x_span(&self) -> bool {
        let k = self.m.nrows() / 2;
        self.m.submatrix(0, k, k, 2 * k).is_zero()
    }
}

/// Logical action of an automorphism on the symplectic basis
/// `X_1..X_k, Z_1..Z_k`. Row `i` holds the coordinates of the permuted
/// `i`-th logical operator modulo the stabilizer.
pub fn stab_symplectic_rep(code: &StabilizerCode, p: &Permutation) -> Result<SymplecticMatrix> {
    if !stab_is_automorphism(code, p)? {
        return Err(Error::NotAutomorphism(format!("permutation {p} does not preserve the stabilizer")));
    }
    let (n, k) = (code.n(), code.k());
    let s = code.stabilizers().len();
    let rows: Vec<BitVector> = code
        .stabilizers()
        .iter()
        .chain(code.logical_x())
        .chain(code.logical_z())
        .map(Gf4Vector::to_binary)
        .collect();
    let r = RowReducer::from_rows(&BitMatrix::from_rows(rows, 2 * n)?);
    let mut m = BitMatrix::zeros(0, 2 * k);
    for l in code.logical_x().iter().chain(code.logical_z()) {
        let c = r.coordinates(&l.permute(p)?.to_binary()).ok_or_else(|| {
            Error::Infeasible("permuted logical operator left the normalizer".into())
        })?;
        m.push_row(c.slice(s, s + 2 * k));
    }
    SymplecticMatrix::new(m)
}

/// Multiplication in `GF(8) = GF(2)[a]/(a^3 + a + 1)`.
fn gf8_mul(a: u8, b: u8) -> u8 {
    let mut p = 0u8;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            p ^= a << i;
        }
    }
    for bit in (3..5).rev() {
        if p >> bit & 1 == 1 {
            p ^= 0b1011 << (bit - 3);
        }
    }
    p
}

/// Searches for a labeling of the 8 coordinates by `GF(8)` under which
/// every affine map `x ↦ a x + b` is an automorphism. Returns the field
/// label of each coordinate. Labels of coordinates 0 and 1 are fixed to
/// 0 and 1, which loses no generality because the affine group is
/// 2-transitive.
pub fn agl18_labeling(code: &StabilizerCode) -> Result<Option<Vec<u8>>> {
    if code.n() != 8 {
        return Err(Error::param("affine labeling needs length 8"));
    }
    let mut rest: Vec<u8> = (2..8).collect();
    let mut found = None;
    permutations_of(&mut rest, 0, &mut |tail| {
        if found.is_some() {
            return;
        }
        let mut label = vec![0u8, 1];
        label.extend_from_slice(tail);
        let mut coord = [0usize; 8];
        for (c, &l) in label.iter().enumerate() {
            coord[l as usize] = c;
        }
        let all = (1..8u8).all(|a| {
            (0..8u8).all(|b| {
                let images: Vec<usize> = (0..8).map(|c| coord[(gf8_mul(a, label[c]) ^ b) as usize]).collect();
                let p = Permutation::from_images(images).expect("affine maps are bijective");
                stab_is_automorphism(code, &p).expect("degree 8")
            })
        });
        if all {
            found = Some(label);
        }
    });
    Ok(found)
}

fn permutations_of(v: &mut [u8], start: usize, f: &mut impl FnMut(&[u8])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations_of(v, start + 1, f);
        v.swap(start, i);
    }
}
