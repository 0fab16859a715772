//! Compiling two-block logical matrices into schedules of qubit
//! permutations and transversal CNOTs.
//!
//! Instructions apply left to right. With column-convention logical
//! matrices the effect of a word `w1 ++ w2` is `effect(w2) · effect(w1)`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf2, Gf3, Gf4, Matrix};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::logical::{
    block_diagonal, induced_action, transversal_cnot, verify_coset_action_with, CnotDirection,
    LogicalMatrix,
};
use crate::matgroup::algebra_span;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstructionKind {
    PermBlock1,
    PermBlock2,
    /// Transversal CNOT, controls in block 1.
    #[serde(rename = "cnot_1to2")]
    Cnot1To2,
    /// Transversal CNOT, controls in block 2.
    #[serde(rename = "cnot_2to1")]
    Cnot2To1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instruction {
    pub kind: InstructionKind,
    pub perm: Option<Permutation>,
}

impl Instruction {
    pub fn cnot_1to2() -> Self {
        Instruction { kind: InstructionKind::Cnot1To2, perm: None }
    }

    pub fn cnot_2to1() -> Self {
        Instruction { kind: InstructionKind::Cnot2To1, perm: None }
    }

    pub fn perm_block1(p: Permutation) -> Self {
        Instruction { kind: InstructionKind::PermBlock1, perm: Some(p) }
    }

    pub fn perm_block2(p: Permutation) -> Self {
        Instruction { kind: InstructionKind::PermBlock2, perm: Some(p) }
    }

    /// Logical effect on the `2k` labels of both blocks.
    pub fn logical_matrix(&self, css: &CssCode) -> Result<BitMatrix> {
        let k = css.k();
        let id = BitMatrix::identity(k);
        match (self.kind, &self.perm) {
            (InstructionKind::Cnot1To2, None) => {
                Ok(transversal_cnot(k, CnotDirection::FirstControls)?.into_matrix())
            }
            (InstructionKind::Cnot2To1, None) => {
                Ok(transversal_cnot(k, CnotDirection::SecondControls)?.into_matrix())
            }
            (InstructionKind::PermBlock1, Some(p)) => {
                Ok(block_diagonal(&induced_action(css, p)?.logical_matrix(), &id))
            }
            (InstructionKind::PermBlock2, Some(p)) => {
                Ok(block_diagonal(&id, &induced_action(css, p)?.logical_matrix()))
            }
            _ => Err(Error::param("permutation present exactly for perm_block instructions")),
        }
    }
}

/// Gate counts of a schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cost {
    pub cnot_instructions: usize,
    /// `cnot_instructions × n`.
    pub two_qubit_gates: usize,
    pub permutations: usize,
}

#[derive(Clone, Debug)]
pub struct InstructionWord {
    pub instructions: Vec<Instruction>,
    pub logical_effect: LogicalMatrix,
    pub target: Option<LogicalMatrix>,
    n: usize,
}

impl InstructionWord {
    pub fn empty(css: &CssCode) -> Self {
        InstructionWord {
            instructions: Vec::new(),
            logical_effect: LogicalMatrix::identity(2 * css.k()),
            target: None,
            n: css.n(),
        }
    }

    /// Builds a word and computes its effect.
    pub fn from_instructions(css: &CssCode, instructions: Vec<Instruction>) -> Result<Self> {
        let effect = effect_of(css, &instructions)?;
        Ok(InstructionWord {
            instructions,
            logical_effect: LogicalMatrix::new(effect)?,
            target: None,
            n: css.n(),
        })
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &InstructionWord) -> InstructionWord {
        let mut instructions = self.instructions.clone();
        instructions.extend(other.instructions.iter().cloned());
        InstructionWord {
            instructions,
            logical_effect: other.logical_effect.mul(&self.logical_effect),
            target: None,
            n: self.n,
        }
    }

    pub fn cost(&self) -> Cost {
        let cnots = self.instructions.iter().filter(|i| i.perm.is_none()).count();
        Cost {
            cnot_instructions: cnots,
            two_qubit_gates: cnots * self.n,
            permutations: self.instructions.len() - cnots,
        }
    }

    pub fn to_document(&self) -> WordDocument {
        WordDocument {
            n: self.n,
            k: self.logical_effect.dim() / 2,
            target: self.target.clone(),
            instructions: self
                .instructions
                .iter()
                .map(|i| InstructionEntry {
                    kind: i.kind,
                    perm: i.perm.as_ref().map(Permutation::one_based),
                })
                .collect(),
            cost: self.cost(),
        }
    }

    /// Rebuilds a word from its document, recomputing the effect.
    pub fn from_document(doc: &WordDocument, css: &CssCode) -> Result<Self> {
        if doc.n != css.n() || doc.k != css.k() {
            return Err(Error::dim(format!(
                "word for n={}, k={} applied to a code with n={}, k={}",
                doc.n,
                doc.k,
                css.n(),
                css.k()
            )));
        }
        let instructions = doc
            .instructions
            .iter()
            .map(|e| {
                let perm = e.perm.as_deref().map(Permutation::from_one_based).transpose()?;
                Ok(Instruction { kind: e.kind, perm })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut w = Self::from_instructions(css, instructions)?;
        w.target = doc.target.clone();
        Ok(w)
    }
}

/// Serialized schedule: ordered instructions with 1-based permutation
/// images, the target and the cost metrics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordDocument {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<LogicalMatrix>,
    pub instructions: Vec<InstructionEntry>,
    pub cost: Cost,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstructionEntry {
    pub kind: InstructionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

fn effect_of(css: &CssCode, instructions: &[Instruction]) -> Result<BitMatrix> {
    let mut acc = BitMatrix::identity(2 * css.k());
    for ins in instructions {
        acc = ins.logical_matrix(css)?.mul(&acc);
    }
    Ok(acc)
}

/// Elementary transvection `I + E_{row,col}` of size `size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transvection {
    pub row: usize,
    pub col: usize,
    pub size: usize,
}

impl Transvection {
    pub fn new(row: usize, col: usize, size: usize) -> Result<Self> {
        if row == col || row >= size || col >= size {
            return Err(Error::param(format!("transvection ({row}, {col}) in size {size}")));
        }
        Ok(Transvection { row, col, size })
    }

    pub fn matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::identity(self.size);
        m.set(self.row, self.col, true);
        m
    }
}

/// Transvections whose product, in order, is `m`.
pub fn transvection_factorization(m: &BitMatrix) -> Result<Vec<Transvection>> {
    let d = m.nrows();
    if !m.is_square() || !m.is_invertible() {
        return Err(Error::Singular);
    }
    let mut a = m.clone();
    let mut ops = Vec::new();
    // row operation r += s is left multiplication by I + E_{r,s}
    let add_row = |a: &mut BitMatrix, r: usize, s: usize, ops: &mut Vec<Transvection>| {
        let src = a.row(s).clone();
        let mut dst = a.row(r).clone();
        dst.xor_assign(&src);
        a.set_row(r, dst);
        ops.push(Transvection { row: r, col: s, size: d });
    };
    for c in 0..d {
        if !a.get(c, c) {
            let r = (c + 1..d).find(|&r| a.get(r, c)).ok_or(Error::Singular)?;
            add_row(&mut a, c, r, &mut ops);
        }
        for r in 0..d {
            if r != c && a.get(r, c) {
                add_row(&mut a, r, c, &mut ops);
            }
        }
    }
    debug_assert!(a.is_identity());
    // E_m ... E_1 m = I and each E is an involution
    Ok(ops)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `(I A; 0 I)`
    Upper,
    /// `(I 0; A I)`
    Lower,
}

/// Largest number of group elements visited while building a spanning set.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Automorphism data of a CSS code prepared for synthesis: group elements
/// whose logical matrices span the algebra, each with a physical
/// permutation realizing it.
#[derive(Clone, Debug)]
pub struct AutData {
    css: CssCode,
    generators: Vec<Permutation>,
    spanning: Vec<(Permutation, BitMatrix)>,
    reducer: RowReducer,
    algebra_dimension: usize,
}

impl AutData {
    pub fn new(css: &CssCode, aut: &PermGroup) -> Result<Self> {
        Self::with_cap(css, aut.generators(), DEFAULT_ELEMENT_CAP)
    }

    /// Breadth-first products of the generators until the logical matrices
    /// met so far span the algebra they generate.
    pub fn with_cap(css: &CssCode, generators: &[Permutation], cap: usize) -> Result<Self> {
        let k = css.k();
        let id = Permutation::identity(css.n());
        let gens: Vec<(Permutation, BitMatrix)> = generators
            .iter()
            .map(|p| Ok((p.clone(), induced_action(css, p)?.logical_matrix())))
            .collect::<Result<_>>()?;
        let mut mats: Vec<BitMatrix> = gens.iter().map(|g| g.1.clone()).collect();
        mats.push(BitMatrix::identity(k));
        let target = algebra_span(&mats)?.dimension();
        let mut reducer = RowReducer::new(k * k);
        let mut spanning = Vec::new();
        let mut seen = HashSet::new();
        let mut frontier = vec![(id, BitMatrix::identity(k))];
        seen.insert(frontier[0].1.flatten());
        let mut visited = 0;
        'bfs: while !frontier.is_empty() {
            let mut next = Vec::new();
            for (p, m) in frontier {
                visited += 1;
                let flat = m.flatten();
                if !reducer.contains(&flat) {
                    reducer.push(flat);
                    spanning.push((p.clone(), m.clone()));
                    if spanning.len() == target {
                        break 'bfs;
                    }
                }
                if visited >= cap {
                    return Err(Error::Capacity(format!(
                        "visited {cap} group elements, spanning {} of {target} algebra dimensions",
                        spanning.len()
                    )));
                }
                for (g, gm) in &gens {
                    // apply p, then g
                    let q = p.compose(g);
                    let qm = gm.mul(&m);
                    if seen.insert(qm.flatten()) {
                        next.push((q, qm));
                    }
                }
            }
            frontier = next;
        }
        if spanning.len() < target {
            return Err(Error::Infeasible(format!(
                "group elements span {} of the {target} algebra dimensions",
                spanning.len()
            )));
        }
        Ok(AutData {
            css: css.clone(),
            generators: generators.to_vec(),
            spanning,
            reducer,
            algebra_dimension: target,
        })
    }

    pub fn css(&self) -> &CssCode {
        &self.css
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn algebra_dimension(&self) -> usize {
        self.algebra_dimension
    }

    pub fn algebra_is_full(&self) -> bool {
        let k = self.css.k();
        self.algebra_dimension == k * k
    }

    /// Group elements whose logical matrices sum to `a`.
    pub fn decompose(&self, a: &BitMatrix) -> Result<Vec<&(Permutation, BitMatrix)>> {
        let k = self.css.k();
        if a.nrows() != k || a.ncols() != k {
            return Err(Error::dim(format!("{}x{} matrix for k = {k}", a.nrows(), a.ncols())));
        }
        let c = self.reducer.coordinates(&a.flatten()).ok_or_else(|| {
            Error::Infeasible("matrix is not a sum of logical automorphism images".into())
        })?;
        Ok(c.iter_ones().map(|i| &self.spanning[i]).collect())
    }
}

/// Word with effect `(I A; 0 I)` or `(I 0; A I)`. Each summand `T(π)` of
/// `A` becomes a CNOT conjugated by `π` on the non-control block.
pub fn realize_offdiag(data: &AutData, a: &BitMatrix, side: Side) -> Result<InstructionWord> {
    let css = data.css();
    let mut instructions = Vec::new();
    for (p, _) in data.decompose(a)? {
        let triple = match side {
            Side::Upper => [
                Instruction::perm_block2(p.clone()),
                Instruction::cnot_2to1(),
                Instruction::perm_block2(p.inverse()),
            ],
            Side::Lower => [
                Instruction::perm_block1(p.clone()),
                Instruction::cnot_1to2(),
                Instruction::perm_block1(p.inverse()),
            ],
        };
        instructions.extend(triple);
    }
    let instructions = peephole(instructions);
    let w = InstructionWord::from_instructions(css, instructions)?;
    let k = css.k();
    let (id, z) = (BitMatrix::identity(k), BitMatrix::zeros(k, k));
    let want = match side {
        Side::Upper => BitMatrix::block(&id, a, &z, &id),
        Side::Lower => BitMatrix::block(&id, &z, a, &id),
    };
    debug_assert_eq!(w.logical_effect.matrix(), &want);
    Ok(w)
}

fn unit(k: usize, i: usize, j: usize) -> BitMatrix {
    BitMatrix::from_fn(k, k, |a, b| a == i && b == j)
}

/// Word for a transvection inside one diagonal block, as the commutator
/// of an upper and a lower off-diagonal word.
pub fn lift_diagonal_transvection(data: &AutData, t: Transvection) -> Result<InstructionWord> {
    let k = data.css().k();
    if t.size != 2 * k {
        return Err(Error::dim(format!("transvection of size {} for k = {k}", t.size)));
    }
    let (first, second) = match (t.row < k, t.col < k) {
        (true, true) => {
            let (i, l) = (t.row, t.col);
            // M1 = (I E_ii; 0 I), M2 = (I 0; E_il I)
            (
                realize_offdiag(data, &unit(k, i, i), Side::Upper)?,
                realize_offdiag(data, &unit(k, i, l), Side::Lower)?,
            )
        }
        (false, false) => {
            let (i, l) = (t.row - k, t.col - k);
            (
                realize_offdiag(data, &unit(k, i, i), Side::Lower)?,
                realize_offdiag(data, &unit(k, i, l), Side::Upper)?,
            )
        }
        _ => return Err(Error::param("transvection is not inside a diagonal block")),
    };
    // matrix M2 M1 M2 M1, so M1 is applied first; all four are involutions
    let w = first.concat(&second).concat(&first).concat(&second);
    debug_assert_eq!(w.logical_effect.matrix(), &t.matrix());
    let mut w = InstructionWord::from_instructions(data.css(), peephole(w.instructions))?;
    w.target = Some(LogicalMatrix::new(t.matrix())?);
    Ok(w)
}


/// `I + N` where `N` is supported in column `col` off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnOp {
    pub col: usize,
    pub rows: Vec<usize>,
    pub size: usize,
}

impl ColumnOp {
    pub fn matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::identity(self.size);
        for &r in &self.rows {
            m.set(r, self.col, true);
        }
        m
    }
}

/// Gaussian elimination grouped by column: returns single-column
/// operations whose product, in order, is `m`.
pub fn column_factorization(m: &BitMatrix) -> Result<Vec<ColumnOp>> {
    let d = m.nrows();
    if !m.is_square() || !m.is_invertible() {
        return Err(Error::Singular);
    }
    let mut a = m.clone();
    let mut ops = Vec::new();
    for c in 0..d {
        if !a.get(c, c) {
            let r = (c + 1..d).find(|&r| a.get(r, c)).ok_or(Error::Singular)?;
            let src = a.row(r).clone();
            let mut dst = a.row(c).clone();
            dst.xor_assign(&src);
            a.set_row(c, dst);
            ops.push(ColumnOp { col: r, rows: vec![c], size: d });
        }
        let rows: Vec<usize> = (0..d).filter(|&r| r != c && a.get(r, c)).collect();
        if rows.is_empty() {
            continue;
        }
        let pivot = a.row(c).clone();
        for &r in &rows {
            let mut dst = a.row(r).clone();
            dst.xor_assign(&pivot);
            a.set_row(r, dst);
        }
        ops.push(ColumnOp { col: c, rows, size: d });
    }
    debug_assert!(a.is_identity());
    // each operation is an involution and they were applied on the left
    Ok(ops)
}

/// Word for a single-column operation. Entries in the other block form an
/// off-diagonal block; entries in the column's own block come from the
/// commutator of `(I P; 0 I)` and `(I 0; B I)`, where `P` projects onto
/// the affected rows and `B` holds the column, since `B P = 0` gives
/// `diag(I + P B, I)`.
pub fn realize_column_op(data: &AutData, op: &ColumnOp) -> Result<InstructionWord> {
    let k = data.css().k();
    if op.size != 2 * k || op.rows.contains(&op.col) {
        return Err(Error::param("column operation does not fit the two-block layout"));
    }
    let first_block = op.col < k;
    let local = op.col % k;
    let (same, other): (Vec<usize>, Vec<usize>) = op.rows.iter().partition(|&&r| (r < k) == first_block);
    let mut word = InstructionWord::empty(data.css());
    if !other.is_empty() {
        let a = BitMatrix::from_fn(k, k, |i, j| j == local && other.iter().any(|&r| r % k == i));
        let side = if first_block { Side::Lower } else { Side::Upper };
        word = word.concat(&realize_offdiag(data, &a, side)?);
    }
    if !same.is_empty() {
        let proj = BitMatrix::from_fn(k, k, |i, j| i == j && same.iter().any(|&r| r % k == i));
        let col = BitMatrix::from_fn(k, k, |i, j| j == local && same.iter().any(|&r| r % k == i));
        let (m1, m2) = if first_block {
            (realize_offdiag(data, &proj, Side::Upper)?, realize_offdiag(data, &col, Side::Lower)?)
        } else {
            (realize_offdiag(data, &proj, Side::Lower)?, realize_offdiag(data, &col, Side::Upper)?)
        };
        word = word.concat(&m1).concat(&m2).concat(&m1).concat(&m2);
    }
    debug_assert_eq!(word.logical_effect.matrix(), &op.matrix());
    Ok(word)
}

/// Compiles a target in `SL(2k, 2)` into a schedule. Requires the logical
/// images of the automorphisms to span all `k × k` matrices.
pub fn synthesize(data: &AutData, target: &LogicalMatrix) -> Result<InstructionWord> {
    let k = data.css().k();
    if target.dim() != 2 * k {
        return Err(Error::dim(format!("target of size {} for k = {k}", target.dim())));
    }
    if !data.algebra_is_full() {
        return Err(Error::Unsupported(format!(
            "automorphism images span {} of {} matrix dimensions; analyze the invariant blocks instead",
            data.algebra_dimension(),
            k * k
        )));
    }
    let mut instructions = Vec::new();
    for op in column_factorization(target.matrix())?.iter().rev() {
        instructions.extend(realize_column_op(data, op)?.instructions);
    }
    let mut w = InstructionWord::from_instructions(data.css(), peephole(instructions))?;
    if &w.logical_effect != target {
        return Err(Error::Infeasible("compiled schedule does not reproduce the target".into()));
    }
    w.target = Some(target.clone());
    Ok(w)
}

/// Merges adjacent permutations of the same block, drops identity
/// permutations and cancels adjacent equal CNOTs, until nothing changes.
pub fn peephole(instructions: Vec<Instruction>) -> Vec<Instruction> {
    let mut cur = instructions;
    loop {
        let mut out: Vec<Instruction> = Vec::with_capacity(cur.len());
        for ins in cur.iter().cloned() {
            if ins.perm.as_ref().is_some_and(Permutation::is_identity) {
                continue;
            }
            match out.last_mut() {
                Some(prev) if prev.kind == ins.kind => match (&prev.perm, &ins.perm) {
                    (Some(p), Some(q)) => {
                        let merged = p.compose(q);
                        if merged.is_identity() {
                            out.pop();
                        } else {
                            prev.perm = Some(merged);
                        }
                    }
                    _ => {
                        out.pop();
                    }
                },
                _ => out.push(ins),
            }
        }
        if out.len() == cur.len() {
            return out;
        }
        cur = out;
    }
}

/// Coset samples per instruction when verifying small codes.
pub const VERIFY_SAMPLES: usize = 8;

/// Recomputes the effect of a word from scratch. For `n <= 15` each
/// instruction is also checked on sampled coset states.
pub fn verify_word(css: &CssCode, w: &InstructionWord) -> Result<LogicalMatrix> {
    let k = css.k();
    let mut acc = BitMatrix::identity(2 * k);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e51);
    for ins in &w.instructions {
        let m = ins.logical_matrix(css)?;
        if css.n() <= 15 {
            for _ in 0..VERIFY_SAMPLES {
                let beta = BitVector::from_bools(&(0..2 * k).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
                if !simulate_instruction(css, ins, &m, &beta)? {
                    return Err(Error::Infeasible(format!(
                        "coset simulation disagrees with the logical matrix of {:?}",
                        ins.kind
                    )));
                }
            }
        }
        acc = m.mul(&acc);
    }
    LogicalMatrix::new(acc)
}

fn simulate_instruction(css: &CssCode, ins: &Instruction, m: &BitMatrix, beta: &BitVector) -> Result<bool> {
    let k = css.k();
    let (b1, b2) = (beta.slice(0, k), beta.slice(k, 2 * k));
    let want = m.mul_vec(beta);
    let (w1, w2) = (want.slice(0, k), want.slice(k, 2 * k));
    match (ins.kind, &ins.perm) {
        (InstructionKind::PermBlock1, Some(p)) => {
            let t = m.submatrix(0, k, 0, k);
            Ok(b2 == w2 && verify_coset_action_with(css, p, &b1, &t)?)
        }
        (InstructionKind::PermBlock2, Some(p)) => {
            let t = m.submatrix(k, 2 * k, k, 2 * k);
            Ok(b1 == w1 && verify_coset_action_with(css, p, &b2, &t)?)
        }
        (kind, None) => {
            // CNOT adds the representative of the control block to the target
            let r1 = css.coset_state(&b1)?.representative;
            let r2 = css.coset_state(&b2)?.representative;
            let (c1, c2) = match kind {
                InstructionKind::Cnot1To2 => (r1.clone(), r1.xor(&r2)),
                _ => (r1.xor(&r2), r2.clone()),
            };
            Ok(css.decode_label(&c1) == Some(w1) && css.decode_label(&c2) == Some(w2))
        }
        _ => Err(Error::param("malformed instruction")),
    }
}

/// Which of the block-matrix identities hold over one field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub q: u64,
    /// Commutator of off-diagonal elementary blocks.
    pub commutator: bool,
    /// Factorization of `diag(t, 1/t)` in one block.
    pub diagonal_one_block: bool,
    /// Factorization of `diag(t, 1/t)` across two blocks.
    pub diagonal_two_blocks: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.commutator && self.diagonal_one_block && self.diagonal_two_blocks
    }
}

fn offdiag<F: FiniteField>(n: usize, a: &Matrix<F>, upper: bool) -> Matrix<F> {
    let (id, z) = (Matrix::identity(n), Matrix::zeros(n, n));
    if upper {
        Matrix::block(&id, a, &z, &id)
    } else {
        Matrix::block(&id, &z, a, &id)
    }
}

/// `M2⁻¹ M1 M2 M1⁻¹ = diag(I + αβ E_ik, I)` for all `i ≠ k`, any `j`,
/// nonzero `α, β` and block sizes 2 to 4.
pub fn commutator_identity_holds<F: FiniteField>() -> bool {
    for n in 2..=4 {
        for (i, j, l) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (i, j, l)))) {
            if i == l {
                continue;
            }
            for &alpha in &F::nonzero() {
                for &beta in &F::nonzero() {
                    let m1 = offdiag(n, &Matrix::unit(n, i, j, alpha), true);
                    let m2 = offdiag(n, &Matrix::unit(n, j, l, beta), false);
                    let lhs = Matrix::product(
                        2 * n,
                        [&m2.inverse().expect("unipotent"), &m1, &m2, &m1.inverse().expect("unipotent")],
                    );
                    let top = Matrix::identity(n).add(&Matrix::unit(n, i, l, alpha * beta));
                    let rhs = Matrix::block(&top, &Matrix::zeros(n, n), &Matrix::zeros(n, n), &Matrix::identity(n));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn with_entries<F: FiniteField>(entries: &[(usize, usize, F)]) -> Matrix<F> {
    let mut m = Matrix::identity(4);
    for &(i, j, v) in entries {
        m.set(i, j, v);
    }
    m
}

fn diag4<F: FiniteField>(d: [F; 4]) -> Matrix<F> {
    Matrix::from_fn(4, 4, |i, j| if i == j { d[i] } else { F::zero() })
}

/// The six factors of the one-block diagonal factorization as printed,
/// for coordinates `(x1, x2 | y1, y2)`.
pub fn diagonal_one_block_factors<F: FiniteField>(t: F) -> [Matrix<F>; 6] {
    let one = F::one();
    [
        with_entries(&[(3, 1, (t - one) / t)]),
        with_entries(&[(0, 3, one), (1, 3, -one)]),
        with_entries(&[(3, 0, (one - t) / t)]),
        with_entries(&[(0, 3, -t)]),
        with_entries(&[(3, 0, (t - one) / (t * t)), (3, 1, (one - t) / t)]),
        with_entries(&[(1, 3, one)]),
    ]
}

/// The four factors of the two-block diagonal factorization as printed.
pub fn diagonal_two_block_factors<F: FiniteField>(t: F) -> [Matrix<F>; 4] {
    let one = F::one();
    [
        with_entries(&[(0, 2, t - one)]),
        with_entries(&[(2, 0, one)]),
        with_entries(&[(0, 2, (one - t) / t)]),
        with_entries(&[(2, 0, -t)]),
    ]
}

fn diagonal_identities_hold<F: FiniteField>() -> (bool, bool) {
    let one = F::one();
    let mut first = true;
    let mut second = true;
    for t in F::nonzero() {
        let ti = one / t;
        let f1 = diagonal_one_block_factors(t);
        first &= Matrix::product(4, f1.iter()) == diag4([t, ti, one, one]);
        let f2 = diagonal_two_block_factors(t);
        second &= Matrix::product(4, f2.iter()) == diag4([t, one, ti, one]);
    }
    (first, second)
}

pub fn identity_report<F: FiniteField>() -> IdentityReport {
    let (a, b) = diagonal_identities_hold::<F>();
    IdentityReport {
        q: F::ORDER,
        commutator: commutator_identity_holds::<F>(),
        diagonal_one_block: a,
        diagonal_two_blocks: b,
    }
}

/// Evaluates the commutator identity and both diagonal factorizations over
/// `GF(q)` for `q` in `{2, 3, 4}`.
pub fn check_identities(q: u64) -> Result<IdentityReport> {
    match q {
        2 => Ok(identity_report::<Gf2>()),
        3 => Ok(identity_report::<Gf3>()),
        4 => Ok(identity_report::<Gf4>()),
        _ => Err(Error::param(format!("identities are checked over GF(2), GF(3), GF(4), not GF({q})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::LinearCode;
    use num_traits::One;

    fn random_invertible(d: usize, rng: &mut impl Rng) -> BitMatrix {
        loop {
            let m = BitMatrix::from_fn(d, d, |_, _| rng.gen_bool(0.5));
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn factorization_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(transvection_factorization(&BitMatrix::identity(5)).unwrap().is_empty());
        let t = Transvection::new(1, 3, 5).unwrap();
        assert_eq!(transvection_factorization(&t.matrix()).unwrap(), vec![t]);
        for i in 0..200 {
            let d = 4 + i % 13;
            let m = random_invertible(d, &mut rng);
            let f = transvection_factorization(&m).unwrap();
            assert!(f.len() <= d * d);
            let p = f.iter().fold(BitMatrix::identity(d), |acc, t| acc.mul(&t.matrix()));
            assert_eq!(p, m);
        }
        assert!(transvection_factorization(&BitMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn identities_over_small_fields() {
        for q in [2, 3] {
            assert!(check_identities(q).unwrap().all_hold(), "q = {q}");
        }
        let r = check_identities(4).unwrap();
        assert!(r.commutator && r.diagonal_two_blocks);
        assert!(check_identities(5).is_err());
    }

    #[test]
    fn one_block_factors_give_inverse_diagonal_order() {
        // the printed six factors multiply to diag(1/t, t, 1, 1)
        for t in Gf4::nonzero() {
            let p = Matrix::product(4, diagonal_one_block_factors(t).iter());
            let one = Gf4::one();
            assert_eq!(p, diag4([one / t, t, one, one]));
        }
    }

    #[test]
    fn peephole_cancels() {
        let p = Permutation::cycle(4, &[0, 1, 2]).unwrap();
        let w = vec![
            Instruction::perm_block1(p.clone()),
            Instruction::perm_block1(p.inverse()),
            Instruction::cnot_1to2(),
            Instruction::cnot_1to2(),
            Instruction::perm_block2(Permutation::identity(4)),
        ];
        assert!(peephole(w).is_empty());
    }

    #[test]
    fn trivial_code_words() {
        // one logical qubit on one physical qubit; only CNOTs are available
        let css = CssCode::from_pair(LinearCode::full(1), LinearCode::zero(1)).unwrap();
        let data = AutData::with_cap(&css, &[], 10).unwrap();
        assert!(data.algebra_is_full());
        let w = realize_offdiag(&data, &BitMatrix::identity(1), Side::Upper).unwrap();
        assert_eq!(w.instructions, vec![Instruction::cnot_2to1()]);
        let swap = LogicalMatrix::new(BitMatrix::from_strs(&["01", "10"])).unwrap();
        let s = synthesize(&data, &swap).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(verify_word(&css, &s).unwrap(), swap);
        let id = synthesize(&data, &LogicalMatrix::identity(2)).unwrap();
        assert!(id.is_empty());
    }
}
