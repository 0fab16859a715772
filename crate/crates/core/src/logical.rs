//! Logical actions of code automorphisms and transversal gates on CSS codes.
//!
//! Basis convention: the outer code's basis is the CSS code's logical rows
//! followed by its inner rows. `T(π)` has, in row `j`, the coordinates of
//! the permuted `j`-th basis row, which makes `π ↦ T(π)` a homomorphism for
//! [`Permutation::compose`]. Logical labels are column vectors, so a label
//! `β` is sent to `t1ᵀ β`; [`InducedAction::logical_matrix`] returns that
//! transpose.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::perm::{PermGroup, Permutation};

/// Largest inner code enumerated by coset simulations.
pub const MAX_COSET_DIM: usize = 20;

#[derive(Clone, Debug)]
pub struct InducedAction {
    pub t1: BitMatrix,
    pub t2: BitMatrix,
    pub t3: BitMatrix,
    pub perm: Permutation,
}

impl InducedAction {
    /// Matrix acting on logical labels as column vectors (`t1ᵀ`).
    pub fn logical_matrix(&self) -> BitMatrix {
        self.t1.transpose()
    }

    /// The full block matrix `(t1 t2 / 0 t3)`.
    pub fn assembled(&self) -> BitMatrix {
        let zero = BitMatrix::zeros(self.t3.nrows(), self.t1.ncols());
        BitMatrix::block(&self.t1, &self.t2, &zero, &self.t3)
    }
}

pub fn induced_action(css: &CssCode, p: &Permutation) -> Result<InducedAction> {
    if p.degree() != css.n() {
        return Err(Error::dim(format!(
            "permutation of degree {} on a code of length {}",
            p.degree(),
            css.n()
        )));
    }
    let k = css.k();
    let k2 = css.inner_basis().nrows();
    let mut t = BitMatrix::zeros(0, k + k2);
    // a permutation preserving dimension is an automorphism iff it maps a
    // basis into the code
    for (j, b) in css.logical_basis().rows().iter().chain(css.inner_basis().rows()).enumerate() {
        let pb = p.apply_unchecked(b);
        if !css.satisfies_checks(&pb, false) {
            return Err(Error::NotAutomorphism(format!("the outer code C1 (permutation {p})")));
        }
        if j >= k && !css.satisfies_checks(&pb, true) {
            return Err(Error::NotAutomorphism(format!("the inner code C2 (permutation {p})")));
        }
        t.push_row(css.coordinates_unchecked(&pb));
    }
    debug_assert!(t.submatrix(k, k + k2, 0, k).is_zero(), "inner code mixed into logical rows");
    Ok(InducedAction {
        t1: t.submatrix(0, k, 0, k),
        t2: t.submatrix(0, k, k, k + k2),
        t3: t.submatrix(k, k + k2, k, k + k2),
        perm: p.clone(),
    })
}

/// Column-convention logical matrices of the group generators.
pub fn logical_generators(css: &CssCode, aut: &PermGroup) -> Result<Vec<BitMatrix>> {
    aut.generators()
        .iter()
        .map(|p| induced_action(css, p).map(|a| a.logical_matrix()))
        .collect()
}

/// Simulates the permutation on the coset state for `beta` and compares the
/// resulting set of words with the coset predicted by the induced action.
pub fn verify_coset_action(css: &CssCode, p: &Permutation, beta: &BitVector) -> Result<bool> {
    let action = induced_action(css, p)?;
    verify_coset_action_with(css, p, beta, &action.logical_matrix())
}

/// As [`verify_coset_action`] but with a caller-supplied logical matrix,
/// which lets tests feed in corrupted predictions.
pub fn verify_coset_action_with(
    css: &CssCode,
    p: &Permutation,
    beta: &BitVector,
    logical: &BitMatrix,
) -> Result<bool> {
    let inner = css.inner_basis();
    if inner.nrows() > MAX_COSET_DIM {
        return Err(Error::Capacity(format!(
            "coset of 2^{} words exceeds the 2^{MAX_COSET_DIM} cap",
            inner.nrows()
        )));
    }
    let start = css.coset_state(beta)?;
    let predicted = css.coset_state(&logical.mul_vec(beta))?;
    let mut permuted = Vec::new();
    let mut expected = Vec::new();
    crate::codes::gray_enumerate(inner, |_, c| {
        permuted.push(p.apply_unchecked(&start.representative.xor(c)));
        expected.push(predicted.representative.xor(c));
    })?;
    permuted.sort_unstable_by(|a, b| a.words().cmp(b.words()));
    expected.sort_unstable_by(|a, b| a.words().cmp(b.words()));
    Ok(permuted == expected)
}

/// An invertible logical transformation on one or two code blocks,
/// acting on labels as column vectors.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalMatrix {
    m: BitMatrix,
}

impl LogicalMatrix {
    pub fn new(m: BitMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::dim(format!("{} x {} logical matrix", m.nrows(), m.ncols())));
        }
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(LogicalMatrix { m })
    }

    pub fn identity(dim: usize) -> Self {
        LogicalMatrix {
            m: BitMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.m
    }

    /// `self · other` (apply `other` first).
    pub fn mul(&self, other: &LogicalMatrix) -> LogicalMatrix {
        LogicalMatrix {
            m: self.m.mul(&other.m),
        }
    }

    pub fn apply(&self, beta: &BitVector) -> BitVector {
        self.m.mul_vec(beta)
    }

    pub fn inverse(&self) -> LogicalMatrix {
        LogicalMatrix {
            m: self.m.inverse().expect("invertible by construction"),
        }
    }
}

impl fmt::Debug for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogicalMatrix({:?})", self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CnotDirection {
    /// Controls in the first block: `(β₁, β₂) ↦ (β₁, β₁ + β₂)`.
    FirstControls,
    /// Controls in the second block: `(β₁, β₂) ↦ (β₁ + β₂, β₂)`.
    SecondControls,
}

pub fn transversal_cnot(k: usize, direction: CnotDirection) -> Result<LogicalMatrix> {
    if k == 0 {
        return Err(Error::param("transversal CNOT needs k >= 1"));
    }
    let i = BitMatrix::identity(k);
    let z = BitMatrix::zeros(k, k);
    let m = match direction {
        CnotDirection::FirstControls => BitMatrix::block(&i, &z, &i, &i),
        CnotDirection::SecondControls => BitMatrix::block(&i, &i, &z, &i),
    };
    LogicalMatrix::new(m)
}

/// `diag(a, b)` on two blocks.
pub fn block_diagonal(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    BitMatrix::block(
        a,
        &BitMatrix::zeros(a.nrows(), b.ncols()),
        &BitMatrix::zeros(b.nrows(), a.ncols()),
        b,
    )
}

/// Weight residues mod 4 of the coset states, indexed by label
/// (bit `i` of the index is `β_i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseAction {
    pub k: usize,
    pub residues: Vec<u8>,
}

impl PhaseAction {
    pub fn residue(&self, beta: &BitVector) -> u8 {
        let idx = beta.iter_ones().fold(0usize, |acc, i| acc | 1 << i);
        self.residues[idx]
    }
}

/// Largest `k + dim C2` for which [`phase_action`] enumerates every word.
pub const MAX_PHASE_ENUMERATION: usize = 26;

/// Residue `wt(v) mod 4` for every coset `v + C2`, checked to be constant
/// across each coset. Requires a doubly-even inner code with `C1 ⊆ C2^⊥`.
pub fn phase_action(css: &CssCode) -> Result<PhaseAction> {
    let class = css.c2().classify();
    if !class.doubly_even {
        return Err(Error::NotDoublyEven(format!(
            "inner code [{}, {}] has a word of weight 2 mod 4, so wt(v) mod 4 varies within cosets",
            css.n(),
            css.c2().k()
        )));
    }
    if !css.c1().is_subcode_of(&css.c2().dual()) {
        return Err(Error::NotDoublyEven(
            "outer code is not orthogonal to the inner code; residues are not coset invariants".into(),
        ));
    }
    let k = css.k();
    let k2 = css.inner_basis().nrows();
    if k + k2 > MAX_PHASE_ENUMERATION {
        return Err(Error::Capacity(format!(
            "phase enumeration of 2^{} words exceeds the cap",
            k + k2
        )));
    }
    let inner_words = css.c2().codewords()?;
    let mut residues = vec![0u8; 1 << k];
    let mut violation = None;
    crate::codes::gray_enumerate(css.logical_basis(), |g, v| {
        let r = (v.weight() % 4) as u8;
        if violation.is_none() && inner_words.iter().any(|c| (v.xor(c).weight() % 4) as u8 != r) {
            violation = Some(g);
        }
        residues[g as usize] = r;
    })?;
    if let Some(g) = violation {
        // unreachable for doubly-even C2 with C1 ⊆ C2^⊥; kept as a hard check
        return Err(Error::NotDoublyEven(format!("residue not constant on coset {g:#b}")));
    }
    Ok(PhaseAction { k, residues })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierReport {
    pub applicable: bool,
    pub effect: String,
}

/// Whether transversal Hadamard maps the code to itself, which needs the
/// outer code to be the dual of the inner one.
pub fn fourier_report(css: &CssCode) -> FourierReport {
    if css.is_dual_containing() {
        FourierReport {
            applicable: true,
            effect: "transversal Hadamard preserves the code and exchanges logical X and Z operators"
                .into(),
        }
    } else {
        FourierReport {
            applicable: false,
            effect: "outer code differs from the dual of the inner code; transversal Hadamard leaves the code space"
                .into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::LinearCode;

    fn css_15() -> CssCode {
        CssCode::from_pair(LinearCode::hamming(4).unwrap(), LinearCode::simplex(4).unwrap()).unwrap()
    }

    #[test]
    fn identity_action() {
        let css = css_15();
        let a = induced_action(&css, &Permutation::identity(15)).unwrap();
        assert!(a.t1.is_identity() && a.t2.is_zero() && a.t3.is_identity());
        assert!(a.assembled().is_identity());
    }

    #[test]
    fn non_automorphism_is_named() {
        let css = CssCode::from_self_orthogonal(LinearCode::self_orthogonal_22_7()).unwrap();
        let err = induced_action(&css, &Permutation::shift(22, 1)).unwrap_err();
        assert!(matches!(err, Error::NotAutomorphism(ref m) if m.contains("C1")));
    }

    #[test]
    fn cnot_matrices() {
        let m = transversal_cnot(1, CnotDirection::FirstControls).unwrap();
        assert_eq!(m.matrix(), &BitMatrix::from_strs(&["10", "11"]));
        let m = transversal_cnot(3, CnotDirection::FirstControls).unwrap();
        let b1 = BitVector::parse01("101").unwrap();
        let b2 = BitVector::parse01("011").unwrap();
        let out = m.apply(&b1.concat(&b2));
        assert_eq!(out, b1.concat(&b1.xor(&b2)));
        for d in [CnotDirection::FirstControls, CnotDirection::SecondControls] {
            let m = transversal_cnot(4, d).unwrap();
            assert!(m.mul(&m).matrix().is_identity());
        }
        assert!(transversal_cnot(0, CnotDirection::FirstControls).is_err());
    }

    #[test]
    fn fourier() {
        assert!(fourier_report(&css_15()).applicable);
        let rm = CssCode::from_pair(
            LinearCode::reed_muller(2, 4).unwrap(),
            LinearCode::reed_muller(0, 4).unwrap(),
        )
        .unwrap();
        assert!(!fourier_report(&rm).applicable);
    }

    #[test]
    fn phase_rejects_singly_even() {
        let css = CssCode::from_self_orthogonal(LinearCode::self_orthogonal_22_7()).unwrap();
        assert!(matches!(phase_action(&css), Err(Error::NotDoublyEven(_))));
        let p = phase_action(&css_15()).unwrap();
        assert_eq!(p.residue(&BitVector::zeros(7)), 0);
    }
}
