//! Example codes with known structure, the generator matrices printed for
//! them in the literature, and the values those examples are expected to
//! reproduce.

use crate::codes::{CssCode, CyclicCodeSpec, LinearCode};
use crate::error::Result;
use crate::gf2::BitMatrix;
use crate::perm::Permutation;
use crate::poly::Gf2Poly;

/// `[[15, 7, 3]]` from the Hamming code and its dual simplex code.
pub fn css_15_7_3() -> CssCode {
    let h = LinearCode::hamming(4).expect("m = 4");
    CssCode::from_pair(h.clone(), h.dual()).expect("simplex inside Hamming")
}

/// `[[22, 8, 4]]` from the self-orthogonal `[22, 7, 8]` code.
pub fn css_22_8_4() -> CssCode {
    CssCode::from_self_orthogonal(LinearCode::self_orthogonal_22_7()).expect("self-orthogonal")
}

/// `[[31, 11, 5]]` from the BCH code `[31, 21, 5]` and its dual.
pub fn css_31_11_5() -> CssCode {
    CssCode::from_pair(LinearCode::bch_31_21(), LinearCode::bch_dual_31_10()).expect("dual-containing")
}

/// Cyclic specifications of the `[[31, 11, 5]]` pair.
pub fn cyclic_specs_31() -> (CyclicCodeSpec, CyclicCodeSpec) {
    let outer = CyclicCodeSpec::from_zeros(31, &Gf2Poly::from_exponents(&[0, 2, 5]), &[1, 3])
        .expect("valid BCH parameters");
    let inner = outer.dual();
    (outer, inner)
}

/// `k = 7` code of length 127: the cyclic Hamming code over the BCH code
/// with zeros at `α, α^3`, `α` a root of `X^7 + X + 1`. The quotient is a
/// single irreducible block of degree 7, and the cyclic shift together
/// with the multiplier `i ↦ 2i` spans all 7×7 matrices.
pub fn css_127_7() -> Result<(CssCode, Vec<Permutation>)> {
    let modulus = Gf2Poly::from_exponents(&[0, 1, 7]);
    let outer = CyclicCodeSpec::from_zeros(127, &modulus, &[1])?;
    let inner = CyclicCodeSpec::from_zeros(127, &modulus, &[1, 3])?;
    let css = CssCode::from_pair(LinearCode::cyclic(&outer), LinearCode::cyclic(&inner))?;
    let shift = Permutation::shift(127, 1);
    let mult = Permutation::from_images((0..127).map(|i| 2 * i % 127).collect())?;
    Ok((css, vec![shift, mult]))
}

pub const PRINTED_15_7_3: [[&str; 7]; 2] = [
    ["1001101", "1100100", "1110111", "1100010", "0100101", "0001101", "1100110"],
    ["1010010", "1111100", "0110110", "0101011", "1001000", "0100110", "0111101"],
];

pub const PRINTED_22_8_4: [[&str; 8]; 2] = [
    ["11010110", "01111100", "01101101", "11100000", "10101100", "11011101", "00100100", "10100110"],
    ["11100001", "01011010", "01001011", "10101001", "11000011", "11101101", "00000010", "10110000"],
];

/// Printed symplectic generators for `[[8, 3, 3]]`, rows `X1..X3, Z1..Z3`.
pub const PRINTED_8_3_3: [[&str; 6]; 2] = [
    ["010000", "001000", "101000", "100010", "011101", "010100"],
    ["100000", "010000", "001000", "010100", "100010", "000001"],
];

/// The `[[8, 3, 3]]` stabilizer code: stabilizers, logical X, logical Z.
pub const STABILIZER_8_3_3: &str = "\
# [[8,3,3]] stabilizer code; w = omega, W = omega^2
10w0Ww1W
w0w10WW1
01wwW1W0
0w0Ww11W
001W1wWw
---
00w1wW1W
000w0www
00w0ww0w
---
0001w0W0
000010wW
00w000W1
";

pub fn matrices<const R: usize>(rows: &[[&str; R]; 2]) -> [BitMatrix; 2] {
    [BitMatrix::from_strs(&rows[0]), BitMatrix::from_strs(&rows[1])]
}

/// Expected values for the examples.
pub mod expected {
    pub const AUT_22_7: u64 = 336;
    pub const AUT_31_10: u64 = 155;
    pub const AUT_8_3_3: u64 = 56;
    pub const AUT_15_4: u64 = 20160;
    /// Order quoted for the simplex automorphism group in the source
    /// discussion; it differs from `|A_8| = |GL(4, 2)| = 20160`.
    pub const AUT_15_4_QUOTED: u64 = 21600;
    pub const ALGEBRA_22_8_4: usize = 64;
    pub const BLOCKS_31_11_5: [usize; 3] = [1, 5, 5];
    pub const FACTOR_DEGREES_31: [usize; 7] = [1, 5, 5, 5, 5, 5, 5];
    /// `|G12| > 2^144` for `[[15, 7, 3]]`.
    pub const LOG2_BOUND_15_7_3: u64 = 144;
    /// `|G12| > 2^199` for `[[31, 11, 5]]`.
    pub const LOG2_BOUND_31_11_5: u64 = 199;
}
