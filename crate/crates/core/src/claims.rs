//! Reproduction of the reference values for the example codes, one
//! comparison entry per value.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    StructureReport, cyclic_block_structure, g12_order, invariant_subspaces, printed_generator_fidelity, rm_block_check,
    single_block_group, t1_generators,
};
use crate::aut::{automorphism_group, intersect_aut};
use crate::codes::{CssCode, LinearCode};
use crate::error::Result;
use crate::logical::phase_action;
use crate::matgroup::{gl_order, sl_order, MatrixGroup, OrderOptions};
use crate::poly::factor_cyclic;
use crate::reference::{self, expected};
use crate::stabilizer::{load_stabilizer, stab_aut_group, stab_symplectic_rep, StabilizerCode};
use crate::synthesis::check_identities;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Match,
    Mismatch,
    /// The reference value itself is inconsistent; the computed value is
    /// reported alongside it.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub status: ClaimStatus,
}

impl ClaimCheck {
    fn run(id: &str, claim: &str, expected: impl Into<String>, f: impl FnOnce() -> Result<(String, bool)>) -> Self {
        let (computed, status) = match f() {
            Ok((c, true)) => (c, ClaimStatus::Match),
            Ok((c, false)) => (c, ClaimStatus::Mismatch),
            Err(e) => (format!("error: {e}"), ClaimStatus::Mismatch),
        };
        ClaimCheck {
            id: id.into(),
            claim: claim.into(),
            expected: expected.into(),
            computed,
            status,
        }
    }
}

fn aut_order_check(id: &str, claim: &str, code: LinearCode, want: u64) -> ClaimCheck {
    ClaimCheck::run(id, claim, want.to_string(), || {
        let g = automorphism_group(&code)?;
        Ok((g.order().to_string(), g.order() == BigUint::from(want)))
    })
}

fn fixed(id: &str, claim: &str, expected: impl Into<String>, computed: impl Into<String>, ok: bool) -> ClaimCheck {
    ClaimCheck {
        id: id.into(),
        claim: claim.into(),
        expected: expected.into(),
        computed: computed.into(),
        status: if ok { ClaimStatus::Match } else { ClaimStatus::Mismatch },
    }
}

fn quoted_15_4(computed: &BigUint) -> ClaimCheck {
    let mut c = fixed(
        "aut_15_4",
        "Aut of the [15,4,8] simplex code has the quoted order 21600",
        format!("{} (quoted); |A8| = |GL(4,2)| = {}", expected::AUT_15_4_QUOTED, gl_order(4, 2)),
        computed.to_string(),
        *computed == BigUint::from(expected::AUT_15_4),
    );
    if c.status == ClaimStatus::Match {
        // computed value equals |A8|, so the quoted order is the outlier
        c.status = ClaimStatus::Flagged;
    }
    c
}

/// Reference comparisons for an automorphism order already computed for
/// `code`. Empty unless `code` is one of the reference codes.
pub fn aut_claims(code: &LinearCode, order: &BigUint) -> Vec<ClaimCheck> {
    let simplex = LinearCode::simplex(4).expect("m = 4");
    if code.same_code(&simplex) {
        return vec![quoted_15_4(order)];
    }
    let known = [
        ("aut_22_7", "Aut of the [22,7,8] code has order 336", LinearCode::self_orthogonal_22_7(), expected::AUT_22_7),
        ("aut_31_10", "Aut of the [31,10,12] code has order 155", LinearCode::bch_dual_31_10(), expected::AUT_31_10),
    ];
    known
        .into_iter()
        .filter(|(_, _, c, _)| code.same_code(c))
        .map(|(id, claim, _, want)| fixed(id, claim, want.to_string(), order.to_string(), *order == BigUint::from(want)))
        .collect()
}

/// Reference comparisons for a stabilizer automorphism order.
pub fn stabilizer_claims(code: &StabilizerCode, order: &BigUint) -> Vec<ClaimCheck> {
    let reference = load_stabilizer(reference::STABILIZER_8_3_3).expect("shipped stabilizer parses");
    let same = code.n() == reference.n()
        && LinearCode::from_spanning(&code.stabilizer_matrix())
            .same_code(&LinearCode::from_spanning(&reference.stabilizer_matrix()));
    if !same {
        return Vec::new();
    }
    vec![fixed(
        "aut_8_3_3",
        "Aut of the [[8,3,3]] stabilizer code has order 56",
        expected::AUT_8_3_3.to_string(),
        order.to_string(),
        *order == BigUint::from(expected::AUT_8_3_3),
    )]
}

/// Reference comparisons for a structure report of `css`. Empty unless
/// `css` is one of the reference CSS codes.
pub fn structure_claims(css: &CssCode, report: &StructureReport) -> Vec<ClaimCheck> {
    let same = |r: &CssCode| css.c1().same_code(r.c1()) && css.c2().same_code(r.c2());
    let blocks = |d: usize| -> Vec<&BigUint> {
        report
            .block_dims
            .iter()
            .zip(&report.block_orders)
            .filter(|(x, _)| **x == d)
            .map(|(_, o)| &o.value)
            .collect()
    };
    let dims = ordered(&report.block_dims);
    let g12 = &report.g12_order.value;
    let sl = |d: usize| sl_order(d, 2).expect("valid");
    if same(&reference::css_15_7_3()) {
        let want = sl(12) * 6u32;
        let six = blocks(6);
        vec![
            fixed(
                "g12_15_7_3",
                "G12 of [[15,7,3]] is SL(12,2) x SL(2,2), above 2^144",
                want.to_string(),
                g12.to_string(),
                *g12 == want && g12.bits() > expected::LOG2_BOUND_15_7_3,
            ),
            fixed(
                "blocks_15_7_3",
                "[[15,7,3]] has an invariant logical line and a 6-dimensional block acted on by SL(6,2)",
                format!("blocks [1, 6], block group {}", sl(6)),
                format!("blocks {dims:?}, block group {six:?}"),
                dims == [1, 6] && six == [&sl(6)],
            ),
        ]
    } else if same(&reference::css_22_8_4()) {
        vec![
            fixed(
                "algebra_22_8_4",
                "the logical images of [[22,8,4]] span all 8x8 matrices",
                expected::ALGEBRA_22_8_4.to_string(),
                report.algebra_dimension.to_string(),
                report.algebra_dimension == expected::ALGEBRA_22_8_4,
            ),
            fixed("g12_22_8_4", "G12 of [[22,8,4]] is SL(16,2)", sl(16).to_string(), g12.to_string(), *g12 == sl(16)),
        ]
    } else if same(&reference::css_31_11_5()) {
        let want = sl(10).pow(2) * 6u32;
        let fives = blocks(5);
        vec![
            fixed(
                "blocks_31_11_5",
                "[[31,11,5]] splits into invariant blocks 5,5,1 each acted on by its full linear group",
                format!("blocks [1, 5, 5], block groups {}", sl(5)),
                format!("blocks {dims:?}, 5-block groups {fives:?}"),
                dims == expected::BLOCKS_31_11_5 && fives.iter().all(|o| **o == sl(5)),
            ),
            fixed(
                "g12_31_11_5",
                "G12 of [[31,11,5]] has more than 2^199 elements",
                want.to_string(),
                g12.to_string(),
                *g12 == want && g12.bits() > expected::LOG2_BOUND_31_11_5,
            ),
        ]
    } else {
        Vec::new()
    }
}

fn ordered(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Runs every comparison. Individual failures are recorded as mismatches
/// rather than aborting the run.
pub fn selfcheck() -> Vec<ClaimCheck> {
    let css15 = reference::css_15_7_3();
    let css22 = reference::css_22_8_4();
    let css31 = reference::css_31_11_5();
    let mut out = vec![
        aut_order_check("aut_22_7", "Aut of the [22,7,8] code has order 336", LinearCode::self_orthogonal_22_7(), expected::AUT_22_7),
        aut_order_check("aut_31_10", "Aut of the [31,10,12] code has order 155", LinearCode::bch_dual_31_10(), expected::AUT_31_10),
        ClaimCheck::run("aut_8_3_3", "Aut of the [[8,3,3]] stabilizer code has order 56", expected::AUT_8_3_3.to_string(), || {
            let code = load_stabilizer(reference::STABILIZER_8_3_3)?;
            let g = stab_aut_group(&code)?;
            Ok((g.order().to_string(), g.order() == BigUint::from(expected::AUT_8_3_3)))
        }),
    ];

    let simplex = LinearCode::simplex(4).expect("m = 4");
    let quoted = match automorphism_group(&simplex) {
        Ok(g) => quoted_15_4(&g.order()),
        Err(e) => fixed("aut_15_4", "Aut of the [15,4,8] simplex code has the quoted order 21600", expected::AUT_15_4_QUOTED.to_string(), format!("error: {e}"), false),
    };
    out.push(quoted);

    for (id, css, printed) in [
        ("image_15_7_3", &css15, reference::matrices(&reference::PRINTED_15_7_3)),
        ("image_22_8_4", &css22, reference::matrices(&reference::PRINTED_22_8_4)),
    ] {
        out.push(ClaimCheck::run(
            id,
            "the logical image group equals the group of the two printed generators",
            "equal orders, both printed generators are members",
            || {
                let aut = intersect_aut(css.c1(), css.c2())?;
                let f = printed_generator_fidelity(css, &aut, &printed)?;
                Ok((
                    format!(
                        "orders {} / {}, members {:?}, column convention {:?}",
                        f.computed_order.value, f.printed_order.value, f.members, f.column_convention
                    ),
                    f.holds(),
                ))
            },
        ));
    }

    out.push(ClaimCheck::run(
        "symplectic_8_3_3",
        "the symplectic image group of [[8,3,3]] equals the printed group and preserves the logical X span",
        "equal groups; zero upper-right block",
        || {
            let code = load_stabilizer(reference::STABILIZER_8_3_3)?;
            let g = stab_aut_group(&code)?;
            let reps = g
                .generators()
                .iter()
                .map(|p| stab_symplectic_rep(&code, p))
                .collect::<Result<Vec<_>>>()?;
            let x_ok = reps.iter().all(|r| r.preserves_x_span());
            let ours = MatrixGroup::new(6, reps.iter().map(|r| r.matrix().clone()).collect())?
                .chain(&OrderOptions::default())?;
            let printed = reference::matrices(&reference::PRINTED_8_3_3);
            let printed_order = MatrixGroup::new(6, printed.to_vec())?.order()?.value;
            let members = printed.iter().all(|m| ours.contains(m));
            Ok((
                format!("orders {} / {printed_order}, members {members}, X span kept {x_ok}", ours.order().value),
                members && x_ok && ours.order().value == printed_order,
            ))
        },
    ));

    let aut22 = intersect_aut(css22.c1(), css22.c2());
    out.push(ClaimCheck::run("algebra_22_8_4", "the logical images of [[22,8,4]] span all 8x8 matrices", "64", || {
        let gens = t1_generators(&css22, aut22.as_ref().map_err(Clone::clone)?)?;
        let s = single_block_group(&gens, 8, None)?;
        Ok((s.algebra_dimension.to_string(), s.algebra_dimension == expected::ALGEBRA_22_8_4))
    }));
    out.push(ClaimCheck::run("g12_22_8_4", "G12 of [[22,8,4]] is SL(16,2)", sl_order(16, 2).map(|v| v.to_string()).unwrap_or_default(), || {
        let gens = t1_generators(&css22, aut22.as_ref().map_err(Clone::clone)?)?;
        let o = g12_order(&gens, 8, None)?;
        Ok((o.value.to_string(), o.value == sl_order(16, 2)?))
    }));

    out.extend(structure_15(&css15));
    out.extend(structure_31(&css31));

    out.push(ClaimCheck::run("phase_15_7_3", "the [15,4,8] code is doubly even and weights mod 4 are constant on cosets", "128 constant residues", || {
        let p = phase_action(&css15)?;
        Ok((format!("{} residues", p.residues.len()), p.residues.len() == 128))
    }));
    out.push(ClaimCheck::run("phase_22_8_4", "[[22,8,4]] admits no coset-constant phase residues", "rejected (not doubly even)", || {
        let r = phase_action(&css22);
        Ok((if r.is_err() { "rejected".into() } else { "accepted".into() }, r.is_err()))
    }));

    out.push(ClaimCheck::run("factors_31", "X^31 - 1 factors with degrees 1,5,5,5,5,5,5", "[1, 5, 5, 5, 5, 5, 5]", || {
        let d: Vec<usize> = factor_cyclic(31)?.iter().filter_map(|f| f.degree()).collect();
        let d = ordered(&d);
        Ok((format!("{d:?}"), d == expected::FACTOR_DEGREES_31))
    }));
    out.push(ClaimCheck::run("cyclic_blocks_31", "the [[31,11,5]] cyclic pair splits into blocks 5,5,1", "[1, 5, 5]", || {
        let (outer, inner) = reference::cyclic_specs_31();
        let b = cyclic_block_structure(&outer, &inner)?;
        Ok((format!("{:?}", b.factor_degrees), b.factor_degrees == expected::BLOCKS_31_11_5))
    }));
    for (r, s, m) in [(1, 1, 3), (1, 2, 4), (0, 1, 4)] {
        out.push(ClaimCheck::run(
            &format!("rm_{r}_{s}_{m}"),
            "affine maps do not mix logical monomials of higher degree into lower ones",
            "true",
            || {
                let ok = rm_block_check(r, s, m)?;
                Ok((ok.to_string(), ok))
            },
        ));
    }

    for q in [2u64, 3, 4] {
        let rep = check_identities(q);
        for (name, pick) in [
            ("commutator", 0usize),
            ("diagonal_one_block", 1),
            ("diagonal_two_blocks", 2),
        ] {
            out.push(ClaimCheck::run(
                &format!("identity_{name}_gf{q}"),
                "block-matrix identity holds over the field",
                "true",
                || {
                    let r = rep.clone()?;
                    let ok = [r.commutator, r.diagonal_one_block, r.diagonal_two_blocks][pick];
                    Ok((ok.to_string(), ok))
                },
            ));
        }
    }
    out
}

fn structure_15(css: &CssCode) -> Vec<ClaimCheck> {
    let data = intersect_aut(css.c1(), css.c2()).and_then(|aut| {
        let gens = t1_generators(css, &aut)?;
        let image = MatrixGroup::new(css.k(), gens.clone())?;
        let chain = invariant_subspaces(&image);
        Ok((gens, chain))
    });
    let sl12 = sl_order(12, 2).expect("valid") * 6u32;
    vec![
        ClaimCheck::run("g12_15_7_3", "G12 of [[15,7,3]] is SL(12,2) x SL(2,2), above 2^144", sl12.to_string(), || {
            let (gens, chain) = data.as_ref().map_err(Clone::clone)?;
            let o = g12_order(gens, 7, chain.decomposition.as_deref())?;
            let big = o.value.bits() > expected::LOG2_BOUND_15_7_3;
            Ok((o.value.to_string(), o.value == sl12 && big))
        }),
        ClaimCheck::run(
            "blocks_15_7_3",
            "[[15,7,3]] has an invariant logical line and a 6-dimensional block acted on by SL(6,2)",
            format!("blocks [1, 6], block group {}", sl_order(6, 2).expect("valid")),
            || {
                let (gens, chain) = data.as_ref().map_err(Clone::clone)?;
                let s = single_block_group(gens, 7, chain.decomposition.as_deref())?;
                let dims = ordered(&s.block_dims);
                let six = s
                    .block_dims
                    .iter()
                    .position(|&d| d == 6)
                    .map(|i| s.block_orders[i].value.clone());
                Ok((
                    format!("blocks {dims:?}, block group {six:?}"),
                    dims == [1, 6] && six == Some(sl_order(6, 2)?),
                ))
            },
        ),
    ]
}

fn structure_31(css: &CssCode) -> Vec<ClaimCheck> {
    let data = intersect_aut(css.c1(), css.c2()).and_then(|aut| {
        let gens = t1_generators(css, &aut)?;
        let image = MatrixGroup::new(css.k(), gens.clone())?;
        let chain = invariant_subspaces(&image);
        Ok((gens, chain))
    });
    let bound = sl_order(10, 2).expect("valid").pow(2) * 6u32;
    vec![
        ClaimCheck::run(
            "blocks_31_11_5",
            "[[31,11,5]] splits into invariant blocks 5,5,1 each acted on by its full linear group",
            format!("blocks [1, 5, 5], block groups {}", sl_order(5, 2).expect("valid")),
            || {
                let (gens, chain) = data.as_ref().map_err(Clone::clone)?;
                let s = single_block_group(gens, 11, chain.decomposition.as_deref())?;
                let dims = ordered(&s.block_dims);
                let sl5 = sl_order(5, 2)?;
                let fives_ok = s
                    .block_dims
                    .iter()
                    .zip(&s.block_orders)
                    .filter(|(d, _)| **d == 5)
                    .all(|(_, o)| o.value == sl5);
                Ok((format!("blocks {dims:?}, full groups on 5-blocks {fives_ok}"), dims == expected::BLOCKS_31_11_5 && fives_ok))
            },
        ),
        ClaimCheck::run("g12_31_11_5", "G12 of [[31,11,5]] has more than 2^199 elements", format!("{bound}"), || {
            let (gens, chain) = data.as_ref().map_err(Clone::clone)?;
            let o = g12_order(gens, 11, chain.decomposition.as_deref())?;
            Ok((o.value.to_string(), o.value == bound && o.value.bits() > expected::LOG2_BOUND_31_11_5))
        }),
    ]
}
