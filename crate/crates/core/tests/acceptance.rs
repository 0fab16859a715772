//! Acceptance criteria 1 to 13. Each test writes one `PASS`/`FAIL` line to
//! the real stdout (bypassing the harness capture) before asserting.

use std::io::Write;

use autgate::analysis::*;
use autgate::aut::{automorphism_group, brute_force_aut, intersect_aut};
use autgate::claims::{aut_claims, ClaimStatus};
use autgate::codes::{CssCode, LinearCode};
use autgate::field::{Gf4, Matrix};
use autgate::gf2::{BitMatrix, BitVector};
use autgate::logical::{phase_action, verify_coset_action};
use autgate::matgroup::{gl_order, sl_order, MatrixGroup};
use autgate::perm::{PermGroup, Permutation};
use autgate::poly::factor_cyclic;
use autgate::reference::{self, expected};
use autgate::stabilizer::{brute_force_stab_aut, load_stabilizer, stab_aut_group, stab_symplectic_rep, Gf4Vector};
use autgate::stabilizer::{symplectic_inner, StabilizerCode};
use autgate::synthesis::{diagonal_one_block_factors, synthesize, verify_word, AutData, InstructionWord};
use autgate::synthesis::{check_identities, DEFAULT_ELEMENT_CAP};
use autgate::{Error, LogicalMatrix};
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, pass: bool, detail: &str) {
    let line = format!("criterion {n:>2}: {} | {detail}\n", if pass { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn random_element(g: &PermGroup, rng: &mut impl Rng) -> Permutation {
    let gens = g.generators();
    (0..rng.gen_range(4..20)).fold(Permutation::identity(g.degree()), |acc, _| acc.compose(&gens[rng.gen_range(0..gens.len())]))
}

fn random_invertible(d: usize, rng: &mut impl Rng) -> BitMatrix {
    loop {
        let m = BitMatrix::from_fn(d, d, |_, _| rng.gen_bool(0.5));
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_label(k: usize, rng: &mut impl Rng) -> BitVector {
    BitVector::from_bools(&(0..k).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

fn image(css: &CssCode) -> (PermGroup, Vec<BitMatrix>, InvariantChain) {
    let aut = intersect_aut(css.c1(), css.c2()).unwrap();
    let gens = t1_generators(css, &aut).unwrap();
    let chain = invariant_subspaces(&MatrixGroup::new(css.k(), gens.clone()).unwrap());
    (aut, gens, chain)
}

#[test]
fn criterion_01_automorphism_orders() {
    let a22 = automorphism_group(&LinearCode::self_orthogonal_22_7()).unwrap().order();
    let a31 = automorphism_group(&LinearCode::bch_dual_31_10()).unwrap().order();
    let a8 = stab_aut_group(&load_stabilizer(reference::STABILIZER_8_3_3).unwrap()).unwrap().order();
    let pass = a22 == BigUint::from(expected::AUT_22_7)
        && a31 == BigUint::from(expected::AUT_31_10)
        && a8 == BigUint::from(expected::AUT_8_3_3);
    report(1, pass, &format!("[22,7,8] {a22}, [31,10,12] {a31}, [[8,3,3]] {a8}"));
    assert!(pass);
}

#[test]
fn criterion_02_simplex_order_and_flag() {
    let simplex = LinearCode::simplex(4).unwrap();
    let order = automorphism_group(&simplex).unwrap().order();
    let claims = aut_claims(&simplex, &order);
    let flagged = claims.len() == 1 && claims[0].status == ClaimStatus::Flagged && claims[0].expected.contains("21600");
    let pass = order == BigUint::from(expected::AUT_15_4) && order == gl_order(4, 2) && flagged;
    report(2, pass, &format!("computed {order} = |GL(4,2)|; quoted 21600 flagged: {flagged}"));
    assert!(pass);
}

#[test]
fn criterion_03_printed_generator_fidelity() {
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, css, printed) in [
        ("[[15,7,3]]", reference::css_15_7_3(), reference::matrices(&reference::PRINTED_15_7_3).to_vec()),
        ("[[22,8,4]]", reference::css_22_8_4(), reference::matrices(&reference::PRINTED_22_8_4).to_vec()),
    ] {
        let aut = intersect_aut(css.c1(), css.c2()).unwrap();
        let f = printed_generator_fidelity(&css, &aut, &printed).unwrap();
        pass &= f.holds();
        detail.push(format!(
            "{name} orders {}/{} members {:?}",
            f.computed_order.value, f.printed_order.value, f.members
        ));
    }
    report(3, pass, &detail.join("; "));
    assert!(pass);
}

#[test]
fn criterion_04_symplectic_images() {
    let code = load_stabilizer(reference::STABILIZER_8_3_3).unwrap();
    let g = stab_aut_group(&code).unwrap();
    let elements = g.elements(1000).unwrap();
    // SymplecticMatrix::new checks M J Mᵀ = J for every element
    let reps: Vec<_> = elements.iter().map(|p| stab_symplectic_rep(&code, p)).collect();
    let all_symplectic = reps.iter().all(Result::is_ok);
    let reps: Vec<_> = reps.into_iter().filter_map(Result::ok).collect();
    let x_kept = reps.iter().all(|r| r.preserves_x_span());
    let gen_reps: Vec<BitMatrix> =
        g.generators().iter().map(|p| stab_symplectic_rep(&code, p).unwrap().matrix().clone()).collect();
    let ours = MatrixGroup::new(6, gen_reps).unwrap().chain(&Default::default()).unwrap();
    let printed = reference::matrices(&reference::PRINTED_8_3_3);
    let printed_order = MatrixGroup::new(6, printed.to_vec()).unwrap().order().unwrap().value;
    let members = printed.iter().all(|m| ours.contains(m));
    let pass = all_symplectic && x_kept && members && ours.order().value == printed_order;
    report(
        4,
        pass,
        &format!(
            "{} images symplectic {all_symplectic}, X span kept {x_kept}, orders {}/{printed_order}, printed members {members}",
            elements.len(),
            ours.order().value
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_theorem4_on_22_8_4() {
    let css = reference::css_22_8_4();
    let (_, gens, _) = image(&css);
    let single = single_block_group(&gens, 8, None).unwrap();
    let g12 = g12_order(&gens, 8, None).unwrap();
    let pass = single.algebra_dimension == expected::ALGEBRA_22_8_4 && g12.exact && g12.value == sl_order(16, 2).unwrap();
    report(
        5,
        pass,
        &format!("algebra dimension {}, |G12| = |SL(16,2)|: {} ({:?})", single.algebra_dimension, g12.value == sl_order(16, 2).unwrap(), g12.certificate),
    );
    assert!(pass);
}

#[test]
fn criterion_06_structure_15_7_3() {
    let css = reference::css_15_7_3();
    let (_, gens, chain) = image(&css);
    let line = chain.lattice.iter().any(|w| w.nrows() == 1);
    let single = single_block_group(&gens, 7, chain.decomposition.as_deref()).unwrap();
    let six = single.block_dims.iter().position(|&d| d == 6).map(|i| single.block_orders[i].value.clone());
    let g12 = g12_order(&gens, 7, chain.decomposition.as_deref()).unwrap();
    let want = sl_order(12, 2).unwrap() * sl_order(2, 2).unwrap();
    let pass = line
        && six == Some(sl_order(6, 2).unwrap())
        && g12.value == want
        && g12.value.bits() > expected::LOG2_BOUND_15_7_3;
    report(
        6,
        pass,
        &format!("invariant line {line}, 6-block = |SL(6,2)| {}, |G12| = |SL(12,2)||SL(2,2)| {} (2^{} bits)", six == Some(sl_order(6, 2).unwrap()), g12.value == want, g12.value.bits()),
    );
    assert!(pass);
}

#[test]
fn criterion_07_structure_31_11_5() {
    let css = reference::css_31_11_5();
    let (_, gens, chain) = image(&css);
    let mut dims = chain.block_dims();
    dims.sort_unstable();
    let single = single_block_group(&gens, 11, chain.decomposition.as_deref()).unwrap();
    let sl5 = sl_order(5, 2).unwrap();
    let fives: Vec<bool> = single
        .block_dims
        .iter()
        .zip(&single.block_orders)
        .filter(|(d, _)| **d == 5)
        .map(|(_, o)| o.value == sl5)
        .collect();
    let bound = sl_order(10, 2).unwrap().pow(2) * 6u32;
    let g12 = g12_order(&gens, 11, chain.decomposition.as_deref()).unwrap();
    let pass = dims == expected::BLOCKS_31_11_5
        && fives == [true, true]
        && g12.value >= bound
        && bound.bits() > expected::LOG2_BOUND_31_11_5;
    report(
        7,
        pass,
        &format!("blocks {dims:?}, 5-blocks full {fives:?}, |G12| >= |SL(10,2)|^2 * 6 ({} bits)", g12.value.bits()),
    );
    assert!(pass);
}

#[test]
fn criterion_08_coset_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let css = reference::css_15_7_3();
    let aut = intersect_aut(css.c1(), css.c2()).unwrap();
    let mut exhaustive = 0;
    let mut ok = true;
    for p in aut.generators() {
        for b in 0..1u64 << css.k() {
            ok &= verify_coset_action(&css, p, &BitVector::from_u64(css.k(), b)).unwrap();
            exhaustive += 1;
        }
    }
    let mut sampled = 0;
    for css in [reference::css_22_8_4(), reference::css_31_11_5()] {
        let aut = intersect_aut(css.c1(), css.c2()).unwrap();
        for _ in 0..50 {
            let p = random_element(&aut, &mut rng);
            ok &= verify_coset_action(&css, &p, &random_label(css.k(), &mut rng)).unwrap();
            sampled += 1;
        }
    }
    report(8, ok, &format!("{exhaustive} exhaustive [[15,7,3]] checks, {sampled} sampled checks"));
    assert!(ok);
}

fn synthesis_round(data: &AutData, count: usize, controls: usize, rng: &mut impl Rng) -> (usize, usize, usize) {
    let k = data.css().k();
    let (mut exact, mut caught, mut longest) = (0, 0, 0);
    for i in 0..count {
        let target = LogicalMatrix::new(random_invertible(2 * k, rng)).unwrap();
        let w = synthesize(data, &target).unwrap();
        longest = longest.max(w.len());
        if verify_word(data.css(), &w).unwrap() == target {
            exact += 1;
        }
        if i < controls {
            let mut ins = w.instructions.clone();
            ins.remove(rng.gen_range(0..ins.len()));
            let mutated = InstructionWord::from_instructions(data.css(), ins).unwrap();
            if verify_word(data.css(), &mutated).unwrap() != target {
                caught += 1;
            }
        }
    }
    (exact, caught, longest)
}

#[test]
fn criterion_09_synthesis_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (css127, gens) = reference::css_127_7().unwrap();
    let data7 = AutData::with_cap(&css127, &gens, DEFAULT_ELEMENT_CAP).unwrap();
    let css22 = reference::css_22_8_4();
    let aut22 = intersect_aut(css22.c1(), css22.c2()).unwrap();
    let data8 = AutData::new(&css22, &aut22).unwrap();
    let controls = 20;
    let (e7, c7, l7) = synthesis_round(&data7, 100, controls, &mut rng);
    let (e8, c8, l8) = synthesis_round(&data8, 100, controls, &mut rng);
    let pass = e7 == 100 && e8 == 100 && c7 == controls && c8 == controls;
    report(
        9,
        pass,
        &format!(
            "k=7: {e7}/100 exact, {c7}/{controls} mutations caught, longest {l7}; k=8: {e8}/100 exact, {c8}/{controls} caught, longest {l8}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_block_identities() {
    let reports: Vec<_> = [2, 3, 4].iter().map(|&q| check_identities(q).unwrap()).collect();
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            [
                ("commutator", r.commutator),
                ("one-block diagonal", r.diagonal_one_block),
                ("two-block diagonal", r.diagonal_two_blocks),
            ]
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(move |(name, _)| format!("{name} over GF({})", r.q))
        })
        .collect();
    // the printed one-block factors multiply to diag(1/t, t, 1, 1); fields
    // where t = 1/t for every t cannot tell the two apart
    let t = Gf4::OMEGA;
    let prod = Matrix::product(4, diagonal_one_block_factors(t).iter());
    let diag: Vec<u8> = (0..4).map(|i| prod.get(i, i).value()).collect();
    let detail = format!(
        "failing: {failing:?}; GF(4) one-block product at t = w has diagonal {diag:?} (w^-1 = {})",
        (Gf4::one() / t).value()
    );
    report(10, failing.is_empty(), &detail);
    // known red: only the one-block factorization over GF(4) fails
    assert_eq!(failing, ["one-block diagonal over GF(4)"]);
    assert_eq!(diag, [(Gf4::one() / t).value(), t.value(), 1, 1]);
}

fn random_code(n: usize, k: usize, rng: &mut impl Rng) -> Option<LinearCode> {
    let m = BitMatrix::from_fn(k, n, |_, _| rng.gen_bool(0.5));
    (m.rank() == k).then(|| LinearCode::from_generator(m).unwrap())
}

fn random_stabilizer(n: usize, rng: &mut impl Rng) -> Option<StabilizerCode> {
    let r = rng.gen_range(1..n);
    let mut gens: Vec<Gf4Vector> = Vec::new();
    for _ in 0..50 {
        let s: String = (0..n).map(|_| ['0', '1', 'w', 'W'][rng.gen_range(0..4)]).collect();
        let v = Gf4Vector::parse(&s).unwrap();
        if gens.len() < r && gens.iter().all(|g| !symplectic_inner(g, &v).unwrap()) {
            gens.push(v);
        }
    }
    StabilizerCode::from_stabilizers(gens, n).ok()
}

#[test]
fn criterion_11_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut codes, mut agree) = (0, 0);
    while codes < 50 {
        let n = rng.gen_range(3..=8);
        let k = rng.gen_range(1..n);
        let Some(c) = random_code(n, k, &mut rng) else { continue };
        codes += 1;
        let fast = automorphism_group(&c).unwrap();
        let slow = brute_force_aut(&c).unwrap();
        if fast.order() == slow.order() && slow.generators().iter().all(|p| fast.contains(p)) {
            agree += 1;
        }
    }
    let (mut stabs, mut stab_agree) = (0, 0);
    while stabs < 40 {
        let n = rng.gen_range(2..=6);
        let Some(code) = random_stabilizer(n, &mut rng) else { continue };
        stabs += 1;
        let fast = stab_aut_group(&code).unwrap();
        let slow = brute_force_stab_aut(&code).unwrap();
        if fast.order() == slow.order() && slow.generators().iter().all(|p| fast.contains(p)) {
            stab_agree += 1;
        }
    }
    let pass = agree == codes && stab_agree == stabs;
    report(11, pass, &format!("binary codes {agree}/{codes}, stabilizer codes {stab_agree}/{stabs}"));
    assert!(pass);
}

#[test]
fn criterion_12_phase_residues() {
    let css = reference::css_15_7_3();
    let doubly_even = css.c2().classify().doubly_even;
    let phase = phase_action(&css).unwrap();
    // independent exhaustive check over every coset and every inner word
    let inner = css.c2().codewords().unwrap();
    let mut constant = 0;
    for b in 0..1u64 << css.k() {
        let beta = BitVector::from_u64(css.k(), b);
        let rep = css.coset_state(&beta).unwrap().representative;
        let r = rep.weight() % 4;
        if inner.iter().all(|c| rep.xor(c).weight() % 4 == r) && phase.residue(&beta) as usize == r {
            constant += 1;
        }
    }
    let rejected = matches!(phase_action(&reference::css_22_8_4()), Err(Error::NotDoublyEven(_)));
    let pass = doubly_even && constant == 1 << css.k() && rejected;
    report(
        12,
        pass,
        &format!("[15,4,8] doubly even {doubly_even}, constant residues on {constant}/128 cosets, [[22,8,4]] rejected {rejected}"),
    );
    assert!(pass);
}

#[test]
fn criterion_13_family_checks() {
    let mut degrees: Vec<usize> = factor_cyclic(31).unwrap().iter().filter_map(|f| f.degree()).collect();
    degrees.sort_unstable();
    let (outer, inner) = reference::cyclic_specs_31();
    let blocks = cyclic_block_structure(&outer, &inner).unwrap().factor_degrees;
    let rm: Vec<bool> = [(1, 1, 3), (1, 2, 4), (0, 1, 4)].iter().map(|&(r, s, m)| rm_block_check(r, s, m).unwrap()).collect();
    let pass = degrees == expected::FACTOR_DEGREES_31 && blocks == expected::BLOCKS_31_11_5 && rm.iter().all(|&x| x);
    report(13, pass, &format!("factor degrees {degrees:?}, cyclic blocks {blocks:?}, RM checks {rm:?}"));
    assert!(pass);
}
