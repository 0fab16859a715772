use autgate::aut::{intersect_aut, is_automorphism};
use autgate::gf2::BitMatrix;
use autgate::logical::LogicalMatrix;
use autgate::reference;
use autgate::synthesis::*;
use autgate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible(d: usize, rng: &mut impl Rng) -> BitMatrix {
    loop {
        let m = BitMatrix::from_fn(d, d, |_, _| rng.gen_bool(0.5));
        if m.is_invertible() {
            return m;
        }
    }
}

fn data_22() -> AutData {
    let css = reference::css_22_8_4();
    let aut = intersect_aut(css.c1(), css.c2()).unwrap();
    AutData::new(&css, &aut).unwrap()
}

#[test]
fn factorizations_multiply_back_on_200_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for i in 0..200 {
        let d = 2 + i % 15;
        let m = random_invertible(d, &mut rng);
        let t = transvection_factorization(&m).unwrap();
        let prod = t.iter().fold(BitMatrix::identity(d), |acc, t| acc.mul(&t.matrix()));
        assert_eq!(prod, m);
        let c = column_factorization(&m).unwrap();
        let prod = c.iter().fold(BitMatrix::identity(d), |acc, op| acc.mul(&op.matrix()));
        assert_eq!(prod, m);
        assert!(c.iter().all(|op| !op.rows.contains(&op.col)));
    }
    let singular = BitMatrix::from_strs(&["11", "11"]);
    assert!(matches!(transvection_factorization(&singular), Err(Error::Singular)));
    assert!(matches!(column_factorization(&singular), Err(Error::Singular)));
}

#[test]
fn offdiagonal_blocks_are_exact() {
    let data = data_22();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (id, z) = (BitMatrix::identity(8), BitMatrix::zeros(8, 8));
    for _ in 0..10 {
        let a = BitMatrix::from_fn(8, 8, |_, _| rng.gen_bool(0.5));
        let up = realize_offdiag(&data, &a, Side::Upper).unwrap();
        assert_eq!(verify_word(data.css(), &up).unwrap().matrix(), &BitMatrix::block(&id, &a, &z, &id));
        let low = realize_offdiag(&data, &a, Side::Lower).unwrap();
        assert_eq!(verify_word(data.css(), &low).unwrap().matrix(), &BitMatrix::block(&id, &z, &a, &id));
    }
}

#[test]
fn diagonal_transvections_lift() {
    let data = data_22();
    for (r, c) in [(0, 1), (7, 3), (8, 9), (15, 10)] {
        let t = Transvection::new(r, c, 16).unwrap();
        let w = lift_diagonal_transvection(&data, t).unwrap();
        assert_eq!(verify_word(data.css(), &w).unwrap().matrix(), &t.matrix());
    }
    // cross-block entries are plain off-diagonal words, not commutators
    let cross = Transvection::new(2, 12, 16).unwrap();
    assert!(lift_diagonal_transvection(&data, cross).is_err());
    assert!(Transvection::new(3, 3, 16).is_err());
}

#[test]
fn random_targets_compile_for_both_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let data = data_22();
    for _ in 0..3 {
        let target = LogicalMatrix::new(random_invertible(16, &mut rng)).unwrap();
        let w = synthesize(&data, &target).unwrap();
        assert_eq!(w.logical_effect, target);
        assert_eq!(verify_word(data.css(), &w).unwrap(), target);
    }

    let (css, gens) = reference::css_127_7().unwrap();
    for g in &gens {
        assert!(is_automorphism(css.c1(), g).unwrap() && is_automorphism(css.c2(), g).unwrap());
    }
    let data = AutData::with_cap(&css, &gens, DEFAULT_ELEMENT_CAP).unwrap();
    assert!(data.algebra_is_full());
    let target = LogicalMatrix::new(random_invertible(14, &mut rng)).unwrap();
    let w = synthesize(&data, &target).unwrap();
    assert_eq!(verify_word(&css, &w).unwrap(), target);
}

#[test]
fn mutated_words_fail_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let data = data_22();
    let target = LogicalMatrix::new(random_invertible(16, &mut rng)).unwrap();
    let w = synthesize(&data, &target).unwrap();
    let cnot = w.instructions.iter().position(|i| i.perm.is_none()).unwrap();
    let mut dropped = w.instructions.clone();
    dropped.remove(cnot);
    let dropped = InstructionWord::from_instructions(data.css(), dropped).unwrap();
    assert_ne!(verify_word(data.css(), &dropped).unwrap(), target);

    // replacing a permutation by the identity also changes the effect
    let perm = w.instructions.iter().position(|i| i.perm.as_ref().is_some_and(|p| !p.is_identity())).unwrap();
    let mut replaced = w.instructions.clone();
    replaced[perm] = match replaced[perm].kind {
        InstructionKind::PermBlock1 => Instruction::perm_block1(autgate::Permutation::identity(22)),
        _ => Instruction::perm_block2(autgate::Permutation::identity(22)),
    };
    let replaced = InstructionWord::from_instructions(data.css(), replaced).unwrap();
    assert_ne!(verify_word(data.css(), &replaced).unwrap(), target);
}

#[test]
fn word_documents_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let data = data_22();
    let target = LogicalMatrix::new(random_invertible(16, &mut rng)).unwrap();
    let w = synthesize(&data, &target).unwrap();
    let doc = w.to_document();
    assert!(doc.instructions.iter().filter_map(|e| e.perm.as_ref()).all(|p| p.iter().all(|&x| (1..=22).contains(&x))));
    let text = serde_json::to_string(&doc).unwrap();
    let back: WordDocument = serde_json::from_str(&text).unwrap();
    let w2 = InstructionWord::from_document(&back, data.css()).unwrap();
    assert_eq!(w2.logical_effect, target);
    assert_eq!(w2.cost(), w.cost());
}

#[test]
fn cost_is_additive_under_concatenation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let data = data_22();
    let a = synthesize(&data, &LogicalMatrix::new(random_invertible(16, &mut rng)).unwrap()).unwrap();
    let b = synthesize(&data, &LogicalMatrix::new(random_invertible(16, &mut rng)).unwrap()).unwrap();
    let ab = a.concat(&b);
    let (ca, cb, cab) = (a.cost(), b.cost(), ab.cost());
    assert_eq!(cab.cnot_instructions, ca.cnot_instructions + cb.cnot_instructions);
    assert_eq!(cab.permutations, ca.permutations + cb.permutations);
    assert_eq!(cab.two_qubit_gates, 22 * cab.cnot_instructions);
    assert_eq!(ab.logical_effect, b.logical_effect.mul(&a.logical_effect));
}

#[test]
fn non_spanning_code_is_unsupported() {
    let css = reference::css_15_7_3();
    let aut = intersect_aut(css.c1(), css.c2()).unwrap();
    let data = AutData::new(&css, &aut).unwrap();
    assert!(!data.algebra_is_full());
    let r = synthesize(&data, &LogicalMatrix::identity(14));
    assert!(matches!(r, Err(Error::Unsupported(_))));
}

#[test]
fn small_code_words_pass_coset_simulation() {
    // n = 15 triggers the per-instruction coset simulation
    let css = reference::css_15_7_3();
    let aut = intersect_aut(css.c1(), css.c2()).unwrap();
    let mut ins = vec![Instruction::cnot_1to2(), Instruction::cnot_2to1()];
    for p in aut.generators() {
        ins.push(Instruction::perm_block1(p.clone()));
        ins.push(Instruction::perm_block2(p.inverse()));
    }
    let w = InstructionWord::from_instructions(&css, ins).unwrap();
    assert_eq!(verify_word(&css, &w).unwrap(), w.logical_effect);
}
