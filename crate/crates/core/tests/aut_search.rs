use autgate::aut::{automorphism_group, brute_force_aut, intersect_aut, is_automorphism};
use autgate::codes::LinearCode;
use autgate::gf2::BitMatrix;
use autgate::perm::Permutation;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn order(c: &LinearCode) -> BigUint {
    automorphism_group(c).unwrap().order()
}

#[test]
fn self_orthogonal_22_7_has_order_336() {
    assert_eq!(order(&LinearCode::self_orthogonal_22_7()), BigUint::from(336u32));
}

#[test]
fn bch_dual_31_10_has_order_155() {
    let c = LinearCode::bch_dual_31_10();
    let g = automorphism_group(&c).unwrap();
    assert_eq!(g.order(), BigUint::from(155u32));
    assert!(g.contains(&Permutation::shift(31, 1)));
}

#[test]
fn aut_equals_aut_of_dual() {
    let codes = [
        LinearCode::self_orthogonal_22_7(),
        LinearCode::simplex(4).unwrap(),
        LinearCode::reed_muller(1, 4).unwrap(),
        LinearCode::bch_31_21(),
    ];
    for c in codes {
        let g = automorphism_group(&c).unwrap();
        let d = c.dual();
        let h = automorphism_group(&d).unwrap();
        assert_eq!(g.order(), h.order());
        for p in g.generators() {
            assert!(is_automorphism(&c, p).unwrap());
            assert!(is_automorphism(&d, p).unwrap());
            assert!(h.contains(p));
        }
    }
}

#[test]
fn rm_pair_contains_affine_group() {
    let a = LinearCode::reed_muller(1, 3).unwrap();
    let b = LinearCode::reed_muller(0, 3).unwrap();
    let g = intersect_aut(&a, &b).unwrap();
    assert_eq!(g.order(), BigUint::from(1344u32));
    // x -> x + e0 and the linear map swapping x0, x1
    let translate = Permutation::from_images((0..8).map(|j| j ^ 1).collect()).unwrap();
    let swap = Permutation::from_images(
        (0..8usize).map(|j| (j & !3) | ((j & 1) << 1) | ((j >> 1) & 1)).collect(),
    )
    .unwrap();
    assert!(g.contains(&translate) && g.contains(&swap));
}

#[test]
fn backtrack_matches_brute_force_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(4..=8);
        let k = rng.gen_range(2..=4.min(n - 1));
        let m = BitMatrix::from_fn(k, n, |_, _| rng.gen_bool(0.5));
        if m.rank() != k {
            continue;
        }
        let c = LinearCode::from_generator(m).unwrap();
        let fast = automorphism_group(&c).unwrap();
        let slow = brute_force_aut(&c).unwrap();
        assert_eq!(fast.order(), slow.order(), "{}", c.serialize());
        for p in slow.generators() {
            assert!(fast.contains(p));
        }
        done += 1;
    }
}
