use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ytwo_core::clifford::{Algebra, Element};
use ytwo_core::gf2ring::{EvalMap, FfMatrix, FiniteField};
use ytwo_core::presentation::{random_word, Evaluator};
use ytwo_core::quadspace::QuadSpace;
use ytwo_core::spectool::{dickson, specialize, RepKind};
use ytwo_core::{Laurent, Qe, Scalar};

/// Exponent sets, multiplied by naive convolution mod 2.
fn naive_mul(a: &BTreeSet<i32>, b: &BTreeSet<i32>) -> BTreeSet<i32> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            if !out.remove(&(x + y)) {
                out.insert(x + y);
            }
        }
    }
    out
}

fn exps() -> impl Strategy<Value = BTreeSet<i32>> {
    prop::collection::btree_set(-70..70i32, 0..12)
}

fn laurent() -> impl Strategy<Value = Laurent> {
    exps().prop_map(Laurent::from_exponents)
}

fn qe() -> impl Strategy<Value = Qe> {
    (laurent(), laurent()).prop_map(|(a, b)| Qe::new(a, b))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Laurent>> {
    prop::collection::vec(prop::collection::btree_set(-4..4i32, 0..3).prop_map(Laurent::from_exponents), n)
}

proptest! {
    #[test]
    fn laurent_mul_matches_convolution(a in exps(), b in exps()) {
        let got = &Laurent::from_exponents(a.clone()) * &Laurent::from_exponents(b.clone());
        let want: BTreeSet<i32> = naive_mul(&a, &b);
        prop_assert_eq!(got.exponents().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &a).is_zero());
        // Frobenius
        prop_assert_eq!((&a + &b).square(), &a.square() + &b.square());
    }

    #[test]
    fn laurent_json_roundtrip(a in laurent()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Laurent>(&s).unwrap(), a);
    }

    #[test]
    fn qe_ring_axioms(a in qe(), b in qe(), c in qe()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        // the norm is multiplicative
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
    }

    #[test]
    fn alpha_powers(k in -40i64..40) {
        let x = Qe::alpha_pow(k);
        prop_assert!((&x * &Qe::alpha_pow(-k)).is_one());
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in qe(), b in qe(), n in prop::sample::select(vec![5u32, 7, 9, 11])) {
        let map = EvalMap::new(n, None).unwrap();
        let f = map.field();
        prop_assert_eq!(map.eval_qe(&(&a * &b)), f.mul(map.eval_qe(&a), map.eval_qe(&b)));
        prop_assert_eq!(map.eval_qe(&(&a + &b)), map.eval_qe(&a) ^ map.eval_qe(&b));
    }

    #[test]
    fn polarization(x in vector(5), y in vector(5)) {
        let sp = QuadSpace::new(4).unwrap();
        let xy: Vec<Laurent> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = &(&sp.q_eval(&xy) + &sp.q_eval(&x)) + &sp.q_eval(&y);
        prop_assert_eq!(lhs, sp.bilin(&x, &y));
        prop_assert!(sp.bilin(&x, &x).is_zero());
    }

    #[test]
    fn clifford_vectors_square_to_q(x in vector(4), y in vector(4)) {
        let alg = Algebra::new(3);
        let (vx, vy) = (alg.vector(&x), alg.vector(&y));
        prop_assert_eq!(alg.mul(&vx, &vx), Element::scalar(alg.space().q_eval(&x)));
        prop_assert_eq!(alg.anticommutator(&vx, &vy), Element::scalar(alg.space().bilin(&x, &y)));
    }

    #[test]
    fn clifford_associative_and_transpose_reverses(x in vector(4), y in vector(4), z in vector(4)) {
        let alg = Algebra::new(3);
        let (a, b, c) = (alg.vector(&x), alg.vector(&y), alg.vector(&z));
        let ab = alg.mul(&a, &b);
        let abc = alg.mul(&ab, &c);
        prop_assert_eq!(abc.clone(), alg.mul(&a, &alg.mul(&b, &c)));
        prop_assert_eq!(alg.transpose(&abc), alg.mul(&alg.mul(&c, &b), &a));
        let e = ab.add(&c);
        prop_assert_eq!(alg.transpose(&alg.mul(&e, &abc)), alg.mul(&alg.transpose(&abc), &alg.transpose(&e)));
    }

    #[test]
    fn matrix_encoding_roundtrip(d in 1u32..=8, seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let f = FiniteField::with_degree(d).unwrap();
        let m = FfMatrix::from_fn(rows, cols, |i, j| {
            let x = seed.wrapping_add((i * 31 + j) as u64).wrapping_mul(6364136223846793005);
            ((x >> 33) as u32) & (f.order() - 1)
        });
        let mut bytes = Vec::new();
        m.encode(d, &mut bytes);
        prop_assert_eq!(bytes.len(), (rows * cols * d as usize).div_ceil(8));
        prop_assert_eq!(FfMatrix::decode(rows, cols, d, &bytes), m);
    }

    #[test]
    fn words_preserve_the_form(seed in any::<u64>(), len in 0usize..25) {
        let phi = ytwo_core::ortho_rep::PhiRep::new(4).unwrap();
        let ev = Evaluator::new(&phi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, 4, len, true);
        prop_assert!(phi.space().preserves(&ev.evaluate(&w).unwrap()));
    }
}

/// Products of an even number of specialized transvections have Dickson
/// invariant 0 (odd m, nondegenerate form).
#[test]
fn dickson_of_even_transvection_products() {
    use rand::Rng;
    let r = specialize(3, 5, RepKind::Phi).unwrap();
    let f = r.field();
    let mut trans = vec![r.tau().unwrap().clone()];
    trans.extend((1..3).map(|i| r.s_tilde(i).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let len = 2 * rng.gen_range(1..=8);
        let mut x = FfMatrix::identity(4);
        for _ in 0..len {
            x = x.mul(f, &trans[rng.gen_range(0..trans.len())]);
        }
        assert_eq!(dickson(f, &x, 3).unwrap(), 0);
        let y = x.mul(f, &trans[0]);
        assert_eq!(dickson(f, &y, 3).unwrap(), 1);
    }
}
