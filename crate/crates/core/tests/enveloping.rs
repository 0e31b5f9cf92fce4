mod common;

use common::*;
use naqm::enveloping::{word_from_json, word_to_json};
use naqm::instances::{jordan_matrix_algebra, matrix_algebra, octonion_algebra, pauli_jordan};
use naqm::{Element, Enveloping, Exact, Matrix, MultOp, NaqmError, Scalar, Side, Word};
use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::seq::SliceRandom;

#[test]
fn octonion_left_op_matches_table() {
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    for i in 0..8 {
        let l = env.left_op(&o.basis(i)).unwrap();
        for j in 0..8 {
            let (s, k) = oct_product(i, j);
            for row in 0..8 {
                let want = if row == k { s } else { 0.0 };
                assert_eq!(l.matrix().get(row, j).re, want);
            }
        }
    }
    let e1 = env.left_op(&o.basis(1)).unwrap();
    assert!(e1.act(&o.basis(2)).unwrap().approx_eq(&o.basis(3), 0.0));
    assert!(env.left_op(&o.unit()).unwrap().approx_eq(&env.identity(), 0.0));
}

#[test]
fn octonion_star_of_e7_hat() {
    let o = octonion_algebra::<Exact>();
    let env = Enveloping::new(&o);
    let e7 = env.left_op(&o.basis(7)).unwrap();
    let s = env.star_op(&e7).unwrap();
    assert_eq!(s.matrix(), &e7.matrix().scale(&-Exact::one()));
    assert_eq!(env.star_op(&env.identity()).unwrap().matrix(), env.identity().matrix());
}

#[test]
fn unit_argument_and_pauli_relations() {
    let mut r = rng(1);
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    let a = rand_element(&mut r, 8);
    assert!(env.left_op(&a).unwrap().act(&o.unit()).unwrap().approx_eq(&a, 1e-14));

    let p = pauli_jordan::<Exact>();
    let penv = Enveloping::new(&p);
    let z = penv.left_op(&p.basis(3)).unwrap();
    assert_eq!(z.act(&p.basis(1)).unwrap(), Element::zero(4));
    assert_eq!(z.act(&p.unit()).unwrap(), p.basis(3));
}

#[test]
fn prime_examples() {
    let mut r = rng(2);
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    let (a, b, x) = (
        rand_element(&mut r, 8),
        rand_element(&mut r, 8),
        rand_element(&mut r, 8),
    );
    let la = env.left_op(&a).unwrap();
    assert!(env.prime_op(&la).unwrap().approx_eq(&env.right_op(&a).unwrap(), 1e-14));
    // (â ∘ b̂′)′ ▷ x = b (x a)
    let x_op = la.compose(&env.right_op(&b).unwrap()).unwrap();
    let got = env.prime_op(&x_op).unwrap().act(&x).unwrap();
    let want = o.multiply(&b, &o.multiply(&x, &a).unwrap()).unwrap();
    assert!(got.approx_eq(&want, 1e-12));
    let twice = env.prime_op(&env.prime_op(&x_op).unwrap()).unwrap();
    assert!(twice.approx_eq(&x_op, 1e-12));
}

#[test]
fn provenance_is_required() {
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    let bare = MultOp::from_matrix(Matrix::identity(8));
    assert!(matches!(env.star_op(&bare), Err(NaqmError::UnsupportedOperation(_))));
    assert!(matches!(env.prime_op(&bare), Err(NaqmError::UnsupportedOperation(_))));
    let w = Word::<C>::generator(Side::L, 8);
    assert!(matches!(env.evaluate_word(&w), Err(NaqmError::UnknownSymbol(_))));
}

#[test]
fn evaluate_word_b_operator() {
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    let b = env
        .evaluate_word(&Word::sequence(&[(Side::L, 1), (Side::L, 2), (Side::L, 4)]))
        .unwrap();
    let want = env
        .left_op(&o.basis(1))
        .unwrap()
        .compose(&env.left_op(&o.basis(2)).unwrap())
        .unwrap()
        .compose(&env.left_op(&o.basis(4)).unwrap())
        .unwrap();
    assert!(b.approx_eq(&want, 0.0));
    assert!(env.provenance_residual(&b).unwrap() < 1e-14);
}

#[test]
fn span_closure_dimensions_exact() {
    let cases: Vec<(naqm::AlgebraSpec<Exact>, usize)> = vec![
        (jordan_matrix_algebra(2).unwrap(), 16),
        (jordan_matrix_algebra(3).unwrap(), 81),
        (octonion_algebra(), 64),
    ];
    for (alg, want) in cases {
        let env = Enveloping::new(&alg);
        let sub = env.span_closure(&env.left_generators(), true, 0.0).unwrap();
        assert_eq!(sub.dim, want, "{}", alg.label());
        assert!(sub.closed);
    }
}

#[test]
fn span_closure_of_identity_is_one_dimensional() {
    let o = octonion_algebra::<Exact>();
    let env = Enveloping::new(&o);
    let sub = env.span_closure(&[env.identity()], true, 0.0).unwrap();
    assert_eq!(sub.dim, 1);
    let report = sub.report("id");
    assert_eq!(report["dim"], 1);
    assert_eq!(report["generator_count"], 1);
}

#[test]
fn span_closure_of_associative_left_ops_is_proper() {
    // Left multiplications of M2 generate M2 ⊗ 1, of dimension 4.
    let m = matrix_algebra::<Exact>(2).unwrap();
    let env = Enveloping::new(&m);
    let mut sub = env.span_closure(&env.left_generators(), true, 0.0).unwrap();
    assert_eq!(sub.dim, 4);
    assert!(sub.verify_closed(0.0));
    let both: Vec<_> = env
        .left_generators()
        .into_iter()
        .chain(env.right_generators())
        .collect();
    assert_eq!(env.span_closure(&both, true, 0.0).unwrap().dim, 16);
}

#[test]
fn span_closure_is_order_independent() {
    let mut r = rng(9);
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    // Left operators of a quaternion subalgebra generate a proper subalgebra.
    let gens: Vec<MultOp<C>> = [1, 2, 3].iter().map(|&i| env.left_op(&o.basis(i)).unwrap()).collect();
    let base = env.span_closure(&gens, true, 1e-8).unwrap();
    assert!(base.dim < 64);
    for _ in 0..5 {
        let mut g = gens.clone();
        g.shuffle(&mut r);
        let other = env.span_closure(&g, true, 1e-8).unwrap();
        assert_eq!(other.dim, base.dim);
        for op in &other.basis {
            assert!(base.contains(op, 1e-8));
        }
    }
}

#[test]
fn associative_instance_collapse_exact() {
    let m = matrix_algebra::<Exact>(2).unwrap();
    let env = Enveloping::new(&m);
    for i in 0..4 {
        for j in 0..4 {
            let (a, b) = (m.basis(i), m.basis(j));
            let la = env.left_op(&a).unwrap();
            let lb = env.left_op(&b).unwrap();
            let rb = env.right_op(&b).unwrap();
            assert_eq!(
                la.compose(&lb).unwrap().matrix(),
                env.left_op(&m.multiply(&a, &b).unwrap()).unwrap().matrix()
            );
            assert_eq!(la.compose(&rb).unwrap().matrix(), rb.compose(&la).unwrap().matrix());
            let ra = env.right_op(&a).unwrap();
            assert_eq!(
                ra.compose(&rb).unwrap().matrix(),
                env.right_op(&m.multiply(&b, &a).unwrap()).unwrap().matrix()
            );
        }
    }
}

#[test]
fn commutative_instance_collapse_exact() {
    for alg in [
        jordan_matrix_algebra::<Exact>(2).unwrap(),
        jordan_matrix_algebra::<Exact>(3).unwrap(),
        pauli_jordan(),
    ] {
        let env = Enveloping::new(&alg);
        for i in 0..alg.dim() {
            let a = alg.basis(i);
            assert_eq!(env.left_op(&a).unwrap().matrix(), env.right_op(&a).unwrap().matrix());
        }
    }
}

#[test]
fn word_json_round_trip() {
    let mut r = rng(4);
    for _ in 0..20 {
        let w = rand_word(&mut r, 8, 4);
        let back: Word<C> = word_from_json(&word_to_json(&w)).unwrap();
        let o = octonion_algebra::<C>();
        let env = Enveloping::new(&o);
        assert!(env
            .evaluate_word(&w)
            .unwrap()
            .approx_eq(&env.evaluate_word(&back).unwrap(), 1e-14));
    }
    let bad = serde_json::json!([[{"gen": "Q", "index": 0}]]);
    assert!(word_from_json::<C>(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_exactly(seed in any::<u64>()) {
        let mut r = rng(seed);
        let o = octonion_algebra::<Exact>();
        let env = Enveloping::new(&o);
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            let w = rand_word(r, 8, 3).map_scalar(&|z: &C| Exact::from_ratio((z.re * 8.0).round() as i64, 8));
            env.evaluate_word(&w).unwrap()
        };
        let (x, y, z) = (pick(&mut r), pick(&mut r), pick(&mut r));
        let lhs = x.compose(&y).unwrap().compose(&z).unwrap();
        let rhs = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn module_property(seed in any::<u64>()) {
        let mut r = rng(seed);
        for alg in [octonion_algebra::<C>(), jordan_matrix_algebra::<C>(2).unwrap()] {
            let env = Enveloping::new(&alg);
            let x = rand_op(&env, &mut r, 5);
            let y = rand_op(&env, &mut r, 5);
            let v = rand_element(&mut r, alg.dim());
            let lhs = x.compose(&y).unwrap().act(&v).unwrap();
            let rhs = x.act(&y.act(&v).unwrap()).unwrap();
            prop_assert!(lhs.approx_eq(&rhs, 1e-9 * (1.0 + lhs.max_abs())));
        }
    }

    #[test]
    fn prime_and_star_relation(seed in any::<u64>()) {
        let mut r = rng(seed);
        for alg in [octonion_algebra::<C>(), jordan_matrix_algebra::<C>(2).unwrap(), matrix_algebra::<C>(2).unwrap()] {
            let env = Enveloping::new(&alg);
            let x = rand_op(&env, &mut r, 4);
            let v = rand_element(&mut r, alg.dim());
            let lhs = alg.star(&env.prime_op(&x).unwrap().act(&v).unwrap()).unwrap();
            let rhs = env.star_op(&x).unwrap().act(&alg.star(&v).unwrap()).unwrap();
            prop_assert!(lhs.approx_eq(&rhs, 1e-10 * (1.0 + lhs.max_abs())));
        }
    }

    #[test]
    fn star_op_is_involutive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let o = octonion_algebra::<C>();
        let env = Enveloping::new(&o);
        let x = rand_op(&env, &mut r, 4);
        let back = env.star_op(&env.star_op(&x).unwrap()).unwrap();
        prop_assert!(back.approx_eq(&x, 1e-10 * (1.0 + x.matrix().max_abs())));
    }
}
