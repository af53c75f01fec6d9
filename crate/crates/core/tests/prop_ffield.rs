mod common;

use common::*;
use proptest::prelude::*;
use towerlab::ffield::{
    embed, make_field, poly_factor, qth_root, BivarPoly, FFPoly, FieldEmbedding,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factor_round_trip(k in small_field(), idx in prop::collection::vec(any::<u64>(), 1..10)) {
        let f = poly(&k, &idx);
        prop_assume!(f.degree().unwrap_or(0) > 0);
        let fs = poly_factor(&f);
        let mut prod = FFPoly::constant(f.leading().unwrap().clone());
        let mut deg = 0;
        for (g, e) in &fs {
            prop_assert!(g.is_monic());
            prod = &prod * &g.pow(*e as u64);
            deg += g.degree().unwrap() * e;
        }
        prop_assert_eq!(prod, f.clone());
        prop_assert_eq!(deg, f.degree().unwrap());
    }

    #[test]
    fn embedding_is_an_injective_ring_map(
        pk in prop::sample::select(&[(2u32, 1usize, 2usize), (2, 2, 4), (3, 1, 2), (2, 1, 3), (3, 2, 4), (2, 2, 6)][..]),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let src = make_field(pk.0, pk.1).unwrap();
        let dst = make_field(pk.0, pk.2).unwrap();
        let (x, y) = (elem(&src, a), elem(&src, b));
        let emb = FieldEmbedding::canonical(&src, &dst).unwrap();
        prop_assert_eq!(emb.apply(&(&x * &y)), &emb.apply(&x) * &emb.apply(&y));
        prop_assert_eq!(emb.apply(&(&x + &y)), &emb.apply(&x) + &emb.apply(&y));
        prop_assert_eq!(emb.apply(&x) == emb.apply(&y), x == y);
        prop_assert_eq!(embed(&x, &dst).unwrap(), emb.apply(&x));
    }
}

#[test]
fn qth_root_inverts_frobenius() {
    for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 1)] {
        let field = make_field(p, k).unwrap();
        for s in 1..=k {
            let q = (p as u64).pow(s as u32);
            for b in field.elements() {
                let c = qth_root(&b, q).unwrap();
                assert_eq!(c.pow(q), b, "GF({p}^{k}), q = {q}");
            }
        }
    }
}

/// Res_y(F, F_y)(x0) = 0 exactly when F(x0, y) has a repeated root or
/// loses degree, checked at every x0.
#[test]
fn discriminant_detects_bad_fibres() {
    let cases: &[((u32, usize), &[(usize, usize, i64)])] = &[
        ((5, 1), &[(0, 2, 1), (3, 0, -1), (1, 0, -1)]),
        ((2, 1), &[(0, 3, 1), (1, 3, 1), (0, 1, 1), (1, 1, 1), (3, 0, 1)]),
        ((3, 1), &[(0, 4, 1), (1, 4, 1), (0, 1, 1), (1, 1, 1), (4, 0, -1)]),
        ((7, 1), &[(1, 3, 1), (0, 2, 2), (2, 0, 1), (0, 0, 3)]),
        ((3, 1), &[(0, 3, 1), (2, 1, 1), (1, 0, 1)]),
    ];
    for &(pk, terms) in cases {
        let k = field(pk);
        let f = BivarPoly::from_int_terms(&k, terms);
        let n = f.deg_y().unwrap();
        let disc = f.resultant_y(&f.deriv_y());
        assert!(!disc.is_zero());
        for x0 in k.elements() {
            let fib = f.eval_x(&x0);
            let drops = fib.degree() != Some(n);
            let repeated = fib.degree().unwrap_or(0) > 0 && fib.gcd(&fib.derivative()).degree().unwrap_or(0) > 0;
            assert_eq!(disc.eval(&x0).is_zero(), drops || repeated, "{f} at x = {x0}");
        }
    }
}
