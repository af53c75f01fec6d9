mod common;

use common::*;
use num_integer::Integer;
use proptest::prelude::*;
use towerlab::checker::{
    build_family, check_theorem, verify_family_facts, FamilyParams, C_B_NONZERO, C_DEG_G, C_GCD,
    C_G_AT_A,
};
use towerlab::ffield::{make_field, FFPoly, FieldEmbedding};
use towerlab::Error;

fn family_field(q: u64) -> towerlab::ffield::FiniteField {
    FamilyParams::default_field(q).unwrap()
}

/// Admissible parameters over GF(q).
fn admissible() -> impl Strategy<Value = FamilyParams> {
    (
        prop::sample::select(&[2u64, 3, 4, 5][..]),
        any::<u64>(),
        any::<u64>(),
        prop::collection::vec(any::<u64>(), 1..7),
    )
        .prop_map(|(q, a, b, g)| {
            let k = family_field(q);
            let m = q + 1;
            let g: Vec<u64> = g.into_iter().take(m as usize).collect();
            FamilyParams {
                q,
                a: elem(&k, a),
                b: elem(&k, b),
                g: poly(&k, &g),
            }
        })
        .prop_filter("admissible", |p| p.violations().is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn criterion_holds_on_admissible_families(params in admissible()) {
        let rep = verify_family_facts(&params).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep.checks);
        let v = check_theorem(&rep.spec.f, &FFPoly::linear(&params.a)).unwrap();
        prop_assert!(v.holds, "{}: {:?}", rep.spec.f, v.failed_conditions);
        let h = v.hypotheses.unwrap();
        prop_assert_eq!((h.m, h.r), (params.q + 1, params.q));
    }

    #[test]
    fn verdict_survives_constant_field_extension(params in admissible()) {
        prop_assume!(params.q <= 3);
        let spec = build_family(&params).unwrap();
        let k = &spec.field;
        let big = make_field(k.p(), 2 * k.degree()).unwrap();
        let emb = FieldEmbedding::canonical(k, &big).unwrap();
        let f2 = spec.f.map_coeffs(&emb);
        let xa = FFPoly::linear(&emb.apply(&params.a));
        let v1 = check_theorem(&spec.f, &FFPoly::linear(&params.a)).unwrap();
        let v2 = check_theorem(&f2, &xa).unwrap();
        prop_assert_eq!(v1.holds, v2.holds);
        prop_assert_eq!(v1.hypotheses, v2.hypotheses);
    }

    #[test]
    fn single_violations_are_caught(params in admissible(), which in 0usize..4) {
        let k = params.a.field().clone();
        let m = params.q + 1;
        let mut bad = params.clone();
        let name = match which {
            0 => {
                // deg g = m
                bad.g = &FFPoly::monomial(k.one(), m as usize) + &FFPoly::constant(k.one());
                bad.a = k.zero();
                C_DEG_G
            }
            1 => {
                bad.g = &bad.g - &FFPoly::constant(bad.g.eval(&bad.a));
                if bad.g.is_zero() {
                    bad.g = FFPoly::linear(&bad.a);
                }
                C_G_AT_A
            }
            2 => {
                bad.b = k.zero();
                C_B_NONZERO
            }
            _ => {
                // deg g with gcd(m - deg g, m) > 1
                let Some(d) = (1..m).find(|d| (m - d).gcd(&m) > 1) else { return Ok(()) };
                let c = if params.g.eval(&params.a).is_zero() { k.one() } else { k.zero() };
                let lin = FFPoly::linear(&params.a);
                bad.g = &lin.pow(d as u64) + &FFPoly::constant(if c.is_zero() { k.one() } else { c });
                C_GCD
            }
        };
        let violated: Vec<&str> = bad.violations().iter().map(|v| v.0).collect();
        prop_assert!(violated.contains(&name), "{name}: {violated:?}");
        match build_family(&bad) {
            Err(Error::InvalidParams(msg)) => prop_assert!(msg.contains(name)),
            other => prop_assert!(false, "{name}: {other:?}"),
        }
    }
}
