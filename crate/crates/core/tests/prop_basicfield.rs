mod common;

use common::*;
use proptest::prelude::*;
use towerlab::basicfield::{genus_basic, ram_table, zeta_genus};
use towerlab::ffield::BivarPoly;
use towerlab::omfactor::is_irreducible_over_ratfield;
use towerlab::par::Exec;
use towerlab::Error;

/// Non-skew F of bidegree at most (3, 3).
fn non_skew() -> impl Strategy<Value = BivarPoly> {
    (
        prop::sample::select(&[(2u32, 1usize), (3, 1), (5, 1), (2, 2)][..]),
        2usize..=3,
        prop::collection::vec((0usize..=3, 0usize..=3, any::<u64>()), 1..8),
    )
        .prop_map(|(pk, n, terms)| {
            let k = field(pk);
            let mut t: Vec<_> = terms.into_iter().filter(|&(i, j, _)| i <= n && j < n).collect();
            t.push((0, n, 1));
            t.push((n, 0, 1));
            bivar(&k, &t)
        })
        .prop_filter("non-skew", |f| f.deg_x() == f.deg_y())
}

fn separable_both_ways(f: &BivarPoly) -> bool {
    [f.clone(), f.swap()].iter().all(|g| {
        let d = g.deriv_y();
        !d.is_zero() && !g.resultant_y(&d).is_zero()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn genus_does_not_depend_on_the_base_variable(f in non_skew()) {
        prop_assume!(separable_both_ways(&f));
        prop_assume!(is_irreducible_over_ratfield(&f) == Ok(true));
        prop_assume!(is_irreducible_over_ratfield(&f.swap()) == Ok(true));
        let (Ok(a), Ok(b)) = (genus_basic(&f, 8), genus_basic(&f.swap(), 8)) else {
            return Ok(());
        };
        // intervals from both sides contain the true genus
        prop_assert!(a.genus <= b.genus_max && b.genus <= a.genus_max, "{}: {:?} vs {:?}", f, a, b);
        if a.exact && b.exact {
            prop_assert_eq!(a.genus, b.genus);
        }
    }

    #[test]
    fn exact_different_degree_is_even(f in non_skew()) {
        prop_assume!(separable_both_ways(&f));
        prop_assume!(is_irreducible_over_ratfield(&f) == Ok(true));
        let Ok(rt) = ram_table(&f, 8, Exec::Sequential) else { return Ok(()) };
        let g = match rt.genus() {
            Ok(g) => g,
            Err(Error::NotAbsolutelyIrreducible(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{f}: {e}"))),
        };
        if g.exact {
            prop_assert_eq!(g.diff_degree_bounds.0 % 2, 0);
            prop_assert_eq!(g.diff_degree_bounds.0, g.diff_degree_bounds.1);
        }
        prop_assert!(g.genus <= g.genus_max);
    }

    #[test]
    fn curves_linear_in_y_are_rational(
        k in small_field(),
        a in prop::collection::vec(any::<u64>(), 1..4),
        b in prop::collection::vec(any::<u64>(), 1..4),
    ) {
        // y a(x) - b(x)
        let ap = poly(&k, &a);
        let bp = poly(&k, &b);
        prop_assume!(!ap.is_zero() && ap.gcd(&bp).degree() == Some(0));
        let f = &(&BivarPoly::from_x_poly(&ap) * &BivarPoly::y(&k)) - &BivarPoly::from_x_poly(&bp);
        let g = genus_basic(&f, 8).unwrap();
        prop_assert_eq!((g.genus, g.exact), (0, true));
    }
}

#[test]
fn rational_and_elliptic_oracles_agree() {
    let k = field((3, 1));
    let f = BivarPoly::from_int_terms(&k, &[(1, 1, 1), (2, 0, -1), (0, 0, -1)]);
    assert_eq!(genus_basic(&f, 8).unwrap().genus, 0);
    assert_eq!(zeta_genus(&f, 1).unwrap(), 0);
}
