mod common;

use common::*;
use proptest::prelude::*;
use towerlab::basicfield::ramification_locus;
use towerlab::ffield::BivarPoly;
use towerlab::omfactor::{
    is_irreducible_over_ratfield, newton_polygon, places_above, Side, DEFAULT_MAX_DEPTH,
};
use towerlab::ratfunc::{places_of_degree, poly_valuation, RatPlace};

fn random_f() -> impl Strategy<Value = BivarPoly> {
    (
        small_field(),
        1usize..=4,
        prop::collection::vec((0usize..=3, 0usize..=4, any::<u64>()), 1..8),
        any::<u64>(),
        0usize..=3,
    )
        .prop_map(|(k, n, terms, lead, lead_x)| {
            let mut t: Vec<_> = terms.into_iter().filter(|&(_, j, _)| j < n).collect();
            t.push((lead_x, n, lead | 1));
            bivar(&k, &t)
        })
}

fn usable(f: &BivarPoly) -> bool {
    let fy = f.deriv_y();
    !fy.is_zero() && !f.resultant_y(&fy).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn local_invariants_over_the_locus(f in random_f()) {
        prop_assume!(usable(&f));
        prop_assume!(is_irreducible_over_ratfield(&f) == Ok(true));
        let n = f.deg_y().unwrap() as u64;
        let p = f.field().p() as u64;
        for place in ramification_locus(&f).unwrap() {
            let qs = match places_above(&f, &place, Side::X, DEFAULT_MAX_DEPTH) {
                Ok(qs) => qs,
                Err(towerlab::Error::DepthExceeded(_)) => continue,
                Err(e) => return Err(TestCaseError::fail(format!("{f} at {place:?}: {e}"))),
            };
            let total: u64 = qs.iter().map(|q| q.e * q.f).sum();
            prop_assert_eq!(total, n, "{} at {:?}", f, place);
            for q in &qs {
                prop_assert!(q.dmin <= q.dmax);
                if q.e % p != 0 {
                    prop_assert_eq!(q.d_exact, Some(q.e - 1));
                    prop_assert_eq!(q.dmin, q.e - 1);
                } else {
                    prop_assert!(q.dmin >= q.e);
                    if let Some(d) = q.d_exact {
                        prop_assert!(d >= q.e);
                    }
                }
            }
        }
    }

    #[test]
    fn polygon_lengths_add_up(f in random_f(), which in 0usize..32) {
        let k = f.field().clone();
        let mut ps = places_of_degree(&k, 1);
        ps.extend(places_of_degree(&k, 2));
        let place = &ps[which % ps.len()];
        let pts: Vec<(usize, i64)> = f
            .y_coeffs()
            .iter()
            .enumerate()
            .filter_map(|(j, c)| poly_valuation(c, place).map(|v| (j, v)))
            .collect();
        prop_assume!(pts.len() >= 2);
        let low = pts.iter().map(|p| p.0).min().unwrap();
        let high = pts.iter().map(|p| p.0).max().unwrap();
        let segs = newton_polygon(&pts).unwrap();
        let len: usize = segs.iter().map(|s| s.length).sum();
        prop_assert_eq!(len, high - low);
        for w in segs.windows(2) {
            let (a, b) = (w[0].slope, w[1].slope);
            prop_assert!(a.0 * b.1 < b.0 * a.1, "slopes increase");
        }
    }
}

#[test]
fn family_is_totally_ramified_over_the_y_place() {
    for (pk, m) in [((2, 1), 3), ((3, 1), 4), ((2, 2), 5), ((5, 1), 6)] {
        let k = field(pk);
        let one = k.one();
        let x = BivarPoly::x(&k);
        let y = BivarPoly::y(&k);
        let g = &x + &BivarPoly::constant(one.clone());
        let f = &(&g * &(&y.pow(m) + &y)) - &x.pow(m);
        let qs = places_above(&f, &RatPlace::at(&k.zero()), Side::Y, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(qs.iter().map(|q| q.e).collect::<Vec<_>>(), vec![m], "q = {}", m - 1);
    }
}
