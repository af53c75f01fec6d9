use super::*;
use crate::ffield::make_field;

fn family2() -> BivarPoly {
    let k = make_field(2, 1).unwrap();
    BivarPoly::from_int_terms(&k, &[(0, 3, 1), (1, 3, 1), (0, 1, 1), (1, 1, 1), (3, 0, 1)])
}

fn family3() -> BivarPoly {
    let k = make_field(3, 1).unwrap();
    BivarPoly::from_int_terms(&k, &[(0, 4, 1), (1, 4, 1), (0, 1, 1), (1, 1, 1), (4, 0, -1)])
}

fn ef(ps: &[PlaceExt]) -> Vec<(u64, u64)> {
    ps.iter().map(|p| (p.e, p.f)).collect()
}

#[test]
fn family_q2_at_px_trace() {
    let f = family2();
    let k = f.field().clone();
    let ps = places_above(&f, &RatPlace::at(&k.zero()), Side::X, DEFAULT_MAX_DEPTH).unwrap();
    assert_eq!(ef(&ps), vec![(1, 1), (2, 1)]);
    let q = &ps[0];
    assert_eq!(q.valuation_of_y().unwrap(), Some(3));
    assert_eq!(q.levels[0].polygon, vec![(0, 3), (1, 0), (3, 0)]);
    assert_eq!(q.levels[0].slope, (-3, 1));

    let qp = &ps[1];
    assert_eq!(qp.levels.len(), 2);
    let l0 = &qp.levels[0];
    assert_eq!(l0.slope, (0, 1));
    assert_eq!(l0.residual, FFPoly::from_ints(&k, &[1, 1]));
    assert_eq!(l0.multiplicity, 2);
    assert!(l0.root.is_one());
    let l1 = &qp.levels[1];
    assert_eq!(l1.polygon, vec![(0, 3), (2, 0), (3, 0)]);
    assert_eq!((l1.slope, l1.length), ((-3, 2), 2));
    let y1 = BivarPoly::from_int_terms(&k, &[(0, 1, 1), (0, 0, 1)]);
    assert_eq!(qp.valuation(&y1).unwrap(), Some(3));
    assert_eq!((qp.dmin, qp.dmax, qp.d_exact), (2, 6, None));
}

#[test]
fn family_q3_at_px() {
    let f = family3();
    let k = f.field().clone();
    let ps = places_above(&f, &RatPlace::at(&k.zero()), Side::X, DEFAULT_MAX_DEPTH).unwrap();
    assert_eq!(ef(&ps), vec![(1, 1), (3, 1)]);
    assert!(ps[1].is_wild());
    assert!(ps[1].dmin >= 3 && ps[1].dmin <= ps[1].dmax);
}

#[test]
fn linear_fibre_is_one_place() {
    let k = make_field(5, 1).unwrap();
    let f = BivarPoly::from_int_terms(&k, &[(0, 1, 1), (1, 0, -1)]);
    for p in [
        RatPlace::at(&k.zero()),
        RatPlace::at(&k.from_int(3)),
        RatPlace::infinity(&k),
    ] {
        let ps = places_above(&f, &p, Side::X, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(ef(&ps), vec![(1, 1)]);
    }
}

#[test]
fn family_at_infinity_and_y_side() {
    let f = family2();
    let k = f.field().clone();
    let inf = places_above(&f, &RatPlace::infinity(&k), Side::X, DEFAULT_MAX_DEPTH).unwrap();
    assert_eq!(ef(&inf), vec![(3, 1)]);
    assert_eq!(
        (inf[0].dmin, inf[0].dmax, inf[0].d_exact),
        (2, 2, Some(2))
    );
    let py = places_above(&f, &RatPlace::at(&k.zero()), Side::Y, DEFAULT_MAX_DEPTH).unwrap();
    assert_eq!(ef(&py), vec![(3, 1)]);
    // the same place seen from the x side: nu(x) = 1 there, nu(y) = 3
    assert_eq!(py[0].valuation(&BivarPoly::x(&k)).unwrap(), Some(1));
    assert_eq!(py[0].valuation_of_y().unwrap(), Some(3));
}

#[test]
fn residue_extension_gives_f_two() {
    // y^2 + y + 1 over GF(2)(x): inert everywhere finite
    let k = make_field(2, 1).unwrap();
    let f = BivarPoly::from_int_terms(&k, &[(0, 2, 1), (0, 1, 1), (0, 0, 1)]);
    let ps = places_above(&f, &RatPlace::at(&k.zero()), Side::X, DEFAULT_MAX_DEPTH).unwrap();
    assert_eq!(ef(&ps), vec![(1, 2)]);
    assert_eq!(ps[0].degree(), 2);
}

#[test]
fn eisenstein_examples() {
    let f = family2();
    let k2 = f.field().clone();
    assert!(eisenstein_at(&f, &RatPlace::infinity(&k2)));
    let k5 = make_field(5, 1).unwrap();
    let a = BivarPoly::from_int_terms(&k5, &[(0, 2, 1), (1, 0, -1)]);
    assert!(eisenstein_at(&a, &RatPlace::at(&k5.zero())));
    let b = BivarPoly::from_int_terms(&k5, &[(0, 2, 1), (2, 0, -1)]);
    assert!(!eisenstein_at(&b, &RatPlace::at(&k5.zero())));
}

#[test]
fn tame_bounds() {
    let k = make_field(5, 1).unwrap();
    let f = BivarPoly::from_int_terms(&k, &[(0, 3, 1), (1, 0, -1)]);
    let ps = places_above(&f, &RatPlace::at(&k.zero()), Side::X, DEFAULT_MAX_DEPTH).unwrap();
    assert_eq!(ef(&ps), vec![(3, 1)]);
    assert_eq!((ps[0].dmin, ps[0].dmax, ps[0].d_exact), (2, 2, Some(2)));
    let g = BivarPoly::from_int_terms(&k, &[(0, 2, 1), (0, 0, -1), (1, 0, -1)]);
    let ps = places_above(&g, &RatPlace::at(&k.from_int(2)), Side::X, 8).unwrap();
    assert!(ps.iter().all(|p| p.d_exact == Some(p.e - 1)));
}

#[test]
fn inseparable_is_reported() {
    let k = make_field(2, 1).unwrap();
    let f = BivarPoly::from_int_terms(&k, &[(0, 2, 1), (1, 0, 1)]);
    assert!(matches!(
        places_above(&f, &RatPlace::at(&k.zero()), Side::X, 8),
        Err(Error::Inseparable)
    ));
}

#[test]
fn depth_cap_is_reported() {
    let f = family2();
    let k = f.field().clone();
    assert_eq!(
        places_above(&f, &RatPlace::at(&k.zero()), Side::X, 1).unwrap_err(),
        Error::DepthExceeded(1)
    );
}
