#![allow(dead_code)]

use proptest::prelude::*;
use towerlab::ffield::{make_field, BivarPoly, FFElem, FFPoly, FiniteField};

/// Fields of order at most 9.
pub const SMALL_FIELDS: &[(u32, usize)] = &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

pub fn field(pk: (u32, usize)) -> FiniteField {
    make_field(pk.0, pk.1).unwrap()
}

pub fn small_field() -> impl Strategy<Value = FiniteField> {
    prop::sample::select(SMALL_FIELDS).prop_map(field)
}

pub fn elem(k: &FiniteField, index: u64) -> FFElem {
    let q = k.order().unwrap();
    k.element(index as u128 % q)
}

pub fn poly(k: &FiniteField, idx: &[u64]) -> FFPoly {
    FFPoly::new(k, idx.iter().map(|&i| elem(k, i)).collect())
}

/// Coefficient indices `(i, j, c)` into a bivariate polynomial.
pub fn bivar(k: &FiniteField, terms: &[(usize, usize, u64)]) -> BivarPoly {
    let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, elem(k, c))).collect();
    BivarPoly::from_terms(k, &t)
}

pub fn fields_with_order(qs: &[u64]) -> Vec<FiniteField> {
    SMALL_FIELDS
        .iter()
        .map(|&pk| field(pk))
        .filter(|k| qs.contains(&(k.order().unwrap() as u64)))
        .collect()
}
