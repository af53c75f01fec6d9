//! Truncated power series in T over a finite field, carried as `FFPoly`.

use crate::ffield::{BivarPoly, FFPoly};

pub(crate) fn truncate(a: &FFPoly, prec: usize) -> FFPoly {
    let c = a.coeffs();
    FFPoly::new(a.field(), c[..c.len().min(prec)].to_vec())
}

pub(crate) fn mul_trunc(a: &FFPoly, b: &FFPoly, prec: usize) -> FFPoly {
    truncate(&(&truncate(a, prec) * &truncate(b, prec)), prec)
}

/// Inverse of a unit series modulo `T^prec`.
pub(crate) fn inv_trunc(a: &FFPoly, prec: usize) -> FFPoly {
    let field = a.field();
    let a0 = a.coeff(0);
    let inv0 = a0.inv().expect("series is not a unit");
    let mut out = vec![inv0.clone()];
    for n in 1..prec {
        let mut s = field.zero();
        for k in 1..=n {
            let ak = a.coeff(k);
            if !ak.is_zero() {
                s = &s + &(&ak * &out[n - k]);
            }
        }
        out.push(-&(&s * &inv0));
    }
    FFPoly::new(field, out)
}

/// `H(T, w(T))` modulo `T^prec`.
pub(crate) fn eval_at_series(h: &BivarPoly, w: &FFPoly, prec: usize) -> FFPoly {
    let mut acc = FFPoly::zero(h.field());
    for row in h.y_coeffs().iter().rev() {
        acc = &mul_trunc(&acc, w, prec) + &truncate(row, prec);
    }
    acc
}

/// The root `w` with `w(0) = 0` of `H(T, W)`, modulo `T^prec`. Requires
/// `H(0, 0) = 0` and `H_W(0, 0) != 0`.
pub(crate) fn lift_root(h: &BivarPoly, prec: usize) -> FFPoly {
    let field = h.field();
    let hw = h.deriv_y();
    let mut w = FFPoly::zero(field);
    let mut cur = 1;
    while cur < prec {
        cur = (2 * cur).min(prec);
        let num = eval_at_series(h, &w, cur);
        let den = eval_at_series(&hw, &w, cur);
        w = &w - &mul_trunc(&num, &inv_trunc(&den, cur), cur);
    }
    w
}
