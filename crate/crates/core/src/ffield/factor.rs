//! Factorization over GF(p^k): squarefree decomposition, distinct-degree
//! splitting, then randomized equal-degree splitting.
//!
//! Equal-degree splitting never raises to exponents like (Q^d - 1)/2 directly.
//! For a random `a` in GF(Q)[X]/(f) it forms the norm (odd p) or trace (p = 2)
//! down to GF(p) from iterated p-th powers, which only ever needs exponent p.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FFPoly, FiniteField};

/// Seed of the equal-degree splitting generator. The factor list is sorted,
/// so results do not depend on it; only running time does.
pub const DEFAULT_SEED: u64 = 0x7077_e21a_b5ee_d001;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Replaces the process-wide splitting seed.
pub fn set_factor_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn factor_seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients. Panics on the zero polynomial.
pub fn poly_factor(f: &FFPoly) -> Vec<(FFPoly, usize)> {
    poly_factor_seeded(f, factor_seed())
}

pub fn poly_factor_seeded(f: &FFPoly, seed: u64) -> Vec<(FFPoly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (f.coeffs().len() as u64));
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (d, part) in distinct_degree(&g) {
            let mut pieces = Vec::new();
            equal_degree(&part, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|h| (h, mult)));
        }
    }
    out.sort();
    out
}

/// Squarefree decomposition `f = lc * prod g_i^i`; returns the nonconstant
/// monic `g_i` with their exponents.
pub fn squarefree_decomposition(f: &FFPoly) -> Vec<(FFPoly, usize)> {
    let mut out = Vec::new();
    sff_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    // merge equal multiplicities that arise from the p-th root recursion
    let mut merged: Vec<(FFPoly, usize)> = Vec::new();
    for (g, m) in out {
        if let Some(last) = merged.last_mut() {
            if last.1 == m {
                last.0 = &last.0 * &g;
                continue;
            }
        }
        merged.push((g, m));
    }
    merged
}

fn sff_rec(f: &FFPoly, scale: usize, out: &mut Vec<(FFPoly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let field = f.field().clone();
    let p = field.p() as usize;
    let df = f.derivative();
    if df.is_zero() {
        // f = g(X^p) = h^p
        sff_rec(&pth_root_poly(f), scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.degree().unwrap_or(0) > 0 {
        sff_rec(&pth_root_poly(&c), scale * p, out);
    }
}

/// For `f` with only exponents divisible by p, the polynomial `h` with `h^p = f`.
fn pth_root_poly(f: &FFPoly) -> FFPoly {
    let field = f.field().clone();
    let p = field.p() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| c.pth_root())
        .collect();
    FFPoly::new(&field, coeffs)
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &FFPoly) -> Vec<(usize, FFPoly)> {
    let field = f.field().clone();
    let x = FFPoly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_q_mod(&rest);
        let g = rest.gcd(&(&h - &x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((n, rest));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
fn equal_degree(f: &FFPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FFPoly>) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field().clone();
    loop {
        let a = random_poly(&field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = splitting_element(&a, f, d);
        let g = f.gcd(&s);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = f.div_exact(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

/// Norm- or trace-based splitting element for degree-`d` components.
fn splitting_element(a: &FFPoly, f: &FFPoly, d: usize) -> FFPoly {
    let field = f.field();
    let p = field.p() as u64;
    let steps = field.degree() * d;
    let mut cur = a.rem(f);
    if p == 2 {
        let mut tr = cur.clone();
        for _ in 1..steps {
            cur = cur.pow_p_mod(f);
            tr = &tr + &cur;
        }
        tr
    } else {
        let mut norm = cur.clone();
        for _ in 1..steps {
            cur = cur.pow_p_mod(f);
            norm = norm.mulmod(&cur, f);
        }
        let chi = norm.powmod((p - 1) / 2, f);
        &chi - &FFPoly::one(field)
    }
}

fn random_poly(field: &FiniteField, n: usize, rng: &mut ChaCha8Rng) -> FFPoly {
    let p = field.p();
    let coeffs = (0..n)
        .map(|_| {
            let digits: Vec<u32> = (0..field.degree()).map(|_| rng.gen_range(0..p)).collect();
            field.from_coeffs(&digits)
        })
        .collect();
    FFPoly::new(field, coeffs)
}

/// Ben-Or test; false for constants.
pub fn is_irreducible(f: &FFPoly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let x = FFPoly::x(f.field());
    let mut h = x.rem(&f);
    for _ in 1..=n / 2 {
        h = h.pow_q_mod(&f);
        if f.gcd(&(&h - &x)).degree().unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}

/// Distinct roots of `f` in its coefficient field, ascending.
pub fn roots_in_field(f: &FFPoly) -> Vec<super::FFElem> {
    roots_seeded(f, factor_seed())
}

pub(crate) fn roots_seeded(f: &FFPoly, seed: u64) -> Vec<super::FFElem> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let field = f.field().clone();
    let m = f.monic();
    let x = FFPoly::x(&field);
    let xq = x.pow_q_mod(&m);
    let g = m.gcd(&(&xq - &x));
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lin = Vec::new();
    equal_degree(&g, 1, &mut rng, &mut lin);
    let mut roots: Vec<_> = lin.into_iter().map(|l| -&l.coeff(0)).collect();
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn expand(f: &[(FFPoly, usize)], field: &FiniteField) -> FFPoly {
        f.iter()
            .fold(FFPoly::one(field), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }

    #[test]
    fn factor_examples() {
        let f2 = make_field(2, 1).unwrap();
        // y^3 + y = y (y+1)^2
        let f = FFPoly::from_ints(&f2, &[0, 1, 0, 1]);
        let fac = poly_factor(&f);
        assert_eq!(
            fac,
            vec![
                (FFPoly::from_ints(&f2, &[0, 1]), 1),
                (FFPoly::from_ints(&f2, &[1, 1]), 2)
            ]
        );
        let f3 = make_field(3, 1).unwrap();
        // y^4 + y = y (y+1)^3
        let f = FFPoly::from_ints(&f3, &[0, 1, 0, 0, 1]);
        assert_eq!(
            poly_factor(&f),
            vec![
                (FFPoly::from_ints(&f3, &[0, 1]), 1),
                (FFPoly::from_ints(&f3, &[1, 1]), 3)
            ]
        );
        let f5 = make_field(5, 1).unwrap();
        let x = FFPoly::x(&f5);
        assert_eq!(poly_factor(&x), vec![(x.clone(), 1)]);
    }

    #[test]
    fn factor_over_extension_roundtrip() {
        let f9 = make_field(3, 2).unwrap();
        let g = f9.generator();
        // (X - g)^2 (X^2 + g) (X + 1)
        let a = FFPoly::linear(&g).pow(2);
        let b = FFPoly::new(&f9, vec![g.clone(), f9.zero(), f9.one()]);
        let c = FFPoly::from_ints(&f9, &[1, 1]);
        let f = &(&a * &b) * &c;
        let fac = poly_factor(&f);
        assert_eq!(expand(&fac, &f9), f.monic());
        for (h, _) in &fac {
            assert!(is_irreducible(h));
        }
    }

    #[test]
    fn x_pow_q_minus_x_splits_completely() {
        let f4 = make_field(2, 2).unwrap();
        let f = &FFPoly::monomial(f4.one(), 4) - &FFPoly::x(&f4);
        let roots = roots_in_field(&f);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
    }
}
