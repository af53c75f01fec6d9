//! Dense polynomial kernels over the prime field Z/p, on raw `u32` slices.
//!
//! Coefficients are stored low-to-high and always reduced into `[0, p)`.
//! Everything in `FiniteField` bottoms out here.

#[inline]
pub(crate) fn mulp(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn addp(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn subp(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn powp(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a, p);
        }
        a = mulp(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invp(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    powp(a, (p - 2) as u64, p)
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Accumulate in u64 and reduce lazily; p < 2^31 keeps p^2 < 2^62.
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let pp = p as u64;
    let bound = u64::MAX - pp * pp;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let s = &mut acc[i + j];
            *s += x as u64 * y as u64;
            if *s >= bound {
                *s %= pp;
            }
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|s| (s % pp) as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = degree(m).expect("division by zero polynomial");
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    if r.len() <= dm {
        return r;
    }
    let lead_inv = invp(m[dm], p);
    for i in (dm..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let q = mulp(c, lead_inv, p);
        let shift = i - dm;
        for j in 0..=dm {
            r[shift + j] = subp(r[shift + j], mulp(q, m[j], p), p);
        }
    }
    r.truncate(dm);
    trim(&mut r);
    r
}

pub(crate) fn divrem(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let dm = degree(m).expect("division by zero polynomial");
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let lead_inv = invp(m[dm], p);
    let mut q = vec![0u32; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let t = mulp(c, lead_inv, p);
        let shift = i - dm;
        q[shift] = t;
        for j in 0..=dm {
            r[shift + j] = subp(r[shift + j], mulp(t, m[j], p), p);
        }
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push(subp(x, y, p));
    }
    trim(&mut out);
    out
}

pub(crate) fn monic(a: &[u32], p: u32) -> Vec<u32> {
    let mut v = a.to_vec();
    trim(&mut v);
    if let Some(&l) = v.last() {
        let li = invp(l, p);
        for c in v.iter_mut() {
            *c = mulp(*c, li, p);
        }
    }
    v
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = invp(r0[0], p);
    let mut out: Vec<u32> = s0.iter().map(|&v| mulp(v, c, p)).collect();
    out = rem(&out, m, p);
    Some(out)
}

/// `h^p mod m`, using that the p-th power map is additive.
pub(crate) fn pow_p_mod(h: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut spread = vec![0u32; if h.is_empty() { 0 } else { (h.len() - 1) * p as usize + 1 }];
    for (i, &c) in h.iter().enumerate() {
        spread[i * p as usize] = c;
    }
    rem(&spread, m, p)
}

/// Ben-Or irreducibility test over GF(p).
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = monic(f, p);
    let x = vec![0, 1];
    let mut h = rem(&x, &f, p);
    for _ in 1..=n / 2 {
        h = pow_p_mod(&h, &f, p);
        let d = sub(&h, &x, p);
        let g = gcd(&f, &d, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        // x^2 + x + 1 over GF(2)
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^2 + 1 over GF(3)
        assert!(is_irreducible(&[1, 0, 1], 3));
        // x^4 + x + 1 over GF(2)
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        // (x^2+x+1)^2 = x^4 + x^2 + 1
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn inverse_mod_quadratic() {
        let m = [1, 1, 1];
        let inv = inv_mod(&[0, 1], &m, 2).unwrap();
        assert_eq!(rem(&mul(&inv, &[0, 1], 2), &m, 2), vec![1]);
    }
}
