//! Finite fields GF(p^k) and polynomial algebra over them.
//!
//! A field is identified by `(p, k)`; its modulus is the smallest monic
//! irreducible polynomial of degree `k` over GF(p) when coefficient vectors
//! are read as base-p integers (constant term least significant). Fields are
//! memoized, so `make_field(p, k)` always hands back the same instance.

mod bivar;
mod embed;
mod factor;
mod poly;
pub(crate) mod zp;

pub use bivar::BivarPoly;
pub use embed::{embed, FieldEmbedding};
pub use factor::{
    factor_seed, is_irreducible, poly_factor, poly_factor_seeded, roots_in_field,
    set_factor_seed, squarefree_decomposition, DEFAULT_SEED,
};
pub use poly::FFPoly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Rep = SmallVec<[u32; 4]>;

struct FieldData {
    p: u32,
    k: usize,
    /// Monic, length `k + 1`, low-to-high.
    modulus: Vec<u32>,
}

/// The finite field GF(p^k).
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn field_cache() -> &'static Mutex<HashMap<(u32, usize), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches) GF(p^k) with the canonical lexicographic modulus.
pub fn make_field(p: u32, k: usize) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || p >= (1 << 30) || k > 4096 {
        return Err(Error::FieldTooLarge { p, degree: k });
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = smallest_irreducible(p, k);
    let field = FiniteField(Arc::new(FieldData { p, k, modulus }));
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, k)).or_insert(field).clone())
}

/// Smallest monic irreducible of degree k, counting through the lower
/// coefficients as a base-p integer.
fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let mut digits = vec![0u32; k];
    loop {
        let mut cand = digits.clone();
        cand.push(1);
        // x^k with zero constant term is reducible for k > 1.
        if (k == 1 || cand[0] != 0) && zp::is_irreducible(&cand, p) {
            return cand;
        }
        // increment base-p counter
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "an irreducible polynomial of every degree exists");
        }
    }
}

impl FiniteField {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Extension degree k over the prime field.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Number of elements, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.0.p as u128).checked_pow(self.0.k as u32)
    }

    pub fn prime_field(&self) -> FiniteField {
        make_field(self.0.p, 1).expect("prime field")
    }

    pub fn zero(&self) -> FFElem {
        FFElem {
            field: self.clone(),
            rep: SmallVec::from_elem(0, self.0.k),
        }
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        let p = self.0.p as i64;
        let mut e = self.zero();
        e.rep[0] = n.rem_euclid(p) as u32;
        e
    }

    /// The class of `z` in GF(p)[z]/(modulus). For k = 1 this is 0.
    pub fn generator(&self) -> FFElem {
        if self.0.k == 1 {
            // modulus is z itself
            self.zero()
        } else {
            let mut e = self.zero();
            e.rep[1] = 1;
            e
        }
    }

    /// Element from coefficients over GF(p) (reduced modulo the modulus).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FFElem {
        let p = self.0.p;
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let r = zp::rem(&reduced, &self.0.modulus, p);
        let mut e = self.zero();
        for (i, c) in r.into_iter().enumerate() {
            e.rep[i] = c;
        }
        e
    }

    /// Element whose coefficient vector spells `index` in base p.
    pub fn element(&self, mut index: u128) -> FFElem {
        let mut e = self.zero();
        let p = self.0.p as u128;
        for i in 0..self.0.k {
            e.rep[i] = (index % p) as u32;
            index /= p;
        }
        e
    }

    /// All elements in index order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        let n = self.order().expect("field too large to enumerate");
        (0..n).map(move |i| self.element(i))
    }

    pub(crate) fn make(&self, rep: Rep) -> FFElem {
        FFElem {
            field: self.clone(),
            rep,
        }
    }
}

/// An element of GF(p^k): a coefficient vector over GF(p) of length k.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElem {
    field: FiniteField,
    rep: Rep,
}

impl FFElem {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.rep[0] == 1 && self.rep[1..].iter().all(|&c| c == 0)
    }

    /// Base-p integer spelled by the coefficients (inverse of `FiniteField::element`).
    pub fn index(&self) -> u128 {
        let p = self.field.0.p as u128;
        self.rep.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    /// The value as an integer when it lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        if self.rep[1..].iter().all(|&c| c == 0) {
            Some(self.rep[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<FFElem> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.0.p;
        if self.field.0.k == 1 {
            let mut e = self.field.zero();
            e.rep[0] = zp::invp(self.rep[0], p);
            return Some(e);
        }
        let inv = zp::inv_mod(&self.rep, &self.field.0.modulus, p)?;
        let mut e = self.field.zero();
        for (i, c) in inv.into_iter().enumerate() {
            e.rep[i] = c;
        }
        Some(e)
    }

    pub fn pow(&self, mut e: u64) -> FFElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Frobenius image `self^p`.
    pub fn frobenius(&self) -> FFElem {
        if self.field.0.k == 1 {
            return self.clone();
        }
        self.pow(self.field.0.p as u64)
    }

    /// `self^(p^s)`.
    pub fn frobenius_pow(&self, s: usize) -> FFElem {
        let s = s % self.field.0.k;
        let mut r = self.clone();
        for _ in 0..s {
            r = r.frobenius();
        }
        r
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self) -> FFElem {
        self.frobenius_pow(self.field.0.k - 1)
    }

    fn check_same(&self, other: &FFElem) {
        assert!(
            self.field == other.field,
            "field mismatch: {:?} vs {:?}",
            self.field,
            other.field
        );
    }
}

/// A q-th root of `b` for q a power of the characteristic.
///
/// In GF(p^k) the map c ↦ c^q is a bijection, so c = b^(q^(k-1)).
pub fn qth_root(b: &FFElem, q: u64) -> Result<FFElem> {
    let p = b.field().p() as u64;
    let s = prime_power_exponent(q, p).ok_or_else(|| {
        Error::InvalidArgument(format!("{q} is not a power of the characteristic {p}"))
    })?;
    let k = b.field().degree();
    // (b^(q^(k-1))) = Frobenius^(s(k-1)).
    Ok(b.frobenius_pow((s * (k - 1)) % k))
}

/// `s` with `q = p^s`, if any (s ≥ 1).
pub fn prime_power_exponent(q: u64, p: u64) -> Option<usize> {
    if q < p || p < 2 {
        return None;
    }
    let mut s = 0;
    let mut v = q;
    while v % p == 0 {
        v /= p;
        s += 1;
    }
    (v == 1).then_some(s)
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FFElem {
    /// Base-p integer order of the coefficient vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.iter().rev().cmp(other.rep.iter().rev())
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FFElem {
    /// Prime-field elements print as integers; others as a polynomial in `z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_prime() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (i, &c) in self.rep.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "z")?,
                (1, c) => write!(f, "{c}*z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, c) => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a FFElem> for &'a FFElem {
    type Output = FFElem;
    fn add(self, rhs: &FFElem) -> FFElem {
        self.check_same(rhs);
        let p = self.field.0.p;
        let rep = self
            .rep
            .iter()
            .zip(rhs.rep.iter())
            .map(|(&a, &b)| zp::addp(a, b, p))
            .collect();
        self.field.make(rep)
    }
}

impl<'a> Sub<&'a FFElem> for &'a FFElem {
    type Output = FFElem;
    fn sub(self, rhs: &FFElem) -> FFElem {
        self.check_same(rhs);
        let p = self.field.0.p;
        let rep = self
            .rep
            .iter()
            .zip(rhs.rep.iter())
            .map(|(&a, &b)| zp::subp(a, b, p))
            .collect();
        self.field.make(rep)
    }
}

impl<'a> Mul<&'a FFElem> for &'a FFElem {
    type Output = FFElem;
    fn mul(self, rhs: &FFElem) -> FFElem {
        self.check_same(rhs);
        let fd = &self.field.0;
        let p = fd.p;
        if fd.k == 1 {
            let mut rep = Rep::new();
            rep.push(zp::mulp(self.rep[0], rhs.rep[0], p));
            return self.field.make(rep);
        }
        let k = fd.k;
        // schoolbook product then reduction by the monic modulus
        let mut acc = [0u64; 64];
        let mut big;
        let buf: &mut [u64] = if 2 * k - 1 <= 64 {
            &mut acc[..2 * k - 1]
        } else {
            big = vec![0u64; 2 * k - 1];
            &mut big[..]
        };
        let pp = p as u64;
        for (i, &a) in self.rep.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.rep.iter().enumerate() {
                buf[i + j] = (buf[i + j] + a as u64 * b as u64) % pp;
            }
        }
        let m = &fd.modulus;
        for i in (k..2 * k - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            let shift = i - k;
            for j in 0..k {
                buf[shift + j] = (buf[shift + j] + (pp - c) * m[j] as u64) % pp;
            }
            buf[i] = 0;
        }
        let rep = buf[..k].iter().map(|&c| c as u32).collect();
        self.field.make(rep)
    }
}

impl<'a> Div<&'a FFElem> for &'a FFElem {
    type Output = FFElem;
    fn div(self, rhs: &FFElem) -> FFElem {
        self * &rhs.inv().expect("division by zero in finite field")
    }
}

impl Neg for &FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        let p = self.field.0.p;
        let rep = self.rep.iter().map(|&a| zp::subp(0, a, p)).collect();
        self.field.make(rep)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FFElem> for FFElem {
            type Output = FFElem;
            fn $m(self, rhs: FFElem) -> FFElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FFElem> for FFElem {
            type Output = FFElem;
            fn $m(self, rhs: &FFElem) -> FFElem {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FFElem> for &'a FFElem {
            type Output = FFElem;
            fn $m(self, rhs: FFElem) -> FFElem {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn gf4_modulus_is_the_only_irreducible_quadratic() {
        // exhaustive: a monic quadratic over GF(2) is irreducible iff it has no root
        let mut irreducible = Vec::new();
        for c0 in 0..2u32 {
            for c1 in 0..2u32 {
                let has_root = (0..2u32).any(|x| (c0 + c1 * x + x * x) % 2 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &irreducible[0][..]);
    }

    #[test]
    fn field_axioms_gf9() {
        let f = make_field(3, 2).unwrap();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len(), 9);
        for a in &els {
            if !a.is_zero() {
                assert!((a * &a.inv().unwrap()).is_one());
                assert!(a.pow(8).is_one());
            }
            for b in &els {
                assert_eq!(a * b, b * a);
                assert_eq!(&(a + b) - b, a.clone());
            }
        }
    }

    #[test]
    fn qth_root_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(qth_root(&f2.one(), 2).unwrap(), f2.one());
        let f3 = make_field(3, 1).unwrap();
        let two = f3.from_int(2);
        assert_eq!(qth_root(&two, 3).unwrap(), two);
        let f4 = make_field(2, 2).unwrap();
        let g = f4.generator();
        let c = qth_root(&g, 2).unwrap();
        assert_eq!(c, g.pow(2));
        assert_eq!(c.pow(2), g);
    }

    #[test]
    fn large_field_builds() {
        let f = make_field(2, 40).unwrap();
        assert!(zp::is_irreducible(f.modulus(), 2));
        let a = f.element(123456789);
        assert!((&a * &a.inv().unwrap()).is_one());
    }
}
