use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FFElem, FiniteField};

/// Dense univariate polynomial over a finite field, coefficients low-to-high.
///
/// The coefficient vector is trimmed: the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFPoly {
    field: FiniteField,
    coeffs: Vec<FFElem>,
}

impl FFPoly {
    pub fn new(field: &FiniteField, coeffs: Vec<FFElem>) -> FFPoly {
        let mut p = FFPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &FiniteField) -> FFPoly {
        FFPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FFElem) -> FFPoly {
        let field = c.field().clone();
        FFPoly::new(&field, vec![c])
    }

    pub fn one(field: &FiniteField) -> FFPoly {
        FFPoly::constant(field.one())
    }

    /// The monomial `c * X^n`.
    pub fn monomial(c: FFElem, n: usize) -> FFPoly {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        FFPoly::new(&field, coeffs)
    }

    /// `X`.
    pub fn x(field: &FiniteField) -> FFPoly {
        FFPoly::monomial(field.one(), 1)
    }

    /// `X - c`.
    pub fn linear(c: &FFElem) -> FFPoly {
        let field = c.field().clone();
        FFPoly::new(&field, vec![-c, field.one()])
    }

    /// From integer coefficients (reduced mod p), low-to-high.
    pub fn from_ints(field: &FiniteField, ints: &[i64]) -> FFPoly {
        FFPoly::new(field, ints.iter().map(|&i| field.from_int(i)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> FFPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let li = l.inv().unwrap();
                self.scale(&li)
            }
        }
    }

    pub fn scale(&self, c: &FFElem) -> FFPoly {
        FFPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `X^n`.
    pub fn shift(&self, n: usize) -> FFPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        FFPoly::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> FFPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        FFPoly::new(&self.field, coeffs)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &FFPoly) -> (FFPoly, FFPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        if self.coeffs.len() <= dd {
            return (FFPoly::zero(&self.field), self.clone());
        }
        let lead_inv = d.coeffs[dd].inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let t = &r[i] * &lead_inv;
            let shift = i - dd;
            for j in 0..=dd {
                r[shift + j] = &r[shift + j] - &(&t * &d.coeffs[j]);
            }
            q[shift] = t;
        }
        r.truncate(dd);
        (FFPoly::new(&self.field, q), FFPoly::new(&self.field, r))
    }

    pub fn rem(&self, d: &FFPoly) -> FFPoly {
        self.divrem(d).1
    }

    /// Exact quotient; debug-asserts the remainder vanishes.
    pub fn div_exact(&self, d: &FFPoly) -> FFPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &FFPoly) -> FFPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, other: &FFPoly, m: &FFPoly) -> FFPoly {
        (self * other).rem(m)
    }

    pub fn pow(&self, mut e: u64) -> FFPoly {
        let mut base = self.clone();
        let mut acc = FFPoly::one(&self.field);
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

    pub fn powmod(&self, mut e: u64, m: &FFPoly) -> FFPoly {
        let mut base = self.rem(m);
        let mut acc = FFPoly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// `self^p mod m`, using additivity of the p-th power map.
    pub fn pow_p_mod(&self, m: &FFPoly) -> FFPoly {
        let p = self.field.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * p] = c.frobenius();
            }
        }
        FFPoly::new(&self.field, coeffs).rem(m)
    }

    /// `self^Q mod m` with Q the field size (k successive p-th powers).
    pub fn pow_q_mod(&self, m: &FFPoly) -> FFPoly {
        let mut h = self.rem(m);
        for _ in 0..self.field.degree() {
            h = h.pow_p_mod(m);
        }
        h
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &FiniteField, f: impl Fn(&FFElem) -> FFElem) -> FFPoly {
        FFPoly::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Substitutes `X -> X + c`.
    pub fn taylor_shift(&self, c: &FFElem) -> FFPoly {
        // Horner with the linear polynomial X + c
        let lin = FFPoly::new(&self.field, vec![c.clone(), self.field.one()]);
        let mut acc = FFPoly::zero(&self.field);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &FFPoly::constant(a.clone());
        }
        acc
    }

    /// Multiplicity of `d` as a factor of `self`.
    pub fn multiplicity_of(&self, d: &FFPoly) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(d);
            if !r.is_zero() {
                return n;
            }
            n += 1;
            cur = q;
        }
    }

    /// Lowest index with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl PartialOrd for FFPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FFPoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("X"))
    }
}

impl FFPoly {
    /// Renders with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coeff = if c.as_prime().is_some() {
                cs
            } else {
                format!("({cs})")
            };
            parts.push(match i {
                0 => coeff,
                _ => {
                    let mono = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if c.is_one() {
                        mono
                    } else {
                        format!("{coeff}*{mono}")
                    }
                }
            });
        }
        parts.join(" + ")
    }
}

impl<'a> Add<&'a FFPoly> for &'a FFPoly {
    type Output = FFPoly;
    fn add(self, rhs: &FFPoly) -> FFPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        FFPoly::new(&self.field, coeffs)
    }
}

impl<'a> Sub<&'a FFPoly> for &'a FFPoly {
    type Output = FFPoly;
    fn sub(self, rhs: &FFPoly) -> FFPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        FFPoly::new(&self.field, coeffs)
    }
}

impl<'a> Mul<&'a FFPoly> for &'a FFPoly {
    type Output = FFPoly;
    fn mul(self, rhs: &FFPoly) -> FFPoly {
        if self.is_zero() || rhs.is_zero() {
            return FFPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        FFPoly::new(&self.field, coeffs)
    }
}

impl Neg for &FFPoly {
    type Output = FFPoly;
    fn neg(self) -> FFPoly {
        FFPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    #[test]
    fn divrem_roundtrip() {
        let f = make_field(5, 1).unwrap();
        let a = FFPoly::from_ints(&f, &[1, 2, 3, 4, 1]);
        let b = FFPoly::from_ints(&f, &[2, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let f = make_field(3, 1).unwrap();
        // (X+1)^3 = X^3 + 1 in char 3
        let a = FFPoly::from_ints(&f, &[0, 0, 0, 1]);
        assert_eq!(a.taylor_shift(&f.one()), FFPoly::from_ints(&f, &[1, 0, 0, 1]));
    }

    #[test]
    fn derivative_char_p() {
        let f = make_field(2, 1).unwrap();
        // d/dX (X^3 + X) = 3X^2 + 1 = X^2 + 1
        let a = FFPoly::from_ints(&f, &[0, 1, 0, 1]);
        assert_eq!(a.derivative(), FFPoly::from_ints(&f, &[1, 0, 1]));
    }
}
