use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FFElem, FFPoly, FieldEmbedding, FiniteField};

/// Dense bivariate polynomial in `x` and `y`, stored as the list of
/// y-coefficients (each a polynomial in x). Trailing zero rows are trimmed
/// and every row is trimmed, so `deg_x` and `deg_y` are well defined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    field: FiniteField,
    rows: Vec<FFPoly>,
}

impl BivarPoly {
    pub fn zero(field: &FiniteField) -> BivarPoly {
        BivarPoly {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    /// From y-coefficients, lowest first.
    pub fn from_y_coeffs(field: &FiniteField, rows: Vec<FFPoly>) -> BivarPoly {
        let mut b = BivarPoly {
            field: field.clone(),
            rows,
        };
        b.trim();
        b
    }

    /// From `(deg_x, deg_y, coefficient)` triples; repeated monomials add up.
    pub fn from_terms(field: &FiniteField, terms: &[(usize, usize, FFElem)]) -> BivarPoly {
        let ny = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut grid: Vec<Vec<FFElem>> = vec![Vec::new(); ny];
        for (i, j, c) in terms {
            let row = &mut grid[*j];
            if row.len() <= *i {
                row.resize(i + 1, field.zero());
            }
            row[*i] = &row[*i] + c;
        }
        BivarPoly::from_y_coeffs(
            field,
            grid.into_iter().map(|r| FFPoly::new(field, r)).collect(),
        )
    }

    /// From integer coefficient triples `(deg_x, deg_y, c)`.
    pub fn from_int_terms(field: &FiniteField, terms: &[(usize, usize, i64)]) -> BivarPoly {
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, field.from_int(c)))
            .collect();
        BivarPoly::from_terms(field, &t)
    }

    pub fn constant(c: FFElem) -> BivarPoly {
        let field = c.field().clone();
        BivarPoly::from_y_coeffs(&field, vec![FFPoly::constant(c)])
    }

    pub fn x(field: &FiniteField) -> BivarPoly {
        BivarPoly::from_y_coeffs(field, vec![FFPoly::x(field)])
    }

    pub fn y(field: &FiniteField) -> BivarPoly {
        BivarPoly::from_y_coeffs(field, vec![FFPoly::zero(field), FFPoly::one(field)])
    }

    /// A polynomial in x only.
    pub fn from_x_poly(p: &FFPoly) -> BivarPoly {
        BivarPoly::from_y_coeffs(p.field(), vec![p.clone()])
    }

    /// A polynomial in y only.
    pub fn from_y_poly(p: &FFPoly) -> BivarPoly {
        let field = p.field().clone();
        BivarPoly::from_y_coeffs(
            &field,
            p.coeffs().iter().map(|c| FFPoly::constant(c.clone())).collect(),
        )
    }

    fn trim(&mut self) {
        while self.rows.last().is_some_and(|r| r.is_zero()) {
            self.rows.pop();
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    /// Coefficient of `y^j` as a polynomial in x.
    pub fn coeff_y(&self, j: usize) -> FFPoly {
        self.rows
            .get(j)
            .cloned()
            .unwrap_or_else(|| FFPoly::zero(&self.field))
    }

    pub fn y_coeffs(&self) -> &[FFPoly] {
        &self.rows
    }

    pub fn coeff(&self, i: usize, j: usize) -> FFElem {
        self.rows
            .get(j)
            .map(|r| r.coeff(i))
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient in y.
    pub fn leading_y(&self) -> FFPoly {
        self.rows
            .last()
            .cloned()
            .unwrap_or_else(|| FFPoly::zero(&self.field))
    }

    /// Nonzero terms `(deg_x, deg_y, c)`.
    pub fn terms(&self) -> Vec<(usize, usize, FFElem)> {
        let mut out = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn deriv_y(&self) -> BivarPoly {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, r)| r.scale(&self.field.from_int(j as i64)))
            .collect();
        BivarPoly::from_y_coeffs(&self.field, rows)
    }

    pub fn deriv_x(&self) -> BivarPoly {
        let rows = self.rows.iter().map(|r| r.derivative()).collect();
        BivarPoly::from_y_coeffs(&self.field, rows)
    }

    /// Exchanges the roles of x and y.
    pub fn swap(&self) -> BivarPoly {
        let t: Vec<_> = self.terms().into_iter().map(|(i, j, c)| (j, i, c)).collect();
        BivarPoly::from_terms(&self.field, &t)
    }

    /// Specializes x, leaving a polynomial in y.
    pub fn eval_x(&self, a: &FFElem) -> FFPoly {
        FFPoly::new(a.field(), self.rows.iter().map(|r| r.eval(a)).collect())
    }

    /// Specializes y, leaving a polynomial in x.
    pub fn eval_y(&self, b: &FFElem) -> FFPoly {
        let mut acc = FFPoly::zero(&self.field);
        for r in self.rows.iter().rev() {
            acc = &acc.scale(b) + r;
        }
        acc
    }

    pub fn eval(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.eval_x(a).eval(b)
    }

    /// Substitutes `x -> x + c` (Taylor shift in x).
    pub fn shift_x(&self, c: &FFElem) -> BivarPoly {
        BivarPoly::from_y_coeffs(
            &self.field,
            self.rows.iter().map(|r| r.taylor_shift(c)).collect(),
        )
    }

    /// Substitutes `y -> y + c`.
    pub fn shift_y(&self, c: &FFElem) -> BivarPoly {
        self.swap().shift_x(c).swap()
    }

    /// `x^d * F(1/x, y)` for `d >= deg_x F`.
    pub fn reverse_x(&self, d: usize) -> BivarPoly {
        let t: Vec<_> = self
            .terms()
            .into_iter()
            .map(|(i, j, c)| (d - i, j, c))
            .collect();
        BivarPoly::from_terms(&self.field, &t)
    }

    pub fn map_coeffs(&self, emb: &FieldEmbedding) -> BivarPoly {
        BivarPoly::from_y_coeffs(
            emb.target(),
            self.rows.iter().map(|r| emb.apply_poly(r)).collect(),
        )
    }

    pub fn scale(&self, c: &FFElem) -> BivarPoly {
        BivarPoly::from_y_coeffs(&self.field, self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> BivarPoly {
        let mut base = self.clone();
        let mut acc = BivarPoly::constant(self.field.one());
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

    /// Exact division by `x^k`; the caller guarantees divisibility.
    pub fn div_x_pow(&self, k: usize) -> BivarPoly {
        let t: Vec<_> = self
            .terms()
            .into_iter()
            .map(|(i, j, c)| {
                assert!(i >= k, "not divisible by x^{k}");
                (i - k, j, c)
            })
            .collect();
        BivarPoly::from_terms(&self.field, &t)
    }

    /// Exact division by `y`.
    pub fn div_y(&self) -> BivarPoly {
        assert!(self.coeff_y(0).is_zero(), "not divisible by y");
        BivarPoly::from_y_coeffs(&self.field, self.rows[1..].to_vec())
    }

    /// Resultant with respect to y, as a polynomial in x.
    ///
    /// Fraction-free (Bareiss) elimination of the Sylvester matrix over K[x].
    pub fn resultant_y(&self, other: &BivarPoly) -> FFPoly {
        let field = self.field.clone();
        let (m, n) = match (self.deg_y(), other.deg_y()) {
            (Some(m), Some(n)) => (m, n),
            _ => return FFPoly::zero(&field),
        };
        if m == 0 {
            return self.rows[0].pow(n as u64);
        }
        if n == 0 {
            return other.rows[0].pow(m as u64);
        }
        let size = m + n;
        let zero = FFPoly::zero(&field);
        let mut mat: Vec<Vec<FFPoly>> = vec![vec![zero.clone(); size]; size];
        // rows hold coefficients from the top degree down
        for r in 0..n {
            for (k, c) in self.rows.iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in other.rows.iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        bareiss_det(mat)
    }
}

/// Determinant of a square matrix over K[x] by Bareiss elimination.
pub(crate) fn bareiss_det(mut mat: Vec<Vec<FFPoly>>) -> FFPoly {
    let size = mat.len();
    let field = mat[0][0].field().clone();
    let mut sign_neg = false;
    let mut prev = FFPoly::one(&field);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return FFPoly::zero(&field),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev);
            }
            mat[i][k] = FFPoly::zero(&field);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign_neg {
        -&det
    } else {
        det
    }
}

impl fmt::Display for BivarPoly {
    /// Canonical form: terms by descending y-degree, then descending x-degree,
    /// joined with ` + `. Parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (j, r) in self.rows.iter().enumerate().rev() {
            for (i, c) in r.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                if i == 1 {
                    mono.push("x".to_string());
                } else if i > 1 {
                    mono.push(format!("x^{i}"));
                }
                if j == 1 {
                    mono.push("y".to_string());
                } else if j > 1 {
                    mono.push(format!("y^{j}"));
                }
                let coeff = match c.as_prime() {
                    Some(v) => v.to_string(),
                    None => format!("({c})"),
                };
                let term = if mono.is_empty() {
                    coeff
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                };
                parts.push(term);
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let rows = (0..n).map(|j| &self.coeff_y(j) + &rhs.coeff_y(j)).collect();
        BivarPoly::from_y_coeffs(&self.field, rows)
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let rows = (0..n).map(|j| &self.coeff_y(j) - &rhs.coeff_y(j)).collect();
        BivarPoly::from_y_coeffs(&self.field, rows)
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero(&self.field);
        }
        let mut rows = vec![FFPoly::zero(&self.field); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BivarPoly::from_y_coeffs(&self.field, rows)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::from_y_coeffs(&self.field, self.rows.iter().map(|r| -r).collect())
    }
}

macro_rules! forward_owned_bivar {
    ($tr:ident, $m:ident) => {
        impl $tr<BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_bivar!(Add, add);
forward_owned_bivar!(Sub, sub);
forward_owned_bivar!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn family_q2() -> BivarPoly {
        // (x+1)(y^3+y) - x^3 over GF(2)
        let f = make_field(2, 1).unwrap();
        BivarPoly::from_int_terms(
            &f,
            &[(1, 3, 1), (0, 3, 1), (1, 1, 1), (0, 1, 1), (3, 0, -1)],
        )
    }

    #[test]
    fn degrees_and_swap() {
        let f = family_q2();
        assert_eq!(f.deg_x(), Some(3));
        assert_eq!(f.deg_y(), Some(3));
        assert_eq!(f.swap().swap(), f);
        assert_eq!(f.swap().coeff(3, 1), f.coeff(1, 3));
    }

    #[test]
    fn resultant_of_linear_forms() {
        let f5 = make_field(5, 1).unwrap();
        // Res_y(y - x, y + x) = (-x) - (x) up to sign => vanishes only at x = 0
        let a = BivarPoly::from_int_terms(&f5, &[(0, 1, 1), (1, 0, -1)]);
        let b = BivarPoly::from_int_terms(&f5, &[(0, 1, 1), (1, 0, 1)]);
        let r = a.resultant_y(&b);
        assert_eq!(r.degree(), Some(1));
        assert!(r.coeff(0).is_zero());
    }

    #[test]
    fn discriminant_of_elliptic_curve() {
        let f5 = make_field(5, 1).unwrap();
        // y^2 - x^3 - x: Res_y(F, 2y) = 4 (x^3 + x) up to sign
        let f = BivarPoly::from_int_terms(&f5, &[(0, 2, 1), (3, 0, -1), (1, 0, -1)]);
        let r = f.resultant_y(&f.deriv_y()).monic();
        assert_eq!(r, FFPoly::from_ints(&f5, &[0, 1, 0, 1]));
    }
}
