//! Places, valuations and residues of the rational function field K(x).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{
    is_irreducible, make_field, roots_in_field, FFElem, FFPoly, FieldEmbedding, FiniteField,
};

/// A place of K(x): the zero of a monic irreducible polynomial, or the pole
/// of x.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RatPlace {
    Finite(FFPoly),
    Infinity(FiniteField),
}

/// Kind tag used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceKind {
    Finite,
    Infinity,
}

/// Residue field of a place together with the data needed to reduce into it.
#[derive(Clone, Debug)]
pub struct ResidueData {
    pub field: FiniteField,
    /// Embedding of the constant field K into the residue field.
    pub embedding: FieldEmbedding,
    /// Residue class of x (the smallest root of the place polynomial); `None` at infinity.
    pub theta: Option<FFElem>,
}

impl RatPlace {
    /// Checks that `f` is monic irreducible of positive degree.
    pub fn finite(f: FFPoly) -> Result<RatPlace> {
        if !f.is_monic() || !is_irreducible(&f) {
            return Err(Error::InvalidArgument(format!(
                "place polynomial {f:?} is not monic irreducible"
            )));
        }
        Ok(RatPlace::Finite(f))
    }

    /// The place `x - a`.
    pub fn at(a: &FFElem) -> RatPlace {
        RatPlace::Finite(FFPoly::linear(a))
    }

    pub fn infinity(field: &FiniteField) -> RatPlace {
        RatPlace::Infinity(field.clone())
    }

    pub fn field(&self) -> &FiniteField {
        match self {
            RatPlace::Finite(f) => f.field(),
            RatPlace::Infinity(k) => k,
        }
    }

    pub fn kind(&self) -> PlaceKind {
        match self {
            RatPlace::Finite(_) => PlaceKind::Finite,
            RatPlace::Infinity(_) => PlaceKind::Infinity,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RatPlace::Infinity(_))
    }

    pub fn polynomial(&self) -> Option<&FFPoly> {
        match self {
            RatPlace::Finite(f) => Some(f),
            RatPlace::Infinity(_) => None,
        }
    }

    pub fn degree(&self) -> usize {
        place_degree(self)
    }

    /// Residue field GF(q^deg P), the embedding of K into it, and the residue of x.
    pub fn residue_data(&self) -> Result<ResidueData> {
        let k = self.field();
        match self {
            RatPlace::Infinity(_) => Ok(ResidueData {
                field: k.clone(),
                embedding: FieldEmbedding::identity(k),
                theta: None,
            }),
            RatPlace::Finite(f) => {
                let d = f.degree().unwrap();
                let rf = make_field(k.p(), k.degree() * d)?;
                let emb = FieldEmbedding::canonical(k, &rf)?;
                let fe = emb.apply_poly(f);
                let theta = roots_in_field(&fe)
                    .into_iter()
                    .next()
                    .expect("place polynomial splits in its residue field");
                Ok(ResidueData {
                    field: rf,
                    embedding: emb,
                    theta: Some(theta),
                })
            }
        }
    }

    /// Human-readable name in variable `var`, e.g. `P_{x+1}` or `P_inf`.
    pub fn label(&self, var: &str) -> String {
        match self {
            RatPlace::Finite(f) => format!("P_{{{}}}", f.display_in(var).replace(' ', "")),
            RatPlace::Infinity(_) => "P_inf".to_string(),
        }
    }
}

impl fmt::Debug for RatPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label("x"))
    }
}

/// deg P: degree of the place polynomial, 1 at infinity.
pub fn place_degree(p: &RatPlace) -> usize {
    match p {
        RatPlace::Finite(f) => f.degree().unwrap(),
        RatPlace::Infinity(_) => 1,
    }
}

/// All places of K(x) of degree `d` (including infinity when d = 1), in
/// polynomial order with infinity last.
pub fn places_of_degree(field: &FiniteField, d: usize) -> Vec<RatPlace> {
    let q = field.order().expect("field too large");
    let count = q.checked_pow(d as u32).expect("too many places");
    let mut out = Vec::new();
    for idx in 0..count {
        let mut digits = Vec::with_capacity(d + 1);
        let mut v = idx;
        for _ in 0..d {
            digits.push(field.element(v % q));
            v /= q;
        }
        digits.push(field.one());
        let f = FFPoly::new(field, digits);
        if is_irreducible(&f) {
            out.push(RatPlace::Finite(f));
        }
    }
    out.sort_by(|a, b| a.polynomial().cmp(&b.polynomial()));
    if d == 1 {
        out.push(RatPlace::Infinity(field.clone()));
    }
    out
}

/// A nonzero rational function num/den with coprime parts and monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: FFPoly,
    den: FFPoly,
}

impl RatFunc {
    pub fn new(num: FFPoly, den: FFPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc {
                den: FFPoly::one(num.field()),
                num,
            });
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g);
        let mut d = den.div_exact(&g);
        let lc = d.leading().unwrap().inv().unwrap();
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(RatFunc { num: n, den: d })
    }

    pub fn poly(p: FFPoly) -> RatFunc {
        let one = FFPoly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn num(&self) -> &FFPoly {
        &self.num
    }

    pub fn den(&self) -> &FFPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::new(n, &self.den * &rhs.den).unwrap()
    }
}

/// Valuation of a polynomial at a place; `None` stands for +∞ (the zero polynomial).
pub fn poly_valuation(f: &FFPoly, p: &RatPlace) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match p {
        RatPlace::Finite(g) => f.multiplicity_of(g) as i64,
        RatPlace::Infinity(_) => -(f.degree().unwrap() as i64),
    })
}

/// ν_P(r); `None` stands for +∞ (r = 0).
pub fn valuation(r: &RatFunc, p: &RatPlace) -> Option<i64> {
    let vn = poly_valuation(&r.num, p)?;
    let vd = poly_valuation(&r.den, p).expect("nonzero denominator");
    Some(vn - vd)
}

/// Class of `r` in the residue field of `p`.
pub fn residue(r: &RatFunc, p: &RatPlace) -> Result<FFElem> {
    let data = p.residue_data()?;
    residue_with(r, p, &data)
}

/// As [`residue`], reusing precomputed residue data.
pub fn residue_with(r: &RatFunc, p: &RatPlace, data: &ResidueData) -> Result<FFElem> {
    match valuation(r, p) {
        None => return Ok(data.field.zero()),
        Some(v) if v < 0 => return Err(Error::PoleAtPlace),
        Some(v) if v > 0 => return Ok(data.field.zero()),
        _ => {}
    }
    match p {
        RatPlace::Infinity(_) => {
            // deg num == deg den here
            let a = r.num.leading().unwrap();
            let b = r.den.leading().unwrap();
            Ok(data.embedding.apply(&(a / b)))
        }
        RatPlace::Finite(_) => {
            let theta = data.theta.as_ref().unwrap();
            let n = data.embedding.apply_poly(&r.num).eval(theta);
            let d = data.embedding.apply_poly(&r.den).eval(theta);
            Ok(&n / &d)
        }
    }
}
