//! Places of K(x,y) above a place of K(x) (or of K(y)).
//!
//! The defining polynomial is moved into local coordinates `(t, y)` at the
//! base place, with `t` a uniformizer. Each Newton polygon segment with root
//! valuation `a/b` is resolved by the unimodular monomial change
//! `t = T^b V^c`, `y = T^a V^d` (`bd - ac = 1`), after which the curve meets
//! `T = 0` at the nonzero roots of the residual polynomial. A simple root ends
//! the branch; a repeated root is shifted to the origin and the process
//! repeats with the new polygon. Everything stays an exact polynomial; power
//! series appear only when a valuation has to be read off the final smooth
//! branch.

mod irreducible;
mod polygon;
mod series;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{
    make_field, poly_factor, roots_in_field, BivarPoly, FFElem, FFPoly, FieldEmbedding,
    FiniteField,
};
use crate::ratfunc::{poly_valuation, RatPlace, ResidueData};

pub use irreducible::is_irreducible_over_ratfield;
pub use polygon::{newton_polygon, NPSegment};

pub const DEFAULT_MAX_DEPTH: usize = 8;

/// Which variable the base field is generated by: places of K(x) or of K(y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

/// One refinement step of a place.
#[derive(Clone, Debug)]
pub struct RefinementLevel {
    /// Finite points `(j, ord)` of the polygon at this level, shifted so the
    /// point at the top index of the polygon's range has height 0.
    pub polygon: Vec<(usize, i64)>,
    /// Slope of the chosen segment (roots of valuation `-slope`).
    pub slope: (i64, i64),
    pub length: usize,
    /// Irreducible factor of the residual polynomial, over the previous field.
    pub residual: FFPoly,
    /// Multiplicity of `residual` in the residual polynomial.
    pub multiplicity: usize,
    /// Chosen root of `residual`, in `field`.
    pub root: FFElem,
    /// Field after adjoining `root`.
    pub field: FiniteField,
    embedding: FieldEmbedding,
}

impl RefinementLevel {
    /// Root valuation `a/b` of the segment.
    pub fn root_valuation(&self) -> (i64, i64) {
        (-self.slope.0, self.slope.1)
    }

    /// The linear polynomial `W - root` whose zero is moved to the origin.
    pub fn shift(&self) -> FFPoly {
        FFPoly::linear(&self.root)
    }
}

/// A place of K(x,y) above a place of K(x) (side X) or of K(y) (side Y).
#[derive(Clone, Debug)]
pub struct PlaceExt {
    pub base: RatPlace,
    pub side: Side,
    pub levels: Vec<RefinementLevel>,
    /// The branch ended on a component `W = 0` rather than at a simple root.
    pub axis: bool,
    pub e: u64,
    pub f: u64,
    pub dmin: u64,
    pub dmax: u64,
    pub d_exact: Option<u64>,
    chart: ResidueData,
    terminal: BivarPoly,
    precision_hint: usize,
}

/// Unimodular completion `(c, d)` of the column `(b, a)`: `bd - ac = 1`, `0 <= c < b`.
fn unimodular(a: i64, b: i64) -> (i64, i64) {
    let c = (0..b)
        .find(|c| (1 + a * c).rem_euclid(b) == 0)
        .expect("gcd(a, b) = 1");
    (c, (1 + a * c) / b)
}

/// Applies `t = T^b V^c`, `y = T^a V^d` and strips the monomial content.
/// Returns the new polynomial and the removed power of `T`.
fn toric(h: &BivarPoly, a: i64, b: i64, c: i64, d: i64) -> (BivarPoly, i64) {
    let terms = h.terms();
    let tx: Vec<(i64, i64, FFElem)> = terms
        .into_iter()
        .map(|(i, j, co)| {
            let (i, j) = (i as i64, j as i64);
            (b * i + a * j, c * i + d * j, co)
        })
        .collect();
    let n = tx.iter().map(|t| t.0).min().unwrap_or(0);
    let m = tx.iter().map(|t| t.1).min().unwrap_or(0);
    let shifted: Vec<(usize, usize, FFElem)> = tx
        .into_iter()
        .map(|(i, j, co)| ((i - n) as usize, (j - m) as usize, co))
        .collect();
    (BivarPoly::from_terms(h.field(), &shifted), n)
}

/// Local coordinates at the base place: `F(theta + t, y)` or `t^D F(1/t, y)`.
/// The second component is `D`.
fn localize(g: &BivarPoly, base: &RatPlace, chart: &ResidueData) -> (BivarPoly, usize) {
    match base {
        RatPlace::Finite(_) => (
            g.map_coeffs(&chart.embedding)
                .shift_x(chart.theta.as_ref().unwrap()),
            0,
        ),
        RatPlace::Infinity(_) => {
            let dx = g.deg_x().unwrap_or(0);
            (g.reverse_x(dx), dx)
        }
    }
}

struct Branch {
    levels: Vec<RefinementLevel>,
    axis: bool,
    terminal: BivarPoly,
    e: u64,
    max_height: i64,
}

struct Refiner {
    max_depth: usize,
    out: Vec<Branch>,
}

impl Refiner {
    /// Splits the branches of `h` whose `W`-roots are accounted for by the
    /// polygon on indices `0..=top`.
    fn refine(
        &mut self,
        h: &BivarPoly,
        top: usize,
        prefix: &[RefinementLevel],
        e: u64,
        max_height: i64,
    ) -> Result<()> {
        let field = h.field().clone();
        let all: Vec<(usize, i64)> = (0..=h.deg_y().unwrap_or(0))
            .filter_map(|j| h.coeff_y(j).order().map(|i| (j, i as i64)))
            .collect();
        let pts: Vec<(usize, i64)> = all.iter().copied().filter(|p| p.0 <= top).collect();
        let j0 = pts.first().map(|p| p.0).ok_or(Error::NotSquarefree)?;
        if j0 >= 2 {
            return Err(Error::NotSquarefree);
        }
        if j0 == 1 {
            self.out.push(Branch {
                levels: prefix.to_vec(),
                axis: true,
                terminal: h.clone(),
                e,
                max_height,
            });
        }
        if pts.len() < 2 {
            return Ok(());
        }
        if prefix.len() >= self.max_depth {
            return Err(Error::DepthExceeded(self.max_depth));
        }
        let base_h = pts.last().unwrap().1;
        let report: Vec<(usize, i64)> = all.iter().map(|&(j, i)| (j, i - base_h)).collect();
        let mh = max_height.max(report.iter().map(|p| p.1.abs()).max().unwrap_or(0));
        for seg in newton_polygon(&pts)? {
            let (a, b) = seg.root_valuation();
            let (c, d) = unimodular(a, b);
            let (h1, _) = toric(h, a, b, c, d);
            // residual polynomial from the lattice points of the segment
            let (js, is) = seg.start;
            let steps = seg.length / b as usize;
            let res: Vec<FFElem> = (0..=steps)
                .map(|k| {
                    let j = js + k * b as usize;
                    let i = is - (k as i64) * a;
                    if i < 0 {
                        field.zero()
                    } else {
                        h.coeff(i as usize, j)
                    }
                })
                .collect();
            let residual = FFPoly::new(&field, res);
            for (phi, mu) in poly_factor(&residual) {
                let deg = phi.degree().unwrap();
                let nf = make_field(field.p(), field.degree() * deg)?;
                let emb = FieldEmbedding::canonical(&field, &nf)?;
                let zeta = roots_in_field(&emb.apply_poly(&phi))
                    .into_iter()
                    .next()
                    .expect("residual factor splits in its extension");
                let h2 = h1.map_coeffs(&emb).shift_y(&zeta);
                let mut chain = prefix.to_vec();
                chain.push(RefinementLevel {
                    polygon: report.clone(),
                    slope: seg.slope,
                    length: seg.length,
                    residual: phi,
                    multiplicity: mu,
                    root: zeta,
                    field: nf,
                    embedding: emb,
                });
                let e2 = e * b as u64;
                if mu == 1 {
                    self.out.push(Branch {
                        levels: chain,
                        axis: false,
                        terminal: h2,
                        e: e2,
                        max_height: mh,
                    });
                } else {
                    self.refine(&h2, mu, &chain, e2, mh)?;
                }
            }
        }
        Ok(())
    }
}

/// All places above `base` of the function field defined by `f`, in a
/// deterministic order.
///
/// With `side = Y` the roles of x and y are exchanged, so `base` is a place of
/// K(y). The caller is responsible for `f` being irreducible over the base
/// rational field.
pub fn places_above(
    f: &BivarPoly,
    base: &RatPlace,
    side: Side,
    max_depth: usize,
) -> Result<Vec<PlaceExt>> {
    if base.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    let g = match side {
        Side::X => f.clone(),
        Side::Y => f.swap(),
    };
    let n = g.deg_y().unwrap_or(0);
    if n == 0 {
        return Err(Error::InvalidArgument(
            "polynomial has no positive degree in the fibre variable".into(),
        ));
    }
    if g.deriv_y().is_zero() {
        return Err(Error::Inseparable);
    }
    let chart = base.residue_data()?;
    let (h0, _) = localize(&g, base, &chart);
    let mut r = Refiner {
        max_depth,
        out: Vec::new(),
    };
    r.refine(&h0, n, &[], 1, 0)?;
    let kp = chart.field.degree();
    let mut places = Vec::with_capacity(r.out.len());
    for br in r.out {
        let fdeg = br
            .levels
            .last()
            .map(|l| l.field.degree())
            .unwrap_or(kp);
        let mut pl = PlaceExt {
            base: base.clone(),
            side,
            levels: br.levels,
            axis: br.axis,
            e: br.e,
            f: (fdeg / kp) as u64,
            dmin: 0,
            dmax: 0,
            d_exact: None,
            chart: chart.clone(),
            terminal: br.terminal,
            precision_hint: 4 * n * (1 + br.max_height as usize),
        };
        let (lo, hi, ex) = different_bounds(&pl, f)?;
        pl.dmin = lo;
        pl.dmax = hi;
        pl.d_exact = ex;
        places.push(pl);
    }
    Ok(places)
}

const PRECISION_CAP: usize = 1 << 14;

impl PlaceExt {
    /// Residue field of the place.
    pub fn residue_field(&self) -> &FiniteField {
        self.levels
            .last()
            .map(|l| &l.field)
            .unwrap_or(&self.chart.field)
    }

    /// Degree of the place over the constant field: `f * deg P`.
    pub fn degree(&self) -> u64 {
        self.f * self.base.degree() as u64
    }

    pub fn is_wild(&self) -> bool {
        self.e % self.base.field().p() as u64 == 0
    }

    /// ν_Q(g) for `g` in the original variables x, y; `None` stands for +∞.
    pub fn valuation(&self, g: &BivarPoly) -> Result<Option<i64>> {
        let gs = match self.side {
            Side::X => g.clone(),
            Side::Y => g.swap(),
        };
        let (g0, dx) = localize(&gs, &self.base, &self.chart);
        Ok(self
            .local_valuation(&g0)?
            .map(|v| v - (dx as i64) * self.e as i64))
    }

    /// ν_Q(y) (the fibre variable of this side is x when `side = Y`).
    pub fn valuation_of_y(&self) -> Result<Option<i64>> {
        self.valuation(&BivarPoly::y(self.base.field()))
    }

    /// Valuation of a polynomial already in local coordinates `(t, y)`.
    fn local_valuation(&self, g0: &BivarPoly) -> Result<Option<i64>> {
        if g0.is_zero() {
            return Ok(None);
        }
        let mut cur = g0.clone();
        let mut scale = self.e as i64;
        let mut nu = 0i64;
        for lvl in &self.levels {
            let (a, b) = lvl.root_valuation();
            let (c, d) = unimodular(a, b);
            let (h1, n) = toric(&cur, a, b, c, d);
            scale /= b;
            nu += n * scale;
            cur = h1.map_coeffs(&lvl.embedding).shift_y(&lvl.root);
            if !cur.coeff(0, 0).is_zero() {
                return Ok(Some(nu));
            }
        }
        debug_assert_eq!(scale, 1);
        if self.axis {
            return Ok(cur.coeff_y(0).order().map(|o| nu + o as i64));
        }
        let mut prec = self.precision_hint.max(8);
        while prec <= PRECISION_CAP {
            let w = series::lift_root(&self.terminal, prec);
            if let Some(o) = series::eval_at_series(&cur, &w, prec).order() {
                return Ok(Some(nu + o as i64));
            }
            prec *= 2;
        }
        Err(Error::PrecisionExhausted(PRECISION_CAP))
    }
}

/// `(dmin, dmax, d_exact)` for a place produced by [`places_above`] on `f`.
///
/// Tame places have `d = e - 1`. For wild places `e <= d`, and with `H` the
/// local equation of leading coefficient `l`, the element `l*y` is integral
/// with different dividing `l^(n-2) * H_y(y)`, which gives the upper bound.
pub fn different_bounds(pl: &PlaceExt, f: &BivarPoly) -> Result<(u64, u64, Option<u64>)> {
    let e = pl.e;
    if !pl.is_wild() {
        return Ok((e - 1, e - 1, Some(e - 1)));
    }
    let g = match pl.side {
        Side::X => f.clone(),
        Side::Y => f.swap(),
    };
    let n = g.deg_y().unwrap() as i64;
    let (h0, _) = localize(&g, &pl.base, &pl.chart);
    let vd = pl
        .local_valuation(&h0.deriv_y())?
        .ok_or(Error::NotSquarefree)?;
    let vl = pl
        .local_valuation(&BivarPoly::from_x_poly(&h0.leading_y()))?
        .expect("nonzero leading coefficient");
    let hi = (vd + (n - 2) * vl) as u64;
    Ok((e, hi, (hi == e).then_some(e)))
}

/// Generalized Eisenstein test at `p`: the polygon of `f` (in y, with
/// ν_P-heights) is one segment over `0..=deg_y f` whose slope has denominator
/// `deg_y f`.
pub fn eisenstein_at(f: &BivarPoly, p: &RatPlace) -> bool {
    let n = match f.deg_y() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let pts: Vec<(usize, i64)> = f
        .y_coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| poly_valuation(c, p).map(|v| (j, v)))
        .collect();
    if pts.first().map(|p| p.0) != Some(0) {
        return false;
    }
    match newton_polygon(&pts) {
        Ok(segs) => segs.len() == 1 && segs[0].length == n && segs[0].slope.1 == n as i64,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests;
