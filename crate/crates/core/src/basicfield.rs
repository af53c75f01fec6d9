//! Global data of the basic function field K(x,y): ramification table,
//! Riemann–Hurwitz genus and a point-counting genus oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ffield::{poly_factor, BivarPoly};
use crate::omfactor::{places_above, PlaceExt, Side};
use crate::par::{self, Exec};
use crate::ratfunc::{places_of_degree, RatPlace};

/// A base place and all places above it.
#[derive(Clone, Debug)]
pub struct RamRow {
    pub place: RatPlace,
    pub places: Vec<PlaceExt>,
}

/// Rows for every base place with ramification or positive different.
#[derive(Clone, Debug)]
pub struct RamTable {
    pub rows: Vec<RamRow>,
    /// `deg_y F`.
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusResult {
    /// Exact genus, or the least genus compatible with the different bounds.
    pub genus: u64,
    /// Largest genus compatible with the different bounds.
    pub genus_max: u64,
    pub exact: bool,
    /// Sums of `d * f * deg P` over the table, with `d` the exact exponent when
    /// known and otherwise `dmin`, respectively `dmax`.
    pub diff_degree_bounds: (u64, u64),
}

/// Base places where ramification can occur: zeros of `Res_y(F, F_y)`, zeros
/// of the leading coefficient, and infinity. Finite places first, sorted.
pub fn ramification_locus(f: &BivarPoly) -> Result<Vec<RatPlace>> {
    let fy = f.deriv_y();
    if fy.is_zero() {
        return Err(Error::Inseparable);
    }
    let disc = f.resultant_y(&fy);
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let prod = &disc * &f.leading_y();
    let mut out: Vec<RatPlace> = if prod.degree().unwrap_or(0) > 0 {
        poly_factor(&prod)
            .into_iter()
            .map(|(g, _)| RatPlace::Finite(g))
            .collect()
    } else {
        Vec::new()
    };
    out.push(RatPlace::infinity(f.field()));
    Ok(out)
}

/// Ramification table over the locus, rows computed under `exec`.
pub fn ram_table(f: &BivarPoly, max_depth: usize, exec: Exec) -> Result<RamTable> {
    let locus = ramification_locus(f)?;
    let rows = par::map(exec, &locus, |p| places_above(f, p, Side::X, max_depth));
    let mut out = Vec::new();
    for (p, r) in locus.into_iter().zip(rows) {
        let places = r?;
        if places.iter().any(|q| q.e > 1 || q.dmin > 0) {
            out.push(RamRow { place: p, places });
        }
    }
    Ok(RamTable {
        rows: out,
        m: f.deg_y().unwrap_or(0),
    })
}

impl RamTable {
    fn places(&self) -> impl Iterator<Item = (&RatPlace, &PlaceExt)> {
        self.rows
            .iter()
            .flat_map(|r| r.places.iter().map(move |q| (&r.place, q)))
    }

    /// Riemann–Hurwitz over this table.
    pub fn genus(&self) -> Result<GenusResult> {
        let mut lo = 0u64;
        let mut hi = 0u64;
        let mut exact = true;
        for (p, q) in self.places() {
            let w = q.f * p.degree() as u64;
            lo += q.d_exact.unwrap_or(q.dmin) * w;
            hi += q.d_exact.unwrap_or(q.dmax) * w;
            exact &= q.d_exact.is_some();
        }
        let base = 2 * self.m as u64 - 2;
        // a geometrically irreducible cover has different degree >= 2m - 2
        if hi < base {
            let shared = self
                .places()
                .fold(0u64, |a, (p, q)| a.gcd(&(q.f * p.degree() as u64)));
            return Err(Error::NotAbsolutelyIrreducible(shared as usize));
        }
        if exact {
            if lo % 2 != 0 || lo < base {
                return Err(Error::InconsistentOracle(format!(
                    "different degree {lo} gives no integral genus"
                )));
            }
            let g = (lo - base) / 2;
            return Ok(GenusResult {
                genus: g,
                genus_max: g,
                exact: true,
                diff_degree_bounds: (lo, hi),
            });
        }
        let dlo = lo.max(base).next_multiple_of(2);
        let dhi = if hi % 2 == 0 { hi } else { hi - 1 };
        if dhi < dlo {
            return Err(Error::InconsistentOracle(format!(
                "no even different degree in [{lo}, {hi}]"
            )));
        }
        Ok(GenusResult {
            genus: (dlo - base) / 2,
            genus_max: (dhi - base) / 2,
            exact: false,
            diff_degree_bounds: (lo, hi),
        })
    }
}

/// Riemann–Hurwitz genus of K(x,y) over K(x). `f` must be irreducible over
/// K(x) with K algebraically closed in K(x,y).
pub fn genus_basic(f: &BivarPoly, max_depth: usize) -> Result<GenusResult> {
    ram_table(f, max_depth, Exec::default())?.genus()
}

/// Genus from counting places of degree up to `2 * g_cap` and reading off the
/// L-polynomial. Exact whenever the true genus is at most `g_cap`.
pub fn zeta_genus(f: &BivarPoly, g_cap: usize) -> Result<u64> {
    zeta_genus_with(f, g_cap, crate::omfactor::DEFAULT_MAX_DEPTH, Exec::default())
}

pub fn zeta_genus_with(f: &BivarPoly, g_cap: usize, max_depth: usize, exec: Exec) -> Result<u64> {
    let field = f.field();
    let q = BigInt::from(field.order().ok_or(Error::FieldTooLarge {
        p: field.p(),
        degree: field.degree(),
    })?);
    let top = (2 * g_cap).max(1);
    let counts = place_counts(f, top, max_depth, exec)?;
    let mut deg_gcd = 0u64;
    for (&d, _) in counts.iter().filter(|(_, &c)| c > 0) {
        deg_gcd = deg_gcd.gcd(&d);
    }
    if deg_gcd != 1 {
        return Err(Error::NotAbsolutelyIrreducible(deg_gcd as usize));
    }
    // N_k = sum over d | k of d * B_d
    let n: Vec<BigInt> = (0..=top as u64)
        .map(|k| {
            if k == 0 {
                return BigInt::from(0);
            }
            counts
                .iter()
                .filter(|(&d, _)| k % d == 0)
                .map(|(&d, &c)| BigInt::from(d * c))
                .sum()
        })
        .collect();
    let a = l_coefficients(&n, &q);
    'g: for g in 0..=g_cap.min(top / 2) {
        if a[2 * g] != q.pow(g as u32) {
            continue;
        }
        if a[2 * g + 1..].iter().any(|c| *c != BigInt::from(0)) {
            continue;
        }
        for i in 0..=g {
            if a[2 * g - i] != q.pow((g - i) as u32) * &a[i] {
                continue 'g;
            }
        }
        return Ok(g as u64);
    }
    Err(Error::CapTooSmall(g_cap))
}

/// Number of places of each degree `d <= top`, keyed by degree. Degrees of
/// places above `top` appear with their counts truncated to what was seen.
fn place_counts(
    f: &BivarPoly,
    top: usize,
    max_depth: usize,
    exec: Exec,
) -> Result<BTreeMap<u64, u64>> {
    let field = f.field();
    let base: Vec<RatPlace> = (1..=top)
        .flat_map(|d| places_of_degree(field, d))
        .collect();
    let found = par::map(exec, &base, |p| {
        places_above(f, p, Side::X, max_depth).map(|qs| qs.iter().map(|q| q.degree()).collect())
    });
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for r in found {
        let degs: Vec<u64> = r?;
        for d in degs {
            *counts.entry(d).or_insert(0) += if d as usize <= top { 1 } else { 0 };
        }
    }
    Ok(counts)
}

/// Coefficients `a_0..a_top` of `L(T) = Z(T)(1 - T)(1 - qT)` from the
/// counts `N_1..N_top` (index 0 unused).
fn l_coefficients(n: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let top = n.len() - 1;
    let s: Vec<BigInt> = (0..=top)
        .map(|k| {
            if k == 0 {
                BigInt::from(0)
            } else {
                q.pow(k as u32) + 1 - &n[k]
            }
        })
        .collect();
    let mut a = vec![BigInt::from(1)];
    for j in 1..=top {
        let acc: BigInt = (1..=j).map(|k| &s[k] * &a[j - k]).sum();
        let (quo, rem) = (-acc).div_rem(&BigInt::from(j));
        debug_assert_eq!(rem, BigInt::from(0));
        a.push(quo);
    }
    a
}

/// Fills the single missing different exponent from an independently known
/// genus.
pub fn reconcile_different(rt: &RamTable, oracle_genus: u64) -> Result<RamTable> {
    let missing: Vec<(usize, usize)> = rt
        .rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.places
                .iter()
                .enumerate()
                .filter(|(_, q)| q.d_exact.is_none())
                .map(move |(j, _)| (i, j))
        })
        .collect();
    let target = 2 * oracle_genus as i64 - 2 + 2 * rt.m as i64;
    let known: i64 = rt
        .places()
        .filter_map(|(p, q)| q.d_exact.map(|d| (d * q.f * p.degree() as u64) as i64))
        .sum();
    match missing.as_slice() {
        [] => {
            if known != target {
                return Err(Error::InconsistentOracle(format!(
                    "table gives different degree {known}, oracle genus needs {target}"
                )));
            }
            Ok(rt.clone())
        }
        [(i, j)] => {
            let row = &rt.rows[*i];
            let q = &row.places[*j];
            let w = (q.f * row.place.degree() as u64) as i64;
            let rest = target - known;
            if rest % w != 0 || rest < q.dmin as i64 || rest / w > q.dmax as i64 || rest / w < q.dmin as i64
            {
                return Err(Error::InconsistentOracle(format!(
                    "missing different {rest}/{w} outside [{}, {}]",
                    q.dmin, q.dmax
                )));
            }
            let mut out = rt.clone();
            out.rows[*i].places[*j].d_exact = Some((rest / w) as u64);
            Ok(out)
        }
        _ => Err(Error::Inconclusive(format!(
            "{} places lack an exact different",
            missing.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, FFPoly};

    fn elliptic() -> BivarPoly {
        let k = make_field(5, 1).unwrap();
        BivarPoly::from_int_terms(&k, &[(0, 2, 1), (3, 0, -1), (1, 0, -1)])
    }

    #[test]
    fn locus_of_elliptic_curve() {
        let f = elliptic();
        let k = f.field().clone();
        let locus = ramification_locus(&f).unwrap();
        let want = vec![
            RatPlace::Finite(FFPoly::x(&k)),
            RatPlace::Finite(FFPoly::from_ints(&k, &[2, 1])),
            RatPlace::Finite(FFPoly::from_ints(&k, &[3, 1])),
            RatPlace::infinity(&k),
        ];
        assert_eq!(locus, want);
    }

    #[test]
    fn elliptic_genus_both_ways() {
        let f = elliptic();
        let g = genus_basic(&f, 8).unwrap();
        assert_eq!((g.genus, g.exact), (1, true));
        assert_eq!(zeta_genus(&f, 2).unwrap(), 1);
    }

    #[test]
    fn rational_curve() {
        let k = make_field(3, 1).unwrap();
        let f = BivarPoly::from_int_terms(&k, &[(0, 1, 1), (1, 0, -1)]);
        assert_eq!(genus_basic(&f, 8).unwrap().genus, 0);
        assert!(ram_table(&f, 8, Exec::Sequential).unwrap().rows.is_empty());
        assert_eq!(zeta_genus(&f, 1).unwrap(), 0);
    }

    #[test]
    fn reconciled_table_uses_the_filled_exponent() {
        let k = make_field(2, 1).unwrap();
        let f = BivarPoly::from_int_terms(&k, &[(0, 3, 1), (1, 3, 1), (0, 1, 1), (1, 1, 1), (3, 0, 1)]);
        let rt = ram_table(&f, 8, Exec::Sequential).unwrap();
        assert_eq!(rt.genus().unwrap().exact, false);
        let filled = reconcile_different(&rt, 2).unwrap();
        let g = filled.genus().unwrap();
        assert_eq!((g.genus, g.exact, g.diff_degree_bounds), (2, true, (8, 8)));
        assert!(matches!(reconcile_different(&rt, 4), Err(Error::InconsistentOracle(_))));
    }

    #[test]
    fn l_polynomial_of_rational_counts() {
        // N_k = q^k + 1 gives L = 1
        let q = BigInt::from(3);
        let n: Vec<BigInt> = (0..5u32)
            .map(|k| if k == 0 { BigInt::from(0) } else { q.pow(k) + 1 })
            .collect();
        let a = l_coefficients(&n, &q);
        assert_eq!(a[0], BigInt::from(1));
        assert!(a[1..].iter().all(|c| *c == BigInt::from(0)));
    }
}
