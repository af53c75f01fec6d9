use std::collections::BTreeSet;

use super::{eisenstein_at, places_above, Side, DEFAULT_MAX_DEPTH};
use crate::error::{Error, Result};
use crate::ffield::{poly_factor, BivarPoly, FFPoly};
use crate::ratfunc::{places_of_degree, RatPlace};

const DIVISOR_BUDGET: usize = 50_000;
const PARTITION_PLACE_DEGREE: usize = 2;

/// Whether `f` is irreducible as a polynomial in y over K(x).
///
/// Decided by, in order: a repeated factor, generalized Eisenstein at a
/// candidate place, a root in K(x), the absence of roots when `deg_y <= 3`,
/// and incompatible local factor degrees across places. Returns
/// `Inconclusive` when none of these applies.
pub fn is_irreducible_over_ratfield(f: &BivarPoly) -> Result<bool> {
    let n = match f.deg_y() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidArgument(
                "polynomial has no positive degree in y".into(),
            ))
        }
    };
    if n == 1 {
        return Ok(true);
    }
    if f.coeff_y(0).is_zero() {
        return Ok(false);
    }
    let field = f.field().clone();
    let fy = f.deriv_y();
    let separable = !fy.is_zero();
    let disc = if separable {
        let d = f.resultant_y(&fy);
        if d.is_zero() {
            return Ok(false);
        }
        Some(d)
    } else {
        None
    };

    let mut candidates = vec![RatPlace::infinity(&field)];
    let mut polys: BTreeSet<FFPoly> = BTreeSet::new();
    for c in [f.coeff_y(0), f.leading_y()]
        .into_iter()
        .chain(disc.clone())
    {
        if c.degree().unwrap_or(0) > 0 {
            polys.extend(poly_factor(&c).into_iter().map(|(g, _)| g));
        }
    }
    candidates.extend(polys.into_iter().map(RatPlace::Finite));
    if candidates.iter().any(|p| eisenstein_at(f, p)) {
        return Ok(true);
    }

    match has_root(f) {
        Some(true) => return Ok(false),
        Some(false) if n <= 3 => return Ok(true),
        _ => {}
    }
    if !separable {
        return Err(Error::Inconclusive(
            "inseparable polynomial without an Eisenstein place".into(),
        ));
    }

    // a factor of degree d over K(x) splits into local factors at every place
    let mut feasible: BTreeSet<usize> = (1..n).collect();
    let mut tried: Vec<RatPlace> = candidates;
    for d in 1..=PARTITION_PLACE_DEGREE {
        for p in places_of_degree(&field, d) {
            if !tried.contains(&p) {
                tried.push(p);
            }
        }
    }
    for p in &tried {
        let Ok(places) = places_above(f, p, Side::X, DEFAULT_MAX_DEPTH) else {
            continue;
        };
        let degs: Vec<usize> = places.iter().map(|q| (q.e * q.f) as usize).collect();
        let sums = subset_sums(&degs, n);
        feasible.retain(|d| sums.contains(d));
        if feasible.is_empty() {
            return Ok(true);
        }
    }
    Err(Error::Inconclusive(format!(
        "local degree data admits factors of degree {:?}",
        feasible
    )))
}

fn subset_sums(parts: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &p in parts {
        for s in (p..=n).rev() {
            if reach[s - p] {
                reach[s] = true;
            }
        }
    }
    (0..=n).filter(|&s| reach[s]).collect()
}

/// Monic divisors of `g`, or `None` past the budget.
fn monic_divisors(g: &FFPoly) -> Option<Vec<FFPoly>> {
    let mut divs = vec![FFPoly::one(g.field())];
    if g.degree().unwrap_or(0) == 0 {
        return Some(divs);
    }
    for (h, m) in poly_factor(g) {
        let mut next = Vec::with_capacity(divs.len() * (m + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..m {
                cur = &cur * &h;
                next.push(cur.clone());
            }
        }
        if next.len() > DIVISOR_BUDGET {
            return None;
        }
        divs = next;
    }
    Some(divs)
}

/// Whether `f` has a root `A/B` in K(x); `None` if the search is too large.
///
/// In lowest terms `A` divides the constant coefficient and `B` the leading
/// one, so the search below is complete.
fn has_root(f: &BivarPoly) -> Option<bool> {
    let field = f.field().clone();
    let n = f.deg_y()?;
    let nums = monic_divisors(&f.coeff_y(0))?;
    let dens = monic_divisors(&f.leading_y())?;
    let units: Vec<_> = field.elements().filter(|u| !u.is_zero()).collect();
    if nums.len() * dens.len() * units.len() > DIVISOR_BUDGET {
        return None;
    }
    for b in &dens {
        let bpows: Vec<FFPoly> = (0..=n).map(|k| b.pow(k as u64)).collect();
        for a0 in &nums {
            if a0.gcd(b).degree().unwrap_or(0) > 0 {
                continue;
            }
            for u in &units {
                let a = a0.scale(u);
                // sum_j F_j a^j b^(n-j)
                let mut acc = FFPoly::zero(&field);
                let mut apow = FFPoly::one(&field);
                for j in 0..=n {
                    acc = &acc + &(&(&f.coeff_y(j) * &apow) * &bpows[n - j]);
                    apow = &apow * &a;
                }
                if acc.is_zero() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}
