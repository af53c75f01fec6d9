//! Verification of the infinite-genus criterion for a recursive tower, and
//! the one-parameter family `g(x)[(y-a)^m + b(y-a)] = (x-a)^m`, `m = q+1`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ffield::{
    is_irreducible, make_field, prime_power_exponent, qth_root, BivarPoly, FFElem, FFPoly,
    FiniteField,
};
use crate::omfactor::{
    eisenstein_at, is_irreducible_over_ratfield, places_above, PlaceExt, Side, DEFAULT_MAX_DEPTH,
};
use crate::pyramid::RamHypotheses;
use crate::ratfunc::{poly_valuation, RatPlace};

/// The defining polynomial of a recursive tower `F(x_i, x_{i+1}) = 0`.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    pub f: BivarPoly,
    pub field: FiniteField,
    /// `deg_y F`.
    pub m: usize,
    pub deg_x: usize,
    /// `deg_x F == deg_y F`.
    pub non_skew: bool,
}

impl TowerSpec {
    pub fn new(f: BivarPoly) -> TowerSpec {
        let m = f.deg_y().unwrap_or(0);
        let deg_x = f.deg_x().unwrap_or(0);
        TowerSpec {
            field: f.field().clone(),
            m,
            deg_x,
            non_skew: deg_x == m,
            f,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    InfiniteGenus,
}

/// The place Q seen from both base fields.
#[derive(Clone, Debug)]
pub struct WitnessQ {
    /// Q as a place above P_f(x).
    pub over_x: PlaceExt,
    /// Q as a place above P_f(y).
    pub over_y: PlaceExt,
}

#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub holds: bool,
    pub q: Option<WitnessQ>,
    pub q_prime: Option<PlaceExt>,
    pub failed_conditions: Vec<String>,
    pub conclusion: Option<Conclusion>,
    pub hypotheses: Option<RamHypotheses>,
    pub non_skew: bool,
}

impl TheoremVerdict {
    fn failed(reasons: Vec<String>, non_skew: bool) -> TheoremVerdict {
        TheoremVerdict {
            holds: false,
            q: None,
            q_prime: None,
            failed_conditions: reasons,
            conclusion: None,
            hypotheses: None,
            non_skew,
        }
    }
}

fn irreducible_condition(f: &BivarPoly, var: &str) -> Option<String> {
    match is_irreducible_over_ratfield(f) {
        Ok(true) => None,
        Ok(false) => Some(format!("F is reducible over K({var})")),
        Err(e) => Some(format!("irreducibility of F over K({var}) undecided: {e}")),
    }
}

/// Checks conditions (1)-(3) of the criterion at the base places defined by `f`.
pub fn check_theorem(big_f: &BivarPoly, f: &FFPoly) -> Result<TheoremVerdict> {
    check_theorem_with(big_f, f, DEFAULT_MAX_DEPTH)
}

pub fn check_theorem_with(big_f: &BivarPoly, f: &FFPoly, max_depth: usize) -> Result<TheoremVerdict> {
    if f.field() != big_f.field() {
        return Err(Error::FieldMismatch);
    }
    if !f.is_monic() || !is_irreducible(f) {
        return Err(Error::InvalidArgument(format!(
            "{} is not monic irreducible",
            f.display_in("X")
        )));
    }
    let spec = TowerSpec::new(big_f.clone());
    let p = spec.field.p() as u64;
    let m = spec.m as u64;
    if m < 2 {
        return Ok(TheoremVerdict::failed(
            vec![format!("m = deg_y F = {m} < 2")],
            spec.non_skew,
        ));
    }
    let mut skew = Vec::new();
    if !spec.non_skew {
        skew.push(format!(
            "F is skew: deg_x F = {} != deg_y F = {m}",
            spec.deg_x
        ));
    }
    let mut pre = skew.clone();
    pre.extend(irreducible_condition(big_f, "x"));
    pre.extend(irreducible_condition(&big_f.swap(), "y"));
    if pre.len() > skew.len() {
        return Ok(TheoremVerdict::failed(pre, spec.non_skew));
    }

    let px = RatPlace::Finite(f.clone());
    let above_x = places_above(big_f, &px, Side::X, max_depth)?;
    let above_y = places_above(big_f, &px, Side::Y, max_depth)?;
    let fx = BivarPoly::from_x_poly(f);
    let fy = BivarPoly::from_y_poly(f);
    let mut failed = skew;

    // (1): total, tame ramification of P_f(y), and Q also over P_f(x)
    let mut q = None;
    let mut n = None;
    if above_y.len() != 1 || above_y[0].e != m {
        let es: Vec<u64> = above_y.iter().map(|q| q.e).collect();
        failed.push(format!(
            "(1) P_f(y) is not totally ramified: indices above it are {es:?}, m = {m}"
        ));
    } else if m.gcd(&p) != 1 {
        failed.push(format!("(1) gcd(m, p) = gcd({m}, {p}) != 1"));
    } else {
        let qy = above_y[0].clone();
        let nu_fx = qy.valuation(&fx)?.unwrap_or(i64::MAX);
        if nu_fx <= 0 {
            failed.push("(1) the place over P_f(y) does not lie over P_f(x)".into());
        } else {
            let mut hits = Vec::new();
            for cand in &above_x {
                if cand.valuation(&fy)?.is_some_and(|v| v > 0) {
                    hits.push(cand.clone());
                }
            }
            if hits.len() != 1 {
                return Err(Error::IdentificationFailed(format!(
                    "{} places over P_f(x) are zeros of f(y)",
                    hits.len()
                )));
            }
            let qx = hits.pop().unwrap();
            let nu_fy_x = qx.valuation(&fy)?;
            let nu_fy_y = qy.valuation(&fy)?;
            if nu_fy_x != nu_fy_y
                || nu_fx != qx.e as i64
                || qx.degree() != qy.degree()
            {
                return Err(Error::IdentificationFailed(format!(
                    "valuations disagree across sides: nu(f(y)) = {nu_fy_x:?} vs {nu_fy_y:?}, \
                     nu(f(x)) = {} vs {nu_fx}",
                    qx.e
                )));
            }
            n = Some(qx.e);
            q = Some(WitnessQ {
                over_x: qx,
                over_y: qy,
            });
        }
    }

    // (2)
    if let Some(n) = n {
        if n.gcd(&m) != 1 {
            failed.push(format!("(2) gcd(e(Q|P_f(x)), m) = gcd({n}, {m}) != 1"));
        }
    }

    // (3): prefer a place other than Q
    let is_q = |c: &PlaceExt| {
        q.as_ref()
            .is_some_and(|w| w.over_x.levels.len() == c.levels.len() && w.over_x.e == c.e && {
                w.over_x
                    .levels
                    .iter()
                    .zip(&c.levels)
                    .all(|(a, b)| a.slope == b.slope && a.root == b.root)
            })
    };
    let mut wild: Vec<&PlaceExt> = above_x
        .iter()
        .filter(|c| c.e % p == 0 && c.e.gcd(&m) == 1)
        .collect();
    wild.sort_by_key(|c| is_q(c));
    let q_prime = wild.first().map(|c| (*c).clone());
    if q_prime.is_none() {
        let es: Vec<u64> = above_x.iter().map(|q| q.e).collect();
        failed.push(format!(
            "(3) no wildly ramified place over P_f(x) with index prime to m = {m}; indices {es:?}, p = {p}"
        ));
    }

    let holds = failed.is_empty();
    let hypotheses = match (holds, n, &q_prime) {
        (true, Some(n), Some(qp)) => Some(RamHypotheses {
            m,
            n,
            r: qp.e,
            p,
            d_prime_min: qp.dmin,
        }),
        _ => None,
    };
    Ok(TheoremVerdict {
        holds,
        q,
        q_prime,
        failed_conditions: failed,
        conclusion: holds.then_some(Conclusion::InfiniteGenus),
        hypotheses,
        non_skew: spec.non_skew,
    })
}

pub const C_G_AT_A: &str = "g(a) != 0";
pub const C_DEG_G: &str = "deg g < m";
pub const C_B_NONZERO: &str = "b != 0";
pub const C_GCD: &str = "gcd(m - deg g, m) = 1";
pub const C_Q_POWER: &str = "q is a power of the characteristic";

/// Parameters of the family `g(x)[(y-a)^m + b(y-a)] = (x-a)^m`, `m = q+1`.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub q: u64,
    pub a: FFElem,
    pub b: FFElem,
    pub g: FFPoly,
}

impl FamilyParams {
    pub fn m(&self) -> u64 {
        self.q + 1
    }

    /// The field GF(q) for `q = p^s`.
    pub fn default_field(q: u64) -> Result<FiniteField> {
        for p in 2..=q.min(u32::MAX as u64) {
            if q % p == 0 {
                let s = prime_power_exponent(q, p).ok_or_else(|| {
                    Error::InvalidParams(format!("{C_Q_POWER}: {q} is not a prime power"))
                })?;
                return make_field(p as u32, s);
            }
        }
        Err(Error::InvalidParams(format!("{C_Q_POWER}: q = {q}")))
    }

    /// Each violated constraint as `(name, detail)`.
    pub fn violations(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        let field = self.a.field();
        if self.b.field() != field || self.g.field() != field {
            v.push(("one field", "a, b and g must share a field".to_string()));
            return v;
        }
        let m = self.m();
        if prime_power_exponent(self.q, field.p() as u64).is_none() {
            v.push((C_Q_POWER, format!("q = {}, p = {}", self.q, field.p())));
        }
        if self.b.is_zero() {
            v.push((C_B_NONZERO, "b = 0".into()));
        }
        if self.g.eval(&self.a).is_zero() {
            v.push((C_G_AT_A, format!("g({}) = 0", self.a)));
        }
        match self.g.degree() {
            Some(d) if (d as u64) < m => {
                let diff = m - d as u64;
                if diff.gcd(&m) != 1 {
                    v.push((C_GCD, format!("gcd({diff}, {m}) != 1")));
                }
            }
            Some(d) => v.push((C_DEG_G, format!("deg g = {d}, m = {m}"))),
            None => v.push((C_G_AT_A, "g = 0".into())),
        }
        v
    }

    pub fn c(&self) -> Result<FFElem> {
        qth_root(&self.b, self.q)
    }
}

fn family_poly(params: &FamilyParams) -> BivarPoly {
    let field = params.a.field().clone();
    let m = params.m();
    let ya = &BivarPoly::y(&field) - &BivarPoly::constant(params.a.clone());
    let xa = &BivarPoly::x(&field) - &BivarPoly::constant(params.a.clone());
    let inner = &ya.pow(m) + &ya.scale(&params.b);
    &(&BivarPoly::from_x_poly(&params.g) * &inner) - &xa.pow(m)
}

/// `F = g(x)[(y-a)^m + b(y-a)] - (x-a)^m`.
pub fn build_family(params: &FamilyParams) -> Result<TowerSpec> {
    let v = params.violations();
    if !v.is_empty() {
        let msg: Vec<String> = v.iter().map(|(c, d)| format!("{c} violated ({d})")).collect();
        return Err(Error::InvalidParams(msg.join("; ")));
    }
    let spec = TowerSpec::new(family_poly(params));
    let m = params.m() as usize;
    if spec.m != m || spec.deg_x != m {
        return Err(Error::InvalidParams(format!(
            "degrees ({}, {}) differ from m = {m}",
            spec.deg_x, spec.m
        )));
    }
    Ok(spec)
}

#[derive(Clone, Debug)]
pub struct FactCheck {
    pub id: char,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Family constraints this check depends on.
    pub consumes: Vec<&'static str>,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub spec: TowerSpec,
    pub c: FFElem,
    pub checks: Vec<FactCheck>,
    pub notes: Vec<String>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Derived ramification facts of the family, each checked independently.
pub fn verify_family_facts(params: &FamilyParams) -> Result<FamilyReport> {
    let spec = build_family(params)?;
    let field = spec.field.clone();
    let f = &spec.f;
    let m = params.m();
    let q = params.q;
    let pxa = RatPlace::at(&params.a);
    let xa = &BivarPoly::x(&field) - &BivarPoly::constant(params.a.clone());
    let ya = &BivarPoly::y(&field) - &BivarPoly::constant(params.a.clone());
    let gx = BivarPoly::from_x_poly(&params.g);
    let mut checks = Vec::new();

    let eis = eisenstein_at(f, &RatPlace::infinity(&field));
    checks.push(FactCheck {
        id: 'a',
        name: "Eisenstein at the infinite place".into(),
        passed: eis,
        detail: format!("one segment of length {m} with denominator {m}: {eis}"),
        consumes: vec![C_DEG_G, C_GCD],
    });

    let above = places_above(f, &pxa, Side::X, DEFAULT_MAX_DEPTH)?;
    let mut ef: Vec<(u64, u64)> = above.iter().map(|p| (p.e, p.f)).collect();
    ef.sort();
    checks.push(FactCheck {
        id: 'b',
        name: "places over P_{x-a}".into(),
        passed: ef == vec![(1, 1), (q, 1)],
        detail: format!("(e, f) = {ef:?}, expected [(1, 1), ({q}, 1)]"),
        consumes: vec![C_G_AT_A, C_B_NONZERO],
    });

    let q_place = above.iter().find(|p| p.e == 1);
    let (passed_c, detail_c) = match q_place {
        Some(qp) => {
            let v_ya = qp.valuation(&ya)?;
            let v_xa = qp.valuation(&xa)?;
            let v_g = qp.valuation(&gx)?;
            let identity = match (v_ya, v_xa, v_g) {
                (Some(a), Some(b), Some(c)) => a == m as i64 * b - c,
                _ => false,
            };
            (
                v_ya == Some(m as i64) && identity,
                format!(
                    "nu(y-a) = {v_ya:?}, nu(x-a) = {v_xa:?}, nu(g) = {v_g:?}; \
                     nu(y-a) = m nu(x-a) - nu(g): {identity}"
                ),
            )
        }
        None => (false, "no unramified place over P_{x-a}".into()),
    };
    checks.push(FactCheck {
        id: 'c',
        name: "the unramified place is the zero of y-a with nu(y-a) = m".into(),
        passed: passed_c,
        detail: detail_c,
        consumes: vec![C_G_AT_A, C_B_NONZERO],
    });

    let above_y = places_above(f, &pxa, Side::Y, DEFAULT_MAX_DEPTH)?;
    let mut over_both = Vec::new();
    for p in &above_y {
        if p.valuation(&xa)?.is_some_and(|v| v > 0) {
            over_both.push(p.e);
        }
    }
    checks.push(FactCheck {
        id: 'd',
        name: "e(Q | P_{y-a}) = m".into(),
        passed: over_both == vec![m],
        detail: format!("indices of places over P_{{y-a}} that are zeros of x-a: {over_both:?}"),
        consumes: vec![C_G_AT_A, C_DEG_G],
    });

    let vg = poly_valuation(&params.g, &pxa);
    checks.push(FactCheck {
        id: 'e',
        name: "g(x) and x-a are coprime".into(),
        passed: vg == Some(0),
        detail: format!("nu_{{P_{{x-a}}}}(g) = {vg:?}"),
        consumes: vec![C_G_AT_A],
    });

    let c = params.c()?;
    let cq = c.pow(q);
    checks.push(FactCheck {
        id: 'f',
        name: "c^q = b".into(),
        passed: cq == params.b,
        detail: format!("c = {c}, c^q = {cq}, b = {}", params.b),
        consumes: vec![C_Q_POWER, C_B_NONZERO],
    });

    checks.push(FactCheck {
        id: 'g',
        name: "non-skew".into(),
        passed: spec.non_skew,
        detail: format!("deg_x F = {}, deg_y F = {}", spec.deg_x, spec.m),
        consumes: vec![C_DEG_G],
    });

    let notes = vec![format!(
        "computed skewness: {} (deg_x F = deg_y F = {m}); a description of this family as skew \
         does not match the definition deg_X F != deg_Y F",
        if spec.non_skew { "non-skew" } else { "skew" }
    )];
    Ok(FamilyReport {
        spec,
        c,
        checks,
        notes,
    })
}
