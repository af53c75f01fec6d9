//! Climbing a recursive tower: ramification indices from Abhyankar's lemma,
//! different exponents from transitivity, and the resulting lower bounds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ffield::is_prime;

/// Ramification data of the basic field that drives the climb.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RamHypotheses {
    /// Degree of each step of the tower.
    pub m: u64,
    /// e(Q | P_f(x)).
    pub n: u64,
    /// e(Q' | P_f(x)).
    pub r: u64,
    pub p: u64,
    /// Lower bound for d(Q' | P_f(x)).
    pub d_prime_min: u64,
}

impl RamHypotheses {
    /// With `d_prime_min = r`, the wild lower bound.
    pub fn new(m: u64, n: u64, r: u64, p: u64) -> RamHypotheses {
        RamHypotheses {
            m,
            n,
            r,
            p,
            d_prime_min: r,
        }
    }

    /// Every violated invariant, by name.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.p > u32::MAX as u64 || !is_prime(self.p as u32) {
            v.push(format!("p = {} is not prime", self.p));
        }
        if self.m < 2 {
            v.push(format!("m = {} < 2", self.m));
        }
        if self.n == 0 || self.r == 0 {
            v.push("ramification indices must be positive".into());
        }
        if self.m.gcd(&self.p) != 1 {
            v.push(format!("gcd(m, p) = gcd({}, {}) != 1", self.m, self.p));
        }
        if self.n.gcd(&self.m) != 1 {
            v.push(format!("gcd(n, m) = gcd({}, {}) != 1", self.n, self.m));
        }
        if self.r.gcd(&self.m) != 1 {
            v.push(format!("gcd(r, m) = gcd({}, {}) != 1", self.r, self.m));
        }
        if self.p != 0 && self.r % self.p != 0 {
            v.push(format!("p = {} does not divide r = {}", self.p, self.r));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidHypotheses(v.join("; ")))
        }
    }
}

/// Ramification index in a compositum with one tame side: `lcm(e1, e2)`.
pub fn abhyankar_e(e1: u64, e2: u64, p: u64) -> Result<u64> {
    if e1 % p == 0 && e2 % p == 0 {
        return Err(Error::BothWild { e1, e2, p });
    }
    Ok(e1.lcm(&e2))
}

/// d(P''|P) from d(P''|P') = `d_upper`, e(P''|P') = `e_upper`, d(P'|P) = `d_lower`.
pub fn different_transitivity(d_upper: u64, e_upper: u64, d_lower: u64) -> u64 {
    e_upper * d_lower + d_upper
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Bounds at one level of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelBound {
    pub i: u32,
    /// [T_i : T_0] = m^i.
    pub degree: BigInt,
    /// Lower bound for d(P'|P), P' in T_{i+1} over P in T_i.
    pub d_bound: BigInt,
    /// Whether `d_bound >= degree / 2`.
    pub meets_half_degree: bool,
    /// Lower bound for g(T_{i+1}) / [T_{i+1} : T_0].
    pub genus_ratio_lower: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClimbVerdict {
    InfiniteGenus,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidReport {
    pub hypotheses: RamHypotheses,
    pub levels: Vec<LevelBound>,
    /// The constant c with d(P'|P) >= c [T_i : T_0] at every level.
    pub c: BigRational,
    /// Partial sums of c / [T_{i+1} : T_i] for i = 1..=levels.
    pub series_partial_sums: Vec<BigRational>,
    pub verdict: ClimbVerdict,
    pub notes: Vec<String>,
}

/// Level-`i` bound `m^i d' + (m^i - 1)(1 - r)`.
pub fn level_bound(h: &RamHypotheses, i: u32) -> BigInt {
    let mi = big(h.m).pow(i);
    &mi * big(h.d_prime_min) + (&mi - 1) * (BigInt::one() - big(h.r))
}

/// Bounds for levels `0..=levels` and the divergence verdict.
pub fn climb(h: &RamHypotheses, levels: u32) -> Result<PyramidReport> {
    h.validate()?;
    let half = BigRational::new(big(1), big(2));
    let mut out = Vec::new();
    let mut acc = BigRational::zero();
    let mut all_meet = true;
    for i in 0..=levels {
        let degree = big(h.m).pow(i);
        let d = level_bound(h, i);
        let meets = rat(d.clone()) >= rat(degree.clone()) * &half;
        all_meet &= meets;
        acc += BigRational::new(d.clone(), big(2) * &degree * big(h.m));
        let next = big(h.m).pow(i + 1);
        out.push(LevelBound {
            i,
            degree,
            d_bound: d,
            meets_half_degree: meets,
            genus_ratio_lower: BigRational::new(big(1), next) - BigRational::one() + &acc,
        });
    }
    let (sv, sums) = series_divergence(
        &SeqSpec::Constant(half.clone()),
        &SeqSpec::Constant(rat(big(h.m))),
        levels.max(1) as usize,
    );
    let verdict = if all_meet && sv == SeriesVerdict::Diverges {
        ClimbVerdict::InfiniteGenus
    } else {
        ClimbVerdict::Inconclusive
    };
    Ok(PyramidReport {
        hypotheses: *h,
        levels: out,
        c: half,
        series_partial_sums: sums,
        verdict,
        notes: vec![
            "c_i = 1/2 from d(P'|P) >= [T_i:T_0]/2; the constant c_i = 2 does not follow from \
             these bounds, and any positive constant gives divergence"
                .into(),
        ],
    })
}

/// A nonnegative sequence indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqSpec {
    Constant(BigRational),
    /// Repeats with the given period, starting at index 1.
    Periodic(Vec<BigRational>),
    /// `coeff * i^exponent`.
    PowerLaw { coeff: BigRational, exponent: i32 },
}

impl SeqSpec {
    pub fn term(&self, i: usize) -> BigRational {
        match self {
            SeqSpec::Constant(c) => c.clone(),
            SeqSpec::Periodic(v) if v.is_empty() => BigRational::zero(),
            SeqSpec::Periodic(v) => v[(i - 1) % v.len()].clone(),
            SeqSpec::PowerLaw { coeff, exponent } => {
                let base = rat(BigInt::from(i));
                if *exponent >= 0 {
                    coeff * base.pow(*exponent)
                } else {
                    coeff / base.pow(-*exponent)
                }
            }
        }
    }

    /// `(period, exponent)` when the sequence is periodic times `i^exponent`.
    fn shape(&self) -> (usize, i32) {
        match self {
            SeqSpec::Constant(_) => (1, 0),
            SeqSpec::Periodic(v) => (v.len().max(1), 0),
            SeqSpec::PowerLaw { exponent, .. } => (1, *exponent),
        }
    }

    fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            SeqSpec::Constant(c) => (c.clone(), c.clone()),
            SeqSpec::Periodic(v) => (
                v.iter().min().cloned().unwrap_or_else(BigRational::zero),
                v.iter().max().cloned().unwrap_or_else(BigRational::zero),
            ),
            SeqSpec::PowerLaw { coeff, .. } => (coeff.clone(), coeff.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesVerdict {
    Diverges,
    Inconclusive,
}

/// Divergence of `sum c_i / d_i`, with partial sums up to `horizon`.
///
/// Divergence is only claimed from a certificate: periodic terms with a
/// positive entry, or terms bounded below by `C i^a` with `C > 0`, `a >= -1`.
pub fn series_divergence(
    c: &SeqSpec,
    step_degrees: &SeqSpec,
    horizon: usize,
) -> (SeriesVerdict, Vec<BigRational>) {
    let mut sums = Vec::with_capacity(horizon);
    let mut acc = BigRational::zero();
    for i in 1..=horizon {
        let d = step_degrees.term(i);
        if d.is_positive() {
            acc += c.term(i) / d;
        }
        sums.push(acc.clone());
    }
    let (pc, ac) = c.shape();
    let (pd, ad) = step_degrees.shape();
    let verdict = if ac == 0 && ad == 0 {
        let period = pc.lcm(&pd);
        let positive = (1..=period).any(|i| {
            let d = step_degrees.term(i);
            d.is_positive() && c.term(i).is_positive()
        });
        let degrees_positive = (1..=period).all(|i| step_degrees.term(i).is_positive());
        if positive && degrees_positive {
            SeriesVerdict::Diverges
        } else {
            SeriesVerdict::Inconclusive
        }
    } else {
        let (cmin, _) = c.bounds();
        let (dmin, dmax) = step_degrees.bounds();
        if cmin.is_positive() && dmin.is_positive() && dmax.is_positive() && ac - ad >= -1 {
            SeriesVerdict::Diverges
        } else {
            SeriesVerdict::Inconclusive
        }
    };
    (verdict, sums)
}

/// Ramification labels of one pyramid node N(j, k) = K(x_j, ..., x_k):
/// `left` = e over N(j, k-1), `right` = e over N(j+1, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeLabel {
    pub left: u64,
    pub right: Option<u64>,
}

/// The node diagram above P_0, ..., P_i and the bound it yields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidWalk {
    pub i: u32,
    /// Keyed by `(j, k)`, `j < k <= i + 1`.
    pub nodes: BTreeMap<(u32, u32), NodeLabel>,
    pub d_bound: BigInt,
}

/// Builds every node of the diagram for level `i` by Abhyankar's lemma and
/// derives d(P'|P) along the two tame paths by transitivity.
pub fn pyramid_walk(h: &RamHypotheses, i: u32) -> Result<PyramidWalk> {
    h.validate()?;
    let mut nodes: BTreeMap<(u32, u32), NodeLabel> = BTreeMap::new();
    for j in 0..=i {
        let label = if j < i {
            NodeLabel {
                left: h.n,
                right: Some(h.m),
            }
        } else {
            // Q' lies over P_i with index r; its index over K(x_{i+1}) is not needed
            NodeLabel {
                left: h.r,
                right: None,
            }
        };
        nodes.insert((j, j + 1), label);
    }
    for span in 2..=i + 1 {
        for j in 0..=(i + 1 - span) {
            let k = j + span;
            let l = nodes[&(j, k - 1)];
            let r = nodes[&(j + 1, k)];
            let el = l.right.ok_or_else(|| {
                Error::InvalidHypotheses("left child has no right label".into())
            })?;
            let er = r.left;
            let e = abhyankar_e(el, er, h.p)?;
            nodes.insert(
                (j, k),
                NodeLabel {
                    left: e / el,
                    right: Some(e / er),
                },
            );
        }
    }
    // tame chains P' -> Q' and P -> P_i: drop x_0, x_1, ... one at a time
    let chain = |top: u32| -> Result<(u64, u64)> {
        let mut e_tot = 1u64;
        let mut d_tot = 0u64;
        for j in (0..i).rev() {
            let e = nodes[&(j, top)].right.unwrap();
            if e % h.p == 0 {
                return Err(Error::InvalidHypotheses(format!(
                    "wild step in a chain expected to be tame at node ({j}, {top})"
                )));
            }
            // N(j, top) over N(j+1, top), which already lies over the bottom
            d_tot = different_transitivity(e - 1, e, d_tot);
            e_tot *= e;
        }
        Ok((e_tot, d_tot))
    };
    let (e_up, d_up) = chain(i + 1)?;
    let (_, d_low) = chain(i)?;
    let e_pp = if i == 0 { 1 } else { nodes[&(0, i + 1)].left };
    let d_total = different_transitivity(d_up, e_up, h.d_prime_min);
    let d_bound = big(d_total) - big(e_pp) * big(d_low);
    Ok(PyramidWalk { i, nodes, d_bound })
}
