//! JSON encodings of analysis results. Keys are emitted sorted.

use serde_json::{json, Value};
use towerlab::basicfield::{GenusResult, RamTable};
use towerlab::checker::{FamilyReport, TheoremVerdict};
use towerlab::error::Error;
use towerlab::omfactor::{PlaceExt, RefinementLevel, Side};
use towerlab::pyramid::{PyramidReport, PyramidWalk};

use num_bigint::BigInt;
use num_rational::BigRational;

pub const SCHEMA_VERSION: u64 = 1;

pub fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn bigint(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn level(l: &RefinementLevel) -> Value {
    json!({
        "polygon": l.polygon.iter().map(|(i, h)| json!([i, h])).collect::<Vec<_>>(),
        "slope": [l.slope.0, l.slope.1],
        "length": l.length,
        "residual": l.residual.display_in("u"),
        "multiplicity": l.multiplicity,
        "root": l.root.to_string(),
        "field": l.field.to_string(),
    })
}

pub fn place(q: &PlaceExt) -> Value {
    let var = match q.side {
        Side::X => "x",
        Side::Y => "y",
    };
    json!({
        "base": q.base.label(var),
        "side": var,
        "e": q.e,
        "f": q.f,
        "degree": q.degree(),
        "d_bounds": [q.dmin, q.dmax],
        "d_exact": q.d_exact,
        "wild": q.is_wild(),
        "axis": q.axis,
        "chain": q.levels.iter().map(level).collect::<Vec<_>>(),
    })
}

pub fn ram_table(rt: &RamTable) -> Value {
    let rows: Vec<Value> = rt
        .rows
        .iter()
        .map(|r| {
            json!({
                "place": r.place.label("x"),
                "degree": r.place.degree(),
                "places": r.places.iter().map(place).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "m": rt.m, "rows": rows })
}

pub fn genus(g: &GenusResult) -> Value {
    json!({
        "genus": g.genus,
        "genus_max": g.genus_max,
        "exact": g.exact,
        "diff_degree_bounds": [g.diff_degree_bounds.0, g.diff_degree_bounds.1],
    })
}

pub fn theorem(v: &TheoremVerdict) -> Value {
    let q = v.q.as_ref().map(|w| {
        json!({
            "over_x": place(&w.over_x),
            "over_y": place(&w.over_y),
        })
    });
    let h = v.hypotheses.map(|h| {
        json!({ "m": h.m, "n": h.n, "r": h.r, "p": h.p, "d_prime_min": h.d_prime_min })
    });
    json!({
        "holds": v.holds,
        "conclusion": v.conclusion.map(|_| "infinite_genus"),
        "failed_conditions": v.failed_conditions,
        "non_skew": v.non_skew,
        "witnesses": {
            "q": q,
            "q_prime": v.q_prime.as_ref().map(place),
        },
        "hypotheses": h,
    })
}

pub fn climb(r: &PyramidReport) -> Value {
    let h = r.hypotheses;
    let levels: Vec<Value> = r
        .levels
        .iter()
        .map(|l| {
            json!({
                "i": l.i,
                "degree": bigint(&l.degree),
                "d_bound": bigint(&l.d_bound),
                "meets_half_degree": l.meets_half_degree,
                "genus_ratio_lower": rational(&l.genus_ratio_lower),
            })
        })
        .collect();
    json!({
        "hypotheses": { "m": h.m, "n": h.n, "r": h.r, "p": h.p, "d_prime_min": h.d_prime_min },
        "c": rational(&r.c),
        "levels": levels,
        "series_partial_sums": r.series_partial_sums.iter().map(rational).collect::<Vec<_>>(),
        "verdict": match r.verdict {
            towerlab::pyramid::ClimbVerdict::InfiniteGenus => "infinite_genus",
            towerlab::pyramid::ClimbVerdict::Inconclusive => "inconclusive",
        },
    })
}

pub fn walk(w: &PyramidWalk) -> Value {
    let nodes: Vec<Value> = w
        .nodes
        .iter()
        .map(|((j, k), l)| json!({ "span": [j, k], "left": l.left, "right": l.right }))
        .collect();
    json!({ "i": w.i, "nodes": nodes, "d_bound": bigint(&w.d_bound) })
}

pub fn family(r: &FamilyReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "id": c.id.to_string(),
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
                "consumes": c.consumes,
            })
        })
        .collect();
    json!({
        "F": r.spec.f.to_string(),
        "m": r.spec.m,
        "non_skew": r.spec.non_skew,
        "c": r.c.to_string(),
        "checks": checks,
        "all_pass": r.all_pass(),
    })
}

pub fn error(e: &Error) -> Value {
    let dbg = format!("{e:?}");
    let kind: String = dbg
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect();
    let mut obj = json!({ "kind": kind, "message": e.to_string() });
    if let Error::Parse { offset, expected } = e {
        obj["offset"] = json!(offset);
        obj["expected"] = json!(expected);
    }
    obj
}

/// ASCII diagram of the node labels, apex on top.
pub fn ascii_pyramid(w: &PyramidWalk) -> String {
    let top = w.i + 1;
    let cell = 9usize;
    let mut out = String::new();
    for span in (1..=top).rev() {
        let count = (top - span + 1) as usize;
        let indent = (top as usize - count + 1) * cell / 2;
        let mut line = " ".repeat(indent);
        for j in 0..count as u32 {
            let l = w.nodes[&(j, j + span)];
            let tag = match l.right {
                Some(r) => format!("{}|{}", l.left, r),
                None => format!("{}|-", l.left),
            };
            line.push_str(&format!("{tag:^cell$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let mut base = " ".repeat(cell / 2);
    for j in 0..=top {
        base.push_str(&format!("{:^cell$}", format!("P_{j}")));
    }
    out.push_str(base.trim_end());
    out.push('\n');
    out
}
