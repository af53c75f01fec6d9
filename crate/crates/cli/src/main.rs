mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use towerlab::basicfield::{ram_table, reconcile_different, zeta_genus_with};
use towerlab::checker::{check_theorem_with, verify_family_facts, FamilyParams};
use towerlab::error::{Error, Result};
use towerlab::expr::{parse_element, parse_poly, parse_univariate};
use towerlab::ffield::{make_field, set_factor_seed, BivarPoly, FFPoly, FiniteField};
use towerlab::omfactor::DEFAULT_MAX_DEPTH;
use towerlab::par::Exec;
use towerlab::pyramid::{climb, pyramid_walk, ClimbVerdict, RamHypotheses};

#[derive(Parser, Debug)]
#[command(name = "towerlab", version, about = "Ramification and genus growth of recursive towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ramification table and Riemann-Hurwitz genus of K(x,y).
    Analyze(PolyArgs),
    /// Check the infinite-genus criterion at the places defined by --f.
    CheckTheorem(TheoremArgs),
    /// Per-level different bounds and the divergence verdict.
    Climb(ClimbArgs),
    /// Build the family g(x)[(y-a)^m + b(y-a)] = (x-a)^m and verify its facts.
    Family(FamilyArgs),
    /// Genus by Riemann-Hurwitz, cross-checked by point counting.
    Genus(GenusArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Degree of the constant field over GF(p).
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(flatten)]
    common: Common,
    /// F(x, y), e.g. "(x+1)*(y^3+y)-x^3".
    #[arg(long = "F")]
    big_f: String,
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "F")]
    big_f: String,
    /// Monic irreducible f(x) defining the base places.
    #[arg(long = "f")]
    f: String,
}

#[derive(Args, Debug)]
struct ClimbArgs {
    #[command(flatten)]
    common: Common,
    /// Take the hypotheses from check-theorem on F and f instead of --m/--n/--r.
    #[arg(long = "F", requires = "f", conflicts_with_all = ["m", "n", "r"])]
    big_f: Option<String>,
    #[arg(long = "f")]
    f: Option<String>,
    #[arg(long, required_unless_present = "big_f")]
    m: Option<u64>,
    #[arg(long, required_unless_present = "big_f")]
    n: Option<u64>,
    #[arg(long, required_unless_present = "big_f")]
    r: Option<u64>,
    /// Lower bound for d(Q'|P); defaults to r.
    #[arg(long)]
    d_prime_min: Option<u64>,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=64))]
    levels: u32,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value = "0")]
    a: String,
    #[arg(long, default_value = "1")]
    b: String,
    #[arg(long, default_value = "x+1")]
    g: String,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct GenusArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "F")]
    big_f: String,
    /// Largest genus the point-counting oracle can certify; defaults to the
    /// Riemann-Hurwitz upper bound.
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=8))]
    g_cap: Option<u64>,
}

/// Outcome of one command: positive verdicts exit 0, others 1.
struct Outcome {
    command: &'static str,
    job: Value,
    verdict: String,
    positive: bool,
    result: Value,
    notes: Vec<String>,
    text: String,
}

fn field(c: &Common) -> Result<FiniteField> {
    make_field(c.p, c.k)
}

fn common_job(c: &Common) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("p".into(), json!(c.p));
    m.insert("k".into(), json!(c.k));
    m.insert("max_depth".into(), json!(c.max_depth));
    m
}

fn place_line(q: &towerlab::omfactor::PlaceExt) -> String {
    let d = match q.d_exact {
        Some(d) => d.to_string(),
        None => format!("[{}, {}]", q.dmin, q.dmax),
    };
    format!(
        "{:>4} {:>4} {:>6} {:>10}  {}",
        q.e,
        q.f,
        q.degree(),
        d,
        if q.is_wild() { "wild" } else { "tame" }
    )
}

fn analyze(a: &PolyArgs) -> Result<Outcome> {
    let k = field(&a.common)?;
    let f = parse_poly(&a.big_f, &k)?;
    let rt = ram_table(&f, a.common.max_depth, Exec::default())?;
    let g = rt.genus()?;
    let mut job = common_job(&a.common);
    job.insert("F".into(), json!(f.to_string()));
    let verdict = if g.exact {
        format!("genus {}", g.genus)
    } else {
        format!("genus in [{}, {}]", g.genus, g.genus_max)
    };
    let mut text = format!("F = {f} over {k}\n\n{:<10} {:>4} {:>4} {:>6} {:>10}\n", "place", "e", "f", "deg", "d");
    for row in &rt.rows {
        for q in &row.places {
            text.push_str(&format!("{:<10} {}\n", row.place.label("x"), place_line(q)));
        }
    }
    text.push_str(&format!("\n{verdict}\n"));
    Ok(Outcome {
        command: "analyze",
        job: Value::Object(job),
        verdict,
        positive: true,
        result: json!({ "table": report::ram_table(&rt), "genus": report::genus(&g) }),
        notes: Vec::new(),
        text,
    })
}

fn theorem_input(c: &Common, big_f: &str, f: &str) -> Result<(BivarPoly, FFPoly)> {
    let k = field(c)?;
    Ok((parse_poly(big_f, &k)?, parse_univariate(f, &k)?))
}

fn check(a: &TheoremArgs) -> Result<Outcome> {
    let (big_f, f) = theorem_input(&a.common, &a.big_f, &a.f)?;
    let v = check_theorem_with(&big_f, &f, a.common.max_depth)?;
    let mut job = common_job(&a.common);
    job.insert("F".into(), json!(big_f.to_string()));
    job.insert("f".into(), json!(f.display_in("x")));
    let verdict = if v.holds { "holds" } else { "fails" }.to_string();
    let mut text = format!("F = {big_f}, f = {}\n", f.display_in("x"));
    if let Some(w) = &v.q {
        text.push_str(&format!(
            "Q:  e = {} over P_f(x), e = {} over P_f(y)\n",
            w.over_x.e, w.over_y.e
        ));
    }
    if let Some(q) = &v.q_prime {
        text.push_str(&format!("Q': e = {}, d in [{}, {}]\n", q.e, q.dmin, q.dmax));
    }
    for c in &v.failed_conditions {
        text.push_str(&format!("failed: {c}\n"));
    }
    text.push_str(&format!(
        "{verdict}{}\n",
        if v.holds { ": the tower has infinite genus" } else { "" }
    ));
    Ok(Outcome {
        command: "check-theorem",
        job: Value::Object(job),
        verdict,
        positive: v.holds,
        result: report::theorem(&v),
        notes: Vec::new(),
        text,
    })
}

fn climb_cmd(a: &ClimbArgs) -> Result<Outcome> {
    let mut job = common_job(&a.common);
    job.insert("levels".into(), json!(a.levels));
    let mut h = match (&a.big_f, &a.f) {
        (Some(big_f), Some(f)) => {
            let (bf, ff) = theorem_input(&a.common, big_f, f)?;
            job.insert("F".into(), json!(bf.to_string()));
            job.insert("f".into(), json!(ff.display_in("x")));
            let v = check_theorem_with(&bf, &ff, a.common.max_depth)?;
            v.hypotheses.ok_or_else(|| {
                Error::InvalidHypotheses(format!(
                    "criterion fails: {}",
                    v.failed_conditions.join("; ")
                ))
            })?
        }
        _ => {
            let (m, n, r) = (a.m.unwrap_or(0), a.n.unwrap_or(0), a.r.unwrap_or(0));
            job.insert("m".into(), json!(m));
            job.insert("n".into(), json!(n));
            job.insert("r".into(), json!(r));
            RamHypotheses::new(m, n, r, a.common.p as u64)
        }
    };
    if let Some(d) = a.d_prime_min {
        job.insert("d_prime_min".into(), json!(d));
        h.d_prime_min = d;
    }
    let rep = climb(&h, a.levels)?;
    let mut walks = Vec::new();
    for i in 0..=a.levels.min(4) {
        let w = pyramid_walk(&h, i)?;
        if w.d_bound != rep.levels[i as usize].d_bound {
            return Err(Error::InconsistentOracle(format!(
                "pyramid walk gives {} at level {i}, climb gives {}",
                w.d_bound, rep.levels[i as usize].d_bound
            )));
        }
        walks.push(w);
    }
    let positive = rep.verdict == ClimbVerdict::InfiniteGenus;
    let verdict = if positive { "infinite_genus" } else { "inconclusive" }.to_string();
    let mut text = format!(
        "m = {}, n = {}, r = {}, p = {}, d' >= {}\n\n{:>3} {:>12} {:>12} {:>6}  {}\n",
        h.m, h.n, h.r, h.p, h.d_prime_min, "i", "[T_i:T_0]", "d(P'|P) >=", ">= 1/2", "g(T_i+1)/[T_i+1:T_0] >="
    );
    for l in &rep.levels {
        text.push_str(&format!(
            "{:>3} {:>12} {:>12} {:>6}  {}\n",
            l.i,
            l.degree,
            l.d_bound,
            if l.meets_half_degree { "yes" } else { "no" },
            report::rational(&l.genus_ratio_lower)
        ));
    }
    if let Some(w) = walks.last() {
        text.push_str(&format!("\nramification labels, level {}:\n", w.i));
        text.push_str(&report::ascii_pyramid(w));
    }
    text.push_str(&format!("\nc = {}; {verdict}\n", report::rational(&rep.c)));
    let mut result = report::climb(&rep);
    result["walks"] = Value::Array(walks.iter().map(report::walk).collect());
    Ok(Outcome {
        command: "climb",
        job: Value::Object(job),
        verdict,
        positive,
        result,
        notes: rep.notes.clone(),
        text,
    })
}

fn family(a: &FamilyArgs) -> Result<Outcome> {
    let k = FamilyParams::default_field(a.q)?;
    let params = FamilyParams {
        q: a.q,
        a: parse_element(&a.a, &k)?,
        b: parse_element(&a.b, &k)?,
        g: parse_univariate(&a.g, &k)?,
    };
    let rep = verify_family_facts(&params)?;
    let xa = FFPoly::linear(&params.a);
    let v = check_theorem_with(&rep.spec.f, &xa, a.max_depth)?;
    let positive = rep.all_pass() && v.holds;
    let job = json!({
        "q": a.q,
        "a": params.a.to_string(),
        "b": params.b.to_string(),
        "g": params.g.display_in("x"),
        "max_depth": a.max_depth,
    });
    let verdict = if positive { "all_pass" } else { "fails" }.to_string();
    let mut text = format!("F = {} over {k}, c = {}\n\n", rep.spec.f, rep.c);
    for c in &rep.checks {
        text.push_str(&format!(
            "({}) {:<5} {}: {}\n",
            c.id,
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    text.push_str(&format!(
        "\ncriterion at x-a: {}\n{verdict}\n",
        if v.holds { "holds" } else { "fails" }
    ));
    let mut result = report::family(&rep);
    result["theorem"] = report::theorem(&v);
    Ok(Outcome {
        command: "family",
        job,
        verdict,
        positive,
        result,
        notes: rep.notes.clone(),
        text,
    })
}

fn genus_cmd(a: &GenusArgs) -> Result<Outcome> {
    let k = field(&a.common)?;
    let f = parse_poly(&a.big_f, &k)?;
    let rt = ram_table(&f, a.common.max_depth, Exec::default())?;
    let g = rt.genus()?;
    let mut job = common_job(&a.common);
    job.insert("F".into(), json!(f.to_string()));
    let g_cap = a.g_cap.unwrap_or(g.genus_max.min(8));
    job.insert("g_cap".into(), json!(g_cap));
    let mut notes = Vec::new();
    let zeta = match zeta_genus_with(&f, g_cap as usize, a.common.max_depth, Exec::default()) {
        Ok(z) => Some(z),
        Err(Error::CapTooSmall(c)) => {
            notes.push(format!("point counting inconclusive with g_cap = {c}"));
            None
        }
        Err(e) => return Err(e),
    };
    let mut filled = None;
    let (verdict, positive) = match zeta {
        Some(z) if g.exact => {
            if z == g.genus {
                (format!("genus {z}"), true)
            } else {
                (format!("mismatch: Riemann-Hurwitz {}, point count {z}", g.genus), false)
            }
        }
        Some(z) => match reconcile_different(&rt, z) {
            Ok(t) => {
                filled = Some(t);
                (format!("genus {z}"), true)
            }
            Err(e) => {
                notes.push(e.to_string());
                (format!("genus in [{}, {}]", g.genus, g.genus_max), false)
            }
        },
        None if g.exact => (format!("genus {}", g.genus), false),
        None => (format!("genus in [{}, {}]", g.genus, g.genus_max), false),
    };
    let mut text = format!(
        "F = {f} over {k}\nRiemann-Hurwitz: {}\npoint count: {}\n",
        if g.exact {
            g.genus.to_string()
        } else {
            format!("[{}, {}]", g.genus, g.genus_max)
        },
        zeta.map_or("-".to_string(), |z| z.to_string())
    );
    if let Some(t) = &filled {
        for row in &t.rows {
            for q in &row.places {
                text.push_str(&format!("{:<10} {}\n", row.place.label("x"), place_line(q)));
            }
        }
    }
    text.push_str(&format!("{verdict}\n"));
    Ok(Outcome {
        command: "genus",
        job: Value::Object(job),
        verdict,
        positive,
        result: json!({
            "riemann_hurwitz": report::genus(&g),
            "zeta_genus": zeta,
            "reconciled": filled.as_ref().map(report::ram_table),
        }),
        notes,
        text,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(s) = std::env::var("TOWERLAB_SEED") {
        match s.trim().parse::<u64>() {
            Ok(seed) => set_factor_seed(seed),
            Err(_) => {
                eprintln!("TOWERLAB_SEED must be an unsigned integer, got {s:?}");
                return ExitCode::from(2);
            }
        }
    }
    let (format, name, out) = match &cli.command {
        Command::Analyze(a) => (a.common.format, "analyze", analyze(a)),
        Command::CheckTheorem(a) => (a.common.format, "check-theorem", check(a)),
        Command::Climb(a) => (a.common.format, "climb", climb_cmd(a)),
        Command::Family(a) => (a.format, "family", family(a)),
        Command::Genus(a) => (a.common.format, "genus", genus_cmd(a)),
    };
    match (out, format) {
        (Ok(o), Format::Json) => {
            let doc = json!({
                "schema_version": report::SCHEMA_VERSION,
                "command": o.command,
                "job": o.job,
                "verdict": o.verdict,
                "result": o.result,
                "notes": o.notes,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
            ExitCode::from(if o.positive { 0 } else { 1 })
        }
        (Ok(o), Format::Text) => {
            print!("{}", o.text);
            for n in &o.notes {
                println!("note: {n}");
            }
            ExitCode::from(if o.positive { 0 } else { 1 })
        }
        (Err(e), Format::Json) => {
            let doc = json!({
                "schema_version": report::SCHEMA_VERSION,
                "command": name,
                "error": report::error(&e),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
            ExitCode::from(2)
        }
        (Err(e), Format::Text) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
