use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use oddcut_core::approx::{
    approximates, count_bound_check_with_family, cover_sum_uniform, d_map, is_t_approximation,
    reconstruct, redundant_cover_vertex, uncovered_edge, DWitness, Half,
};
use oddcut_core::approxbuild::{approximate_traced, PipelineTrace};
use oddcut_core::bounds::{
    bounds_csv, growth_estimate, pow2_decimal, supermult_check, theorem_bracket, Verdict,
    RENDER_DIGITS,
};
use oddcut_core::constructions::{
    compose, create_peak, extend_peak, find_peak, merge_at_peak, recentre, slab_family,
    slab_family_count, slab_family_lower_exponent, PeakedSet, SlabFamilySpec,
};
use oddcut_core::count_table::{count_odd_cutsets, CountKey, CountRow, CountTable, ORACLE_VERSION};
use oddcut_core::enumerate::{enumerate_with_jobs, EnumSpec, OriginMode, SearchStats};
use oddcut_core::lattice::edge_boundary_size;
use oddcut_core::sampler::{
    diagnostics_csv, render_svg, sample_exact, sample_mcmc, sample_mcmc_many, McmcConfig,
};
use oddcut_core::{LatticeSet, Vertex};

use crate::args::{
    ApproximateArgs, BoundsArgs, ConstructArgs, ConstructKind, CountArgs, EnumerateArgs,
    FamilyArgs, GlobalOpts, ModeArg, RenderArgs, SampleArgs,
};
use crate::{Failure, Usage};

pub fn jobs(g: &GlobalOpts) -> usize {
    g.jobs
        .map_or_else(rayon::current_num_threads, |j| j as usize)
}

/// Largest n searched without --force.
fn desk_envelope(d: usize) -> Option<usize> {
    match d {
        2 => Some(24),
        3 => Some(36),
        _ => None,
    }
}

pub fn check_envelope(g: &GlobalOpts, spec: &EnumSpec) -> Result<()> {
    if g.force || spec.boundary_per_direction().is_none() {
        return Ok(());
    }
    if desk_envelope(spec.d).is_some_and(|max| spec.n <= max) {
        return Ok(());
    }
    // Connected cores of k vertices in a graph of degree 2d² number at most
    // (e(2d²-1))^(k-1) per root.
    let dd = spec.n / (2 * spec.d);
    let k = spec.isoperimetric_cap().saturating_sub(dd) / 2;
    let degree = (2 * spec.d * spec.d - 1) as f64;
    let log10 = (k.saturating_sub(1)) as f64 * (std::f64::consts::E * degree).log10();
    Err(Usage(format!(
        "(d={}, n={}) is beyond the desk-scale envelope (d=2: n<=24, d=3: n<=36); \
         the search may visit up to ~10^{log10:.0} even cores. Pass --force to run it anyway.",
        spec.d, spec.n
    ))
    .into())
}

pub fn family_spec(f: &FamilyArgs) -> EnumSpec {
    let mode = match f.mode {
        ModeArg::Contains => OriginMode::Contains,
        ModeArg::Within => OriginMode::WithinDistanceR,
    };
    EnumSpec::new(f.d, f.n).with_r(f.r).with_origin_mode(mode)
}

/// The enumerated family for (d, n), origin contained, r = 1.
pub fn family(g: &GlobalOpts, d: usize, n: usize) -> Result<Vec<LatticeSet>> {
    let spec = EnumSpec::new(d, n);
    check_envelope(g, &spec)?;
    Ok(enumerate_with_jobs(&spec, jobs(g))?.sets().collect())
}

fn write_out(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn jsonl<'a>(sets: impl IntoIterator<Item = &'a LatticeSet>) -> Result<String> {
    let mut out = String::new();
    for s in sets {
        out.push_str(&serde_json::to_string(s)?);
        out.push('\n');
    }
    Ok(out)
}

/// Sets from a file holding one JSON object (a set, or an object with a
/// "set" field) or JSON lines of such objects.
pub fn read_sets(path: &Path) -> Result<Vec<LatticeSet>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parse = |v: serde_json::Value| -> Result<LatticeSet> {
        let v = match v {
            serde_json::Value::Object(mut m) if m.contains_key("set") => m.remove("set").unwrap(),
            other => other,
        };
        Ok(serde_json::from_value(v)?)
    };
    if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
        return Ok(vec![
            parse(v).with_context(|| format!("parsing {}", path.display()))?
        ]);
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let v: serde_json::Value = serde_json::from_str(l)
                .with_context(|| format!("{}:{}: invalid JSON", path.display(), i + 1))?;
            parse(v).with_context(|| format!("{}:{}", path.display(), i + 1))
        })
        .collect()
}

fn read_set(path: &Path) -> Result<LatticeSet> {
    let mut sets = read_sets(path)?;
    if sets.len() != 1 {
        return Err(Usage(format!(
            "{} holds {} sets, expected one",
            path.display(),
            sets.len()
        ))
        .into());
    }
    Ok(sets.remove(0))
}

pub fn failure(
    check: &str,
    detail: impl Into<String>,
    witness: serde_json::Value,
) -> anyhow::Error {
    Failure {
        check: check.to_string(),
        detail: detail.into(),
        witness,
    }
    .into()
}

#[derive(Serialize)]
struct CountReport {
    d: usize,
    n: usize,
    r: u32,
    mode: String,
    count: u64,
    cached: bool,
    searches_performed: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<SearchStats>,
}

pub fn count(g: &GlobalOpts, a: &CountArgs) -> Result<()> {
    let spec = family_spec(&a.family);
    spec.validate()?;
    let mut table = CountTable::open(&g.cache)?;
    if table.get(&CountKey::for_spec(&spec)).is_none() || a.rederive {
        check_envelope(g, &spec)?;
    }
    let out = count_odd_cutsets(&spec, &mut table, jobs(g), a.rederive)?;
    if out.searches_performed > 0 {
        eprintln!("searched in {:.3}s", out.seconds);
    }
    let report = CountReport {
        d: out.d,
        n: out.n,
        r: out.r,
        mode: out.mode,
        count: out.count,
        cached: out.cached,
        searches_performed: out.searches_performed,
        reason: out.reason,
        stats: out.stats,
    };
    if g.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{}", report.count);
        if let Some(r) = &report.reason {
            println!("reason: {r}");
        }
        println!("cached: {}", report.cached);
        println!("searches_performed: {}", report.searches_performed);
    }
    Ok(())
}

pub fn enumerate(g: &GlobalOpts, a: &EnumerateArgs) -> Result<()> {
    let spec = family_spec(&a.family);
    spec.validate()?;
    check_envelope(g, &spec)?;
    let e = enumerate_with_jobs(&spec, jobs(g))?;
    if let Some(r) = &e.skipped_reason {
        eprintln!("{r}");
    }
    let sets: Vec<LatticeSet> = e.sets().collect();
    let body = jsonl(&sets)?;
    match &a.out {
        Some(p) => {
            write_out(Some(p), &body)?;
            if g.json {
                println!("{}", json!({"sets": sets.len()}));
            } else {
                println!("{} sets", sets.len());
            }
        }
        None => write_out(None, &body)?,
    }
    Ok(())
}

fn emit_set(g: &GlobalOpts, set: &LatticeSet, peak: Option<&Vertex>) -> Result<()> {
    let boundary = edge_boundary_size(set);
    if g.json {
        println!(
            "{}",
            json!({"boundary": boundary, "peak": peak, "set": set})
        );
    } else {
        println!("boundary: {boundary}");
        if let Some(p) = peak {
            println!("peak: {p}");
        }
        println!("{}", serde_json::to_string(set)?);
    }
    Ok(())
}

fn peaked(set: &LatticeSet, path: &Path) -> Result<PeakedSet> {
    find_peak(set)?.ok_or_else(|| {
        Usage(format!(
            "{} has no peak (no unique even member of maximal x1 + x2)",
            path.display()
        ))
        .into()
    })
}

pub fn construct(g: &GlobalOpts, a: &ConstructArgs) -> Result<()> {
    match &a.kind {
        ConstructKind::Slab { d, m, out, cap } => slab(g, *d, *m, out.as_deref(), *cap),
        ConstructKind::Peak { input } => {
            let p = create_peak(&read_set(input)?)?;
            emit_set(g, &p.set, Some(&p.peak))
        }
        ConstructKind::Extend { input, r, s } => {
            let p = recentre(&peaked(&read_set(input)?, input)?);
            let q = extend_peak(&p, *r, *s)?;
            emit_set(g, &q.set, Some(&q.peak))
        }
        ConstructKind::Merge { input, other } => {
            let p = peaked(&read_set(input)?, input)?;
            let q = recentre(&peaked(&read_set(other)?, other)?);
            emit_set(g, &merge_at_peak(&p, &q)?, None)
        }
        ConstructKind::Compose { input, other, k } => {
            let s = read_set(input)?;
            let q = recentre(&peaked(&read_set(other)?, other)?);
            emit_set(g, &compose(&s, &q, *k)?, None)
        }
    }
}

fn slab(g: &GlobalOpts, d: usize, m: usize, out: Option<&Path>, cap: u64) -> Result<()> {
    let spec = SlabFamilySpec::new(d, m)?;
    let n = spec.boundary_size();
    let count = slab_family_count(&spec)?;
    let exponent = slab_family_lower_exponent(&spec);
    let q = exponent.denom().to_u32().context("exponent denominator")?;
    let p = exponent.numer().to_usize().context("exponent numerator")?;
    // |family| >= 2^{p/q} as |family|^q >= 2^p.
    if count.pow(q) < BigUint::one() << p {
        return Err(failure(
            "slab lower bound",
            format!("{count} members is below 2^({exponent})"),
            json!({"d": d, "m": m}),
        ));
    }
    if let Some(c) = count.to_u64() {
        let mut table = CountTable::open(&g.cache)?;
        table.record(CountRow {
            d,
            n,
            r: 1,
            mode: "slab".into(),
            count: c,
            oracle_version: ORACLE_VERSION.into(),
            seconds: 0.0,
        })?;
    }
    if let Some(path) = out {
        let members = slab_family(&spec, cap)?;
        let distinct: BTreeSet<&LatticeSet> = members.iter().collect();
        if BigUint::from(distinct.len()) != count {
            return Err(failure(
                "slab family",
                format!("{} distinct members, expected {count}", distinct.len()),
                json!({"d": d, "m": m}),
            ));
        }
        write_out(Some(path), &jsonl(&members)?)?;
    }
    let lower = pow2_decimal(&exponent, RENDER_DIGITS)?;
    if g.json {
        println!(
            "{}",
            json!({
                "d": d,
                "m": m,
                "boundary": n,
                "count": count.to_string(),
                "lower_exponent": exponent.to_string(),
                "lower_bound": lower,
            })
        );
    } else {
        println!("slab d={d} m={m}: boundary {n}");
        println!("members: {count}");
        println!("lower bound: 2^({exponent}) = {lower}");
    }
    Ok(())
}

/// Outcome of the pipeline on one set, after every check passed.
#[derive(Debug, Serialize)]
pub struct ApproxOutcome {
    pub boundary: usize,
    pub separator: usize,
    pub separating_set: usize,
    pub stars: [usize; 3],
    pub d_black: usize,
    pub d_white: usize,
    pub cover_sum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_count: Option<u64>,
    #[serde(skip)]
    pub key: (LatticeSet, LatticeSet),
}

/// Runs the pipeline on `s` and checks: S ∈ cut(A); A is a t-approximation;
/// D(S) is a minimal vertex cover of A_* with |D|(2d-t) <= |∂S|; both halves
/// reconstruct S; the cover sum with p = 1/2 is at most 1; and, given the
/// family with |∂S| boundary edges, |cut_n(A)| <= 2^{n/(2d-t)}.
pub fn check_approximation(
    s: &LatticeSet,
    t: u32,
    c_sep: f64,
    family: Option<&[LatticeSet]>,
) -> Result<(ApproxOutcome, PipelineTrace, DWitness)> {
    let d = s.dim();
    let n = edge_boundary_size(s);
    let witness = || json!({"set": s, "t": t});
    let trace = approximate_traced(s, t, c_sep)?;
    let a = trace.approximation();
    if !approximates(a, s) {
        return Err(failure(
            "S in cut(A)",
            "the approximation does not contain S",
            witness(),
        ));
    }
    if !is_t_approximation(a, t)? {
        return Err(failure(
            "t-approximation",
            "A_* has a vertex of degree 0 or above t",
            witness(),
        ));
    }
    let star = a.star();
    let dw = d_map(a, s)?;
    let cover = dw.union();
    if let Some((u, v)) = uncovered_edge(&star, &cover) {
        return Err(failure(
            "D-map cover",
            format!("edge {u}-{v} of A_* is not covered"),
            witness(),
        ));
    }
    if let Some(v) = redundant_cover_vertex(&star, &cover) {
        return Err(failure(
            "D-map minimality",
            format!("{v} is redundant"),
            witness(),
        ));
    }
    if dw.size() * (2 * d - t as usize) > n {
        return Err(failure(
            "D-map size",
            format!(
                "|D| = {} exceeds n/(2d-t) = {n}/{}",
                dw.size(),
                2 * d - t as usize
            ),
            witness(),
        ));
    }
    for half in [
        Half::Black(dw.d_black.clone()),
        Half::White(dw.d_white.clone()),
    ] {
        if &reconstruct(a, &half)? != s {
            return Err(failure(
                "reconstruction",
                "a half of D(S) does not rebuild S",
                witness(),
            ));
        }
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let sum = cover_sum_uniform(&star, &half)?.sum;
    if sum > BigRational::one() {
        return Err(failure(
            "cover sum",
            format!("sum {sum} exceeds 1"),
            witness(),
        ));
    }
    let cut_count = match family {
        Some(fam) => Some(count_bound_check_with_family(a, n, t, fam)?.cut_count),
        None => None,
    };
    let outcome = ApproxOutcome {
        boundary: n,
        separator: trace.separator.u_set.len(),
        separating_set: trace.separating_set.len(),
        stars: [
            trace.small.star().len(),
            trace.first.result.star().len(),
            star.len(),
        ],
        d_black: dw.d_black.len(),
        d_white: dw.d_white.len(),
        cover_sum: sum.to_string(),
        cut_count,
        key: (a.black().clone(), star),
    };
    Ok((outcome, trace, dw))
}

pub fn approximate(g: &GlobalOpts, a: &ApproximateArgs) -> Result<()> {
    let (sets, fam): (Vec<LatticeSet>, Option<Vec<LatticeSet>>) = match &a.input {
        Some(path) => {
            let s = read_set(path)?;
            if s.dim() != a.d {
                return Err(Usage(format!(
                    "{} has dimension {}, not {}",
                    path.display(),
                    s.dim(),
                    a.d
                ))
                .into());
            }
            let n = edge_boundary_size(&s);
            let spec = EnumSpec::new(a.d, n);
            let within = g.force || desk_envelope(a.d).is_some_and(|max| n <= max);
            let fam = if within {
                Some(enumerate_with_jobs(&spec, jobs(g))?.sets().collect())
            } else {
                eprintln!("cut_n(A) not counted: n = {n} is beyond the enumeration envelope");
                None
            };
            (vec![s], fam)
        }
        None => {
            let n = a.n.expect("required by clap");
            let fam = family(g, a.d, n)?;
            if fam.is_empty() {
                return Err(Usage(format!("no odd cutsets with n = {n} in d = {}", a.d)).into());
            }
            (fam.clone(), Some(fam))
        }
    };
    let results: Vec<Result<(ApproxOutcome, PipelineTrace, DWitness)>> = sets
        .par_iter()
        .map(|s| check_approximation(s, a.t, a.c_sep, fam.as_deref()))
        .collect();
    let mut outcomes = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        let (outcome, trace, dw) = r?;
        if a.trace {
            let line = json!({"index": i, "set": &sets[i], "trace": trace, "d_witness": dw});
            println!("{line}");
        }
        outcomes.push(outcome);
    }
    let distinct: BTreeSet<&(LatticeSet, LatticeSet)> = outcomes.iter().map(|o| &o.key).collect();
    let summary = format!(
        "ok: {} sets, t = {}, {} distinct approximations",
        outcomes.len(),
        a.t,
        distinct.len()
    );
    if a.trace {
        eprintln!("{summary}");
    } else if g.json {
        println!(
            "{}",
            json!({
                "d": a.d,
                "t": a.t,
                "sets": outcomes,
                "distinct_approximations": distinct.len(),
            })
        );
    } else {
        for (i, o) in outcomes.iter().enumerate() {
            let cut = o.cut_count.map_or("-".to_string(), |c| c.to_string());
            println!(
                "set {i}: |∂S| = {}, |U| = {}, |N(U)| = {}, |A_*| = {} -> {} -> {}, |D| = {} + {}, |cut_n(A)| = {cut}, cover sum = {}",
                o.boundary,
                o.separator,
                o.separating_set,
                o.stars[0],
                o.stars[1],
                o.stars[2],
                o.d_black,
                o.d_white,
                o.cover_sum
            );
        }
        println!("{summary}");
    }
    Ok(())
}

pub fn bounds(g: &GlobalOpts, a: &BoundsArgs) -> Result<()> {
    let d = a.d;
    let table = CountTable::open(&g.cache)?;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for n in a.n_grid.values() {
        if n % (2 * d) != 0 {
            skipped.push(n);
            continue;
        }
        reports.push(theorem_bracket(d, n, a.c_upper, Some(&table))?);
    }
    let growth = growth_estimate(d, &table.occ_series(d))?;
    let checks = a
        .supermult
        .iter()
        .map(|&(n, m, k)| supermult_check(d, n, m, k, &table))
        .collect::<oddcut_core::Result<Vec<_>>>()?;
    let csv = bounds_csv(&reports)?;
    if let Some(p) = &a.csv {
        write_out(Some(p), &csv)?;
    }
    if g.json {
        println!(
            "{}",
            json!({"bracket": reports, "skipped": skipped, "growth": growth, "supermult": checks})
        );
    } else {
        print!("{csv}");
        println!();
        if !skipped.is_empty() {
            println!("skipped (not multiples of 2d): {skipped:?}");
        }
        for r in &reports {
            if r.occ.is_some() {
                println!("n = {}: {}", r.n, r.note);
            }
        }
        println!(
            "log2 mu({d}) >= {} = {} (slab construction)",
            growth.slab_bound, growth.slab_bound_value
        );
        if let Some(b) = growth.sequence_bound {
            println!(
                "log2 mu({d}) >= {b:.6} (sequence bound over {} cached counts)",
                growth.terms.len()
            );
        }
        for c in &checks {
            let verdict = serde_json::to_value(c.verdict)?;
            let verdict = verdict.as_str().unwrap_or_default();
            println!("supermult n = {}, m = {}, k = {}: {verdict}", c.n, c.m, c.k);
        }
        if let Some(r) = reports.first() {
            println!("note: {}", r.caveat);
        }
    }
    if let Some(c) = checks.iter().find(|c| c.verdict == Verdict::Fails) {
        return Err(failure(
            "supermultiplicativity",
            "exact count below OCC(n)·OCC(m)/(m/d)^{d/(d-1)}",
            json!(c),
        ));
    }
    Ok(())
}

pub fn sample(g: &GlobalOpts, a: &SampleArgs) -> Result<()> {
    let (samples, diags) = if a.exact {
        check_envelope(g, &EnumSpec::new(a.d, a.n))?;
        (sample_exact(a.d, a.n, a.count, a.seed)?, Vec::new())
    } else {
        let cfg = McmcConfig {
            steps: a.steps,
            lambda: a.lambda,
            draws: a.count,
            thin: a.thin,
            chains: a.chains,
            max_boundary: a.max_boundary,
            ..McmcConfig::new(a.d, a.n, a.seed)
        };
        if a.count == 1 && a.chains == 1 {
            let (s, diag) = sample_mcmc(&cfg)?;
            (vec![s], vec![diag])
        } else {
            let run = sample_mcmc_many(&cfg)?;
            (run.samples, run.diagnostics)
        }
    };
    for diag in &diags {
        eprintln!(
            "chain {}: steps {}, accept rate {:.4}, hits {}, lambda {:.4}",
            diag.stream, diag.steps, diag.accept_rate, diag.hits, diag.lambda
        );
    }
    if let Some(p) = &a.svg {
        let first = samples.first().context("no samples to render")?;
        write_out(Some(p), &render_svg(first)?)?;
    }
    if let Some(p) = &a.diagnostics {
        write_out(Some(p), &diagnostics_csv(&diags)?)?;
    }
    match (&a.out, g.json) {
        (Some(p), json_mode) => {
            write_out(Some(p), &jsonl(&samples)?)?;
            if json_mode {
                println!(
                    "{}",
                    json!({"samples": samples.len(), "diagnostics": diags})
                );
            } else {
                println!("{} samples", samples.len());
            }
        }
        (None, true) => println!("{}", json!({"samples": samples, "diagnostics": diags})),
        (None, false) => write_out(None, &jsonl(&samples)?)?,
    }
    Ok(())
}

pub fn render(g: &GlobalOpts, a: &RenderArgs) -> Result<()> {
    let sets = read_sets(&a.input)?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let mut names = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let name = format!("set-{i:05}.svg");
        write_out(Some(&a.out.join(&name)), &render_svg(s)?)?;
        names.push(name);
    }
    if g.json {
        println!("{}", json!({"files": names}));
    } else {
        for name in &names {
            println!("{name}");
        }
    }
    Ok(())
}
