use std::collections::BTreeSet;

use anyhow::Result;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use oddcut_core::approx::cover_sum_uniform;
use oddcut_core::approxbuild::{build_separator, family_size_report, revealed, separates};
use oddcut_core::constructions::{
    compose, create_peak, extend_peak, find_peak, merge_at_peak, recentre, slab_family,
    slab_family_count, slab_family_lower_exponent, PeakedSet, SlabFamilySpec,
};
use oddcut_core::enumerate::{enumerate_with_jobs, EnumSpec};
use oddcut_core::lattice::{edge_boundary_size, neighborhood};
use oddcut_core::oddsets::{check_structural_lemmas, classify, even_core, from_even_core};
use oddcut_core::{LatticeSet, Vertex};

use crate::args::{GlobalOpts, Suite, VerifyArgs};
use crate::commands::{check_approximation, check_envelope, failure, jobs};

#[derive(Serialize)]
struct CheckResult {
    name: &'static str,
    cases: usize,
}

struct Family {
    n: usize,
    sets: Vec<LatticeSet>,
}

struct Runner {
    json: bool,
    checks: Vec<CheckResult>,
}

impl Runner {
    fn pass(&mut self, name: &'static str, cases: usize) {
        if !self.json {
            println!("PASS {name} ({cases} cases)");
        }
        self.checks.push(CheckResult { name, cases });
    }
}

fn fail_on(check: &str, detail: impl Into<String>, set: &LatticeSet) -> anyhow::Error {
    failure(check, detail, json!({"set": set}))
}

pub fn run(g: &GlobalOpts, a: &VerifyArgs) -> Result<()> {
    let d = a.d;
    if !(2..=8).contains(&d) {
        return Err(crate::Usage(format!("verify supports 2 <= d <= 8, got {d}")).into());
    }
    let lo = 2 * d * (2 * d - 1);
    if a.max_n < lo {
        return Err(crate::Usage(format!("--max-n must be at least 2d(2d-1) = {lo}")).into());
    }
    let mut families = Vec::new();
    for n in (lo..=a.max_n).step_by(2 * d) {
        let spec = EnumSpec::new(d, n);
        check_envelope(g, &spec)?;
        let sets = enumerate_with_jobs(&spec, jobs(g))?.sets().collect();
        families.push(Family { n, sets });
    }
    let mut runner = Runner {
        json: g.json,
        checks: Vec::new(),
    };
    if matches!(a.suite, Suite::Lemmas | Suite::Structure) {
        structure(g, d, &families, &mut runner)?;
    }
    if matches!(a.suite, Suite::Lemmas | Suite::Pipeline) {
        pipeline(d, &families, &mut runner)?;
    }
    if matches!(a.suite, Suite::Lemmas | Suite::Constructions) {
        constructions(d, &families, &mut runner)?;
    }
    let suite = format!("{:?}", a.suite).to_lowercase();
    if g.json {
        let sizes: Vec<_> = families
            .iter()
            .map(|f| json!({"n": f.n, "sets": f.sets.len()}))
            .collect();
        println!(
            "{}",
            json!({
                "suite": suite,
                "d": d,
                "max_n": a.max_n,
                "families": sizes,
                "checks": runner.checks,
                "status": "pass",
            })
        );
    } else {
        let total: usize = families.iter().map(|f| f.sets.len()).sum();
        println!(
            "suite {suite}: {} checks passed over {total} cutsets (d = {d}, n <= {})",
            runner.checks.len(),
            a.max_n
        );
    }
    Ok(())
}

fn all_sets(families: &[Family]) -> impl Iterator<Item = (usize, &LatticeSet)> {
    families
        .iter()
        .flat_map(|f| f.sets.iter().map(move |s| (f.n, s)))
}

/// Every map x ↦ (ε_i x_{π(i)}) for permutations π and signs ε.
fn signed_permutations(d: usize) -> Vec<(Vec<usize>, Vec<i32>)> {
    fn perms(d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(d - 1) {
            for i in 0..d {
                let mut q = p.clone();
                q.insert(i, d - 1);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(d) {
        for mask in 0..(1u32 << d) {
            let signs = (0..d)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push((p.clone(), signs));
        }
    }
    out
}

fn structure(g: &GlobalOpts, d: usize, families: &[Family], runner: &mut Runner) -> Result<()> {
    let mut cases = 0;
    for (n, s) in all_sets(families) {
        if edge_boundary_size(s) != n {
            return Err(fail_on("boundary size", format!("expected {n}"), s));
        }
        for r in 1..=3 {
            let rep = classify(s, r)?;
            if !rep.is_odd || !rep.is_regular || !rep.is_cutset || !rep.is_r_cutset {
                return Err(fail_on(
                    "regular odd cutset",
                    format!("classification failed at r = {r}"),
                    s,
                ));
            }
        }
        cases += 1;
    }
    runner.pass("structure.classification", cases);

    let mut cases = 0;
    for (n, s) in all_sets(families) {
        let rep = check_structural_lemmas(s)?;
        if rep.directional.iter().any(|&k| k * 2 * d != n) || rep.boundary_connected != Some(true) {
            return Err(fail_on("boundary identities", format!("{rep:?}"), s));
        }
        cases += 1;
    }
    runner.pass("structure.boundary_identities", cases);

    let mut cases = 0;
    for (_, s) in all_sets(families) {
        if &from_even_core(&even_core(s))? != s {
            return Err(fail_on("even core round trip", "E^+ differs from S", s));
        }
        cases += 1;
    }
    runner.pass("structure.even_core_round_trip", cases);

    let maps = signed_permutations(d);
    let mut cases = 0;
    for f in families {
        let fam: BTreeSet<&LatticeSet> = f.sets.iter().collect();
        for (perm, signs) in &maps {
            for s in &f.sets {
                let image = s.map(|v| {
                    let c = v.coords();
                    let mapped: Vec<i32> = (0..d).map(|i| signs[i] * c[perm[i]]).collect();
                    Vertex::new(&mapped)
                });
                if !fam.contains(&image) {
                    return Err(fail_on(
                        "symmetry",
                        "an image under a signed permutation is missing",
                        s,
                    ));
                }
                cases += 1;
            }
        }
    }
    runner.pass("structure.signed_permutation_invariance", cases);

    let mut cases = 0;
    for f in families {
        let spec = EnumSpec::new(d, f.n);
        let base = enumerate_with_jobs(&spec, 1)?;
        let parallel = enumerate_with_jobs(&spec, jobs(g).max(2))?;
        let wider = enumerate_with_jobs(
            &spec
                .clone()
                .with_window_radius(spec.derived_window_radius() + 3),
            1,
        )?;
        if base.cores != parallel.cores || base.stats != parallel.stats || base.cores != wider.cores
        {
            return Err(failure(
                "search invariance",
                format!("n = {}: results depend on workers or window", f.n),
                json!({"n": f.n}),
            ));
        }
        cases += 1;
    }
    runner.pass("structure.search_invariance", cases);
    Ok(())
}

fn pipeline(d: usize, families: &[Family], runner: &mut Runner) -> Result<()> {
    let mut cases = 0;
    let mut cover_sums = 0;
    for f in families {
        for t in 1..2 * d as u32 {
            for s in &f.sets {
                check_approximation(
                    s,
                    t,
                    oddcut_core::approxbuild::DEFAULT_SEPARATOR_CONSTANT,
                    Some(&f.sets),
                )?;
                cases += 1;
                cover_sums += 1;
            }
        }
    }
    runner.pass("pipeline.approximation_and_d_map", cases);
    runner.pass("pipeline.cover_sum_on_approximations", cover_sums);

    let mut cases = 0;
    for (_, s) in all_sets(families) {
        let report = build_separator(s, oddcut_core::approxbuild::DEFAULT_SEPARATOR_CONSTANT)?;
        if !separates(&neighborhood(&report.u_set), s)? {
            return Err(fail_on("separator", "N(U) does not separate S", s));
        }
        if !separates(&revealed(s)?, s)? {
            return Err(fail_on("revealed vertices", "they do not separate S", s));
        }
        cases += 1;
    }
    runner.pass("pipeline.separation", cases);

    let mut cases = 0;
    for f in families.iter().filter(|f| !f.sets.is_empty()) {
        for t in 1..2 * d as u32 {
            let rep = family_size_report(&f.sets, t, 1.0)?;
            if rep.covered != f.sets.len() {
                return Err(failure(
                    "family coverage",
                    format!(
                        "n = {}, t = {t}: {} of {} covered",
                        f.n,
                        rep.covered,
                        f.sets.len()
                    ),
                    json!({"n": f.n, "t": t}),
                ));
            }
            cases += 1;
        }
    }
    runner.pass("pipeline.family_coverage", cases);

    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let cells: Vec<Vertex> = (-3..=3)
        .flat_map(|x| (-3..=3).map(move |y| Vertex::new(&[x, y])))
        .collect();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members: Vec<Vertex> = cells
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .cloned()
            .collect();
        let graph = LatticeSet::new(2, members)?;
        let sum = cover_sum_uniform(&graph, &half)?.sum;
        if sum > BigRational::one() {
            return Err(fail_on("cover sum", format!("sum {sum} exceeds 1"), &graph));
        }
    }
    runner.pass("pipeline.cover_sum_on_random_graphs", 100);
    Ok(())
}

fn peaked_at_origin(d: usize, sets: &[LatticeSet]) -> Result<Vec<PeakedSet>> {
    let mut out = BTreeSet::new();
    for s in sets {
        if let Some(p) = find_peak(s)? {
            out.insert(recentre(&p).set);
        }
    }
    Ok(out
        .into_iter()
        .map(|set| PeakedSet {
            set,
            peak: Vertex::origin(d),
        })
        .collect())
}

fn expect_cutset(check: &str, t: &LatticeSet, n: usize) -> Result<()> {
    if edge_boundary_size(t) != n || !classify(t, 1)?.is_regular_odd_r_cutset() {
        return Err(fail_on(
            check,
            format!("expected a regular odd cutset with {n} boundary edges"),
            t,
        ));
    }
    Ok(())
}

fn expect_injective(check: &str, images: usize, inputs: usize) -> Result<()> {
    if images != inputs {
        return Err(failure(
            check,
            format!("{inputs} inputs gave {images} distinct images"),
            json!(null),
        ));
    }
    Ok(())
}

fn constructions(d: usize, families: &[Family], runner: &mut Runner) -> Result<()> {
    let dd = 2 * d;
    let mut cases = 0;
    for f in families {
        let mut images = BTreeSet::new();
        for s in &f.sets {
            let p = create_peak(s)?;
            expect_cutset("create peak", &p.set, f.n + dd * (dd - 3))?;
            images.insert(p.set);
            cases += 1;
        }
        expect_injective("create peak injectivity", images.len(), f.sets.len())?;
    }
    runner.pass("constructions.create_peak", cases);

    let mut cases = 0;
    for f in families {
        let peaked = peaked_at_origin(d, &f.sets)?;
        for (r, s) in [(1, 0), (1, 1), (2, 1)] {
            let mut images = BTreeSet::new();
            for p in &peaked {
                let q = extend_peak(p, r, s)?;
                expect_cutset(
                    "extend peak",
                    &q.set,
                    f.n + dd * (r * (dd - 3) + s * (dd - 2)),
                )?;
                images.insert(q.set);
                cases += 1;
            }
            expect_injective("extend peak injectivity", images.len(), peaked.len())?;
        }
    }
    runner.pass("constructions.extend_peak", cases);

    let plus = PeakedSet {
        set: from_even_core(&LatticeSet::new(d, [Vertex::origin(d)])?)?,
        peak: Vertex::origin(d),
    };
    let plus_n = dd * (dd - 1);
    let mut cases = 0;
    for f in families {
        let mut images = BTreeSet::new();
        for s in &f.sets {
            let p = create_peak(s)?;
            let t = merge_at_peak(&p, &plus)?;
            expect_cutset("merge", &t, edge_boundary_size(&p.set) + plus_n - 2 * dd)?;
            images.insert(t);
            cases += 1;
        }
        expect_injective("merge injectivity", images.len(), f.sets.len())?;
    }
    runner.pass("constructions.merge", cases);

    let k = 12 * d * d;
    let small: Vec<&Family> = families.iter().take(2).collect();
    let mut cases = 0;
    for left in &small {
        for right in &small {
            let qs = peaked_at_origin(d, &right.sets)?;
            let mut images = BTreeSet::new();
            for s in &left.sets {
                for q in &qs {
                    let t = compose(s, q, k)?;
                    expect_cutset("compose", &t, left.n + right.n + k)?;
                    images.insert(t);
                    cases += 1;
                }
            }
            expect_injective(
                "compose injectivity",
                images.len(),
                left.sets.len() * qs.len(),
            )?;
        }
    }
    runner.pass("constructions.compose", cases);

    let ms: &[usize] = if d == 2 { &[4, 6] } else { &[4] };
    let mut cases = 0;
    for &m in ms {
        let spec = SlabFamilySpec::new(d, m)?;
        let count = slab_family_count(&spec)?;
        let exponent = slab_family_lower_exponent(&spec);
        let (Some(p), Some(q)) = (exponent.numer().to_usize(), exponent.denom().to_u32()) else {
            return Err(failure(
                "slab lower bound",
                "exponent out of range",
                json!({"m": m}),
            ));
        };
        if count.pow(q) < BigUint::one() << p {
            return Err(failure(
                "slab lower bound",
                format!("{count} members is below 2^({exponent})"),
                json!({"d": d, "m": m}),
            ));
        }
        if count <= BigUint::from(10_000u32) {
            let members = slab_family(&spec, 10_000)?;
            let distinct: BTreeSet<&LatticeSet> = members.iter().collect();
            expect_injective("slab family", distinct.len(), members.len())?;
            if BigUint::from(members.len()) != count {
                return Err(failure(
                    "slab family",
                    format!("{} members, expected {count}", members.len()),
                    json!({"d": d, "m": m}),
                ));
            }
            for s in &members {
                expect_cutset("slab family", s, spec.boundary_size())?;
            }
        }
        cases += 1;
    }
    runner.pass("constructions.slab_families", cases);
    Ok(())
}
