//! The approximation pipeline run over every enumerated cutset of the small
//! families, with each output rechecked by direct set computations.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use oddcut_core::approx::{
    approximates, count_bound_check_with_family, cover_sum_uniform, d_map, is_t_approximation,
    reconstruct, Approximation, Half,
};
use oddcut_core::approxbuild::{
    approximate_traced, build_separator, family_size_report, revealed, DEFAULT_SEPARATOR_CONSTANT,
};
use oddcut_core::enumerate::{enumerate_odd_cutsets, EnumSpec};
use oddcut_core::lattice::{edge_boundary_size, neighborhood};
use oddcut_core::{LatticeSet, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILIES: [(usize, usize); 4] = [(2, 12), (2, 16), (2, 20), (3, 30)];

fn family(d: usize, n: usize) -> Vec<LatticeSet> {
    enumerate_odd_cutsets(&EnumSpec::new(d, n))
        .unwrap()
        .sets()
        .collect()
}

fn edges_within(set: &LatticeSet) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in set {
        for v in u.neighbors() {
            if u < &v && set.contains(&v) {
                out.push((u.clone(), v));
            }
        }
    }
    out
}

fn boundary_edges(s: &LatticeSet) -> Vec<(Vertex, Vertex)> {
    s.iter()
        .flat_map(|u| u.neighbors().into_iter().map(move |v| (u.clone(), v)))
        .filter(|(_, v)| !s.contains(v))
        .collect()
}

fn separates_naive(w: &LatticeSet, s: &LatticeSet) -> bool {
    boundary_edges(s)
        .iter()
        .all(|(u, v)| w.contains(u) || w.contains(v))
}

fn is_minimal_cover(graph: &LatticeSet, cover: &LatticeSet) -> bool {
    let covers = edges_within(graph)
        .iter()
        .all(|(u, v)| cover.contains(u) || cover.contains(v));
    // Minimal: every cover vertex has an edge to a non-cover vertex.
    let minimal = cover.iter().all(|c| {
        c.neighbors()
            .iter()
            .any(|v| graph.contains(v) && !cover.contains(v))
    });
    covers && cover.is_subset(graph) && minimal
}

/// Members of cut(A): every even translate of a family member lying in A's
/// window that A approximates.
fn cut_by_translation(a: &Approximation, fam: &[LatticeSet]) -> usize {
    let mut found = HashSet::new();
    for x in a.window().vertices().into_iter().filter(Vertex::is_even) {
        for f in fam {
            let moved = f.translate(&x);
            if approximates(a, &moved) {
                found.insert(moved);
            }
        }
    }
    found.len()
}

#[test]
fn pipeline_outputs_are_valid_for_every_set_and_t() {
    for (d, n) in FAMILIES {
        let fam = family(d, n);
        for t in 1..2 * d as u32 {
            for s in &fam {
                let trace = approximate_traced(s, t, DEFAULT_SEPARATOR_CONSTANT).unwrap();
                let a = trace.approximation();
                let star = a.star();
                assert!(is_t_approximation(a, t).unwrap());
                for (v, deg) in star
                    .iter()
                    .map(|v| (v, v.neighbors().iter().filter(|u| star.contains(u)).count()))
                {
                    assert!(deg >= 1 && deg <= t as usize, "{v:?} has degree {deg}");
                }
                assert!(a.black().is_subset(s) && a.white().is_disjoint(s));
                assert!(s.iter().all(|v| a.window().contains(v)));

                let dw = d_map(a, s).unwrap();
                let internal = s.filter(|u| u.neighbors().iter().any(|v| !s.contains(v)));
                let external = neighborhood(s).difference(s);
                assert_eq!(dw.d_black, star.intersection(&internal));
                assert_eq!(dw.d_white, star.intersection(&external));
                assert!(dw.d_black.iter().all(Vertex::is_odd));
                assert!(dw.d_white.iter().all(Vertex::is_even));
                assert!(is_minimal_cover(&star, &dw.union()));
                assert!(dw.size() * (2 * d - t as usize) <= n);

                assert_eq!(
                    &reconstruct(a, &Half::Black(dw.d_black.clone())).unwrap(),
                    s
                );
                assert_eq!(
                    &reconstruct(a, &Half::White(dw.d_white.clone())).unwrap(),
                    s
                );
            }
        }
    }
}

#[test]
fn cut_counts_respect_the_per_approximation_bound() {
    for (d, n) in [(2, 12), (2, 16), (2, 20), (3, 30)] {
        let fam = family(d, n);
        for t in 1..2 * d as u32 {
            for s in &fam {
                let a = approximate_traced(s, t, DEFAULT_SEPARATOR_CONSTANT)
                    .unwrap()
                    .second
                    .result;
                let report = count_bound_check_with_family(&a, n, t, &fam).unwrap();
                assert!(report.holds);
                let direct = cut_by_translation(&a, &fam);
                assert_eq!(report.cut_count as usize, direct);
                assert!(direct >= 1);
                // |cut_n(A)|^{2d-t} <= 2^n.
                let k = 2 * d - t as usize;
                assert!(BigInt::from(direct).pow(k as u32) <= BigInt::one() << n);
            }
        }
    }
}

/// Σ over minimal covers of 2^{-|U|}, via maximal independent sets of each
/// component enumerated by plain backtracking.
fn cover_sum_half(graph: &LatticeSet) -> BigRational {
    let verts: Vec<Vertex> = graph.members().to_vec();
    let index = |v: &Vertex| verts.iter().position(|u| u == v);
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|v| v.neighbors().iter().filter_map(index).collect())
        .collect();
    let mut seen = vec![false; verts.len()];
    let mut total = BigRational::one();
    for start in 0..verts.len() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let mut sum = BigRational::zero();
        let mut chosen = Vec::new();
        independent_sets(&comp, &adj, 0, &mut chosen, &mut sum);
        total *= sum;
    }
    total
}

fn independent_sets(
    comp: &[usize],
    adj: &[Vec<usize>],
    at: usize,
    chosen: &mut Vec<usize>,
    sum: &mut BigRational,
) {
    if at == comp.len() {
        let maximal = comp
            .iter()
            .all(|v| chosen.contains(v) || adj[*v].iter().any(|w| chosen.contains(w)));
        if maximal {
            let cover = comp.len() - chosen.len();
            *sum += BigRational::new(BigInt::one(), BigInt::one() << cover);
        }
        return;
    }
    let v = comp[at];
    if adj[v].iter().all(|w| !chosen.contains(w)) {
        chosen.push(v);
        independent_sets(comp, adj, at + 1, chosen, sum);
        chosen.pop();
    }
    independent_sets(comp, adj, at + 1, chosen, sum);
}

#[test]
fn cover_sum_on_pipeline_unknown_regions() {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut seen = BTreeSet::new();
    for (d, n) in FAMILIES {
        for t in 1..2 * d as u32 {
            for s in family(d, n) {
                let a = approximate_traced(&s, t, DEFAULT_SEPARATOR_CONSTANT)
                    .unwrap()
                    .second
                    .result;
                let star = a.star();
                if !seen.insert(star.clone()) {
                    continue;
                }
                let summary = cover_sum_uniform(&star, &half).unwrap();
                assert!(summary.sum <= BigRational::one());
                assert_eq!(summary.sum, cover_sum_half(&star));
            }
        }
    }
}

#[test]
fn cover_sum_on_random_induced_subgraphs() {
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
        let graph = LatticeSet::new(2, members).unwrap();
        let summary = cover_sum_uniform(&graph, &half).unwrap();
        assert!(summary.sum <= BigRational::one(), "seed {seed}");
        assert_eq!(summary.sum, cover_sum_half(&graph), "seed {seed}");
    }
}

#[test]
fn separators_and_revealed_vertices_separate() {
    for (d, n) in FAMILIES {
        for s in family(d, n) {
            let report = build_separator(&s, DEFAULT_SEPARATOR_CONSTANT).unwrap();
            assert!(separates_naive(&neighborhood(&report.u_set), &s));
            let rev = revealed(&s).unwrap();
            // Revealed: incident to at least d boundary edges.
            for v in &rev {
                let hits = boundary_edges(&s)
                    .iter()
                    .filter(|(a, b)| a == v || b == v)
                    .count();
                assert!(hits >= d);
            }
            assert!(separates_naive(&rev, &s));
            assert_eq!(edge_boundary_size(&s), n);
        }
    }
}

#[test]
fn approximations_cover_their_families() {
    for (d, n) in [(2, 12), (2, 16), (2, 20), (3, 30)] {
        let fam = family(d, n);
        for t in 1..2 * d as u32 {
            let report = family_size_report(&fam, t, 1.0).unwrap();
            assert_eq!(report.samples, fam.len());
            assert_eq!(report.covered, fam.len());
            assert!(report.distinct_approximations <= fam.len());
            assert!(report.max_small_star <= report.max_small_star_limit);
        }
    }
}

#[test]
fn d_map_is_injective_on_each_cut() {
    for (d, n) in [(2, 16), (2, 20)] {
        let fam = family(d, n);
        for t in 1..2 * d as u32 {
            for s in &fam {
                let a = approximate_traced(s, t, DEFAULT_SEPARATOR_CONSTANT)
                    .unwrap()
                    .second
                    .result;
                let members: Vec<&LatticeSet> =
                    fam.iter().filter(|f| approximates(&a, f)).collect();
                let images: BTreeSet<LatticeSet> = members
                    .iter()
                    .map(|f| d_map(&a, f).unwrap().union())
                    .collect();
                assert_eq!(images.len(), members.len());
            }
        }
    }
}
