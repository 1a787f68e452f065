//! Building approximations of a given odd cutset: revealed vertices and
//! separating sets, the small approximation read off a separator, removal of
//! isolated unknown vertices, and refinement to a t-approximation.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::approx::{approximates, check_t, is_t_approximation, Approximation};
use crate::error::{Error, Result};
use crate::lattice::{
    boundary_profile, closure, components, external_boundary, internal_boundary, is_connected, n_t,
    neighborhood, BoundaryEdge, BoxRegion, LatticeSet, Vertex,
};
use crate::oddsets::classify;

/// Default constant in the reported separator size scale C·n·d^{-3/2}·√(ln d).
pub const DEFAULT_SEPARATOR_CONSTANT: f64 = 20.0;

/// A boundary edge of `s` with neither endpoint in `w`.
pub fn unseparated_edge(w: &LatticeSet, s: &LatticeSet) -> Result<Option<BoundaryEdge>> {
    Ok(boundary_profile(s)?
        .edge_boundary
        .into_iter()
        .find(|e| !w.contains(&e.inside) && !w.contains(&e.outside)))
}

pub fn separates(w: &LatticeSet, s: &LatticeSet) -> Result<bool> {
    Ok(unseparated_edge(w, s)?.is_none())
}

fn boundary_degree(v: &Vertex, s: &LatticeSet) -> usize {
    let inside = s.contains(v);
    v.neighbors()
        .iter()
        .filter(|u| s.contains(u) != inside)
        .count()
}

/// Checks that for every boundary edge {u,v} and unit vector e, one of
/// {u,u+e} and {v,v+e} is a boundary edge.
pub fn check_four_cycle_property(s: &LatticeSet) -> Result<()> {
    let d = s.dim();
    for edge in boundary_profile(s)?.edge_boundary {
        let (u, v) = (&edge.inside, &edge.outside);
        for axis in 0..d {
            for sign in [1, -1] {
                let (ue, ve) = (u.shifted(axis, sign), v.shifted(axis, sign));
                let u_cut = s.contains(&ue) != s.contains(u);
                let v_cut = s.contains(&ve) != s.contains(v);
                if !u_cut && !v_cut {
                    return Err(Error::assertion(
                        "four-cycle property",
                        format!("neither {u}-{ue} nor {v}-{ve} is a boundary edge"),
                        Some(u.clone()),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// S^rev: vertices incident to at least d boundary edges. Asserts that it
/// separates S.
pub fn revealed(s: &LatticeSet) -> Result<LatticeSet> {
    let d = s.dim();
    let candidates = internal_boundary(s).union(&external_boundary(s));
    let rev = candidates.filter(|v| boundary_degree(v, s) >= d);
    if let Some(e) = unseparated_edge(&rev, s)? {
        return Err(Error::assertion(
            "revealed vertices separate",
            format!(
                "boundary edge {}-{} has no revealed endpoint",
                e.inside, e.outside
            ),
            Some(e.inside),
        ));
    }
    Ok(rev)
}

/// Greedy set cover: T ⊆ `svc` with N_t(svc) ⊆ N(T), choosing at each step
/// the vertex covering the most uncovered targets (ties to the
/// lexicographically smallest). Asserts |T| <= (1 + ln 2d)/t · |svc|.
pub fn greedy_cover(svc: &LatticeSet, t: u32) -> Result<LatticeSet> {
    if t == 0 {
        return Err(Error::InvalidInput("greedy_cover needs t >= 1".into()));
    }
    let d = svc.dim();
    let mut uncovered: HashSet<Vertex> = n_t(svc, t).iter().cloned().collect();
    let mut chosen = Vec::new();
    let nbrs: Vec<(Vertex, Vec<Vertex>)> = svc.iter().map(|v| (v.clone(), v.neighbors())).collect();
    while !uncovered.is_empty() {
        let (best, gain) = nbrs
            .iter()
            .map(|(v, ns)| (v, ns.iter().filter(|u| uncovered.contains(*u)).count()))
            .fold(
                (None, 0),
                |(bv, bg), (v, g)| if g > bg { (Some(v), g) } else { (bv, bg) },
            );
        let best = best.expect("every target has a neighbour in svc");
        debug_assert!(gain > 0);
        for u in best.neighbors() {
            uncovered.remove(&u);
        }
        chosen.push(best.clone());
    }
    let cover = LatticeSet::new(d, chosen)?;
    let bound = (1.0 + ((2 * d) as f64).ln()) / t as f64 * svc.len() as f64;
    if cover.len() as f64 > bound + 1e-9 {
        return Err(Error::assertion(
            "greedy cover size",
            format!(
                "|T| = {} exceeds (1 + ln 2d)/t · |Svc| = {bound:.3}",
                cover.len()
            ),
            None,
        ));
    }
    Ok(cover)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatorSide {
    /// ∂∘R ∩ N_s(∂•R).
    pub a: LatticeSet,
    /// ∂•R ∩ N_{2d-s}(∂∘R).
    pub a_prime: LatticeSet,
    /// greedy_cover(A, t).
    pub b: LatticeSet,
    /// R ∩ N_t(A').
    pub b_prime: LatticeSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatorReport {
    pub u_set: LatticeSet,
    pub s: u32,
    pub t: u32,
    /// C·n·d^{-3/2}·√(ln d) for the configured C; reported, never asserted.
    pub size_bound: f64,
    pub inside: SeparatorSide,
    pub outside: SeparatorSide,
}

/// ⌈√(d ln d)⌉ and ⌈d/4⌉.
pub fn separator_thresholds(d: usize) -> (u32, u32) {
    let df = d as f64;
    let s = (df * df.ln()).sqrt().ceil().max(1.0) as u32;
    let t = d.div_ceil(4) as u32;
    (s, t)
}

/// The set U with N(U) separating S, built separately for R = S and R = S^c.
pub fn build_separator(set: &LatticeSet, c_sep: f64) -> Result<SeparatorReport> {
    let report = classify(set, 1)?;
    if !(report.is_odd && report.is_r_cutset) {
        return Err(Error::assertion(
            "build_separator",
            "input must be a regular odd cutset",
            report.first_witness().cloned(),
        ));
    }
    let d = set.dim();
    let (s, t) = separator_thresholds(d);
    let inner = internal_boundary(set);
    let outer = external_boundary(set);

    let side = |bullet: &LatticeSet, circ: &LatticeSet, in_r: &dyn Fn(&Vertex) -> bool| {
        let a = circ.intersection(&n_t(bullet, s));
        let a_prime = if (2 * d) as u32 > s {
            bullet.intersection(&n_t(circ, 2 * d as u32 - s))
        } else {
            LatticeSet::empty(d)
        };
        let b = greedy_cover(&a, t)?;
        let b_prime = n_t(&a_prime, t).filter(|v| in_r(v));
        Ok::<_, Error>(SeparatorSide {
            a,
            a_prime,
            b,
            b_prime,
        })
    };
    let inside = side(&inner, &outer, &|v| set.contains(v))?;
    let outside = side(&outer, &inner, &|v| !set.contains(v))?;
    let u_set = inside
        .b
        .union(&inside.b_prime)
        .union(&outside.b)
        .union(&outside.b_prime);

    let w = neighborhood(&u_set);
    if let Some(e) = unseparated_edge(&w, set)? {
        return Err(Error::assertion(
            "separator",
            format!(
                "boundary edge {}-{} is not separated by N(U)",
                e.inside, e.outside
            ),
            Some(e.inside),
        ));
    }
    let near = closure(&inner.union(&outer));
    if let Some(v) = u_set.difference(&near).members().first() {
        return Err(Error::assertion(
            "separator",
            "U leaves the closed neighbourhood of the vertex boundary",
            Some(v.clone()),
        ));
    }
    let n = crate::lattice::edge_boundary_size(set) as f64;
    let df = d as f64;
    Ok(SeparatorReport {
        u_set,
        s,
        t,
        size_bound: c_sep * n * df.powf(-1.5) * df.ln().sqrt(),
        inside,
        outside,
    })
}

/// Components of window \ W, split by whether they reach the window shell.
struct Pieces {
    /// The single component touching the shell (part of the unbounded one).
    outer: LatticeSet,
    /// Bounded components with more than d vertices; smaller ones stay unknown.
    large: Vec<LatticeSet>,
}

fn split_pieces(w: &LatticeSet, window: &BoxRegion) -> Result<Pieces> {
    let d = w.dim();
    if let Some(bbox) = w.bounding_box() {
        let needed = bbox.expanded(2);
        let fits = (0..d).all(|a| window.lo[a] <= needed.lo[a] && needed.hi[a] <= window.hi[a]);
        if !fits {
            return Err(Error::InvalidInput(
                "enlarge the window: it must contain the separator's bounding box with margin 2"
                    .into(),
            ));
        }
    }
    let x = window.as_set().difference(w);
    let mut outer = None;
    let mut large = Vec::new();
    for comp in components(&x, 1) {
        if comp.iter().any(|v| window.on_shell(v)) {
            if outer.is_some() {
                return Err(Error::InvalidInput(
                    "enlarge the window: two components reach its boundary".into(),
                ));
            }
            outer = Some(comp);
        } else if comp.len() > d {
            large.push(comp);
        }
    }
    Ok(Pieces {
        outer: outer.unwrap_or_else(|| LatticeSet::empty(d)),
        large,
    })
}

fn assemble(
    inside: &[&LatticeSet],
    outside: &[&LatticeSet],
    window: &BoxRegion,
    d: usize,
) -> Result<Approximation> {
    let b_black = inside
        .iter()
        .fold(LatticeSet::empty(d), |acc, c| acc.union(c));
    let b_white = outside
        .iter()
        .fold(LatticeSet::empty(d), |acc, c| acc.union(c));
    let in_window = |s: LatticeSet| s.filter(|v| window.contains(v));
    let black = b_black.union(&in_window(closure(&b_black)).filter(|v| v.is_odd()));
    let white = b_white.union(&in_window(closure(&b_white)).filter(|v| v.is_even()));
    Approximation::new(black, white, window.clone())
}

/// All approximations obtained by colouring each bounded large component of
/// window \ W black or white (the component reaching the window boundary is
/// always white). Asserts 2^ℓ <= 4^{|W|/d} for the ℓ free components.
pub fn small_approx_family(w: &LatticeSet, window: &BoxRegion) -> Result<Vec<Approximation>> {
    let d = w.dim();
    let pieces = split_pieces(w, window)?;
    let l = pieces.large.len();
    if l * d > 2 * w.len() {
        return Err(Error::assertion(
            "small approximation family size",
            format!("{l} large components exceed 2|W|/d with |W| = {}", w.len()),
            None,
        ));
    }
    if l > 20 {
        return Err(Error::InvalidInput(format!(
            "{l} large components: family too large to materialize"
        )));
    }
    let mut out = Vec::with_capacity(1 << l);
    for mask in 0..(1u32 << l) {
        let mut inside = Vec::new();
        let mut outside = vec![&pieces.outer];
        for (i, comp) in pieces.large.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inside.push(comp);
            } else {
                outside.push(comp);
            }
        }
        out.push(assemble(&inside, &outside, window, d)?);
    }
    Ok(out)
}

/// The member of [`small_approx_family`] induced by S. Requires W to
/// separate S; asserts S ∈ cut(A) and |A_*| <= 3|W|.
pub fn small_approx_witness(
    w: &LatticeSet,
    s: &LatticeSet,
    window: &BoxRegion,
) -> Result<Approximation> {
    let d = s.dim();
    if let Some(e) = unseparated_edge(w, s)? {
        return Err(Error::assertion(
            "small approximation",
            "W does not separate S",
            Some(e.inside),
        ));
    }
    if let Some(v) = s.iter().find(|v| !window.contains(v)) {
        return Err(Error::InvalidInput(format!(
            "enlarge the window: {v} of S lies outside"
        )));
    }
    let pieces = split_pieces(w, window)?;
    if let Some(v) = pieces.outer.iter().find(|v| s.contains(v)) {
        return Err(Error::assertion(
            "small approximation",
            "the unbounded component meets S",
            Some(v.clone()),
        ));
    }
    let mut inside = Vec::new();
    let mut outside = vec![&pieces.outer];
    for comp in &pieces.large {
        let first = &comp.members()[0];
        if s.contains(first) {
            inside.push(comp);
        } else {
            outside.push(comp);
        }
    }
    let a = assemble(&inside, &outside, window, d)?;
    if !approximates(&a, s) {
        return Err(Error::assertion(
            "small approximation",
            "S is not approximated by its own witness",
            None,
        ));
    }
    let star = a.star();
    if star.len() > 3 * w.len() {
        return Err(Error::assertion(
            "small approximation",
            format!("|A_*| = {} exceeds 3|W| = {}", star.len(), 3 * w.len()),
            None,
        ));
    }
    Ok(a)
}

/// Moves every window vertex whose neighbours are all black (resp. all
/// white, counting outside the window as white) into that part, until no
/// unknown vertex is isolated.
pub fn eliminate_isolated(a: &Approximation) -> Result<Approximation> {
    let window = a.window().clone();
    let mut black = a.black().clone();
    let mut white = a.white().clone();
    loop {
        let is_white = |v: &Vertex, white: &LatticeSet| !window.contains(v) || white.contains(v);
        let mut add_black = Vec::new();
        let mut add_white = Vec::new();
        for v in window.vertices() {
            let ns = v.neighbors();
            if !black.contains(&v) && ns.iter().all(|u| black.contains(u)) {
                if white.contains(&v) {
                    return Err(Error::assertion(
                        "eliminate_isolated",
                        "approximation inconsistent (cut(A) likely empty)",
                        Some(v),
                    ));
                }
                add_black.push(v);
            } else if !white.contains(&v) && ns.iter().all(|u| is_white(u, &white)) {
                if black.contains(&v) {
                    return Err(Error::assertion(
                        "eliminate_isolated",
                        "approximation inconsistent (cut(A) likely empty)",
                        Some(v),
                    ));
                }
                add_white.push(v);
            }
        }
        if add_black.is_empty() && add_white.is_empty() {
            break;
        }
        let overlap = add_black.iter().find(|v| add_white.contains(v)).cloned();
        if overlap.is_some() {
            return Err(Error::assertion(
                "eliminate_isolated",
                "approximation inconsistent (cut(A) likely empty)",
                overlap,
            ));
        }
        black = black.union(&LatticeSet::new(window.dim(), add_black)?);
        white = white.union(&LatticeSet::new(window.dim(), add_white)?);
    }
    let b = Approximation::new(black, white, window)?;
    let (before, after) = (a.star(), b.star());
    if !after.is_subset(&before) {
        return Err(Error::assertion(
            "eliminate_isolated",
            "unknown region grew",
            None,
        ));
    }
    if let Some(v) = after
        .iter()
        .find(|v| v.neighbors().iter().all(|u| !after.contains(u)))
    {
        return Err(Error::assertion(
            "eliminate_isolated",
            "an isolated unknown vertex remains",
            Some(v.clone()),
        ));
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    /// The independent set W ⊆ A_* recorded by the refinement.
    pub w: LatticeSet,
    pub result: Approximation,
}

/// |Odd ∩ A_* ∩ S| + |Even ∩ A_* ∩ S^c|.
pub fn unknown_trace_size(a: &Approximation, s: &LatticeSet) -> usize {
    a.star()
        .iter()
        .filter(|v| v.is_odd() == s.contains(v))
        .count()
}

/// Refines A (with S ∈ cut(A)) to a t-approximation B with S ∈ cut(B).
///
/// Isolated unknown vertices are removed first. W is grown greedily over
/// A_* in lexicographic order, adding an even v ∈ S or odd v ∉ S whenever it
/// brings at least t new vertices of A_* into N(W). Since these gains only
/// shrink as W grows, one pass yields a maximal W. Then
/// W• = W_Even^+ ∪ (Odd ∩ N_t(A_* \ W^+)),
/// W∘ = W_Odd^+ ∪ (Even ∩ N_t(A_* \ W^+)),
/// and B = eliminate_isolated(A• ∪ W•, A∘ ∪ W∘).
pub fn refine_to_t(a: &Approximation, s: &LatticeSet, t: u32, m: usize) -> Result<Refinement> {
    check_t(a.dim(), t)?;
    if !approximates(a, s) {
        return Err(Error::assertion(
            "refine_to_t",
            "S is not approximated by A",
            None,
        ));
    }
    if !a.star_is_interior() {
        return Err(Error::InvalidInput(
            "enlarge the window: unknown vertices touch its boundary".into(),
        ));
    }
    let trace = unknown_trace_size(a, s);
    if trace > m {
        return Err(Error::InvalidInput(format!(
            "precondition violated: |Odd∩A_*∩S| + |Even∩A_*∩S^c| = {trace} > m = {m}"
        )));
    }
    let a = eliminate_isolated(a)?;
    let d = a.dim();
    let star = a.star();

    let mut in_nw: HashSet<Vertex> = HashSet::new();
    let mut w = Vec::new();
    for v in star.iter() {
        let right_side = if v.is_even() {
            s.contains(v)
        } else {
            !s.contains(v)
        };
        if !right_side {
            continue;
        }
        let fresh: Vec<Vertex> = v
            .neighbors()
            .into_iter()
            .filter(|u| star.contains(u) && !in_nw.contains(u))
            .collect();
        if fresh.len() >= t as usize {
            in_nw.extend(fresh);
            w.push(v.clone());
        }
    }
    let w = LatticeSet::new(d, w)?;
    if (t as usize) * w.len() > m {
        return Err(Error::assertion(
            "refine_to_t",
            format!("t|W| = {} exceeds m = {m}", t as usize * w.len()),
            None,
        ));
    }
    let w_plus = closure(&w);
    let rest = star.difference(&w_plus);
    let forced = n_t(&rest, t);
    let w_black = closure(&w.filter(|v| v.is_even())).union(&forced.filter(|v| v.is_odd()));
    let w_white = closure(&w.filter(|v| v.is_odd())).union(&forced.filter(|v| v.is_even()));
    let b = Approximation::new(
        a.black().union(&w_black),
        a.white().union(&w_white),
        a.window().clone(),
    )?;
    let b = eliminate_isolated(&b)?;
    if !approximates(&b, s) {
        return Err(Error::assertion(
            "refine_to_t",
            "S is not approximated by the refinement",
            None,
        ));
    }
    if !is_t_approximation(&b, t)? {
        return Err(Error::assertion(
            "refine_to_t",
            format!("refinement is not a {t}-approximation"),
            None,
        ));
    }
    Ok(Refinement { w, result: b })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub t: u32,
    pub separator: SeparatorReport,
    /// N(U).
    pub separating_set: LatticeSet,
    pub small: Approximation,
    pub first: Refinement,
    pub second: Refinement,
}

impl PipelineTrace {
    pub fn approximation(&self) -> &Approximation {
        &self.second.result
    }
}

fn stage<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Assertion {
            check,
            detail,
            witness,
        } => Error::Assertion {
            check: format!("{name}: {check}"),
            detail,
            witness,
        },
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{name}: {msg}")),
        other => other,
    })
}

/// The witness pipeline: separator U, the small approximation from N(U),
/// refinement to a d-approximation with m = |A_*|, then refinement to a
/// t-approximation with m = ⌊n/d⌋.
pub fn approximate_traced(s: &LatticeSet, t: u32, c_sep: f64) -> Result<PipelineTrace> {
    let d = s.dim();
    check_t(d, t)?;
    let n = crate::lattice::edge_boundary_size(s);
    let separator = stage("separator", build_separator(s, c_sep))?;
    let u = &separator.u_set;
    if !is_connected(u, 5) {
        return Err(Error::assertion(
            "separator",
            "U is not connected at distance 5",
            None,
        ));
    }
    let w = neighborhood(u);
    let window = s.union(&w).bounding_box().expect("non-empty").expanded(2);
    let small = stage("small approximation", small_approx_witness(&w, s, &window))?;
    let m1 = small.star().len();
    let first = stage("first refinement", refine_to_t(&small, s, d as u32, m1))?;
    let second = stage("second refinement", refine_to_t(&first.result, s, t, n / d))?;

    let (s0, s1, s2) = (small.star(), first.result.star(), second.result.star());
    if !(s2.is_subset(&s1) && s1.is_subset(&s0)) {
        return Err(Error::assertion(
            "pipeline",
            "unknown regions are not nested",
            None,
        ));
    }
    Ok(PipelineTrace {
        t,
        separator,
        separating_set: w,
        small,
        first,
        second,
    })
}

pub fn approximate(s: &LatticeSet, t: u32, c_sep: f64) -> Result<Approximation> {
    Ok(approximate_traced(s, t, c_sep)?.second.result)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub d: usize,
    pub t: u32,
    pub samples: usize,
    pub distinct_approximations: usize,
    /// Samples lying in cut(A) for some A of the deduplicated family.
    pub covered: usize,
    pub max_small_star: usize,
    /// 3|N(U)| for the sample attaining `max_small_star`.
    pub max_small_star_limit: usize,
    /// ln of exp(C·n·r·(ln d/d)^{3/2} + C·n·ln d/(d·t)) at the largest n seen.
    pub ln_family_bound: f64,
    pub constant: f64,
}

/// Runs the pipeline on each sample and deduplicates the approximations by
/// (black part, unknown region). Observational only.
pub fn family_size_report(samples: &[LatticeSet], t: u32, c: f64) -> Result<FamilyReport> {
    let Some(first) = samples.first() else {
        return Err(Error::EmptySet("no samples".into()));
    };
    let d = first.dim();
    let mut distinct: HashMap<(LatticeSet, LatticeSet), Approximation> = HashMap::new();
    let mut max_star = (0, 0);
    let mut max_n = 0;
    for s in samples {
        let trace = approximate_traced(s, t, DEFAULT_SEPARATOR_CONSTANT)?;
        let small = trace.small.star().len();
        if small >= max_star.0 {
            max_star = (small, 3 * trace.separating_set.len());
        }
        max_n = max_n.max(crate::lattice::edge_boundary_size(s));
        let a = trace.second.result;
        distinct.entry((a.black().clone(), a.star())).or_insert(a);
    }
    let keys: BTreeSet<_> = distinct.keys().cloned().collect();
    let family: Vec<&Approximation> = keys.iter().map(|k| &distinct[k]).collect();
    let covered = samples
        .iter()
        .filter(|s| family.iter().any(|a| approximates(a, s)))
        .count();
    let (df, nf) = (d as f64, max_n as f64);
    let ln_bound = c * nf * (df.ln() / df).powf(1.5) + c * nf * df.ln() / (df * t as f64);
    Ok(FamilyReport {
        d,
        t,
        samples: samples.len(),
        distinct_approximations: family.len(),
        covered,
        max_small_star: max_star.0,
        max_small_star_limit: max_star.1,
        ln_family_bound: ln_bound,
        constant: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{d_map, reconstruct, Half};

    fn plus(d: usize) -> LatticeSet {
        closure(&LatticeSet::singleton(Vertex::origin(d)))
    }

    fn diamond() -> LatticeSet {
        closure(&LatticeSet::from_coords(2, &[&[0, 0], &[1, 1]]).unwrap())
    }

    #[test]
    fn revealed_arms_of_plus() {
        let rev = revealed(&plus(2)).unwrap();
        for arm in plus(2).iter().filter(|v| v.is_odd()) {
            assert!(rev.contains(arm));
        }
        revealed(&diamond()).unwrap();
        check_four_cycle_property(&diamond()).unwrap();
    }

    #[test]
    fn greedy_cover_examples() {
        let arms = plus(2).difference(&LatticeSet::singleton(Vertex::origin(2)));
        assert_eq!(greedy_cover(&arms, 4).unwrap().len(), 1);
        let t1 = greedy_cover(&arms, 1).unwrap();
        assert!(neighborhood(&arms).is_subset(&neighborhood(&t1)));
        assert!(greedy_cover(&LatticeSet::empty(2), 1).unwrap().is_empty());
    }

    #[test]
    fn thresholds() {
        assert_eq!(separator_thresholds(2), (2, 1));
        assert_eq!(separator_thresholds(3), (2, 1));
        assert_eq!(separator_thresholds(8), (5, 2));
    }

    #[test]
    fn separators_on_small_sets() {
        for s in [plus(2), diamond(), plus(3)] {
            let r = build_separator(&s, DEFAULT_SEPARATOR_CONSTANT).unwrap();
            assert!(separates(&neighborhood(&r.u_set), &s).unwrap());
        }
    }

    #[test]
    fn eliminate_fixes_lone_vertex() {
        let window = BoxRegion::cube(2, 2);
        // Every neighbour of the origin is black, so it must leave A_*.
        let arms = LatticeSet::new(2, Vertex::origin(2).neighbors()).unwrap();
        let a = Approximation::new(arms, LatticeSet::empty(2), window).unwrap();
        assert!(a.star().contains(&Vertex::origin(2)));
        let b = eliminate_isolated(&a).unwrap();
        assert!(b.black().contains(&Vertex::origin(2)));
        assert!(!b.star().contains(&Vertex::origin(2)));
    }

    #[test]
    fn eliminate_trivial_window() {
        let a = Approximation::trivial(BoxRegion::cube(2, 2));
        let b = eliminate_isolated(&a).unwrap();
        assert_eq!(a.star(), b.star());
    }

    #[test]
    fn pipeline_on_small_sets() {
        for s in [plus(2), diamond()] {
            for t in 1..4 {
                let trace = approximate_traced(&s, t, DEFAULT_SEPARATOR_CONSTANT).unwrap();
                let a = trace.approximation();
                assert!(approximates(a, &s));
                assert!(is_t_approximation(a, t).unwrap());
                let w = d_map(a, &s).unwrap();
                assert!(w.cover_checked);
                assert!((4 - t as usize) * w.size() <= crate::lattice::edge_boundary_size(&s));
                assert_eq!(reconstruct(a, &Half::Black(w.d_black.clone())).unwrap(), s);
                assert_eq!(reconstruct(a, &Half::White(w.d_white.clone())).unwrap(), s);
            }
        }
        for t in 1..6 {
            approximate(&plus(3), t, DEFAULT_SEPARATOR_CONSTANT).unwrap();
        }
    }

    #[test]
    fn witness_is_in_family() {
        let s = diamond();
        let sep = build_separator(&s, DEFAULT_SEPARATOR_CONSTANT).unwrap();
        let w = neighborhood(&sep.u_set);
        let window = s.union(&w).bounding_box().unwrap().expanded(2);
        let a = small_approx_witness(&w, &s, &window).unwrap();
        let fam = small_approx_family(&w, &window).unwrap();
        assert!(fam.contains(&a));
    }
}
