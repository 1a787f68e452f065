//! Approximations (A•, A∘) of odd sets, the trace D(S) of a set's vertex
//! boundary on the unknown region, reconstruction from either half of that
//! trace, and minimal vertex covers of the unknown region.
//!
//! An approximation lives in a finite window; every vertex outside the
//! window is treated as known to be outside the set.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_with_jobs, EnumSpec};
use crate::error::{Error, Result};
use crate::lattice::{
    closure, components, external_boundary, internal_boundary, n_t, BoxRegion, LatticeSet, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Approximation {
    d: usize,
    black: LatticeSet,
    white: LatticeSet,
    window: BoxRegion,
}

#[derive(Serialize, Deserialize)]
struct RawApproximation {
    d: usize,
    black: Vec<Vertex>,
    white: Vec<Vertex>,
    window: BoxRegion,
}

impl Serialize for Approximation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        RawApproximation {
            d: self.d,
            black: self.black.members().to_vec(),
            white: self.white.members().to_vec(),
            window: self.window.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Approximation {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = RawApproximation::deserialize(deserializer)?;
        let black = LatticeSet::new(raw.d, raw.black).map_err(serde::de::Error::custom)?;
        let white = LatticeSet::new(raw.d, raw.white).map_err(serde::de::Error::custom)?;
        Approximation::new(black, white, raw.window).map_err(serde::de::Error::custom)
    }
}

impl Approximation {
    /// Checks that `black` and `white` are disjoint, `black` is odd and
    /// `white` is even.
    pub fn new(black: LatticeSet, white: LatticeSet, window: BoxRegion) -> Result<Self> {
        let d = window.dim();
        if black.dim() != d || white.dim() != d {
            return Err(Error::Dimension(
                "approximation parts must share the window dimension".into(),
            ));
        }
        if let Some(v) = black.intersection(&white).members().first() {
            return Err(Error::assertion(
                "approximation",
                "black and white parts overlap",
                Some(v.clone()),
            ));
        }
        if let Some(v) = internal_boundary(&black).iter().find(|v| v.is_even()) {
            return Err(Error::assertion(
                "approximation",
                "black part is not odd",
                Some(v.clone()),
            ));
        }
        if let Some(v) = black.iter().find(|v| !window.contains(v)) {
            return Err(Error::assertion(
                "approximation",
                "black part leaves the window",
                Some(v.clone()),
            ));
        }
        // Vertices outside the window count as white.
        let white_is_even = white.iter().filter(|v| v.is_odd()).find(|v| {
            v.neighbors()
                .iter()
                .any(|u| window.contains(u) && !white.contains(u))
        });
        if let Some(v) = white_is_even {
            return Err(Error::assertion(
                "approximation",
                "white part is not even",
                Some(v.clone()),
            ));
        }
        Ok(Approximation {
            d,
            black,
            white,
            window,
        })
    }

    /// The approximation that knows nothing inside `window`.
    pub fn trivial(window: BoxRegion) -> Self {
        let d = window.dim();
        Approximation {
            d,
            black: LatticeSet::empty(d),
            white: LatticeSet::empty(d),
            window,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn black(&self) -> &LatticeSet {
        &self.black
    }

    pub fn white(&self) -> &LatticeSet {
        &self.white
    }

    pub fn window(&self) -> &BoxRegion {
        &self.window
    }

    /// A_*: window vertices in neither part.
    pub fn star(&self) -> LatticeSet {
        self.window
            .as_set()
            .filter(|v| !self.black.contains(v) && !self.white.contains(v))
    }

    /// Whether the unknown region stays off the window's outer shell, so the
    /// window convention cannot hide a star vertex's neighbours.
    pub fn star_is_interior(&self) -> bool {
        self.star().iter().all(|v| !self.window.on_shell(v))
    }
}

pub(crate) fn check_t(d: usize, t: u32) -> Result<()> {
    if t == 0 || t as usize >= 2 * d {
        return Err(Error::InvalidInput(format!(
            "t must satisfy 1 <= t < 2d = {}, got {t}",
            2 * d
        )));
    }
    Ok(())
}

/// Degree of each vertex of `set` in the subgraph it induces.
pub fn induced_degrees(set: &LatticeSet) -> Vec<(Vertex, usize)> {
    set.iter()
        .map(|v| {
            (
                v.clone(),
                v.neighbors().iter().filter(|u| set.contains(u)).count(),
            )
        })
        .collect()
}

/// True iff A_* induces a subgraph of maximum degree at most t with no
/// isolated vertices.
pub fn is_t_approximation(a: &Approximation, t: u32) -> Result<bool> {
    check_t(a.d, t)?;
    Ok(induced_degrees(&a.star())
        .iter()
        .all(|(_, deg)| *deg >= 1 && *deg <= t as usize))
}

/// A• ⊆ S, A∘ ∩ S = ∅ and S inside the window.
pub fn approximates(a: &Approximation, s: &LatticeSet) -> bool {
    s.dim() == a.d
        && a.black.is_subset(s)
        && a.white.is_disjoint(s)
        && s.iter().all(|v| a.window.contains(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DWitness {
    /// D• = A_* ∩ ∂•S.
    pub d_black: LatticeSet,
    /// D∘ = A_* ∩ ∂∘S.
    pub d_white: LatticeSet,
    /// Whether the minimal-cover identities were checked (A had no isolated
    /// star vertex and star degree below 2d).
    pub cover_checked: bool,
}

impl DWitness {
    pub fn size(&self) -> usize {
        self.d_black.len() + self.d_white.len()
    }

    pub fn union(&self) -> LatticeSet {
        self.d_black.union(&self.d_white)
    }
}

/// An edge of the subgraph induced by `set` with neither endpoint in `cover`.
pub fn uncovered_edge(set: &LatticeSet, cover: &LatticeSet) -> Option<(Vertex, Vertex)> {
    set.iter().filter(|u| !cover.contains(u)).find_map(|u| {
        u.neighbors()
            .into_iter()
            .find(|v| set.contains(v) && !cover.contains(v))
            .map(|v| (u.clone(), v))
    })
}

/// A cover vertex whose removal leaves a cover (so `cover` is not minimal).
pub fn redundant_cover_vertex(set: &LatticeSet, cover: &LatticeSet) -> Option<Vertex> {
    cover
        .iter()
        .find(|u| {
            u.neighbors()
                .iter()
                .all(|v| !set.contains(v) || cover.contains(v))
        })
        .cloned()
}

pub fn d_map(a: &Approximation, s: &LatticeSet) -> Result<DWitness> {
    if !approximates(a, s) {
        return Err(Error::assertion(
            "d_map",
            "approximation does not approximate S",
            None,
        ));
    }
    let star = a.star();
    let d_black = star.intersection(&internal_boundary(s));
    let d_white = star.intersection(&external_boundary(s));
    let degrees = induced_degrees(&star);
    let cover_checked = degrees.iter().all(|(_, deg)| *deg >= 1 && *deg < 2 * a.d);
    if cover_checked {
        let odd_in = star.filter(|v| v.is_odd() && s.contains(v));
        if let Some(v) = odd_in.difference(&d_black).members().first() {
            return Err(Error::assertion(
                "d_map",
                "D• ≠ Odd ∩ A_* ∩ S",
                Some(v.clone()),
            ));
        }
        if let Some(v) = d_black.difference(&odd_in).members().first() {
            return Err(Error::assertion(
                "d_map",
                "D• ≠ Odd ∩ A_* ∩ S",
                Some(v.clone()),
            ));
        }
        let even_out = star.filter(|v| v.is_even() && !s.contains(v));
        if let Some(v) = even_out.difference(&d_white).members().first() {
            return Err(Error::assertion(
                "d_map",
                "D∘ ≠ Even ∩ A_* ∩ S^c",
                Some(v.clone()),
            ));
        }
        if let Some(v) = d_white.difference(&even_out).members().first() {
            return Err(Error::assertion(
                "d_map",
                "D∘ ≠ Even ∩ A_* ∩ S^c",
                Some(v.clone()),
            ));
        }
        let cover = d_black.union(&d_white);
        if let Some((u, _)) = uncovered_edge(&star, &cover) {
            return Err(Error::assertion(
                "d_map",
                "D(S) is not a vertex cover of A_*",
                Some(u),
            ));
        }
        if let Some(v) = redundant_cover_vertex(&star, &cover) {
            return Err(Error::assertion(
                "d_map",
                "D(S) is not a minimal vertex cover",
                Some(v),
            ));
        }
    }
    Ok(DWitness {
        d_black,
        d_white,
        cover_checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    Black(LatticeSet),
    White(LatticeSet),
}

/// Rebuilds S from one half of its D-witness.
pub fn reconstruct(a: &Approximation, half: &Half) -> Result<LatticeSet> {
    let star = a.star();
    let (given, s) = match half {
        Half::Black(db) => {
            let odd_s = a.black.filter(|v| v.is_odd()).union(db);
            let even_s = n_t(&odd_s, 2 * a.d as u32).filter(|v| v.is_even());
            (db, odd_s.union(&even_s))
        }
        Half::White(dw) => {
            let even_s = a
                .window
                .as_set()
                .filter(|v| v.is_even() && !a.white.contains(v) && !dw.contains(v));
            (dw, closure(&even_s))
        }
    };
    if !given.is_subset(&star) {
        return Err(Error::assertion(
            "reconstruct",
            "witness leaves the unknown region",
            None,
        ));
    }
    if s.is_empty() || !approximates(a, &s) {
        return Err(Error::assertion(
            "reconstruct",
            "inconsistent witness: rebuilt set is not approximated",
            None,
        ));
    }
    let again = d_map(a, &s)?;
    let same = match half {
        Half::Black(db) => &again.d_black == db,
        Half::White(dw) => &again.d_white == dw,
    };
    if !same {
        return Err(Error::assertion(
            "reconstruct",
            "inconsistent witness: rebuilt set has a different trace",
            None,
        ));
    }
    Ok(s)
}

/// Components of the graph induced by `set` as local adjacency lists.
struct LocalGraph {
    verts: Vec<Vertex>,
    adj: Vec<u128>,
}

impl LocalGraph {
    fn new(comp: &LatticeSet) -> Result<Self> {
        if comp.len() > 128 {
            return Err(Error::InvalidInput(format!(
                "component with {} vertices is too large for cover enumeration",
                comp.len()
            )));
        }
        let verts: Vec<Vertex> = comp.members().to_vec();
        let index: HashMap<&Vertex, usize> =
            verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let adj = verts
            .iter()
            .map(|v| {
                v.neighbors()
                    .iter()
                    .filter_map(|u| index.get(u))
                    .fold(0u128, |acc, &j| acc | 1u128 << j)
            })
            .collect();
        Ok(LocalGraph { verts, adj })
    }

    /// All maximal independent sets, by Bron–Kerbosch on the complement
    /// with pivoting: only P ∩ N[pivot] needs branching.
    fn maximal_independent_sets(&self) -> Vec<u128> {
        fn rec(g: &LocalGraph, r: u128, p: u128, x: u128, out: &mut Vec<u128>) {
            if p == 0 && x == 0 {
                out.push(r);
                return;
            }
            let closed = |v: usize| g.adj[v] | 1u128 << v;
            let pivot = bits(p | x)
                .min_by_key(|&u| (p & closed(u)).count_ones())
                .expect("p or x non-empty");
            let mut p = p;
            let mut x = x;
            for v in bits(p & closed(pivot)) {
                let nv = closed(v);
                rec(g, r | 1u128 << v, p & !nv, x & !nv, out);
                p &= !(1u128 << v);
                x |= 1u128 << v;
            }
        }
        let n = self.verts.len();
        let all = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let mut out = Vec::new();
        rec(self, 0, all, 0, &mut out);
        out
    }

    fn full(&self) -> u128 {
        let n = self.verts.len();
        if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        }
    }

    fn minimal_covers(&self) -> Vec<u128> {
        let full = self.full();
        let mut covers: Vec<u128> = self
            .maximal_independent_sets()
            .into_iter()
            .map(|s| full & !s)
            .collect();
        covers.sort_unstable();
        covers
    }

    fn to_set(&self, d: usize, mask: u128) -> LatticeSet {
        LatticeSet::new(d, bits(mask).map(|i| self.verts[i].clone())).expect("same dimension")
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Limit on how many covers [`minimal_covers`] will materialize.
pub const MAX_MATERIALIZED_COVERS: usize = 1_000_000;

/// All inclusion-minimal vertex covers of the subgraph induced by `set`,
/// sorted. A cover of a disjoint union is a product of covers of the
/// components.
pub fn minimal_covers(set: &LatticeSet) -> Result<Vec<LatticeSet>> {
    let d = set.dim();
    let mut acc = vec![LatticeSet::empty(d)];
    for comp in components(set, 1) {
        let g = LocalGraph::new(&comp)?;
        let covers = g.minimal_covers();
        if acc.len().saturating_mul(covers.len()) > MAX_MATERIALIZED_COVERS {
            return Err(Error::InvalidInput(format!(
                "more than {MAX_MATERIALIZED_COVERS} minimal covers; use cover_sum instead"
            )));
        }
        let sets: Vec<LatticeSet> = covers.iter().map(|&c| g.to_set(d, c)).collect();
        acc = acc
            .iter()
            .flat_map(|a| sets.iter().map(move |c| a.union(c)))
            .collect();
    }
    acc.sort();
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSummary {
    /// Σ over minimal covers U of Π_{u∈U} p_u.
    #[serde(with = "rational_string")]
    pub sum: BigRational,
    /// Number of minimal covers.
    pub covers: BigUint,
    /// Size of the largest minimal cover.
    pub max_cover_size: usize,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Σ_{U ∈ MC} Π_{u ∈ U} p_u over the minimal vertex covers of the subgraph
/// induced by `set`, asserting it is at most 1. Requires 0 <= p_u and
/// p_u + p_v <= 1 on every induced edge.
pub fn cover_sum(set: &LatticeSet, p: impl Fn(&Vertex) -> BigRational) -> Result<CoverSummary> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    for u in set {
        let pu = p(u);
        if pu < zero {
            return Err(Error::InvalidInput(format!("negative weight at {u}")));
        }
        for v in u.neighbors() {
            if set.contains(&v) && &pu + p(&v) > one {
                return Err(Error::InvalidInput(format!(
                    "weights violate p_u + p_v <= 1 on edge {u} - {v}"
                )));
            }
        }
    }
    let mut total = CoverSummary {
        sum: one.clone(),
        covers: BigUint::one(),
        max_cover_size: 0,
    };
    for comp in components(set, 1) {
        let g = LocalGraph::new(&comp)?;
        let weights: Vec<BigRational> = g.verts.iter().map(&p).collect();
        let covers = g.minimal_covers();
        let mut sum = BigRational::zero();
        let mut largest = 0;
        for &c in &covers {
            sum += bits(c).fold(BigRational::one(), |acc, i| acc * &weights[i]);
            largest = largest.max(c.count_ones() as usize);
        }
        total.sum *= sum;
        total.covers *= BigUint::from(covers.len());
        total.max_cover_size += largest;
    }
    if total.sum > one {
        return Err(Error::assertion(
            "cover sum",
            format!("Σ Π p_u = {} exceeds 1", total.sum),
            None,
        ));
    }
    Ok(total)
}

/// [`cover_sum`] with every weight equal to `p`; components equal up to
/// translation are evaluated once.
pub fn cover_sum_uniform(set: &LatticeSet, p: &BigRational) -> Result<CoverSummary> {
    if p < &BigRational::zero() || p + p > BigRational::one() {
        return Err(Error::InvalidInput(format!(
            "uniform weight {p} must lie in [0, 1/2]"
        )));
    }
    let mut memo: HashMap<LatticeSet, CoverSummary> = HashMap::new();
    let mut total = CoverSummary {
        sum: BigRational::one(),
        covers: BigUint::one(),
        max_cover_size: 0,
    };
    for comp in components(set, 1) {
        let anchor = comp.members()[0].negate();
        let key = comp.translate(&anchor);
        if !memo.contains_key(&key) {
            let part = cover_sum(&key, |_| p.clone())?;
            memo.insert(key.clone(), part);
        }
        let part = &memo[&key];
        total.sum *= &part.sum;
        total.covers *= &part.covers;
        total.max_cover_size += part.max_cover_size;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountBoundReport {
    pub n: usize,
    pub t: u32,
    /// |cut_n(A)|.
    pub cut_count: u64,
    /// n / (2d - t), the exponent of the bound 2^{n/(2d-t)}.
    #[serde(with = "rational_string")]
    pub bound_exponent: BigRational,
    pub holds: bool,
}

/// Regular odd cutsets with n boundary edges that A approximates.
pub fn cut_n(a: &Approximation, n: usize, jobs: usize) -> Result<Vec<LatticeSet>> {
    let family: Vec<LatticeSet> = enumerate_with_jobs(&EnumSpec::new(a.d, n), jobs)?
        .sets()
        .collect();
    Ok(cut_from_family(a, &family))
}

/// Members of cut(A) among all translates of `family`, the regular odd
/// cutsets (with a common boundary size) that contain the origin. Every set
/// in cut(A) contains a known anchor vertex, so translating the family onto
/// each anchor finds all of them.
pub fn cut_from_family(a: &Approximation, family: &[LatticeSet]) -> Vec<LatticeSet> {
    let anchors: Vec<Vertex> = if let Some(e) = a.black.iter().find(|v| v.is_even()) {
        vec![e.clone()]
    } else if let Some(o) = a.black.members().first() {
        // An odd member of a regular odd set has an even neighbour in it.
        o.neighbors()
    } else {
        a.star().filter(|v| v.is_even()).members().to_vec()
    };
    let mut seen: HashSet<LatticeSet> = HashSet::new();
    let mut out = Vec::new();
    for anchor in &anchors {
        for s in family {
            let moved = s.translate(anchor);
            if approximates(a, &moved) && seen.insert(moved.clone()) {
                out.push(moved);
            }
        }
    }
    out.sort();
    out
}

/// Checks |cut_n(A)| <= 2^{n/(2d-t)} exactly, as |cut_n(A)|^{2d-t} <= 2^n.
pub fn count_bound_check(
    a: &Approximation,
    n: usize,
    t: u32,
    jobs: usize,
) -> Result<CountBoundReport> {
    let family: Vec<LatticeSet> = enumerate_with_jobs(&EnumSpec::new(a.d, n), jobs)?
        .sets()
        .collect();
    count_bound_check_with_family(a, n, t, &family)
}

/// [`count_bound_check`] against a precomputed origin-containing family
/// with n boundary edges.
pub fn count_bound_check_with_family(
    a: &Approximation,
    n: usize,
    t: u32,
    family: &[LatticeSet],
) -> Result<CountBoundReport> {
    check_t(a.d, t)?;
    if !is_t_approximation(a, t)? {
        return Err(Error::InvalidInput(format!(
            "approximation is not a {t}-approximation"
        )));
    }
    let count = cut_from_family(a, family).len() as u64;
    let k = 2 * a.d - t as usize;
    let holds = BigUint::from(count).pow(k as u32) <= BigUint::one() << n;
    let report = CountBoundReport {
        n,
        t,
        cut_count: count,
        bound_exponent: BigRational::new(n.into(), k.into()),
        holds,
    };
    if !holds {
        return Err(Error::assertion(
            "approximation count bound",
            format!("|cut_n(A)| = {count} exceeds 2^({n}/{k})"),
            None,
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[&[i32]]) -> LatticeSet {
        LatticeSet::from_coords(2, pts).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    fn plus() -> LatticeSet {
        closure(&LatticeSet::singleton(Vertex::origin(2)))
    }

    #[test]
    fn empty_star_is_a_t_approximation() {
        let a = Approximation::new(
            LatticeSet::empty(2),
            LatticeSet::singleton(Vertex::origin(2)),
            BoxRegion::new(vec![0, 0], vec![0, 0]).unwrap(),
        )
        .unwrap();
        assert!(a.star().is_empty());
        for t in 1..4 {
            assert!(is_t_approximation(&a, t).unwrap());
        }
    }

    #[test]
    fn parts_must_be_odd_and_even() {
        let w = BoxRegion::cube(2, 2);
        let even = LatticeSet::singleton(Vertex::origin(2));
        let odd = LatticeSet::singleton(Vertex::new(&[1, 0]));
        assert!(Approximation::new(even.clone(), LatticeSet::empty(2), w.clone()).is_err());
        assert!(Approximation::new(LatticeSet::empty(2), odd.clone(), w.clone()).is_err());
        assert!(Approximation::new(odd.clone(), odd, w.clone()).is_err());
        let a = Approximation::new(plus(), LatticeSet::empty(2), BoxRegion::cube(2, 1)).unwrap();
        assert_eq!(a.star().len(), 4);
    }

    #[test]
    fn edge_star_is_a_one_approximation() {
        let a = Approximation::trivial(BoxRegion::new(vec![0, 0], vec![1, 0]).unwrap());
        assert!(is_t_approximation(&a, 1).unwrap());
    }

    #[test]
    fn t_out_of_range() {
        let a = Approximation::trivial(BoxRegion::cube(2, 1));
        assert!(is_t_approximation(&a, 4).is_err());
        assert!(is_t_approximation(&a, 0).is_err());
        assert!(!is_t_approximation(&a, 3).unwrap());
    }

    #[test]
    fn containment() {
        let s = plus();
        let a = Approximation::trivial(BoxRegion::cube(2, 3));
        assert!(approximates(&a, &s));
        let a = Approximation::new(s.clone(), LatticeSet::empty(2), BoxRegion::cube(2, 3)).unwrap();
        assert!(approximates(&a, &s));
        let a = Approximation::new(
            LatticeSet::empty(2),
            LatticeSet::singleton(Vertex::origin(2)),
            BoxRegion::cube(2, 3),
        )
        .unwrap();
        assert!(!approximates(&a, &s));
    }

    #[test]
    fn trivial_d_map_is_the_full_boundary() {
        let s = plus();
        let a = Approximation::trivial(BoxRegion::cube(2, 3));
        let w = d_map(&a, &s).unwrap();
        assert_eq!(w.d_black, internal_boundary(&s));
        assert_eq!(w.d_white, external_boundary(&s));
        assert!(!w.cover_checked);
    }

    #[test]
    fn reconstruct_with_black_equal_to_s() {
        let s = plus();
        let a = Approximation::new(s.clone(), LatticeSet::empty(2), BoxRegion::cube(2, 3)).unwrap();
        let w = d_map(&a, &s).unwrap();
        assert!(w.d_black.is_empty());
        assert_eq!(reconstruct(&a, &Half::Black(w.d_black)).unwrap(), s);
    }

    #[test]
    fn path_and_edge_cover_sums() {
        let path = set(&[&[0, 0], &[1, 0], &[2, 0]]);
        let covers = minimal_covers(&path).unwrap();
        assert_eq!(covers, vec![set(&[&[0, 0], &[2, 0]]), set(&[&[1, 0]])]);
        let s = cover_sum(&path, |_| half()).unwrap();
        assert_eq!(s.sum, BigRational::new(3.into(), 4.into()));

        let edge = set(&[&[0, 0], &[1, 0]]);
        assert_eq!(
            cover_sum(&edge, |_| half()).unwrap().sum,
            BigRational::one()
        );
    }

    #[test]
    fn bad_weights_are_rejected() {
        let edge = set(&[&[0, 0], &[1, 0]]);
        let w = BigRational::new(2.into(), 3.into());
        assert!(cover_sum(&edge, |_| w.clone()).is_err());
        assert!(cover_sum_uniform(&edge, &w).is_err());
    }

    #[test]
    fn uniform_memo_matches_direct() {
        let s = set(&[
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[5, 5],
            &[6, 5],
            &[7, 5],
            &[9, 0],
        ]);
        let direct = cover_sum(&s, |_| half()).unwrap();
        let memo = cover_sum_uniform(&s, &half()).unwrap();
        assert_eq!(direct, memo);
        assert_eq!(direct.covers, BigUint::from(4u32));
    }

    #[test]
    fn json_shape() {
        let a = Approximation::new(
            LatticeSet::singleton(Vertex::new(&[1, 0])),
            LatticeSet::empty(2),
            BoxRegion::cube(2, 2),
        )
        .unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"{"d":2,"black":[[1,0]],"white":[],"window":{"lo":[-2,-2],"hi":[2,2]}}"#
        );
        let back: Approximation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
