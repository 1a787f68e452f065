//! Geometry of the hypercubic lattice Z^d: vertices, parity, neighbourhoods,
//! boundaries and connectivity in the distance-r graph.
//!
//! Sets are finite and stored in canonical form (sorted, deduplicated), so
//! equality and hashing are structural and iteration order is reproducible.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest coordinate magnitude a vertex may hold.
pub const COORD_LIMIT: i64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A point of Z^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(SmallVec<[i32; 4]>);

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn checked_coord(value: i64) -> i32 {
    assert!(
        (-COORD_LIMIT + 1..COORD_LIMIT).contains(&value),
        "lattice coordinate overflow: {value}"
    );
    value as i32
}

impl Vertex {
    pub fn new(coords: &[i32]) -> Self {
        Vertex(SmallVec::from_slice(coords))
    }

    pub fn origin(d: usize) -> Self {
        Vertex(SmallVec::from_elem(0, d))
    }

    /// The standard basis vector e_axis (axes are 0-based).
    pub fn unit(d: usize, axis: usize) -> Self {
        let mut v = Vertex::origin(d);
        v.0[axis] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> i32 {
        self.0[axis]
    }

    pub fn parity(&self) -> Parity {
        let sum: i64 = self.0.iter().map(|&c| c as i64).sum();
        if sum.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Moves `delta` steps along `axis`. Panics on coordinate overflow.
    pub fn shifted(&self, axis: usize, delta: i32) -> Vertex {
        let mut v = self.clone();
        v.0[axis] = checked_coord(v.0[axis] as i64 + delta as i64);
        v
    }

    pub fn step(&self, dir: Direction) -> Vertex {
        self.shifted(dir.axis, dir.sign())
    }

    /// Componentwise sum. Panics on coordinate overflow or dimension mismatch.
    pub fn translate(&self, by: &Vertex) -> Vertex {
        assert_eq!(self.dim(), by.dim(), "dimension mismatch in translation");
        Vertex(
            self.0
                .iter()
                .zip(by.0.iter())
                .map(|(&a, &b)| checked_coord(a as i64 + b as i64))
                .collect(),
        )
    }

    pub fn negate(&self) -> Vertex {
        Vertex(self.0.iter().map(|&c| checked_coord(-(c as i64))).collect())
    }

    pub fn l1_distance(&self, other: &Vertex) -> u64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs())
            .sum()
    }

    /// The 2d nearest neighbours, ordered +e1, -e1, ..., +ed, -ed.
    pub fn neighbors(&self) -> Vec<Vertex> {
        Direction::all(self.dim())
            .map(|dir| self.step(dir))
            .collect()
    }

    /// x1 + x2, the height used to locate peaks.
    pub fn height(&self) -> i64 {
        self.0[0] as i64 + self.0[1] as i64
    }
}

/// A unit direction +e_axis or -e_axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction {
    pub axis: usize,
    pub positive: bool,
}

impl Direction {
    pub fn sign(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn reversed(self) -> Direction {
        Direction {
            axis: self.axis,
            positive: !self.positive,
        }
    }

    /// All 2d directions in the canonical order +e1, -e1, ..., +ed, -ed.
    pub fn all(d: usize) -> impl Iterator<Item = Direction> {
        (0..d).flat_map(|axis| {
            [true, false]
                .into_iter()
                .map(move |positive| Direction { axis, positive })
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}e{}",
            if self.positive { '+' } else { '-' },
            self.axis + 1
        )
    }
}

/// A finite subset of Z^d in canonical (sorted, deduplicated) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct LatticeSet {
    d: usize,
    members: Vec<Vertex>,
}

#[derive(Deserialize)]
struct RawSet {
    d: usize,
    members: Vec<Vertex>,
}

impl TryFrom<RawSet> for LatticeSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        LatticeSet::new(raw.d, raw.members)
    }
}

impl fmt::Debug for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeSet(d={}, ", self.d)?;
        f.debug_set().entries(self.members.iter()).finish()?;
        write!(f, ")")
    }
}

impl LatticeSet {
    /// Builds a canonical set, checking that every member has dimension `d >= 2`.
    pub fn new(d: usize, members: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(format!(
                "dimension must be at least 2, got {d}"
            )));
        }
        let mut members: Vec<Vertex> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|v| v.dim() != d) {
            return Err(Error::Dimension(format!(
                "vertex {bad} has dimension {}, expected {d}",
                bad.dim()
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(LatticeSet { d, members })
    }

    /// Like [`LatticeSet::new`] for members already known to have dimension `d`.
    pub(crate) fn from_iter_unchecked(d: usize, members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut members: Vec<Vertex> = members.into_iter().collect();
        debug_assert!(members.iter().all(|v| v.dim() == d));
        members.sort_unstable();
        members.dedup();
        LatticeSet { d, members }
    }

    pub fn empty(d: usize) -> Self {
        LatticeSet {
            d,
            members: Vec::new(),
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        LatticeSet {
            d: v.dim(),
            members: vec![v],
        }
    }

    /// Convenience constructor from coordinate slices.
    pub fn from_coords(d: usize, coords: &[&[i32]]) -> Result<Self> {
        LatticeSet::new(d, coords.iter().map(|c| Vertex::new(c)))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.members.iter()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.members.binary_search(v).is_ok()
    }

    pub fn to_hash_set(&self) -> HashSet<Vertex> {
        self.members.iter().cloned().collect()
    }

    pub fn union(&self, other: &LatticeSet) -> LatticeSet {
        self.check_dim(other);
        LatticeSet::from_iter_unchecked(self.d, self.iter().chain(other.iter()).cloned())
    }

    pub fn intersection(&self, other: &LatticeSet) -> LatticeSet {
        self.check_dim(other);
        LatticeSet {
            d: self.d,
            members: self.iter().filter(|v| other.contains(v)).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &LatticeSet) -> LatticeSet {
        self.check_dim(other);
        LatticeSet {
            d: self.d,
            members: self
                .iter()
                .filter(|v| !other.contains(v))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &LatticeSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Vertex) -> bool) -> LatticeSet {
        LatticeSet {
            d: self.d,
            members: self.iter().filter(|v| keep(v)).cloned().collect(),
        }
    }

    pub fn with_parity(&self, parity: Parity) -> LatticeSet {
        self.filter(|v| v.parity() == parity)
    }

    pub fn map(&self, f: impl FnMut(&Vertex) -> Vertex) -> LatticeSet {
        LatticeSet::from_iter_unchecked(self.d, self.iter().map(f))
    }

    pub fn translate(&self, by: &Vertex) -> LatticeSet {
        self.map(|v| v.translate(by))
    }

    pub fn insert(&mut self, v: Vertex) {
        assert_eq!(v.dim(), self.d, "dimension mismatch");
        if let Err(pos) = self.members.binary_search(&v) {
            self.members.insert(pos, v);
        }
    }

    /// Smallest box containing the set, or `None` when empty.
    pub fn bounding_box(&self) -> Option<BoxRegion> {
        let first = self.members.first()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.members {
            for (axis, &c) in v.coords().iter().enumerate() {
                lo[axis] = lo[axis].min(c);
                hi[axis] = hi[axis].max(c);
            }
        }
        Some(BoxRegion { lo, hi })
    }

    fn check_dim(&self, other: &LatticeSet) {
        assert_eq!(self.d, other.d, "dimension mismatch between sets");
    }
}

impl<'a> IntoIterator for &'a LatticeSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// An axis-aligned box `lo <= x <= hi` (inclusive on both ends).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxRegion {
    pub lo: Vec<i32>,
    pub hi: Vec<i32>,
}

impl BoxRegion {
    pub fn new(lo: Vec<i32>, hi: Vec<i32>) -> Result<Self> {
        if lo.len() != hi.len() || lo.len() < 2 {
            return Err(Error::Dimension(
                "box corners must share a dimension >= 2".into(),
            ));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Dimension("box has lo > hi".into()));
        }
        Ok(BoxRegion { lo, hi })
    }

    /// The cube [-radius, radius]^d.
    pub fn cube(d: usize, radius: i32) -> Self {
        BoxRegion {
            lo: vec![-radius; d],
            hi: vec![radius; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn expanded(&self, margin: i32) -> BoxRegion {
        BoxRegion {
            lo: self
                .lo
                .iter()
                .map(|&c| checked_coord(c as i64 - margin as i64))
                .collect(),
            hi: self
                .hi
                .iter()
                .map(|&c| checked_coord(c as i64 + margin as i64))
                .collect(),
        }
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.coords()
            .iter()
            .enumerate()
            .all(|(axis, &c)| self.lo[axis] <= c && c <= self.hi[axis])
    }

    /// True when `v` lies in the box but on its outermost shell.
    pub fn on_shell(&self, v: &Vertex) -> bool {
        self.contains(v)
            && v.coords()
                .iter()
                .enumerate()
                .any(|(axis, &c)| c == self.lo[axis] || c == self.hi[axis])
    }

    pub fn side(&self, axis: usize) -> usize {
        (self.hi[axis] as i64 - self.lo[axis] as i64 + 1) as usize
    }

    pub fn volume(&self) -> usize {
        (0..self.dim()).map(|a| self.side(a)).product()
    }

    /// Dense index of a contained vertex (first axis varies fastest).
    pub fn index(&self, v: &Vertex) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        let mut idx = 0usize;
        for axis in (0..self.dim()).rev() {
            idx = idx * self.side(axis) + (v.coord(axis) - self.lo[axis]) as usize;
        }
        Some(idx)
    }

    pub fn vertex_at(&self, mut idx: usize) -> Vertex {
        let mut coords = SmallVec::<[i32; 4]>::new();
        for axis in 0..self.dim() {
            let side = self.side(axis);
            coords.push(self.lo[axis] + (idx % side) as i32);
            idx /= side;
        }
        Vertex(coords)
    }

    /// All vertices of the box in lexicographic order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = (0..self.volume()).map(|i| self.vertex_at(i)).collect();
        out.sort_unstable();
        out
    }

    pub fn as_set(&self) -> LatticeSet {
        LatticeSet {
            d: self.dim(),
            members: self.vertices(),
        }
    }
}

/// One edge {inside, outside} of an edge boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryEdge {
    pub inside: Vertex,
    pub outside: Vertex,
}

/// Edge boundary, internal and external vertex boundaries and the
/// directional boundaries of a finite set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryProfile {
    pub edge_boundary: Vec<BoundaryEdge>,
    pub internal: LatticeSet,
    pub external: LatticeSet,
    pub directional: BTreeMap<Direction, LatticeSet>,
}

impl BoundaryProfile {
    pub fn edge_count(&self) -> usize {
        self.edge_boundary.len()
    }

    pub fn in_direction(&self, dir: Direction) -> &LatticeSet {
        &self.directional[&dir]
    }
}

pub fn boundary_profile(set: &LatticeSet) -> Result<BoundaryProfile> {
    if set.is_empty() {
        return Err(Error::EmptySet("empty set has no boundary profile".into()));
    }
    let d = set.dim();
    let lookup = set.to_hash_set();
    let mut edges = Vec::new();
    let mut internal = Vec::new();
    let mut external = Vec::new();
    let mut directional: BTreeMap<Direction, Vec<Vertex>> =
        Direction::all(d).map(|dir| (dir, Vec::new())).collect();
    for u in set {
        let mut on_boundary = false;
        for dir in Direction::all(d) {
            let v = u.step(dir);
            if !lookup.contains(&v) {
                on_boundary = true;
                directional.get_mut(&dir).unwrap().push(u.clone());
                external.push(v.clone());
                edges.push(BoundaryEdge {
                    inside: u.clone(),
                    outside: v,
                });
            }
        }
        if on_boundary {
            internal.push(u.clone());
        }
    }
    edges.sort_unstable();
    Ok(BoundaryProfile {
        edge_boundary: edges,
        internal: LatticeSet::from_iter_unchecked(d, internal),
        external: LatticeSet::from_iter_unchecked(d, external),
        directional: directional
            .into_iter()
            .map(|(dir, vs)| (dir, LatticeSet::from_iter_unchecked(d, vs)))
            .collect(),
    })
}

/// |∂U|, the number of edges with exactly one endpoint in `set`.
pub fn edge_boundary_size(set: &LatticeSet) -> usize {
    let lookup = set.to_hash_set();
    set.iter()
        .map(|u| {
            Direction::all(set.dim())
                .filter(|&dir| !lookup.contains(&u.step(dir)))
                .count()
        })
        .sum()
}

/// ∂•U: members with a neighbour outside the set.
pub fn internal_boundary(set: &LatticeSet) -> LatticeSet {
    let lookup = set.to_hash_set();
    set.filter(|u| u.neighbors().iter().any(|v| !lookup.contains(v)))
}

/// ∂∘U: non-members adjacent to the set.
pub fn external_boundary(set: &LatticeSet) -> LatticeSet {
    neighborhood(set).difference(set)
}

/// N(U), the vertices adjacent to some member.
pub fn neighborhood(set: &LatticeSet) -> LatticeSet {
    LatticeSet::from_iter_unchecked(set.dim(), set.iter().flat_map(|u| u.neighbors()))
}

fn neighbor_counts(set: &LatticeSet) -> HashMap<Vertex, u32> {
    let mut counts: HashMap<Vertex, u32> = HashMap::new();
    for u in set {
        for v in u.neighbors() {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    counts
}

/// N_t(U): vertices having at least `t` neighbours in `set`.
pub fn n_t(set: &LatticeSet, t: u32) -> LatticeSet {
    assert!(t >= 1, "n_t requires t >= 1");
    LatticeSet::from_iter_unchecked(
        set.dim(),
        neighbor_counts(set)
            .into_iter()
            .filter(|&(_, c)| c >= t)
            .map(|(v, _)| v),
    )
}

/// U^+ = U ∪ N(U).
pub fn closure(set: &LatticeSet) -> LatticeSet {
    LatticeSet::from_iter_unchecked(
        set.dim(),
        set.iter()
            .cloned()
            .chain(set.iter().flat_map(|u| u.neighbors())),
    )
}

/// Nonzero offsets of L1 norm at most `r`, in lexicographic order.
pub fn ball_offsets(d: usize, r: u32) -> Vec<Vertex> {
    let r = r as i32;
    let mut out = Vec::new();
    let mut current = vec![0i32; d];
    fn rec(axis: usize, budget: i32, current: &mut Vec<i32>, out: &mut Vec<Vertex>) {
        if axis == current.len() {
            if current.iter().any(|&c| c != 0) {
                out.push(Vertex::new(current));
            }
            return;
        }
        for c in -budget..=budget {
            current[axis] = c;
            rec(axis + 1, budget - c.abs(), current, out);
        }
        current[axis] = 0;
    }
    rec(0, r, &mut current, &mut out);
    out.sort_unstable();
    out
}

/// Connected components of `set` in the graph joining members at L1 distance
/// at most `r`. Components are sorted internally and listed in order of
/// their lexicographically smallest member.
pub fn components(set: &LatticeSet, r: u32) -> Vec<LatticeSet> {
    assert!(r >= 1, "connectivity radius must be positive");
    let offsets = ball_offsets(set.dim(), r);
    let lookup = set.to_hash_set();
    let mut seen: HashSet<Vertex> = HashSet::with_capacity(set.len());
    let mut out = Vec::new();
    for start in set {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start.clone());
        let mut comp = vec![start.clone()];
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(u) = queue.pop_front() {
            for off in &offsets {
                let v = u.translate(off);
                if lookup.contains(&v) && seen.insert(v.clone()) {
                    comp.push(v.clone());
                    queue.push_back(v);
                }
            }
        }
        out.push(LatticeSet::from_iter_unchecked(set.dim(), comp));
    }
    out
}

/// Connectivity in the distance-`r` graph. The empty set counts as connected.
pub fn is_connected(set: &LatticeSet, r: u32) -> bool {
    set.len() <= 1 || components(set, r).len() == 1
}

/// Decides whether Z^d \ `set` is connected in the distance-`r` graph.
///
/// Works inside the bounding box enlarged by 2; every cell outside the
/// original bounding box reaches infinity, so the shell of the enlarged box
/// acts as one outer node. Returns a complement vertex cut off from the outer
/// node when the complement is disconnected.
pub fn complement_cut_off_vertex(set: &LatticeSet, r: u32) -> Option<Vertex> {
    assert!(r >= 1, "connectivity radius must be positive");
    let bbox = set.bounding_box()?;
    let region = bbox.expanded(2);
    let volume = region.volume();
    let mut blocked = vec![false; volume];
    for v in set {
        blocked[region.index(v).unwrap()] = true;
    }
    let mut seen = vec![false; volume];
    let mut queue = VecDeque::new();
    for (idx, flag) in seen.iter_mut().enumerate() {
        if !bbox.contains(&region.vertex_at(idx)) {
            *flag = true;
            queue.push_back(idx);
        }
    }
    let offsets = ball_offsets(set.dim(), r);
    while let Some(idx) = queue.pop_front() {
        let u = region.vertex_at(idx);
        for off in &offsets {
            let v = u.translate(off);
            if let Some(j) = region.index(&v) {
                if !blocked[j] && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    (0..volume)
        .filter(|&i| !blocked[i] && !seen[i])
        .map(|i| region.vertex_at(i))
        .min()
}

pub fn is_co_connected(set: &LatticeSet, r: u32) -> bool {
    complement_cut_off_vertex(set, r).is_none()
}

/// Checks |∂U| >= 2d |U|^{1-1/d} exactly, as |∂U|^d >= (2d)^d |U|^{d-1}.
pub fn isoperimetric_inequality_holds(set: &LatticeSet) -> bool {
    let d = set.dim() as u32;
    let lhs = BigUint::from(edge_boundary_size(set)).pow(d);
    let rhs = BigUint::from(2 * d).pow(d) * BigUint::from(set.len()).pow(d - 1);
    lhs >= rhs
}
