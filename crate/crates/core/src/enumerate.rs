//! Exhaustive enumeration of regular odd r-cutsets with a prescribed edge
//! boundary.
//!
//! A regular odd set is the closure E^+ of its even core E, and E^+ is
//! r-connected exactly when E is connected in the graph joining evens at
//! distance at most r+2. The search therefore walks connected cores rooted at
//! the origin with the include/exclude frontier scheme, which visits every
//! connected vertex set containing the root exactly once.
//!
//! Two monotone prunes keep the tree small. The closure of a core only grows
//! when the core does, so a core is abandoned as soon as
//! * |E^+| exceeds the isoperimetric cap (n/2d)^{d/(d-1)}, or
//! * E^+ meets more than n/2d lines parallel to some axis (each such line
//!   contributes a vertex to the directional boundary in that direction, and
//!   every directional boundary of an odd set has size n/2d).

use std::collections::HashSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ball_offsets, closure, edge_boundary_size, BoxRegion, LatticeSet, Vertex};
use crate::oddsets::classify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginMode {
    /// The set contains the origin.
    Contains,
    /// The set comes within distance r of the origin.
    WithinDistanceR,
}

impl OriginMode {
    /// Short tag used in cache files and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            OriginMode::Contains => "contains",
            OriginMode::WithinDistanceR => "within",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "contains" => Some(OriginMode::Contains),
            "within" => Some(OriginMode::WithinDistanceR),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub d: usize,
    pub n: usize,
    pub r: u32,
    pub origin_mode: OriginMode,
    pub max_core_size: Option<usize>,
    /// Overrides the derived window radius; must not be smaller than it.
    pub window_radius: Option<i32>,
}

impl EnumSpec {
    pub fn new(d: usize, n: usize) -> Self {
        EnumSpec {
            d,
            n,
            r: 1,
            origin_mode: OriginMode::Contains,
            max_core_size: None,
            window_radius: None,
        }
    }

    pub fn with_r(mut self, r: u32) -> Self {
        self.r = r;
        self
    }

    pub fn with_origin_mode(mut self, mode: OriginMode) -> Self {
        self.origin_mode = mode;
        self
    }

    pub fn with_window_radius(mut self, radius: i32) -> Self {
        self.window_radius = Some(radius);
        self
    }

    pub fn with_max_core_size(mut self, cap: usize) -> Self {
        self.max_core_size = Some(cap);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::Dimension(format!(
                "dimension must be at least 2, got {}",
                self.d
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidInput(
                "boundary size n must be positive".into(),
            ));
        }
        if self.r == 0 {
            return Err(Error::InvalidInput(
                "connectivity radius must be positive".into(),
            ));
        }
        if let Some(radius) = self.window_radius {
            let min = self.derived_window_radius();
            if radius < min {
                return Err(Error::InvalidInput(format!(
                    "window radius {radius} is below the containment radius {min}"
                )));
            }
        }
        Ok(())
    }

    /// n/2d when 2d divides n. Every directional boundary of an odd set with
    /// n boundary edges has exactly this size.
    pub fn boundary_per_direction(&self) -> Option<usize> {
        self.n
            .is_multiple_of(2 * self.d)
            .then(|| self.n / (2 * self.d))
    }

    /// Largest |S| allowed by |∂S| >= 2d |S|^{1-1/d}.
    pub fn isoperimetric_cap(&self) -> usize {
        let per_dir = self.n / (2 * self.d);
        largest_root_below(per_dir, self.d)
    }

    /// max(⌈(n/2d)^{d/(d-1)}⌉ + r + 1, (n/2d)·r + 2r + 4).
    ///
    /// The second term bounds the spread of an r-connected set meeting at
    /// most n/2d lines per axis, offset by a root up to r+1 away from the
    /// origin.
    pub fn derived_window_radius(&self) -> i32 {
        let per_dir = (self.n / (2 * self.d)) as i64;
        let r = self.r as i64;
        let cap = smallest_root_above(per_dir as usize, self.d) as i64;
        let iso = cap + r + 1;
        let spread = per_dir * r + 2 * r + 4;
        iso.max(spread).min(i32::MAX as i64) as i32
    }

    pub fn window_radius(&self) -> i32 {
        self.window_radius
            .unwrap_or_else(|| self.derived_window_radius())
    }
}

/// Largest s with s^{d-1} <= D^d.
fn largest_root_below(per_dir: usize, d: usize) -> usize {
    let target = BigUint::from(per_dir).pow(d as u32);
    let fits = |s: usize| BigUint::from(s).pow(d as u32 - 1) <= target;
    let (mut lo, mut hi) = (0usize, 1usize);
    while fits(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest c with c^{d-1} >= D^d, i.e. ⌈D^{d/(d-1)}⌉.
fn smallest_root_above(per_dir: usize, d: usize) -> usize {
    let target = BigUint::from(per_dir).pow(d as u32);
    let below = largest_root_below(per_dir, d);
    if BigUint::from(below).pow(d as u32 - 1) == target {
        below
    } else {
        below + 1
    }
}

/// Counters that do not depend on how the search was split across workers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Connected cores that passed both prunes.
    pub cores_visited: u64,
    /// Cores whose closure had exactly n boundary edges.
    pub candidates: u64,
    pub accepted: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.cores_visited += other.cores_visited;
        self.candidates += other.candidates;
        self.accepted += other.accepted;
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub spec: EnumSpec,
    /// Even cores, sorted lexicographically.
    pub cores: Vec<LatticeSet>,
    pub stats: SearchStats,
    /// Set when n is not a multiple of 2d and no search was run.
    pub skipped_reason: Option<String>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.cores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cores.is_empty()
    }

    /// The cutsets E^+, in the order of their cores.
    pub fn sets(&self) -> impl Iterator<Item = LatticeSet> + '_ {
        self.cores.iter().map(closure)
    }
}

pub fn enumerate_odd_cutsets(spec: &EnumSpec) -> Result<Enumeration> {
    enumerate_with_jobs(spec, 1)
}

/// Same output as [`enumerate_odd_cutsets`] for every `jobs >= 1`.
pub fn enumerate_with_jobs(spec: &EnumSpec, jobs: usize) -> Result<Enumeration> {
    spec.validate()?;
    let Some(per_dir) = spec.boundary_per_direction() else {
        return Ok(Enumeration {
            spec: spec.clone(),
            cores: Vec::new(),
            stats: SearchStats::default(),
            skipped_reason: Some(format!(
                "n mod 2d ≠ 0: |∂S| of an odd set is a multiple of 2d = {}",
                2 * spec.d
            )),
        });
    };
    let window = Window::new(spec);
    let roots = window.roots(spec);
    let limits = Limits {
        per_dir,
        size_cap: spec.isoperimetric_cap(),
        core_cap: spec.max_core_size.unwrap_or(usize::MAX),
    };

    let mut results: Vec<(Vec<usize>, SearchStats)> = if jobs <= 1 {
        let mut search = Search::new(&window, spec, limits);
        let mut out = Vec::new();
        for root in 0..roots.len() {
            search.run_root(&roots, root, &[], None)?;
            out.append(&mut search.found);
        }
        let stats = search.stats;
        vec![(Vec::new(), stats)]
            .into_iter()
            .chain(out.into_iter().map(|c| (c, SearchStats::default())))
            .collect()
    } else {
        let mut prefixes = Vec::new();
        for root in 0..roots.len() {
            let mut search = Search::new(&window, spec, limits);
            let mut collected = Vec::new();
            search.run_root(&roots, root, &[], Some((SPLIT_DEPTH, &mut collected)))?;
            prefixes.extend(collected.into_iter().map(|p| (root, p)));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;
        let parts: Result<Vec<(Vec<Vec<usize>>, SearchStats)>> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|(root, prefix)| {
                    let mut search = Search::new(&window, spec, limits);
                    search.run_root(&roots, *root, prefix, None)?;
                    Ok((std::mem::take(&mut search.found), search.stats))
                })
                .collect()
        });
        let mut out = Vec::new();
        let mut stats = SearchStats::default();
        for (found, s) in parts? {
            stats.absorb(s);
            out.extend(found.into_iter().map(|c| (c, SearchStats::default())));
        }
        out.push((Vec::new(), stats));
        out
    };

    let mut stats = SearchStats::default();
    let mut cores = Vec::new();
    for (core, s) in results.drain(..) {
        stats.absorb(s);
        if !core.is_empty() {
            cores.push(LatticeSet::new(
                spec.d,
                core.iter().map(|&i| window.region.vertex_at(i)),
            )?);
        }
    }
    cores.sort();
    let before = cores.len();
    cores.dedup();
    if cores.len() != before {
        return Err(Error::assertion(
            "enumeration uniqueness",
            "a core was produced twice",
            None,
        ));
    }
    Ok(Enumeration {
        spec: spec.clone(),
        cores,
        stats,
        skipped_reason: None,
    })
}

pub fn count_odd_cutsets_uncached(spec: &EnumSpec, jobs: usize) -> Result<(u64, SearchStats)> {
    let e = enumerate_with_jobs(spec, jobs)?;
    Ok((e.len() as u64, e.stats))
}

/// Number of include/exclude decisions explored before work is handed out.
const SPLIT_DEPTH: usize = 10;

#[derive(Debug, Clone, Copy)]
struct Limits {
    per_dir: usize,
    size_cap: usize,
    core_cap: usize,
}

/// Dense array over a cube large enough that every core-graph step from an
/// admissible core vertex stays in range.
struct Window {
    d: usize,
    radius: i32,
    region: BoxRegion,
    /// Index offsets of the 2d nearest neighbours.
    nbr: Vec<isize>,
    /// Index offsets and vertex offsets of the core graph.
    core_steps: Vec<(isize, Vertex)>,
    /// Whether a core vertex may sit at this cell (its closure fits in the cube of `radius`).
    admissible: Vec<bool>,
    /// Per axis, the id of the axis-parallel line through each cell.
    line_id: Vec<Vec<u32>>,
}

impl Window {
    fn new(spec: &EnumSpec) -> Self {
        let d = spec.d;
        let radius = spec.window_radius();
        let pad = spec.r as i32 + 2;
        let region = BoxRegion::cube(d, radius + pad);
        let side = region.side(0);
        let strides: Vec<usize> = (0..d).map(|a| side.pow(a as u32)).collect();
        let nbr = (0..d)
            .flat_map(|a| [strides[a] as isize, -(strides[a] as isize)])
            .collect();
        let core_steps = ball_offsets(d, spec.r + 2)
            .into_iter()
            .filter(|v| v.is_even())
            .map(|v| {
                let off: isize = v
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(a, &c)| c as isize * strides[a] as isize)
                    .sum();
                (off, v)
            })
            .collect();
        let inner = BoxRegion::cube(d, radius - 1);
        let volume = region.volume();
        let mut admissible = vec![false; volume];
        let mut line_id = vec![vec![0u32; volume]; d];
        for (idx, slot) in admissible.iter_mut().enumerate() {
            let v = region.vertex_at(idx);
            *slot = inner.contains(&v);
            for (a, ids) in line_id.iter_mut().enumerate() {
                let coord = (idx / strides[a]) % side;
                ids[idx] = (idx - coord * strides[a]) as u32;
            }
        }
        Window {
            d,
            radius,
            region,
            nbr,
            core_steps,
            admissible,
            line_id,
        }
    }

    fn index(&self, v: &Vertex) -> usize {
        self.region
            .index(v)
            .expect("vertex inside enumeration window")
    }

    /// Roots in lexicographic order; a core is found from its smallest root.
    fn roots(&self, spec: &EnumSpec) -> Vec<usize> {
        match spec.origin_mode {
            OriginMode::Contains => vec![self.index(&Vertex::origin(self.d))],
            OriginMode::WithinDistanceR => {
                let mut vs: Vec<Vertex> = ball_offsets(self.d, spec.r + 1)
                    .into_iter()
                    .chain(std::iter::once(Vertex::origin(self.d)))
                    .filter(|v| v.is_even())
                    .collect();
                vs.sort();
                vs.iter().map(|v| self.index(v)).collect()
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Free,
    Core,
    Frontier,
    Forbidden,
}

struct Search<'w> {
    w: &'w Window,
    spec: &'w EnumSpec,
    limits: Limits,
    mark: Vec<Mark>,
    cover: Vec<u16>,
    closure_size: usize,
    line_count: Vec<Vec<u16>>,
    distinct: Vec<usize>,
    core: Vec<usize>,
    path: Vec<bool>,
    found: Vec<Vec<usize>>,
    stats: SearchStats,
}

type Collector<'a> = Option<(usize, &'a mut Vec<Vec<bool>>)>;

impl<'w> Search<'w> {
    fn new(w: &'w Window, spec: &'w EnumSpec, limits: Limits) -> Self {
        let volume = w.admissible.len();
        Search {
            w,
            spec,
            limits,
            mark: vec![Mark::Free; volume],
            cover: vec![0; volume],
            closure_size: 0,
            line_count: vec![vec![0; volume]; w.d],
            distinct: vec![0; w.d],
            core: Vec::new(),
            path: Vec::new(),
            found: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn touch(&mut self, cell: usize) {
        self.cover[cell] += 1;
        if self.cover[cell] == 1 {
            self.closure_size += 1;
            for a in 0..self.w.d {
                let line = self.w.line_id[a][cell] as usize;
                self.line_count[a][line] += 1;
                if self.line_count[a][line] == 1 {
                    self.distinct[a] += 1;
                }
            }
        }
    }

    fn untouch(&mut self, cell: usize) {
        self.cover[cell] -= 1;
        if self.cover[cell] == 0 {
            self.closure_size -= 1;
            for a in 0..self.w.d {
                let line = self.w.line_id[a][cell] as usize;
                self.line_count[a][line] -= 1;
                if self.line_count[a][line] == 0 {
                    self.distinct[a] -= 1;
                }
            }
        }
    }

    fn add_core(&mut self, v: usize) {
        self.core.push(v);
        self.touch(v);
        for k in 0..self.w.nbr.len() {
            self.touch((v as isize + self.w.nbr[k]) as usize);
        }
    }

    fn remove_core(&mut self, v: usize) {
        debug_assert_eq!(self.core.last(), Some(&v));
        self.core.pop();
        self.untouch(v);
        for k in 0..self.w.nbr.len() {
            self.untouch((v as isize + self.w.nbr[k]) as usize);
        }
    }

    fn within_limits(&self) -> bool {
        self.core.len() <= self.limits.core_cap
            && self.closure_size <= self.limits.size_cap
            && self.distinct.iter().all(|&c| c <= self.limits.per_dir)
    }

    /// Tries to add `v` to the core. On success, pushes newly discovered
    /// core-graph neighbours onto the frontier and returns how many.
    fn include(&mut self, v: usize, frontier: &mut Vec<usize>) -> Result<Option<usize>> {
        self.add_core(v);
        if !self.within_limits() {
            self.remove_core(v);
            return Ok(None);
        }
        self.mark[v] = Mark::Core;
        let mut pushed = 0;
        for k in 0..self.w.core_steps.len() {
            let u = (v as isize + self.w.core_steps[k].0) as usize;
            if self.mark[u] != Mark::Free {
                continue;
            }
            if !self.w.admissible[u] {
                self.check_overflow(v, k)?;
                continue;
            }
            self.mark[u] = Mark::Frontier;
            frontier.push(u);
            pushed += 1;
        }
        Ok(Some(pushed))
    }

    fn undo_include(&mut self, v: usize, pushed: usize, frontier: &mut Vec<usize>) {
        for _ in 0..pushed {
            let u = frontier.pop().unwrap();
            self.mark[u] = Mark::Free;
        }
        self.mark[v] = Mark::Free;
        self.remove_core(v);
    }

    /// A core-graph neighbour fell outside the admissible region. That is
    /// harmless when adding it would violate a prune anyway; otherwise the
    /// window is too small.
    fn check_overflow(&self, v: usize, step: usize) -> Result<()> {
        let d = self.w.d;
        let vert = self.w.region.vertex_at(v);
        let outside = vert.translate(&self.w.core_steps[step].1);
        let core = LatticeSet::new(
            d,
            self.core
                .iter()
                .map(|&i| self.w.region.vertex_at(i))
                .chain(std::iter::once(outside.clone())),
        )?;
        let s = closure(&core);
        let mut fits = core.len() <= self.limits.core_cap && s.len() <= self.limits.size_cap;
        for axis in 0..d {
            let lines: HashSet<Vec<i32>> = s
                .iter()
                .map(|x| {
                    let mut c = x.coords().to_vec();
                    c[axis] = 0;
                    c
                })
                .collect();
            fits &= lines.len() <= self.limits.per_dir;
        }
        if fits {
            return Err(Error::WindowOverflow {
                radius: self.w.radius,
                detail: format!("core vertex {outside} would leave the window"),
            });
        }
        Ok(())
    }

    fn run_root(
        &mut self,
        roots: &[usize],
        root: usize,
        replay: &[bool],
        mut collect: Collector<'_>,
    ) -> Result<()> {
        for &earlier in &roots[..root] {
            self.mark[earlier] = Mark::Forbidden;
        }
        let mut frontier = Vec::new();
        let start = roots[root];
        if let Some(pushed) = self.include(start, &mut frontier)? {
            self.recurse(&mut frontier, replay, &mut collect)?;
            self.undo_include(start, pushed, &mut frontier);
        }
        for &earlier in &roots[..root] {
            self.mark[earlier] = Mark::Free;
        }
        Ok(())
    }

    fn recurse(
        &mut self,
        frontier: &mut Vec<usize>,
        replay: &[bool],
        collect: &mut Collector<'_>,
    ) -> Result<()> {
        if let Some((depth, out)) = collect {
            if self.path.len() == *depth || frontier.is_empty() {
                out.push(self.path.clone());
                return Ok(());
            }
        }
        let Some(v) = frontier.pop() else {
            return self.leaf();
        };
        let forced = replay.get(self.path.len()).copied();

        if forced != Some(false) {
            if let Some(pushed) = self.include(v, frontier)? {
                self.path.push(true);
                let r = self.recurse(frontier, replay, collect);
                self.path.pop();
                self.undo_include(v, pushed, frontier);
                r?;
            } else if forced == Some(true) {
                unreachable!("replayed decision no longer admissible");
            }
        }
        if forced != Some(true) {
            self.mark[v] = Mark::Forbidden;
            self.path.push(false);
            let r = self.recurse(frontier, replay, collect);
            self.path.pop();
            r?;
        }
        self.mark[v] = Mark::Frontier;
        frontier.push(v);
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        self.stats.cores_visited += 1;
        if self.closure_size != 2 * self.core.len() + self.limits.per_dir {
            return Ok(());
        }
        self.stats.candidates += 1;
        let d = self.w.d;
        let core = LatticeSet::new(d, self.core.iter().map(|&i| self.w.region.vertex_at(i)))?;
        let s = closure(&core);
        if self.spec.origin_mode == OriginMode::WithinDistanceR {
            let origin = Vertex::origin(d);
            if s.iter()
                .all(|v| v.l1_distance(&origin) > self.spec.r as u64)
            {
                return Ok(());
            }
        }
        let report = classify(&s, self.spec.r)?;
        if !(report.is_odd && report.is_r_cutset) {
            return Ok(());
        }
        let boundary = edge_boundary_size(&s);
        if boundary != self.spec.n {
            return Err(Error::assertion(
                "enumeration boundary",
                format!(
                    "accepted set has |∂S| = {boundary}, expected {}",
                    self.spec.n
                ),
                core.members().first().cloned(),
            ));
        }
        self.stats.accepted += 1;
        let mut idx = self.core.clone();
        idx.sort_unstable();
        self.found.push(idx);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectedSubsetReport {
    pub k: usize,
    pub max_degree: usize,
    pub count: u64,
    /// (e(Δ-1))^k.
    pub bound: f64,
}

/// Number of connected (k+1)-vertex subsets of Z^d containing the origin,
/// checked against (e(Δ-1))^k with Δ = 2d.
pub fn connected_subset_count(d: usize, k: usize) -> Result<ConnectedSubsetReport> {
    if d < 2 {
        return Err(Error::Dimension(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    let count = count_rooted_connected_subsets(&Vertex::origin(d), k + 1, |v| v.neighbors());
    let max_degree = 2 * d;
    let bound = (std::f64::consts::E * (max_degree as f64 - 1.0)).powi(k as i32);
    if count as f64 > bound {
        return Err(Error::assertion(
            "connected subset bound",
            format!(
                "{count} connected sets of size {} exceed (e(Δ-1))^k = {bound}",
                k + 1
            ),
            None,
        ));
    }
    Ok(ConnectedSubsetReport {
        k,
        max_degree,
        count,
        bound,
    })
}

/// Counts connected vertex sets of exactly `size` vertices containing `root`
/// in the graph given by `neighbors`.
pub fn count_rooted_connected_subsets<F>(root: &Vertex, size: usize, neighbors: F) -> u64
where
    F: Fn(&Vertex) -> Vec<Vertex>,
{
    struct Walk<'a, F> {
        neighbors: &'a F,
        size: usize,
        chosen: HashSet<Vertex>,
        seen: HashSet<Vertex>,
        count: u64,
    }

    impl<F: Fn(&Vertex) -> Vec<Vertex>> Walk<'_, F> {
        fn rec(&mut self, frontier: &mut Vec<Vertex>) {
            if self.chosen.len() == self.size {
                self.count += 1;
                return;
            }
            let Some(v) = frontier.pop() else {
                return;
            };
            // include v
            self.chosen.insert(v.clone());
            let mut pushed = Vec::new();
            for u in (self.neighbors)(&v) {
                if self.seen.insert(u.clone()) {
                    pushed.push(u.clone());
                    frontier.push(u);
                }
            }
            self.rec(frontier);
            for u in pushed.iter().rev() {
                frontier.pop();
                self.seen.remove(u);
            }
            self.chosen.remove(&v);
            // exclude v: it stays in `seen`, so it is never offered again
            self.rec(frontier);
            frontier.push(v);
        }
    }

    if size == 0 {
        return 0;
    }
    let mut walk = Walk {
        neighbors: &neighbors,
        size,
        chosen: HashSet::from([root.clone()]),
        seen: HashSet::from([root.clone()]),
        count: 0,
    };
    let mut frontier = Vec::new();
    for u in neighbors(root) {
        if walk.seen.insert(u.clone()) {
            frontier.push(u);
        }
    }
    walk.rec(&mut frontier);
    walk.count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(d: usize, n: usize) -> usize {
        enumerate_odd_cutsets(&EnumSpec::new(d, n)).unwrap().len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(2, 12), 1);
        assert_eq!(count(2, 8), 0);
        assert_eq!(count(2, 4), 0);
    }

    #[test]
    fn non_multiple_is_skipped() {
        let e = enumerate_odd_cutsets(&EnumSpec::new(2, 13)).unwrap();
        assert!(e.is_empty());
        assert!(e.skipped_reason.unwrap().contains("n mod 2d"));
        assert_eq!(e.stats, SearchStats::default());
    }

    #[test]
    fn n16_cores_are_diagonal_pairs() {
        let e = enumerate_odd_cutsets(&EnumSpec::new(2, 16)).unwrap();
        let expected: Vec<LatticeSet> = [[-1, -1], [-1, 1], [1, -1], [1, 1]]
            .iter()
            .map(|dlt| LatticeSet::from_coords(2, &[&[0, 0], dlt]).unwrap())
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(e.cores, expected);
    }

    #[test]
    fn window_radius_formula() {
        let spec = EnumSpec::new(2, 16);
        // D = 4: ⌈16⌉ + 2 = 18 versus 4 + 6 = 10.
        assert_eq!(spec.derived_window_radius(), 18);
        assert_eq!(spec.isoperimetric_cap(), 16);
        let spec = EnumSpec::new(3, 30);
        // D = 5: ⌈5^{1.5}⌉ = 12.
        assert_eq!(spec.isoperimetric_cap(), 11);
        assert_eq!(spec.derived_window_radius(), 14);
    }

    #[test]
    fn small_window_is_rejected() {
        let spec = EnumSpec::new(2, 16).with_window_radius(3);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn connected_subset_counts_in_the_plane() {
        let counts: Vec<u64> = (0..4)
            .map(|k| connected_subset_count(2, k).unwrap().count)
            .collect();
        assert_eq!(counts, vec![1, 4, 18, 76]);
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = EnumSpec::new(2, 20);
        let a = enumerate_with_jobs(&spec, 1).unwrap();
        let b = enumerate_with_jobs(&spec, 3).unwrap();
        assert_eq!(a.cores, b.cores);
        assert_eq!(a.stats, b.stats);
    }
}
