//! Random odd cutsets containing the origin: exact uniform draws from the
//! enumerated family, a Metropolis chain on even cores for larger n, and SVG
//! rendering in two dimensions.
//!
//! The chain state is an even core E containing the origin, connected in the
//! graph joining evens at distance 2, whose closure E^+ is a regular odd
//! cutset. A proposal picks a uniform vertex of K(E) = E ∪ {evens at distance
//! 2 from E} and toggles it; the Hastings factor |K(E)|/|K(E')| makes the
//! stationary law proportional to λ^{|∂E^+|} on the states the chain reaches
//! with |∂E^+| at most a cap (n by default), so draws post-selected on
//! |∂E^+| = n are uniform over the reachable cutsets of that size.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_odd_cutsets, EnumSpec};
use crate::error::{Error, Result};
use crate::lattice::{internal_boundary, is_co_connected, BoxRegion, LatticeSet, Vertex};

/// Largest n sampled exactly in dimension d, if any.
pub fn exact_envelope(d: usize) -> Option<usize> {
    match d {
        2 => Some(28),
        3 => Some(36),
        _ => None,
    }
}

/// `count` independent uniform draws from the enumerated cutsets with n
/// boundary edges.
pub fn sample_exact(d: usize, n: usize, count: usize, seed: u64) -> Result<Vec<LatticeSet>> {
    match exact_envelope(d) {
        Some(max) if n <= max => {}
        _ => {
            return Err(Error::Envelope {
                d,
                n,
                hint: "use sample_mcmc beyond the enumeration envelope".into(),
            })
        }
    }
    let family: Vec<LatticeSet> = enumerate_odd_cutsets(&EnumSpec::new(d, n))?
        .sets()
        .collect();
    if family.is_empty() {
        return Err(Error::EmptySet(format!(
            "no odd cutsets with n = {n} in d = {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| family[rng.random_range(0..family.len())].clone())
        .collect())
}

/// Offsets of the even vertices at distance 2: ±2e_i and ±e_i ± e_j.
fn even_offsets(d: usize) -> Vec<Vertex> {
    let mut out = Vec::new();
    for i in 0..d {
        for s in [-2, 2] {
            out.push(Vertex::origin(d).shifted(i, s));
        }
        for j in i + 1..d {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    out.push(Vertex::origin(d).shifted(i, si).shifted(j, sj));
                }
            }
        }
    }
    out
}

/// A set with O(1) uniform choice, insertion and removal.
#[derive(Debug, Clone, Default)]
struct IndexedSet {
    items: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
}

impl IndexedSet {
    fn insert(&mut self, v: Vertex) {
        if !self.index.contains_key(&v) {
            self.index.insert(v.clone(), self.items.len());
            self.items.push(v);
        }
    }

    fn remove(&mut self, v: &Vertex) {
        if let Some(i) = self.index.remove(v) {
            let last = self.items.pop().expect("non-empty");
            if i < self.items.len() {
                self.index.insert(last.clone(), i);
                self.items[i] = last;
            }
        }
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

/// Snapshot of a chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainState {
    pub core: LatticeSet,
    pub cached_boundary: usize,
    pub rng_seed: u64,
}

impl ChainState {
    pub fn set(&self) -> LatticeSet {
        crate::lattice::closure(&self.core)
    }
}

struct Chain {
    d: usize,
    offsets: Vec<Vertex>,
    core: HashSet<Vertex>,
    /// Multiplicity of each vertex of S = E^+ (number of core vertices in its closed neighbourhood).
    cover: HashMap<Vertex, u32>,
    /// Number of core vertices at even distance 2, for evens near the core.
    core_nbrs: HashMap<Vertex, u32>,
    candidates: IndexedSet,
    set_size: usize,
    rng: ChaCha8Rng,
    seed: u64,
    /// Moves leading above this boundary size are rejected.
    cap: usize,
}

impl Chain {
    fn new(d: usize, seed: u64, stream: u64, cap: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut chain = Chain {
            d,
            offsets: even_offsets(d),
            core: HashSet::new(),
            cover: HashMap::new(),
            core_nbrs: HashMap::new(),
            candidates: IndexedSet::default(),
            set_size: 0,
            rng,
            seed,
            cap,
        };
        chain.apply_add(&Vertex::origin(d));
        chain
    }

    fn boundary(&self) -> usize {
        2 * self.d * (self.set_size - 2 * self.core.len())
    }

    fn in_set(&self, v: &Vertex) -> bool {
        self.cover.get(v).is_some_and(|&c| c > 0)
    }

    fn closed_nbhd(v: &Vertex) -> impl Iterator<Item = Vertex> {
        std::iter::once(v.clone()).chain(v.neighbors())
    }

    fn apply_add(&mut self, v: &Vertex) {
        self.core.insert(v.clone());
        for u in Self::closed_nbhd(v) {
            let c = self.cover.entry(u).or_insert(0);
            if *c == 0 {
                self.set_size += 1;
            }
            *c += 1;
        }
        self.candidates.insert(v.clone());
        for off in &self.offsets {
            let w = v.translate(off);
            *self.core_nbrs.entry(w.clone()).or_insert(0) += 1;
            self.candidates.insert(w);
        }
    }

    fn apply_remove(&mut self, v: &Vertex) {
        self.core.remove(v);
        for u in Self::closed_nbhd(v) {
            let c = self.cover.get_mut(&u).expect("covered");
            *c -= 1;
            if *c == 0 {
                self.cover.remove(&u);
                self.set_size -= 1;
            }
        }
        for off in &self.offsets {
            let w = v.translate(off);
            let c = self.core_nbrs.get_mut(&w).expect("counted");
            *c -= 1;
            if *c == 0 {
                self.core_nbrs.remove(&w);
                if !self.core.contains(&w) {
                    self.candidates.remove(&w);
                }
            }
        }
        if !self.core_nbrs.contains_key(v) {
            self.candidates.remove(v);
        }
    }

    /// Candidate-set size after adding v.
    fn candidates_after_add(&self, v: &Vertex) -> usize {
        let fresh = self
            .offsets
            .iter()
            .map(|o| v.translate(o))
            .filter(|w| !self.candidates.index.contains_key(w))
            .count();
        self.candidates.len() + fresh
    }

    fn candidates_after_remove(&self, v: &Vertex) -> usize {
        let lost = self
            .offsets
            .iter()
            .map(|o| v.translate(o))
            .filter(|w| self.core_nbrs.get(w) == Some(&1) && !self.core.contains(w))
            .count();
        let v_lost = usize::from(!self.core_nbrs.contains_key(v));
        self.candidates.len() - lost - v_lost
    }

    fn set_snapshot(&self) -> LatticeSet {
        LatticeSet::new(self.d, self.cover.keys().cloned()).expect("dimension")
    }

    /// New vertices of S when v joins the core.
    fn added_by(&self, v: &Vertex) -> Vec<Vertex> {
        Self::closed_nbhd(v).filter(|u| !self.in_set(u)).collect()
    }

    fn addition_is_valid(&self, v: &Vertex) -> bool {
        let added = self.added_by(v);
        let in_new = |u: &Vertex| self.in_set(u) || added.contains(u);
        // Evens near v outside the new set must keep a neighbour outside it.
        for off in &self.offsets {
            let w = v.translate(off);
            if !in_new(&w) && w.neighbors().iter().all(&in_new) {
                return false;
            }
        }
        // The complement stays connected if the complement vertices next to
        // the new ones are joined inside a small box around v.
        let local = BoxRegion::new(
            v.coords().iter().map(|c| c - 3).collect(),
            v.coords().iter().map(|c| c + 3).collect(),
        )
        .expect("valid box");
        let mut touching: Vec<Vertex> = added
            .iter()
            .flat_map(|u| u.neighbors())
            .filter(|x| !in_new(x))
            .collect();
        touching.sort();
        touching.dedup();
        if touching.is_empty() {
            return false;
        }
        let mut seen = HashSet::from([touching[0].clone()]);
        let mut queue = VecDeque::from([touching[0].clone()]);
        while let Some(x) = queue.pop_front() {
            for y in x.neighbors() {
                if local.contains(&y) && !in_new(&y) && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        if touching.iter().all(|x| seen.contains(x)) {
            return true;
        }
        let mut set = self.set_snapshot();
        for u in added {
            set.insert(u);
        }
        is_co_connected(&set, 1)
    }

    fn removal_is_valid(&self, v: &Vertex) -> bool {
        if *v == Vertex::origin(self.d) {
            return false;
        }
        // v must not become a hole: some odd neighbour has to leave S with it.
        if v.neighbors().iter().all(|x| self.cover[x] > 1) {
            return false;
        }
        let rest: Vec<Vertex> = self
            .offsets
            .iter()
            .map(|o| v.translate(o))
            .filter(|w| self.core.contains(w))
            .collect();
        if rest.is_empty() {
            return false;
        }
        let connected = |limit: Option<i32>| {
            let mut seen = HashSet::from([rest[0].clone()]);
            let mut queue = VecDeque::from([rest[0].clone()]);
            while let Some(x) = queue.pop_front() {
                for off in &self.offsets {
                    let y = x.translate(off);
                    let near = limit.is_none_or(|l| {
                        y.coords()
                            .iter()
                            .zip(v.coords())
                            .all(|(a, b)| (a - b).abs() <= l)
                    });
                    if near && y != *v && self.core.contains(&y) && seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            rest.iter().all(|x| seen.contains(x))
        };
        connected(Some(4)) || connected(None)
    }

    /// One Metropolis–Hastings step; returns whether the move was accepted.
    fn step(&mut self, lambda: f64) -> bool {
        let i = self.rng.random_range(0..self.candidates.len());
        let v = self.candidates.items[i].clone();
        let u: f64 = self.rng.random();
        let (k_after, delta) = if self.core.contains(&v) {
            let removed = Self::closed_nbhd(&v).filter(|x| self.cover[x] == 1).count() as i64;
            (
                self.candidates_after_remove(&v),
                -2 * self.d as i64 * (removed - 2),
            )
        } else {
            let added = self.added_by(&v).len() as i64;
            (
                self.candidates_after_add(&v),
                2 * self.d as i64 * (added - 2),
            )
        };
        if self.boundary() as i64 + delta > self.cap as i64 {
            return false;
        }
        let ratio = lambda.powi(delta as i32) * self.candidates.len() as f64 / k_after as f64;
        if u >= ratio {
            return false;
        }
        if self.core.contains(&v) {
            if !self.removal_is_valid(&v) {
                return false;
            }
            self.apply_remove(&v);
        } else {
            if !self.addition_is_valid(&v) {
                return false;
            }
            self.apply_add(&v);
        }
        true
    }

    fn state(&self) -> ChainState {
        ChainState {
            core: LatticeSet::new(self.d, self.core.iter().cloned()).expect("dimension"),
            cached_boundary: self.boundary(),
            rng_seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McmcConfig {
    pub d: usize,
    pub n: usize,
    /// Steps per chain after tuning.
    pub steps: u64,
    /// Fixed fugacity; tuned when absent.
    pub lambda: Option<f64>,
    pub seed: u64,
    /// Post-selected draws to collect in total.
    pub draws: usize,
    /// Steps between recorded draws.
    pub thin: u64,
    pub chains: usize,
    /// Steps used to tune λ (and discarded) per chain.
    pub tune_steps: u64,
    /// Largest boundary size the chain may visit; n + 2d when absent.
    pub max_boundary: Option<usize>,
}

impl McmcConfig {
    pub fn new(d: usize, n: usize, seed: u64) -> Self {
        McmcConfig {
            d,
            n,
            steps: 1_000_000,
            lambda: None,
            seed,
            draws: 1,
            thin: 200,
            chains: 1,
            tune_steps: (400 * n as u64).max(20_000),
            max_boundary: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainDiagnostics {
    pub seed: u64,
    pub stream: u64,
    pub steps: u64,
    pub accept_rate: f64,
    /// Recorded steps whose boundary equalled n.
    pub hits: u64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McmcRun {
    pub samples: Vec<LatticeSet>,
    pub diagnostics: Vec<ChainDiagnostics>,
}

impl McmcConfig {
    pub fn boundary_cap(&self) -> usize {
        self.max_boundary.unwrap_or(self.n + 2 * self.d)
    }
}

/// Robbins–Monro on log λ. With room above n the target is equal time above
/// and below n; with the cap at n it is half the time at n. Returns the
/// average iterate over the second half of the batches.
fn tune_lambda(chain: &mut Chain, n: usize, steps: u64) -> f64 {
    let mut log_lambda = 0.0_f64;
    let batch = 200u64;
    let batches = (steps / batch).max(1);
    let (mut sum, mut averaged) = (0.0, 0u64);
    for j in 0..batches {
        let mut excess = 0i64;
        for _ in 0..batch {
            chain.step(log_lambda.exp());
            let b = chain.boundary();
            excess += match b.cmp(&n) {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => i64::from(chain.cap == n),
            };
        }
        let gain = 0.5 / (1.0 + j as f64).sqrt();
        log_lambda -= gain * excess as f64 / batch as f64;
        log_lambda = log_lambda.clamp(-5.0, 5.0);
        if 2 * j >= batches {
            sum += log_lambda;
            averaged += 1;
        }
    }
    (sum / averaged as f64).exp()
}

fn check_config(cfg: &McmcConfig) -> Result<()> {
    if cfg.d < 2 {
        return Err(Error::Dimension(format!(
            "d must be at least 2, got {}",
            cfg.d
        )));
    }
    if !cfg.n.is_multiple_of(2 * cfg.d) || cfg.n < 2 * cfg.d * (2 * cfg.d - 1) {
        return Err(Error::InvalidInput(format!(
            "n = {} must be a multiple of 2d that is at least 2d(2d-1)",
            cfg.n
        )));
    }
    if cfg.max_boundary.is_some_and(|m| m < cfg.n) {
        return Err(Error::InvalidInput(
            "max_boundary must be at least n".into(),
        ));
    }
    if cfg.chains == 0 || cfg.thin == 0 {
        return Err(Error::InvalidInput(
            "chains and thin must be positive".into(),
        ));
    }
    Ok(())
}

fn run_chain(
    cfg: &McmcConfig,
    stream: u64,
    draws: usize,
) -> Result<(Vec<LatticeSet>, ChainDiagnostics)> {
    let mut chain = Chain::new(cfg.d, cfg.seed, stream, cfg.boundary_cap());
    let lambda = match cfg.lambda {
        Some(l) => l,
        None => tune_lambda(&mut chain, cfg.n, cfg.tune_steps),
    };
    let mut samples = Vec::with_capacity(draws);
    let (mut steps, mut accepted, mut hits) = (0u64, 0u64, 0u64);
    let cap = cfg.steps.max(1);
    while samples.len() < draws && steps < cap {
        accepted += u64::from(chain.step(lambda));
        steps += 1;
        if steps % cfg.thin == 0 && chain.boundary() == cfg.n {
            hits += 1;
            samples.push(chain.state().set());
        }
    }
    let diag = ChainDiagnostics {
        seed: cfg.seed,
        stream,
        steps,
        accept_rate: accepted as f64 / steps.max(1) as f64,
        hits,
        lambda,
    };
    if samples.len() < draws {
        return Err(Error::InvalidInput(format!(
            "post-selection cap exhausted: {} of {draws} draws at n = {} after {steps} steps \
             (accept rate {:.3}, λ = {lambda:.4})",
            samples.len(),
            cfg.n,
            diag.accept_rate
        )));
    }
    Ok((samples, diag))
}

/// Runs `chains` independent chains (stream i of the seeded generator for
/// chain i), each recording its state every `thin` steps when |∂S| = n,
/// until `draws` samples are collected in total. Output is independent of
/// the thread pool size.
pub fn sample_mcmc_many(cfg: &McmcConfig) -> Result<McmcRun> {
    check_config(cfg)?;
    let per = cfg.draws.div_ceil(cfg.chains);
    let results: Vec<_> = (0..cfg.chains as u64)
        .into_par_iter()
        .map(|i| {
            let want = per.min(cfg.draws.saturating_sub(i as usize * per));
            run_chain(cfg, i, want)
        })
        .collect();
    let mut run = McmcRun {
        samples: Vec::new(),
        diagnostics: Vec::new(),
    };
    for r in results {
        let (s, diag) = r?;
        run.samples.extend(s);
        run.diagnostics.push(diag);
    }
    for s in &run.samples {
        debug_assert_eq!(crate::lattice::edge_boundary_size(s), cfg.n);
    }
    Ok(run)
}

/// Runs one chain for `steps` steps, then continues until |∂S| = n (up to
/// `steps` more), returning the state reached.
pub fn sample_mcmc(cfg: &McmcConfig) -> Result<(LatticeSet, ChainDiagnostics)> {
    check_config(cfg)?;
    let (d, n, steps, seed) = (cfg.d, cfg.n, cfg.steps, cfg.seed);
    let mut chain = Chain::new(d, seed, 0, cfg.boundary_cap());
    let lambda = match cfg.lambda {
        Some(l) => l,
        None => tune_lambda(&mut chain, n, cfg.tune_steps),
    };
    let mut accepted = 0u64;
    let mut total = 0u64;
    let mut hits = 0u64;
    for _ in 0..steps {
        accepted += u64::from(chain.step(lambda));
        total += 1;
        hits += u64::from(chain.boundary() == n);
    }
    let mut extra = 0u64;
    while chain.boundary() != n {
        if extra >= steps.max(1) {
            return Err(Error::InvalidInput(format!(
                "post-selection cap exhausted: no state with n = {n} after {} steps (λ = {lambda:.4})",
                total
            )));
        }
        accepted += u64::from(chain.step(lambda));
        total += 1;
        extra += 1;
    }
    let diag = ChainDiagnostics {
        seed,
        stream: 0,
        steps: total,
        accept_rate: accepted as f64 / total.max(1) as f64,
        hits: hits + 1,
        lambda,
    };
    Ok((chain.state().set(), diag))
}

/// Diagnostics as CSV with header `seed,steps,accept_rate,hits`.
pub fn diagnostics_csv(diags: &[ChainDiagnostics]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["seed", "steps", "accept_rate", "hits"])?;
    for d in diags {
        w.write_record([
            d.seed.to_string(),
            d.steps.to_string(),
            format!("{:.6}", d.accept_rate),
            d.hits.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson χ² of observed category counts against the uniform law.
pub fn chi_square_uniform(observed: &[u64]) -> Result<ChiSquare> {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    if observed.len() < 2 {
        return Err(Error::InvalidInput("need at least two categories".into()));
    }
    let total: u64 = observed.iter().sum();
    let expected = total as f64 / observed.len() as f64;
    let statistic = observed
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let dof = observed.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: 1.0 - dist.cdf(statistic),
    })
}

const CELL: i32 = 10;

/// SVG 1.1 picture of a planar set: a unit square per member, with the
/// internal vertex boundary in a darker fill.
pub fn render_svg(set: &LatticeSet) -> Result<String> {
    if set.dim() != 2 {
        return Err(Error::Dimension("rendering supports d = 2 only".into()));
    }
    let Some(bbox) = set.bounding_box() else {
        return Err(Error::EmptySet("nothing to render".into()));
    };
    let boundary = internal_boundary(set);
    let (w, h) = (bbox.side(0) as i32 + 2, bbox.side(1) as i32 + 2);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        w * CELL,
        h * CELL,
        w * CELL,
        h * CELL
    );
    let _ = writeln!(
        out,
        "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>"
    );
    for v in set.iter() {
        let x = (v.coord(0) - bbox.lo[0] + 1) * CELL;
        // SVG y grows downwards.
        let y = (bbox.hi[1] - v.coord(1) + 1) * CELL;
        let fill = if boundary.contains(v) {
            "#b2182b"
        } else {
            "#f4a582"
        };
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\"/>"
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{closure, edge_boundary_size};
    use crate::oddsets::classify;

    #[test]
    fn exact_n12_is_plus() {
        let plus = closure(&LatticeSet::singleton(Vertex::origin(2)));
        for s in sample_exact(2, 12, 10, 3).unwrap() {
            assert_eq!(s, plus);
        }
        assert_eq!(
            sample_exact(2, 16, 20, 9).unwrap(),
            sample_exact(2, 16, 20, 9).unwrap()
        );
        assert!(matches!(
            sample_exact(2, 600, 1, 0),
            Err(Error::Envelope { .. })
        ));
    }

    #[test]
    fn candidate_counts_track_the_core() {
        let mut chain = Chain::new(2, 5, 0, 40);
        for _ in 0..1500 {
            chain.step(0.8);
            let core = chain.state().core;
            let mut k: HashSet<Vertex> = core.iter().cloned().collect();
            for v in core.iter() {
                for o in &chain.offsets {
                    k.insert(v.translate(o));
                }
            }
            assert_eq!(k.len(), chain.candidates.len());
            let s = chain.state();
            let set = s.set();
            assert_eq!(edge_boundary_size(&set), s.cached_boundary);
            assert!(classify(&set, 1).unwrap().is_regular_odd_r_cutset());
        }
    }

    #[test]
    fn mcmc_is_seeded() {
        let cfg = McmcConfig {
            steps: 2000,
            ..McmcConfig::new(2, 16, 11)
        };
        let a = sample_mcmc(&cfg).unwrap();
        let b = sample_mcmc(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(edge_boundary_size(&a.0), 16);
    }

    #[test]
    fn chi_square_of_perfect_counts() {
        let c = chi_square_uniform(&[10, 10, 10, 10]).unwrap();
        assert_eq!(c.statistic, 0.0);
        assert!((c.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn svg_of_plus() {
        let plus = closure(&LatticeSet::singleton(Vertex::origin(2)));
        let svg = render_svg(&plus).unwrap();
        assert_eq!(svg.matches("<rect x=").count(), 5);
        assert_eq!(svg.matches("#b2182b").count(), 4);
        assert_eq!(svg, render_svg(&plus).unwrap());
        assert!(render_svg(&LatticeSet::empty(2)).is_err());
        assert!(render_svg(&closure(&LatticeSet::singleton(Vertex::origin(3)))).is_err());
    }
}
