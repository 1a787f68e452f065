//! Explicit odd cutsets: the slab family behind the lower bound, and the
//! peak transforms (create, extend, merge) behind almost
//! super-multiplicativity of the counts.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{closure, edge_boundary_size, LatticeSet, Vertex};
use crate::oddsets::{classify, from_even_core};

/// Families larger than this are only counted, never materialized.
pub const DEFAULT_MATERIALIZATION_CAP: u64 = 1_000_000;

/// Largest |A1| for which the exact family count is computed by summing
/// over every subset of A1.
pub const MAX_EXACT_A1: usize = 26;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Dimension(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    Ok(())
}

/// Requires `set` to be a regular odd 1-cutset with `|∂set| = expected`.
fn validate_cutset(check: &str, set: &LatticeSet, expected: usize) -> Result<()> {
    let report = classify(set, 1)?;
    if !(report.is_odd && report.is_r_cutset) {
        return Err(Error::assertion(
            check,
            "result is not a regular odd cutset",
            report.first_witness().cloned(),
        ));
    }
    let n = edge_boundary_size(set);
    if n != expected {
        return Err(Error::assertion(
            check,
            format!("result has |∂| = {n}, expected {expected}"),
            None,
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabFamilySpec {
    pub d: usize,
    pub m: usize,
}

impl SlabFamilySpec {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        check_dim(d)?;
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "slab side m must be even and at least 4, got {m}"
            )));
        }
        Ok(SlabFamilySpec { d, m })
    }

    /// 2d(m^{d-1} + (d-1)m^{d-2}).
    pub fn boundary_size(&self) -> usize {
        let (d, m) = (self.d as u32, self.m);
        2 * self.d * (m.pow(d - 1) + (self.d - 1) * m.pow(d - 2))
    }

    /// Even vertices of [lo, hi)^{d-1} × {height}, lexicographically sorted.
    fn layer(&self, lo: i32, hi: i32, height: i32) -> Vec<Vertex> {
        let d = self.d;
        let mut out = Vec::new();
        let mut coords = vec![lo; d - 1];
        if lo >= hi {
            return out;
        }
        loop {
            let mut full = coords.clone();
            full.push(height);
            let v = Vertex::new(&full);
            if v.is_even() {
                out.push(v);
            }
            let mut axis = d - 1;
            loop {
                if axis == 0 {
                    out.sort();
                    return out;
                }
                axis -= 1;
                coords[axis] += 1;
                if coords[axis] < hi {
                    break;
                }
                coords[axis] = lo;
            }
        }
    }

    /// B0 = Even ∩ [0,m)^{d-1} × {0}.
    pub fn base_core(&self) -> LatticeSet {
        LatticeSet::new(self.d, self.layer(0, self.m as i32, 0)).expect("valid layer")
    }

    /// A1 = Even ∩ [1,m-1)^{d-1} × {±1}.
    pub fn first_layer(&self) -> Vec<Vertex> {
        let hi = self.m as i32 - 1;
        let mut v = self.layer(1, hi, -1);
        v.extend(self.layer(1, hi, 1));
        v.sort();
        v
    }

    /// A2(B1): vertices x of Even ∩ [2,m-2)^{d-1} × {±2} such that
    /// (x', x_d/2) ± e_i ∈ B1 for every i < d.
    pub fn second_layer(&self, b1: &LatticeSet) -> Vec<Vertex> {
        let hi = self.m as i32 - 2;
        let mut cands = self.layer(2, hi, -2);
        cands.extend(self.layer(2, hi, 2));
        let d = self.d;
        let mut out: Vec<Vertex> = cands
            .into_iter()
            .filter(|x| {
                let half = x.shifted(d - 1, -x.coord(d - 1) / 2);
                (0..d - 1)
                    .all(|i| b1.contains(&half.shifted(i, 1)) && b1.contains(&half.shifted(i, -1)))
            })
            .collect();
        out.sort();
        out
    }
}

/// B0^+.
pub fn base_slab(spec: &SlabFamilySpec) -> Result<LatticeSet> {
    let s = closure(&spec.base_core());
    validate_cutset("base slab", &s, spec.boundary_size())?;
    Ok(s)
}

fn subset(items: &[Vertex], mask: u64) -> impl Iterator<Item = Vertex> + '_ {
    items
        .iter()
        .enumerate()
        .filter(move |(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.clone())
}

fn check_exact_size(spec: &SlabFamilySpec, a1: usize) -> Result<()> {
    if a1 > MAX_EXACT_A1 {
        return Err(Error::InvalidInput(format!(
            "|A1| = {a1} for (d={}, m={}) is too large for an exact sum over its subsets",
            spec.d, spec.m
        )));
    }
    Ok(())
}

/// Σ_{B1 ⊆ A1} 2^{|A2(B1)|}, by direct summation.
pub fn slab_family_count(spec: &SlabFamilySpec) -> Result<BigUint> {
    let a1 = spec.first_layer();
    check_exact_size(spec, a1.len())?;
    let mut total = BigUint::zero();
    for mask in 0..(1u64 << a1.len()) {
        let b1 = LatticeSet::new(spec.d, subset(&a1, mask))?;
        total += BigUint::one() << spec.second_layer(&b1).len();
    }
    Ok(total)
}

/// |A1| + E[|A2(X)|] for a uniform random X ⊆ A1, i.e.
/// (m-2)^{d-1} + (m-4)^{d-1} 2^{-(2d-2)}; the family has at least
/// 2 to this power members.
pub fn slab_family_lower_exponent(spec: &SlabFamilySpec) -> BigRational {
    let d = spec.d as u32;
    let a1 = BigUint::from(spec.m - 2).pow(d - 1);
    let mean = BigRational::new(
        BigUint::from(spec.m - 4).pow(d - 1).into(),
        (BigUint::one() << (2 * d - 2)).into(),
    );
    BigRational::from_integer(a1.into()) + mean
}

/// Every (B0 ∪ B1 ∪ B2)^+ with B1 ⊆ A1 and B2 ⊆ A2(B1), each validated.
pub fn slab_family(spec: &SlabFamilySpec, cap: u64) -> Result<Vec<LatticeSet>> {
    let size = slab_family_count(spec)?;
    if size > BigUint::from(cap) {
        return Err(Error::InvalidInput(format!(
            "slab family has {size} members, above the materialization cap {cap}; count only"
        )));
    }
    let n = spec.boundary_size();
    let b0 = spec.base_core();
    let a1 = spec.first_layer();
    let mut out = Vec::new();
    for mask in 0..(1u64 << a1.len()) {
        let b1 = LatticeSet::new(spec.d, subset(&a1, mask))?;
        let a2 = spec.second_layer(&b1);
        let base = b0.union(&b1);
        for mask2 in 0..(1u64 << a2.len()) {
            let core = base.union(&LatticeSet::new(spec.d, subset(&a2, mask2))?);
            let s = closure(&core);
            validate_cutset("slab family member", &s, n)?;
            out.push(s);
        }
    }
    Ok(out)
}

/// An odd cutset together with its peak: the unique even member of maximal
/// height x1 + x2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeakedSet {
    pub set: LatticeSet,
    pub peak: Vertex,
}

pub fn find_peak(set: &LatticeSet) -> Result<Option<PeakedSet>> {
    let report = classify(set, 1)?;
    if !report.is_odd {
        return Err(Error::assertion(
            "find_peak",
            "input must be an odd set",
            report.defect_witness.odd,
        ));
    }
    let mut best: Option<(&Vertex, bool)> = None;
    for v in set.iter().filter(|v| v.is_even()) {
        best = match best {
            None => Some((v, true)),
            Some((b, unique)) => match v.height().cmp(&b.height()) {
                std::cmp::Ordering::Greater => Some((v, true)),
                std::cmp::Ordering::Equal => Some((b, false)),
                std::cmp::Ordering::Less => Some((b, unique)),
            },
        };
    }
    Ok(match best {
        Some((peak, true)) => Some(PeakedSet {
            set: set.clone(),
            peak: peak.clone(),
        }),
        _ => None,
    })
}

/// S ∪ w^+ where w = u + e1 + e2, u is the core neighbour of the
/// lexicographically largest vertex v of maximal height (u = v - e1 when
/// possible, else v - e2). Adds 2d(2d-3) boundary edges and makes w the peak.
pub fn create_peak(set: &LatticeSet) -> Result<PeakedSet> {
    let report = classify(set, 1)?;
    if !(report.is_odd && report.is_r_cutset) {
        return Err(Error::assertion(
            "create_peak",
            "input must be a regular odd cutset",
            report.first_witness().cloned(),
        ));
    }
    if set.len() <= 1 {
        return Err(Error::InvalidInput(
            "create_peak needs more than one vertex".into(),
        ));
    }
    let d = set.dim();
    let top = set.iter().map(Vertex::height).max().expect("non-empty");
    let v = set
        .iter()
        .filter(|x| x.height() == top)
        .max()
        .expect("non-empty")
        .clone();
    let u = [v.shifted(0, -1), v.shifted(1, -1)]
        .into_iter()
        .find(|u| u.is_even() && set.contains(u))
        .ok_or_else(|| {
            Error::assertion(
                "create_peak",
                "no even vertex of S below the top vertex",
                Some(v.clone()),
            )
        })?;
    let w = u.shifted(0, 1).shifted(1, 1);
    let out = set.union(&closure(&LatticeSet::singleton(w.clone())));
    let n = edge_boundary_size(set) + 2 * d * (2 * d - 3);
    validate_cutset("create_peak", &out, n)?;
    let peaked = find_peak(&out)?;
    match peaked {
        Some(p) if p.peak == w => Ok(p),
        _ => Err(Error::assertion(
            "create_peak",
            "w is not the peak of the result",
            Some(w),
        )),
    }
}

/// Translates a peaked set so that its peak sits at the origin.
pub fn recentre(p: &PeakedSet) -> PeakedSet {
    let shift = p.peak.negate();
    PeakedSet {
        set: p.set.translate(&shift),
        peak: Vertex::origin(p.peak.dim()),
    }
}

/// Adds the diagonal bumps {(i,i,0,..)}^+ for 0 < i <= r and the straight
/// bumps {(r+2i,r,0,..)}^+ for 0 < i <= s to a set peaked at the origin.
/// The boundary grows by 2d(r(2d-3) + s(2d-2)) and the new peak is
/// (r+2s, r, 0, ..).
pub fn extend_peak(p: &PeakedSet, r: usize, s: usize) -> Result<PeakedSet> {
    let d = p.set.dim();
    if p.peak != Vertex::origin(d) {
        return Err(Error::assertion(
            "extend_peak",
            "peak must be at the origin",
            Some(p.peak.clone()),
        ));
    }
    let (ri, si) = (i32::try_from(r), i32::try_from(s));
    let (Ok(ri), Ok(si)) = (ri, si) else {
        return Err(Error::InvalidInput("bump counts out of range".into()));
    };
    let mut bumps = Vec::new();
    for i in 1..=ri {
        bumps.push(Vertex::origin(d).shifted(0, i).shifted(1, i));
    }
    for i in 1..=si {
        bumps.push(Vertex::origin(d).shifted(0, ri + 2 * i).shifted(1, ri));
    }
    let out = p.set.union(&from_even_core(&LatticeSet::new(d, bumps)?)?);
    let n = edge_boundary_size(&p.set) + 2 * d * (r * (2 * d - 3) + s * (2 * d - 2));
    validate_cutset("extend_peak", &out, n)?;
    let expected = Vertex::origin(d).shifted(0, ri + 2 * si).shifted(1, ri);
    match find_peak(&out)? {
        Some(q) if q.peak == expected => Ok(q),
        _ => Err(Error::assertion(
            "extend_peak",
            "result does not have the expected peak",
            Some(expected),
        )),
    }
}

/// T = P ∪ (u + e1 + e2 + Q'') where u is P's peak and Q'' negates the first
/// two coordinates of Q. Requires Q to be peaked at the origin; the result
/// has |∂T| = |∂P| + |∂Q| - 4d.
pub fn merge_at_peak(p: &PeakedSet, q: &PeakedSet) -> Result<LatticeSet> {
    let d = p.set.dim();
    if q.set.dim() != d {
        return Err(Error::Dimension(
            "merged sets must share a dimension".into(),
        ));
    }
    if q.peak != Vertex::origin(d) {
        return Err(Error::assertion(
            "merge_at_peak",
            "second set must be peaked at the origin",
            Some(q.peak.clone()),
        ));
    }
    let shift = p.peak.shifted(0, 1).shifted(1, 1);
    let reflected = q.set.map(|v| {
        let mut c = v.coords().to_vec();
        c[0] = -c[0];
        c[1] = -c[1];
        Vertex::new(&c).translate(&shift)
    });
    let out = p.set.union(&reflected);
    let n = edge_boundary_size(&p.set) + edge_boundary_size(&q.set) - 4 * d;
    validate_cutset("merge_at_peak", &out, n)?;
    Ok(out)
}

/// target = r(2d-3) + s(2d-2) with the smallest possible s among the
/// representations with r >= 1, falling back to r = 0. With r = 0 the first
/// straight bump sits at (2,0,..) and can enclose (1,-1,..) when S contains
/// (0,-2,..), so [`extend_peak`] rejects some inputs there.
pub fn frobenius_rep(target: usize, d: usize) -> Result<(usize, usize)> {
    check_dim(d)?;
    let (a, b) = (2 * d - 3, 2 * d - 2);
    let reps = || {
        (0..=target / b)
            .filter(move |s| (target - s * b).is_multiple_of(a))
            .map(move |s| ((target - s * b) / a, s))
    };
    reps()
        .find(|&(r, _)| r >= 1)
        .or_else(|| reps().next())
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "{target} is not of the form r·{a} + s·{b} with r, s >= 0"
            ))
        })
}

/// Extension units needed by [`compose`]: k/2d - 2d + 5.
pub fn extension_units(d: usize, k: usize) -> Result<usize> {
    check_dim(d)?;
    if !k.is_multiple_of(2 * d) {
        return Err(Error::InvalidInput(format!(
            "k = {k} is not a multiple of 2d"
        )));
    }
    (k / (2 * d) + 5)
        .checked_sub(2 * d)
        .ok_or_else(|| Error::InvalidInput(format!("k = {k} is too small to compose")))
}

/// The map C_n × O_m → C_{n+m+k}: create a peak on `s`, extend `q` (peaked
/// at the origin) so the boundary sizes add up, recentre it, and merge.
pub fn compose(s: &LatticeSet, q: &PeakedSet, k: usize) -> Result<LatticeSet> {
    let d = s.dim();
    let units = extension_units(d, k)?;
    let (r, t) = frobenius_rep(units, d)?;
    let p = create_peak(s)?;
    let q2 = recentre(&extend_peak(q, r, t)?);
    let out = merge_at_peak(&p, &q2)?;
    let expected = edge_boundary_size(s) + edge_boundary_size(&q.set) + k;
    validate_cutset("composed map", &out, expected)?;
    Ok(out)
}
