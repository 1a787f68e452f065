//! Odd, even, regular and cutset predicates, the even-core representation of
//! regular odd sets, and the structural identities every finite odd set obeys.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    self, boundary_profile, closure, complement_cut_off_vertex, components, Direction, LatticeSet,
    Parity, Vertex,
};

/// A failing vertex for each predicate that does not hold.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectWitnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutset: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_cutset: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSetReport {
    pub r: u32,
    pub is_odd: bool,
    pub is_even: bool,
    pub is_regular: bool,
    pub is_cutset: bool,
    pub is_r_cutset: bool,
    pub defect_witness: DefectWitnesses,
}

impl OddSetReport {
    /// Regular odd r-cutset: what the enumerator and the constructions emit.
    pub fn is_regular_odd_r_cutset(&self) -> bool {
        self.is_odd && self.is_r_cutset
    }

    /// Some witness, preferring the first failing predicate in field order.
    pub fn first_witness(&self) -> Option<&Vertex> {
        let w = &self.defect_witness;
        w.odd
            .as_ref()
            .or(w.even.as_ref())
            .or(w.regular.as_ref())
            .or(w.cutset.as_ref())
            .or(w.r_cutset.as_ref())
    }
}

/// Vertex of `set` with no neighbour in `set`.
fn isolated_member(set: &LatticeSet) -> Option<Vertex> {
    set.iter()
        .find(|u| u.neighbors().iter().all(|v| !set.contains(v)))
        .cloned()
}

/// Complement vertex all of whose neighbours lie in `set`. Such a vertex is
/// necessarily in the external boundary, so only that is scanned.
fn isolated_complement_vertex(set: &LatticeSet) -> Option<Vertex> {
    lattice::external_boundary(set)
        .iter()
        .find(|v| v.neighbors().iter().all(|u| set.contains(u)))
        .cloned()
}

fn disconnected_member(set: &LatticeSet, r: u32) -> Option<Vertex> {
    let comps = components(set, r);
    comps.get(1).map(|c| c.members()[0].clone())
}

pub fn classify(set: &LatticeSet, r: u32) -> Result<OddSetReport> {
    if set.is_empty() {
        return Err(Error::EmptySet("cannot classify the empty set".into()));
    }
    if r == 0 {
        return Err(Error::InvalidInput(
            "connectivity radius must be positive".into(),
        ));
    }
    let internal = lattice::internal_boundary(set);
    let mut w = DefectWitnesses {
        odd: internal.iter().find(|v| v.is_even()).cloned(),
        even: internal.iter().find(|v| v.is_odd()).cloned(),
        regular: isolated_member(set).or_else(|| isolated_complement_vertex(set)),
        ..Default::default()
    };
    w.cutset = disconnected_member(set, 1).or_else(|| complement_cut_off_vertex(set, 1));
    let r_conn = if r == 1 {
        w.cutset.clone()
    } else {
        disconnected_member(set, r).or_else(|| complement_cut_off_vertex(set, r))
    };
    w.r_cutset = w.regular.clone().or(r_conn);
    Ok(OddSetReport {
        r,
        is_odd: w.odd.is_none(),
        is_even: w.even.is_none(),
        is_regular: w.regular.is_none(),
        is_cutset: w.cutset.is_none(),
        is_r_cutset: w.r_cutset.is_none(),
        defect_witness: w,
    })
}

/// Even ∩ S.
pub fn even_core(set: &LatticeSet) -> LatticeSet {
    set.with_parity(Parity::Even)
}

/// E^+ for an all-even core E.
pub fn from_even_core(core: &LatticeSet) -> Result<LatticeSet> {
    if let Some(bad) = core.iter().find(|v| v.is_odd()) {
        return Err(Error::assertion(
            "from_even_core",
            "core must be even",
            Some(bad.clone()),
        ));
    }
    Ok(closure(core))
}

/// Quantities of the per-direction boundary identity for an odd set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub d: usize,
    pub boundary_edges: usize,
    pub odd_count: usize,
    pub even_count: usize,
    /// |∂^s S| for each of the 2d directions, in canonical direction order.
    pub directional: Vec<usize>,
    /// |Odd ∩ S| - |Even ∩ S|.
    pub parity_difference: i64,
    pub min_boundary_applies: bool,
    pub isoperimetric_holds: bool,
    /// Whether ∂•S ∪ ∂∘S is connected; only evaluated for cutsets.
    pub boundary_connected: Option<bool>,
}

/// Checks, for an odd set S, that every directional boundary has size
/// |Odd ∩ S| - |Even ∩ S| = |∂S|/2d, that 2d divides |∂S|, that
/// |∂S| >= 2d(2d-1) when S has an even member, the isoperimetric inequality,
/// and (for cutsets) that ∂•S ∪ ∂∘S is connected.
pub fn check_structural_lemmas(set: &LatticeSet) -> Result<StructuralReport> {
    let report = classify(set, 1)?;
    if !report.is_odd {
        return Err(Error::assertion(
            "structural lemmas",
            "structural lemmas require odd set",
            report.defect_witness.odd.clone(),
        ));
    }
    let d = set.dim();
    let two_d = 2 * d;
    let profile = boundary_profile(set)?;
    let directional: Vec<usize> = Direction::all(d)
        .map(|dir| profile.in_direction(dir).len())
        .collect();
    let odd_count = set.iter().filter(|v| v.is_odd()).count();
    let even_count = set.len() - odd_count;
    let diff = odd_count as i64 - even_count as i64;
    let n = profile.edge_count();

    for (dir, &size) in Direction::all(d).zip(&directional) {
        if size as i64 != diff {
            return Err(Error::assertion(
                "directional boundary identity",
                format!("|∂^{dir} S| = {size} but |Odd∩S| - |Even∩S| = {diff}"),
                profile.in_direction(dir).members().first().cloned(),
            ));
        }
    }
    if n % two_d != 0 || (n / two_d) as i64 != diff {
        return Err(Error::assertion(
            "boundary divisibility",
            format!("|∂S| = {n} is not 2d times {diff}"),
            None,
        ));
    }
    let min_boundary_applies = even_count > 0;
    if min_boundary_applies && n < two_d * (two_d - 1) {
        return Err(Error::assertion(
            "minimum boundary",
            format!("|∂S| = {n} < 2d(2d-1) = {}", two_d * (two_d - 1)),
            set.iter().find(|v| v.is_even()).cloned(),
        ));
    }
    let isoperimetric_holds = lattice::isoperimetric_inequality_holds(set);
    if !isoperimetric_holds {
        return Err(Error::assertion(
            "isoperimetric inequality",
            format!("|∂S| = {n} below 2d|S|^(1-1/d) with |S| = {}", set.len()),
            None,
        ));
    }
    let boundary_connected = if report.is_cutset {
        let both = profile.internal.union(&profile.external);
        let connected = lattice::is_connected(&both, 1);
        if !connected {
            return Err(Error::assertion(
                "boundary connectivity",
                "internal ∪ external boundary of a cutset is disconnected",
                disconnected_member(&both, 1),
            ));
        }
        Some(true)
    } else {
        None
    };
    Ok(StructuralReport {
        d,
        boundary_edges: n,
        odd_count,
        even_count,
        directional,
        parity_difference: diff,
        min_boundary_applies,
        isoperimetric_holds,
        boundary_connected,
    })
}

/// Checks that ∂•S ∪ ∂∘S is connected in the distance-`r` graph.
pub fn boundary_is_r_connected(set: &LatticeSet, r: u32) -> bool {
    let both = lattice::internal_boundary(set).union(&lattice::external_boundary(set));
    lattice::is_connected(&both, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::edge_boundary_size;

    fn set(d: usize, pts: &[&[i32]]) -> LatticeSet {
        LatticeSet::from_coords(d, pts).unwrap()
    }

    fn plus(d: usize) -> LatticeSet {
        from_even_core(&LatticeSet::singleton(Vertex::origin(d))).unwrap()
    }

    #[test]
    fn plus_pentomino_is_a_regular_odd_cutset() {
        let r = classify(&plus(2), 1).unwrap();
        assert!(r.is_odd && r.is_regular && r.is_cutset && r.is_r_cutset);
        assert!(!r.is_even);
        assert!(r.defect_witness.even.as_ref().unwrap().is_odd());
    }

    #[test]
    fn singleton_origin_is_a_cutset_but_not_odd() {
        let r = classify(&set(2, &[&[0, 0]]), 1).unwrap();
        assert!(!r.is_odd && r.is_cutset && r.is_even);
        assert_eq!(r.defect_witness.odd, Some(Vertex::origin(2)));
        assert!(!r.is_regular && !r.is_r_cutset);
    }

    #[test]
    fn single_odd_vertex_is_odd_but_irregular() {
        let r = classify(&set(2, &[&[1, 0]]), 1).unwrap();
        assert!(r.is_odd && !r.is_regular);
        assert_eq!(r.defect_witness.regular, Some(Vertex::new(&[1, 0])));
    }

    #[test]
    fn witness_for_enclosed_complement() {
        // Closure of the four diagonal evens around the origin leaves the
        // origin as an isolated complement vertex.
        let core = set(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        let s = from_even_core(&core).unwrap();
        let r = classify(&s, 1).unwrap();
        assert!(r.is_odd && !r.is_regular && !r.is_cutset);
        assert_eq!(r.defect_witness.cutset, Some(Vertex::origin(2)));
    }

    #[test]
    fn disconnected_set_is_an_r_cutset_for_larger_r() {
        let s = plus(2).union(&plus(2).translate(&Vertex::new(&[4, 0])));
        assert!(!classify(&s, 1).unwrap().is_cutset);
        assert!(classify(&s, 2).unwrap().is_r_cutset);
    }

    #[test]
    fn empty_set_is_rejected() {
        assert!(classify(&LatticeSet::empty(2), 1).is_err());
    }

    #[test]
    fn even_core_round_trip() {
        let s = plus(2);
        assert_eq!(even_core(&s), LatticeSet::singleton(Vertex::origin(2)));
        assert_eq!(from_even_core(&even_core(&s)).unwrap(), s);
    }

    #[test]
    fn core_examples() {
        let diamond = from_even_core(&set(2, &[&[0, 0], &[1, 1]])).unwrap();
        assert_eq!(diamond.len(), 8);
        assert_eq!(edge_boundary_size(&diamond), 16);
        let pair = from_even_core(&set(2, &[&[0, 0], &[2, 0]])).unwrap();
        assert_eq!(pair.len(), 9);
        assert_eq!(edge_boundary_size(&pair), 20);
    }

    #[test]
    fn odd_core_is_rejected() {
        let err = from_even_core(&set(2, &[&[0, 0], &[1, 0]])).unwrap_err();
        assert!(err.to_string().contains("core must be even"));
    }

    #[test]
    fn structural_lemmas_on_small_sets() {
        let r = check_structural_lemmas(&plus(2)).unwrap();
        assert_eq!(r.directional, vec![3; 4]);
        assert_eq!(r.boundary_edges, 12);

        let diamond = from_even_core(&set(2, &[&[0, 0], &[1, 1]])).unwrap();
        let r = check_structural_lemmas(&diamond).unwrap();
        assert_eq!((r.odd_count, r.even_count, r.parity_difference), (6, 2, 4));
        assert_eq!(r.boundary_edges, 16);

        let r = check_structural_lemmas(&plus(3)).unwrap();
        assert_eq!(r.boundary_edges, 30);
        assert_eq!(r.directional, vec![5; 6]);
        assert_eq!(r.boundary_connected, Some(true));
    }

    #[test]
    fn structural_lemmas_reject_non_odd_sets() {
        let err = check_structural_lemmas(&set(2, &[&[0, 0]])).unwrap_err();
        assert!(err
            .to_string()
            .contains("structural lemmas require odd set"));
    }
}
