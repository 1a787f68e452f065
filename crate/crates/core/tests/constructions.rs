//! Slab families and peak operations checked against direct recomputation.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use oddcut_core::constructions::{
    base_slab, compose, create_peak, extend_peak, find_peak, merge_at_peak, recentre, slab_family,
    slab_family_count, slab_family_lower_exponent, PeakedSet, SlabFamilySpec,
};
use oddcut_core::enumerate::{enumerate_odd_cutsets, EnumSpec};
use oddcut_core::lattice::{closure, edge_boundary_size};
use oddcut_core::oddsets::classify;
use oddcut_core::{LatticeSet, Vertex};

fn family(d: usize, n: usize) -> Vec<LatticeSet> {
    enumerate_odd_cutsets(&EnumSpec::new(d, n))
        .unwrap()
        .sets()
        .collect()
}

fn plus(d: usize) -> LatticeSet {
    closure(&LatticeSet::singleton(Vertex::origin(d)))
}

fn is_regular_odd_cutset(s: &LatticeSet) -> bool {
    classify(s, 1).unwrap().is_regular_odd_r_cutset()
}

/// Σ over B1 ⊆ A1 of 2^{|A2(B1)|} for d = 2, with both layers rebuilt from
/// their coordinate description.
fn slab_count_2d(m: i32) -> u64 {
    let a1: Vec<(i32, i32)> = [-1, 1]
        .into_iter()
        .flat_map(|y| (1..m - 1).map(move |x| (x, y)))
        .filter(|(x, y)| (x + y) % 2 == 0)
        .collect();
    let a2: Vec<(i32, i32)> = [-2, 2]
        .into_iter()
        .flat_map(|y| (2..m - 2).map(move |x| (x, y)))
        .filter(|(x, y)| (x + y) % 2 == 0)
        .collect();
    let mut total = 0u64;
    for mask in 0u32..(1 << a1.len()) {
        let b1: Vec<(i32, i32)> = (0..a1.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| a1[i])
            .collect();
        let allowed = a2
            .iter()
            .filter(|&&(x, y)| b1.contains(&(x - 1, y / 2)) && b1.contains(&(x + 1, y / 2)))
            .count();
        total += 1 << allowed;
    }
    total
}

#[test]
fn slab_m4_has_four_members() {
    let spec = SlabFamilySpec::new(2, 4).unwrap();
    assert_eq!(slab_family_count(&spec).unwrap(), BigUint::from(4u32));
    let members = slab_family(&spec, 100).unwrap();
    assert_eq!(members.len(), 4);
    assert_eq!(members.iter().collect::<BTreeSet<_>>().len(), 4);
}

#[test]
fn slab_counts_match_direct_summation() {
    for m in [4, 6, 8] {
        let spec = SlabFamilySpec::new(2, m as usize).unwrap();
        assert_eq!(
            slab_family_count(&spec).unwrap(),
            BigUint::from(slab_count_2d(m)),
            "m={m}"
        );
    }
}

#[test]
fn slab_m6_members_are_distinct_cutsets_above_the_lower_bound() {
    let spec = SlabFamilySpec::new(2, 6).unwrap();
    let members = slab_family(&spec, 1000).unwrap();
    let n = spec.boundary_size();
    assert_eq!(n, 28);
    assert_eq!(members.len() as u64, slab_count_2d(6));
    assert_eq!(members.iter().collect::<BTreeSet<_>>().len(), members.len());
    for s in &members {
        assert_eq!(edge_boundary_size(s), n);
        assert!(is_regular_odd_cutset(s));
    }
    // 2^{(m-2) + (m-4)/4} = 2^{9/2}: compare squares.
    let exponent = slab_family_lower_exponent(&spec);
    assert_eq!(exponent.numer().to_string(), "9");
    assert_eq!(exponent.denom().to_string(), "2");
    let size = members.len() as u64;
    assert!(size * size >= 1 << 9);
}

#[test]
fn base_slab_in_three_dimensions() {
    let spec = SlabFamilySpec::new(3, 4).unwrap();
    let s = base_slab(&spec).unwrap();
    assert_eq!(edge_boundary_size(&s), 2 * 3 * (16 + 2 * 4));
    assert!(is_regular_odd_cutset(&s));
}

#[test]
fn create_peak_is_injective_with_the_stated_increment() {
    for n in [12, 16, 20] {
        let sets = family(2, n);
        let mut images = BTreeSet::new();
        for s in &sets {
            let p = create_peak(s).unwrap();
            assert!(s.is_subset(&p.set));
            // 2d(2d-3) = 4 new boundary edges.
            assert_eq!(edge_boundary_size(&p.set), n + 4);
            assert_eq!(find_peak(&p.set).unwrap().unwrap().peak, p.peak);
            assert!(is_regular_odd_cutset(&p.set));
            images.insert(p.set);
        }
        assert_eq!(images.len(), sets.len(), "n={n}");
    }
}

#[test]
fn create_peak_in_three_dimensions() {
    for s in family(3, 30) {
        let p = create_peak(&s).unwrap();
        assert_eq!(edge_boundary_size(&p.set), 30 + 6 * 3);
        assert!(is_regular_odd_cutset(&p.set));
    }
}

fn peaked_at_origin(d: usize, n: usize) -> Vec<PeakedSet> {
    let mut out: BTreeSet<LatticeSet> = BTreeSet::new();
    for s in family(d, n) {
        if let Some(p) = find_peak(&s).unwrap() {
            out.insert(recentre(&p).set);
        }
    }
    out.into_iter()
        .map(|set| PeakedSet {
            set,
            peak: Vertex::origin(d),
        })
        .collect()
}

#[test]
fn extend_peak_is_injective_with_the_stated_increment() {
    for n in [12, 16, 20] {
        let sets = peaked_at_origin(2, n);
        for (r, s) in [(1, 0), (1, 1), (2, 1), (3, 2)] {
            let mut images = BTreeSet::new();
            for p in &sets {
                let q = extend_peak(p, r, s).unwrap();
                assert_eq!(edge_boundary_size(&q.set), n + 4 * (r + 2 * s));
                let expected = Vertex::new(&[(r + 2 * s) as i32, r as i32]);
                assert_eq!(q.peak, expected);
                assert!(is_regular_odd_cutset(&q.set));
                images.insert(q.set);
            }
            assert_eq!(images.len(), sets.len(), "n={n} r={r} s={s}");
        }
    }
}

#[test]
fn straight_bump_without_diagonal_can_enclose_a_hole() {
    // Core {0, (0,-2)}: the bump (2,0)^+ closes off the odd vertex (1,-1).
    let core = LatticeSet::from_coords(2, &[&[0, 0], &[0, -2]]).unwrap();
    let p = PeakedSet {
        set: closure(&core),
        peak: Vertex::origin(2),
    };
    assert!(extend_peak(&p, 0, 1).is_err());
    assert!(extend_peak(&p, 1, 1).is_ok());
}

#[test]
fn merge_is_injective_in_each_argument() {
    let q0 = PeakedSet {
        set: plus(2),
        peak: Vertex::origin(2),
    };
    for n in [12, 16, 20] {
        let sets = family(2, n);
        let mut images = BTreeSet::new();
        for s in &sets {
            let p = create_peak(s).unwrap();
            let t = merge_at_peak(&p, &q0).unwrap();
            assert_eq!(edge_boundary_size(&t), edge_boundary_size(&p.set) + 12 - 8);
            assert!(is_regular_odd_cutset(&t));
            images.insert(t);
        }
        assert_eq!(images.len(), sets.len());
    }
    let p = create_peak(&family(2, 16)[0]).unwrap();
    let qs = peaked_at_origin(2, 20);
    let images: BTreeSet<LatticeSet> = qs.iter().map(|q| merge_at_peak(&p, q).unwrap()).collect();
    assert_eq!(images.len(), qs.len());
}

#[test]
fn compose_is_injective_on_pairs() {
    let k = 48;
    for (n, m) in [(12, 12), (12, 16), (16, 16), (16, 20)] {
        let left = family(2, n);
        let right = peaked_at_origin(2, m);
        let mut images = BTreeSet::new();
        for s in &left {
            for q in &right {
                let t = compose(s, q, k).unwrap();
                assert_eq!(edge_boundary_size(&t), n + m + k);
                assert!(is_regular_odd_cutset(&t));
                images.insert(t);
            }
        }
        assert_eq!(images.len(), left.len() * right.len(), "n={n} m={m}");
    }
}

#[test]
fn compose_in_three_dimensions() {
    let k = 12 * 9;
    let q = PeakedSet {
        set: plus(3),
        peak: Vertex::origin(3),
    };
    let t = compose(&plus(3), &q, k).unwrap();
    assert_eq!(edge_boundary_size(&t), 30 + 30 + k);
    assert!(is_regular_odd_cutset(&t));
}
