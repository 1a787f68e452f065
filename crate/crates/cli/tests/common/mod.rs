#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;
use std::process::{Command, Output};

pub type Point = Vec<i32>;
pub type Set = BTreeSet<Point>;

pub fn oddcut(dir: &Path, cache: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddcut"))
        .current_dir(dir)
        .env_remove("ODDCUT_CACHE")
        .arg("--cache")
        .arg(cache)
        .args(args)
        .output()
        .expect("spawning oddcut")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

pub fn parse_set(v: &serde_json::Value) -> (usize, Set) {
    let d = v["d"].as_u64().expect("d") as usize;
    let members = v["members"]
        .as_array()
        .expect("members")
        .iter()
        .map(|p| {
            p.as_array()
                .expect("point")
                .iter()
                .map(|c| c.as_i64().expect("coordinate") as i32)
                .collect()
        })
        .collect();
    (d, members)
}

pub fn parse_jsonl(text: &str) -> Vec<(usize, Set)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_set(&serde_json::from_str(l).expect("json line")))
        .collect()
}

pub fn shift(v: &[i32], axis: usize, by: i32) -> Point {
    let mut w = v.to_vec();
    w[axis] += by;
    w
}

pub fn neighbours(v: &[i32]) -> Vec<Point> {
    (0..v.len())
        .flat_map(|i| [shift(v, i, 1), shift(v, i, -1)])
        .collect()
}

pub fn is_odd(v: &[i32]) -> bool {
    v.iter().sum::<i32>().rem_euclid(2) == 1
}

pub fn boundary_edges(s: &Set) -> usize {
    s.iter()
        .map(|v| neighbours(v).iter().filter(|w| !s.contains(*w)).count())
        .sum()
}

pub fn connected(cells: &Set) -> bool {
    let Some(start) = cells.iter().next() else {
        return true;
    };
    let mut seen: Set = [start.clone()].into();
    let mut queue: VecDeque<Point> = [start.clone()].into();
    while let Some(v) = queue.pop_front() {
        for w in neighbours(&v) {
            if cells.contains(&w) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == cells.len()
}

/// Complement restricted to the bounding box grown by one.
pub fn complement_in_box(s: &Set, d: usize) -> Set {
    let lo: Vec<i32> = (0..d)
        .map(|i| s.iter().map(|v| v[i]).min().unwrap() - 1)
        .collect();
    let hi: Vec<i32> = (0..d)
        .map(|i| s.iter().map(|v| v[i]).max().unwrap() + 1)
        .collect();
    let mut out = Set::new();
    let mut cur = lo.clone();
    loop {
        if !s.contains(&cur) {
            out.insert(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// Connected, co-connected, with only odd vertices on the internal boundary
/// and no isolated vertex on either side.
pub fn is_regular_odd_cutset(s: &Set, d: usize) -> bool {
    let internal_odd = s
        .iter()
        .filter(|v| neighbours(v).iter().any(|w| !s.contains(w)))
        .all(|v| is_odd(v));
    let no_isolated_inside = s
        .iter()
        .all(|v| neighbours(v).iter().any(|w| s.contains(w)));
    let outside = complement_in_box(s, d);
    let no_isolated_outside = outside
        .iter()
        .all(|v| neighbours(v).iter().any(|w| !s.contains(w)));
    internal_odd && no_isolated_inside && no_isolated_outside && connected(s) && connected(&outside)
}
