//! Persistent, write-once table of exact counts keyed by (d, n, r, mode).
//!
//! Stored as CSV with header `d,n,r,mode,count,oracle_version,seconds`.
//! Writers take an exclusive lock on a sidecar `.lock` file, re-read the
//! table, and replace it atomically, so concurrent writers of the same key
//! either agree or one of them fails with a conflict.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_with_jobs, EnumSpec, SearchStats};
use crate::error::{Error, Result};

/// Bumped whenever the enumeration could produce different counts.
pub const ORACLE_VERSION: &str = "oddcut-enum-1";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CountKey {
    pub d: usize,
    pub n: usize,
    pub r: u32,
    pub mode: String,
}

impl CountKey {
    pub fn for_spec(spec: &EnumSpec) -> Self {
        CountKey {
            d: spec.d,
            n: spec.n,
            r: spec.r,
            mode: spec.origin_mode.tag().to_string(),
        }
    }
}

impl std::fmt::Display for CountKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(d={}, n={}, r={}, mode={})",
            self.d, self.n, self.r, self.mode
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub d: usize,
    pub n: usize,
    pub r: u32,
    pub mode: String,
    pub count: u64,
    pub oracle_version: String,
    pub seconds: f64,
}

impl CountRow {
    pub fn key(&self) -> CountKey {
        CountKey {
            d: self.d,
            n: self.n,
            r: self.r,
            mode: self.mode.clone(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CountTable {
    path: Option<PathBuf>,
    entries: BTreeMap<CountKey, CountRow>,
}

impl CountTable {
    /// A table that lives only in memory.
    pub fn in_memory() -> Self {
        CountTable::default()
    }

    /// Opens the table at `path`; a missing file is an empty table.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = read_rows(&path)?;
        Ok(CountTable {
            path: Some(path),
            entries,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &CountKey) -> Option<&CountRow> {
        self.entries.get(key)
    }

    pub fn rows(&self) -> impl Iterator<Item = &CountRow> {
        self.entries.values()
    }

    /// Counts a_k = OCC(2dk, d) for contiguous k from the Contains/r=1 rows.
    pub fn occ_series(&self, d: usize) -> BTreeMap<usize, u64> {
        self.entries
            .values()
            .filter(|row| row.d == d && row.r == 1 && row.mode == "contains")
            .map(|row| (row.n, row.count))
            .collect()
    }

    /// Records a count. An existing row for the key must carry the same
    /// count, otherwise this is a conflict; rows are never overwritten.
    pub fn record(&mut self, row: CountRow) -> Result<()> {
        let key = row.key();
        if let Some(stored) = self.entries.get(&key) {
            return check_agrees(&key, stored.count, row.count);
        }
        let Some(path) = self.path.clone() else {
            self.entries.insert(key, row);
            return Ok(());
        };
        let _lock = lock_file(&path)?;
        // Another writer may have added rows since we loaded.
        let mut on_disk = read_rows(&path)?;
        if let Some(stored) = on_disk.get(&key) {
            check_agrees(&key, stored.count, row.count)?;
            self.entries = on_disk;
            return Ok(());
        }
        on_disk.insert(key, row);
        write_rows_atomically(&path, &on_disk)?;
        self.entries = on_disk;
        Ok(())
    }
}

fn check_agrees(key: &CountKey, stored: u64, derived: u64) -> Result<()> {
    if stored == derived {
        Ok(())
    } else {
        Err(Error::CacheConflict {
            key: key.to_string(),
            stored,
            derived,
        })
    }
}

fn read_rows(path: &Path) -> Result<BTreeMap<CountKey, CountRow>> {
    let mut entries = BTreeMap::new();
    if !path.exists() {
        return Ok(entries);
    }
    let mut reader = csv::Reader::from_path(path)?;
    for row in reader.deserialize() {
        let row: CountRow = row?;
        let key = row.key();
        if let Some(prev) = entries.get(&key) {
            let prev: &CountRow = prev;
            check_agrees(&key, prev.count, row.count)?;
            continue;
        }
        entries.insert(key, row);
    }
    Ok(entries)
}

fn write_rows_atomically(path: &Path, rows: &BTreeMap<CountKey, CountRow>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(&dir)?;
    {
        let mut writer = csv::Writer::from_writer(tmp.as_file());
        for row in rows.values() {
            writer.serialize(row)?;
        }
        if rows.is_empty() {
            writer.write_record(["d", "n", "r", "mode", "count", "oracle_version", "seconds"])?;
        }
        writer.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

struct LockGuard(File);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = self.0.unlock();
    }
}

fn lock_file(path: &Path) -> Result<LockGuard> {
    let mut lock_path = path.as_os_str().to_owned();
    lock_path.push(".lock");
    let mut file = OpenOptions::new()
        .create(true)
        .truncate(false)
        .read(true)
        .write(true)
        .open(PathBuf::from(lock_path))?;
    file.lock()?;
    file.flush()?;
    Ok(LockGuard(file))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountOutcome {
    pub d: usize,
    pub n: usize,
    pub r: u32,
    pub mode: String,
    pub count: u64,
    /// True when the count came from the table without searching.
    pub cached: bool,
    /// Number of enumeration searches run to produce this answer.
    pub searches_performed: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
    pub seconds: f64,
}

/// Counts regular odd r-cutsets for `spec`, reading and filling `table`.
///
/// With `rederive` set, a cached count is recomputed and must match.
pub fn count_odd_cutsets(
    spec: &EnumSpec,
    table: &mut CountTable,
    jobs: usize,
    rederive: bool,
) -> Result<CountOutcome> {
    spec.validate()?;
    let key = CountKey::for_spec(spec);
    let base = CountOutcome {
        d: spec.d,
        n: spec.n,
        r: spec.r,
        mode: key.mode.clone(),
        count: 0,
        cached: false,
        searches_performed: 0,
        reason: None,
        stats: None,
        seconds: 0.0,
    };
    if spec.boundary_per_direction().is_none() {
        return Ok(CountOutcome {
            reason: Some(format!("n mod 2d ≠ 0 (2d = {})", 2 * spec.d)),
            ..base
        });
    }
    let cacheable = spec.max_core_size.is_none();
    if cacheable && !rederive {
        if let Some(row) = table.get(&key) {
            return Ok(CountOutcome {
                count: row.count,
                cached: true,
                seconds: row.seconds,
                ..base
            });
        }
    }
    let start = Instant::now();
    let e = enumerate_with_jobs(spec, jobs)?;
    let seconds = start.elapsed().as_secs_f64();
    let count = e.len() as u64;
    if cacheable {
        table.record(CountRow {
            d: spec.d,
            n: spec.n,
            r: spec.r,
            mode: key.mode.clone(),
            count,
            oracle_version: ORACLE_VERSION.to_string(),
            seconds,
        })?;
    }
    Ok(CountOutcome {
        count,
        searches_performed: 1,
        stats: Some(e.stats),
        seconds,
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.csv");
        let mut table = CountTable::open(&path).unwrap();
        let first = count_odd_cutsets(&EnumSpec::new(2, 12), &mut table, 1, false).unwrap();
        assert_eq!(
            (first.count, first.cached, first.searches_performed),
            (1, false, 1)
        );

        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("d,n,r,mode,count,oracle_version,seconds\n2,12,1,contains,1,"));

        let mut reopened = CountTable::open(&path).unwrap();
        let second = count_odd_cutsets(&EnumSpec::new(2, 12), &mut reopened, 1, false).unwrap();
        assert_eq!(
            (second.count, second.cached, second.searches_performed),
            (1, true, 0)
        );
    }

    #[test]
    fn conflicting_rows_are_rejected() {
        let mut table = CountTable::in_memory();
        let row = CountRow {
            d: 2,
            n: 16,
            r: 1,
            mode: "contains".into(),
            count: 5,
            oracle_version: ORACLE_VERSION.into(),
            seconds: 0.0,
        };
        table.record(row.clone()).unwrap();
        table.record(row.clone()).unwrap();
        let err = count_odd_cutsets(&EnumSpec::new(2, 16), &mut table, 1, true).unwrap_err();
        assert!(matches!(
            err,
            Error::CacheConflict {
                stored: 5,
                derived: 4,
                ..
            }
        ));
    }

    #[test]
    fn non_multiple_reports_reason_without_search() {
        let mut table = CountTable::in_memory();
        let out = count_odd_cutsets(&EnumSpec::new(2, 13), &mut table, 1, false).unwrap();
        assert_eq!(out.count, 0);
        assert_eq!(out.searches_performed, 0);
        assert!(out.reason.unwrap().contains("n mod 2d"));
        assert_eq!(table.rows().count(), 0);
    }
}
