//! On-disk cache of census results.
//!
//! The file starts with the line `# queuelab census cache v1`, followed by one
//! JSON object per line with the fields, in this order: `kind`, `n`, `m`, `k`,
//! `delta`, `sizes`, `count`, `method`, `timestamp`. Absent parameters are
//! `null`; `count` is a decimal string so arbitrarily large values survive;
//! `timestamp` is seconds since the Unix epoch. Loading then saving a cache
//! reproduces the file byte for byte.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CACHE_HEADER: &str = "# queuelab census cache v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusKind {
    QueuesByN,
    QueuesByNM,
    KqueuesByNMK,
    KqueuesBySizes,
    LabelledQnLe,
    LabelledRegular,
}

/// One cached census value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub kind: CensusKind,
    pub n: u32,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub delta: Option<u32>,
    pub sizes: Option<Vec<u32>>,
    #[serde(with = "decimal")]
    pub count: BigUint,
    pub method: String,
    pub timestamp: u64,
}

impl CensusTable {
    pub fn new(kind: CensusKind, n: u32, count: BigUint, method: impl Into<String>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        CensusTable { kind, n, m: None, k: None, delta: None, sizes: None, count, method: method.into(), timestamp }
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_delta(mut self, delta: u32) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_sizes(mut self, sizes: &[u32]) -> Self {
        let mut s = sizes.to_vec();
        s.sort_unstable();
        self.sizes = Some(s);
        self
    }

    fn same_key(&self, other: &CensusTable) -> bool {
        self.kind == other.kind
            && self.n == other.n
            && self.m == other.m
            && self.k == other.k
            && self.delta == other.delta
            && self.sizes == other.sizes
    }

    pub fn key(&self) -> String {
        let opt = |x: Option<u32>| x.map_or("-".to_string(), |v| v.to_string());
        format!(
            "{:?}(n={}, m={}, k={}, delta={}, sizes={:?})",
            self.kind,
            self.n,
            opt(self.m),
            opt(self.k),
            opt(self.delta),
            self.sizes
        )
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("census entry serializes")
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(D::Error::custom(format!("not a decimal count: {s:?}")));
        }
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom("bad count"))
    }
}

#[derive(Debug, Default)]
pub struct CensusCache {
    path: Option<PathBuf>,
    entries: Vec<CensusTable>,
}

impl CensusCache {
    /// A cache that lives in memory only.
    pub fn in_memory() -> Self {
        CensusCache::default()
    }

    /// Loads `path`; a missing file gives an empty cache bound to that path.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => parse(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(CensusCache { path: Some(path), entries })
    }

    pub fn entries(&self) -> &[CensusTable] {
        &self.entries
    }

    pub fn lookup(&self, probe: &CensusTable) -> Option<&CensusTable> {
        self.entries.iter().find(|e| e.same_key(probe))
    }

    /// Stores a freshly computed entry. An existing entry with the same key is
    /// never overwritten: equal counts are accepted, differing ones are an
    /// error. Returns whether the entry was new.
    pub fn record(&mut self, entry: CensusTable) -> Result<bool> {
        if let Some(old) = self.lookup(&entry) {
            if old.count != entry.count {
                return Err(Error::CacheMismatch {
                    key: entry.key(),
                    cached: old.count.to_string(),
                    computed: entry.count.to_string(),
                });
            }
            return Ok(false);
        }
        if let Some(path) = &self.path {
            let fresh = !path.exists();
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            if fresh {
                writeln!(file, "{CACHE_HEADER}")?;
            }
            writeln!(file, "{}", entry.to_line())?;
        }
        self.entries.push(entry);
        Ok(true)
    }

    /// The whole cache in its file form.
    pub fn to_text(&self) -> String {
        let mut out = format!("{CACHE_HEADER}\n");
        for e in &self.entries {
            out.push_str(&e.to_line());
            out.push('\n');
        }
        out
    }
}

fn parse(text: &str) -> Result<Vec<CensusTable>> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let entry: CensusTable = serde_json::from_str(trimmed)
            .map_err(|e| Error::CacheFormat { line: i + 1, msg: e.to_string() })?;
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(count: u64) -> CensusTable {
        CensusTable { timestamp: 1_700_000_000, ..CensusTable::new(CensusKind::QueuesByNM, 4, count.into(), "dfs").with_m(3) }
    }

    #[test]
    fn roundtrip_is_byte_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.cache");
        let mut cache = CensusCache::open(&path).unwrap();
        assert!(cache.entries().is_empty());
        assert!(cache.record(entry(85)).unwrap());
        let big = BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let mut e = CensusTable::new(CensusKind::LabelledRegular, 8, big, "backtracking").with_delta(3);
        e.timestamp = 5;
        assert!(cache.record(e).unwrap());
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, cache.to_text());
        let again = CensusCache::open(&path).unwrap();
        assert_eq!(again.entries(), cache.entries());
        assert_eq!(again.to_text(), text);
        assert!(text.starts_with(CACHE_HEADER));
        assert!(text.contains(r#""count":"123456789012345678901234567890""#));
    }

    #[test]
    fn entries_are_immutable() {
        let mut cache = CensusCache::in_memory();
        assert!(cache.record(entry(85)).unwrap());
        assert!(!cache.record(entry(85)).unwrap());
        assert!(matches!(cache.record(entry(86)), Err(Error::CacheMismatch { .. })));
        assert_eq!(cache.entries().len(), 1);
    }

    #[test]
    fn malformed_lines_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cache");
        fs::write(&path, format!("{CACHE_HEADER}\n{{\"kind\":\"nope\"}}\n")).unwrap();
        assert!(matches!(CensusCache::open(&path), Err(Error::CacheFormat { line: 2, .. })));
    }
}
