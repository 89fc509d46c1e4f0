//! A versioned on-disk cache of Kostka–Foulkes polynomials keyed by `(λ, μ)`.
//!
//! The cache file is line-delimited JSON: a header line carrying the format version,
//! then one record per pair. Readers share an in-memory map; appends to the file are
//! serialized through a single writer lock.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::LaurentPoly;
use crate::qpoly::kostka_foulkes;

pub const CACHE_DIR_ENV: &str = "TABSIEVE_CACHE_DIR";
pub const CACHE_FORMAT: &str = "tabsieve-kostka-foulkes";
pub const CACHE_VERSION: u32 = 1;
pub const CACHE_FILE: &str = "kostka-foulkes.v1.jsonl";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct Record {
    lambda: Partition,
    mu: Partition,
    poly: LaurentPoly,
}

/// Cache location: explicit path, then the environment variable, then the user cache
/// directory.
pub fn resolve_cache_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CACHE_DIR_ENV).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p).join("tabsieve"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("tabsieve"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub path: Option<PathBuf>,
    pub version: u32,
    pub records: usize,
    pub bytes: u64,
    /// True when an existing file had another format version and has not been rewritten yet.
    pub discarded_stale: bool,
}

#[derive(Debug, Default)]
pub struct KostkaCache {
    file: Option<PathBuf>,
    entries: RwLock<BTreeMap<(Partition, Partition), LaurentPoly>>,
    writer: Mutex<()>,
    discarded_stale: AtomicBool,
}

impl KostkaCache {
    /// A cache that lives only in memory.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (or prepares) the cache file in `dir`. A file with a different format
    /// version is ignored and rewritten on the next insertion.
    pub fn open(dir: &Path) -> Result<Self> {
        let file = dir.join(CACHE_FILE);
        let mut entries = BTreeMap::new();
        let mut discarded_stale = false;
        if file.exists() {
            let reader = BufReader::new(File::open(&file)?);
            let mut lines = reader.lines();
            match lines.next().transpose()? {
                None => {}
                Some(first) => {
                    let header: Header = serde_json::from_str(&first)
                        .map_err(|e| Error::Cache(format!("{}: bad header: {e}", file.display())))?;
                    if header.format != CACHE_FORMAT {
                        return Err(Error::Cache(format!("{}: not a Kostka-Foulkes cache", file.display())));
                    }
                    if header.version == CACHE_VERSION {
                        for (k, line) in lines.enumerate() {
                            let line = line?;
                            if line.trim().is_empty() {
                                continue;
                            }
                            let r: Record = serde_json::from_str(&line).map_err(|e| {
                                Error::Cache(format!("{}: bad record on line {}: {e}", file.display(), k + 2))
                            })?;
                            entries.insert((r.lambda, r.mu), r.poly);
                        }
                    } else {
                        discarded_stale = true;
                    }
                }
            }
        }
        Ok(Self {
            file: Some(file),
            entries: RwLock::new(entries),
            writer: Mutex::new(()),
            discarded_stale: discarded_stale.into(),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.file.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<LaurentPoly> {
        self.entries.read().expect("cache lock poisoned").get(&(lambda.clone(), mu.clone())).cloned()
    }

    /// `K_{λ,μ}(t)`, computed and persisted on a miss.
    pub fn kostka_foulkes(&self, lambda: &Partition, mu: &Partition) -> Result<LaurentPoly> {
        if let Some(p) = self.get(lambda, mu) {
            return Ok(p);
        }
        let poly = kostka_foulkes(lambda, mu)?;
        self.insert(lambda, mu, &poly)?;
        Ok(poly)
    }

    fn insert(&self, lambda: &Partition, mu: &Partition, poly: &LaurentPoly) -> Result<()> {
        let _guard = self.writer.lock().expect("cache writer poisoned");
        {
            let mut entries = self.entries.write().expect("cache lock poisoned");
            if entries.contains_key(&(lambda.clone(), mu.clone())) {
                return Ok(());
            }
            entries.insert((lambda.clone(), mu.clone()), poly.clone());
        }
        let Some(file) = &self.file else { return Ok(()) };
        if let Some(dir) = file.parent() {
            fs::create_dir_all(dir)?;
        }
        let fresh =
            self.discarded_stale.swap(false, Ordering::SeqCst) || !file.exists() || fs::metadata(file)?.len() == 0;
        let mut out = if fresh { File::create(file)? } else { OpenOptions::new().append(true).open(file)? };
        let mut text = String::new();
        if fresh {
            let header = Header { format: CACHE_FORMAT.into(), version: CACHE_VERSION };
            text.push_str(&serde_json::to_string(&header)?);
            text.push('\n');
            // a rewritten file must carry everything already held in memory
            for ((l, m), p) in self.entries.read().expect("cache lock poisoned").iter() {
                if (l, m) != (lambda, mu) {
                    text.push_str(&serde_json::to_string(&Record {
                        lambda: l.clone(),
                        mu: m.clone(),
                        poly: p.clone(),
                    })?);
                    text.push('\n');
                }
            }
        }
        text.push_str(&serde_json::to_string(&Record { lambda: lambda.clone(), mu: mu.clone(), poly: poly.clone() })?);
        text.push('\n');
        out.write_all(text.as_bytes())?;
        Ok(())
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let bytes = match &self.file {
            Some(f) if f.exists() => fs::metadata(f)?.len(),
            _ => 0,
        };
        Ok(CacheStats {
            path: self.file.clone(),
            version: CACHE_VERSION,
            records: self.len(),
            bytes,
            discarded_stale: self.discarded_stale.load(Ordering::SeqCst),
        })
    }
}

/// Removes the cache file in `dir`; returns whether one existed.
pub fn clear_cache(dir: &Path) -> Result<bool> {
    let file = dir.join(CACHE_FILE);
    if file.exists() {
        fs::remove_file(&file)?;
        Ok(true)
    } else {
        Ok(false)
    }
}
