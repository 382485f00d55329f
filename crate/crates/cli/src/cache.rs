//! Where ε tables come from: computed on the spot, or read through an
//! on-disk cache named by `EPOSIC_CACHE_DIR`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use eposic::clebsch::{epsilon_table, CgIndex, EpsilonTable};
use eposic::io::EpsilonTableJson;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "EPOSIC_CACHE_DIR";

pub trait EpsilonSource {
    fn table(&self, ix: CgIndex) -> Arc<EpsilonTable>;
}

/// Straight from the closed-form formula.
pub struct Computed;

impl EpsilonSource for Computed {
    fn table(&self, ix: CgIndex) -> Arc<EpsilonTable> {
        epsilon_table(ix)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    sha256: String,
    table: EpsilonTableJson,
}

fn digest(table: &EpsilonTableJson) -> String {
    let body = serde_json::to_vec(table).expect("serializable");
    hex::encode(Sha256::digest(body))
}

/// One JSON file per `(m, n, h)`, carrying the SHA-256 of its table body.
/// A file that is unreadable, fails the hash, or names the wrong index is
/// recomputed and rewritten.
pub struct CacheDir {
    dir: PathBuf,
}

impl CacheDir {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, ix: CgIndex) -> PathBuf {
        self.dir.join(format!("epsilon_{}_{}_{}.json", ix.m(), ix.n(), ix.h()))
    }

    fn load(&self, path: &Path, ix: CgIndex) -> Option<EpsilonTable> {
        let text = fs::read_to_string(path).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.table.index != ix || digest(&file.table) != file.sha256 {
            return None;
        }
        file.table.to_table().ok()
    }

    fn store(&self, path: &Path, table: &EpsilonTable) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let table = EpsilonTableJson::from_table(table);
        let file = CacheFile { sha256: digest(&table), table };
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&file).expect("serializable"))?;
        fs::rename(tmp, path)
    }
}

impl EpsilonSource for CacheDir {
    fn table(&self, ix: CgIndex) -> Arc<EpsilonTable> {
        let path = self.path_for(ix);
        if let Some(t) = self.load(&path, ix) {
            return Arc::new(t);
        }
        let t = epsilon_table(ix);
        if path.exists() {
            eprintln!("warning: discarding invalid cache entry {}", path.display());
        }
        if let Err(e) = self.store(&path, &t) {
            eprintln!("warning: could not write {}: {e}", path.display());
        }
        t
    }
}

/// The cache if `EPOSIC_CACHE_DIR` is set and nonempty, otherwise [`Computed`].
pub fn source_from_env() -> Box<dyn EpsilonSource> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => Box::new(CacheDir::new(dir)),
        _ => Box::new(Computed),
    }
}

/// Writes a cache entry with a valid hash but arbitrary content. The hash only
/// guards against damaged files, so this is how a wrong table gets past it.
pub fn write_entry(dir: &Path, table: &EpsilonTable) -> std::io::Result<PathBuf> {
    let cache = CacheDir::new(dir);
    let path = cache.path_for(table.index());
    cache.store(&path, table)?;
    Ok(path)
}
