//! On-disk cache of Hodge series keyed by kind, surface, genus and order.
//!
//! Each entry stores the series document next to the SHA-256 of its JSON
//! encoding; an entry whose checksum no longer matches is treated as a miss.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use dtseries::HodgeDiamond;

use crate::error::CliError;
use crate::format::{SeriesDocument, SeriesKind};

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    checksum: String,
    series: SeriesDocument,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Stable fingerprint of a diamond, independent of its name.
pub fn surface_hash(diamond: &HodgeDiamond) -> String {
    sha256_hex(diamond.to_json().as_bytes())[..16].to_string()
}

#[derive(Debug)]
pub enum Lookup {
    Hit(SeriesDocument),
    Miss,
    /// Present but failed verification.
    Corrupt(String),
}

pub struct SeriesCache {
    dir: PathBuf,
}

impl SeriesCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self, CliError> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Self {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn path_for(&self, kind: SeriesKind, diamond: &HodgeDiamond, genus: Option<u64>, q_max: usize) -> PathBuf {
        let genus = genus.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
        self.dir.join(format!(
            "{}-{}-g{genus}-q{q_max}.json",
            kind.as_str(),
            surface_hash(diamond)
        ))
    }

    pub fn load(&self, path: &Path) -> Lookup {
        let Ok(text) = fs::read_to_string(path) else {
            return Lookup::Miss;
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(entry) => entry,
            Err(e) => return Lookup::Corrupt(format!("unreadable entry: {e}")),
        };
        let actual = sha256_hex(entry.series.to_json().as_bytes());
        if actual != entry.checksum {
            return Lookup::Corrupt(format!("checksum mismatch in {}", path.display()));
        }
        Lookup::Hit(entry.series)
    }

    pub fn store(&self, path: &Path, series: &SeriesDocument) -> Result<(), CliError> {
        let entry = CacheEntry {
            checksum: sha256_hex(series.to_json().as_bytes()),
            series: series.clone(),
        };
        let text = serde_json::to_string(&entry).expect("cache entry serializes");
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
