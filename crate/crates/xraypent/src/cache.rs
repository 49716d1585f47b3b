//! On-disk cache for the final resultant: a polynomial text file plus a
//! digest stamp identifying the inputs and determinant backend that
//! produced it.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o failed: {0}")]
    Io(#[from] io::Error),
}

const POLY_FILE: &str = "final_resultant.poly";
const DIGEST_FILE: &str = "final_resultant.digest";

/// Hex SHA-256 of the input text.
pub fn digest_hex(input: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(input.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Resolves the cache directory: an explicit flag wins, then the
/// `XRAYPENT_CACHE` environment variable, then the platform convention
/// (`LOCALAPPDATA` on Windows, `~/Library/Caches` on macOS,
/// `XDG_CACHE_HOME` or `~/.cache` elsewhere), each joined with
/// `xraypent`. `None` when nothing resolves.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    match std::env::var("XRAYPENT_CACHE") {
        Ok(p) if !p.is_empty() => return Some(PathBuf::from(p)),
        _ => {}
    }
    let base = if cfg!(windows) {
        std::env::var_os("LOCALAPPDATA").map(PathBuf::from)
    } else if cfg!(target_os = "macos") {
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join("Library/Caches"))
    } else {
        std::env::var_os("XDG_CACHE_HOME")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
    };
    base.map(|b| b.join("xraypent"))
}

/// Loads the cached resultant if it is present and stamped with the same
/// digest. A missing, mismatched, or unparseable entry is a miss, never an
/// error; the caller recomputes and overwrites.
pub fn load_resultant(dir: &Path, digest: &str) -> Result<Option<Poly>, CacheError> {
    let Ok(stamp) = fs::read_to_string(dir.join(DIGEST_FILE)) else {
        return Ok(None);
    };
    if stamp.trim() != digest {
        return Ok(None);
    }
    let Ok(text) = fs::read_to_string(dir.join(POLY_FILE)) else {
        return Ok(None);
    };
    Ok(text.trim().parse::<Poly>().ok())
}

/// Stores the resultant and then its digest stamp (in that order, so a
/// matching stamp always refers to a fully written polynomial). Each file
/// is written to a temporary name and renamed into place.
pub fn store_resultant(dir: &Path, digest: &str, poly: &Poly) -> Result<(), CacheError> {
    fs::create_dir_all(dir)?;
    atomic_write(&dir.join(POLY_FILE), format!("{poly}\n").as_bytes())?;
    atomic_write(&dir.join(DIGEST_FILE), format!("{digest}\n").as_bytes())?;
    Ok(())
}

fn atomic_write(path: &Path, data: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("cache");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, data)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}
