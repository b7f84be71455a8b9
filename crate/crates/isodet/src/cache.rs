//! Content-addressed disk cache for expensive reusable tables.
//!
//! Activated by the `ISODET_CACHE` environment variable (a directory path);
//! silently inactive otherwise.  Writes are crash-safe: a temporary file in
//! the same directory is populated first and then atomically renamed into
//! place, so readers never observe partial entries.

use std::io::Write;
use std::path::PathBuf;

/// Stable 64-bit FNV-1a over the key parts (the std hasher is not guaranteed
/// stable across releases, and cache keys must outlive the binary).
pub fn content_key(parts: &[&str]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for p in parts {
        for &b in p.as_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        // domain-separate the parts so ["ab","c"] differs from ["a","bc"]
        h ^= 0xff;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    root: Option<PathBuf>,
}

impl DiskCache {
    pub fn from_env() -> Self {
        let root = std::env::var_os("ISODET_CACHE").map(PathBuf::from);
        DiskCache { root }
    }

    pub fn at(root: PathBuf) -> Self {
        DiskCache { root: Some(root) }
    }

    pub fn disabled() -> Self {
        DiskCache { root: None }
    }

    pub fn is_active(&self) -> bool {
        self.root.is_some()
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.root.as_ref().map(|r| r.join(format!("{key}.bin")))
    }

    pub fn get(&self, key: &str) -> Option<Vec<u8>> {
        std::fs::read(self.path_for(key)?).ok()
    }

    /// Best-effort store; cache failures must never fail the computation.
    pub fn put(&self, key: &str, bytes: &[u8]) {
        let Some(path) = self.path_for(key) else {
            return;
        };
        let Some(dir) = path.parent() else { return };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        let tmp = dir.join(format!(
            ".{}.tmp.{}",
            path.file_name().unwrap().to_string_lossy(),
            std::process::id()
        ));
        let ok = std::fs::File::create(&tmp)
            .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
            .is_ok();
        if ok {
            let _ = std::fs::rename(&tmp, &path);
        } else {
            let _ = std::fs::remove_file(&tmp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_stable_and_separating() {
        let k = content_key(&["alpha", "beta"]);
        assert_eq!(k, content_key(&["alpha", "beta"]));
        assert_ne!(k, content_key(&["alphab", "eta"]));
        assert_ne!(k, content_key(&["alpha", "beta "]));
        assert_eq!(k.len(), 16);
    }

    #[test]
    fn roundtrip_and_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache::at(dir.path().to_path_buf());
        let key = content_key(&["test", "v1"]);
        assert!(c.get(&key).is_none());
        c.put(&key, b"hello");
        assert_eq!(c.get(&key).as_deref(), Some(&b"hello"[..]));
        c.put(&key, b"world");
        assert_eq!(c.get(&key).as_deref(), Some(&b"world"[..]));
        // no stray temp files left behind
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().contains(".tmp."))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn disabled_cache_is_inert() {
        let c = DiskCache::disabled();
        assert!(!c.is_active());
        c.put("abc", b"x");
        assert!(c.get("abc").is_none());
    }
}
