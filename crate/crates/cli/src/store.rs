//! One directory per profile: `profile.txt` holds the profile, `queue.tsv`
//! the documents awaiting a judgment in corpus format.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use entrench_core::agent::Document;
use entrench_core::format::{parse_corpus, parse_profile, write_corpus, write_profile};
use entrench_core::AgentProfile;

use crate::error::CliError;

pub const PROFILE_FILE: &str = "profile.txt";
pub const QUEUE_FILE: &str = "queue.tsv";
pub const DEFAULT_PROFILE: &str = "default";

/// Profile ids double as directory names.
pub fn valid_profile_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && !id.starts_with('.')
        && id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

/// Replace `path` in one step so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

#[derive(Clone, Debug)]
pub struct ProfileDir {
    path: PathBuf,
}

impl ProfileDir {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ProfileDir { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn profile_path(&self) -> PathBuf {
        self.path.join(PROFILE_FILE)
    }

    pub fn queue_path(&self) -> PathBuf {
        self.path.join(QUEUE_FILE)
    }

    pub fn exists(&self) -> bool {
        self.profile_path().is_file()
    }

    pub fn load(&self) -> Result<AgentProfile, CliError> {
        let path = self.profile_path();
        let text = read_text(&path)?;
        parse_profile(&text).map_err(|e| CliError::file(path, e))
    }

    pub fn save(&self, profile: &AgentProfile) -> Result<(), CliError> {
        fs::create_dir_all(&self.path).map_err(|e| CliError::io(&self.path, e))?;
        write_atomic(&self.profile_path(), &write_profile(profile))
    }

    /// Pending documents; a missing queue file is an empty queue.
    pub fn load_queue(&self) -> Result<Vec<Document>, CliError> {
        let path = self.queue_path();
        match fs::read_to_string(&path) {
            Ok(text) => parse_corpus(&text).map_err(|e| CliError::file(path, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
            Err(e) => Err(CliError::io(path, e)),
        }
    }

    pub fn save_queue(&self, queue: &[Document]) -> Result<(), CliError> {
        fs::create_dir_all(&self.path).map_err(|e| CliError::io(&self.path, e))?;
        write_atomic(&self.queue_path(), &write_corpus(queue))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_ids_cannot_escape_the_home() {
        assert!(valid_profile_id("alice"));
        assert!(valid_profile_id("team-1_a.b"));
        assert!(!valid_profile_id(""));
        assert!(!valid_profile_id(".."));
        assert!(!valid_profile_id("a/b"));
        assert!(!valid_profile_id(".hidden"));
    }

    #[test]
    fn save_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileDir::new(dir.path().join("p"));
        assert!(!store.exists());
        let p = AgentProfile::default();
        store.save(&p).unwrap();
        assert!(store.exists());
        assert_eq!(store.load().unwrap(), p);
        assert!(store.load_queue().unwrap().is_empty());
        let q = vec![Document::new("d1", ["art"]).unwrap()];
        store.save_queue(&q).unwrap();
        assert_eq!(store.load_queue().unwrap(), q);
    }
}
