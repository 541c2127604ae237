//! Shipped data files and the optional data directory.
//!
//! Without a directory the copies compiled into the library are used. When
//! a directory is given (directly or through `HFORGE_DATA_DIR`), shipped
//! files are read from it and a missing file is an error. Optional inputs
//! such as `bhw-20.json` or `wt-73.json` are only ever read from a directory.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

pub const DATA_DIR_ENV: &str = "HFORGE_DATA_DIR";

pub const DELTA_FILE: &str = "delta.json";
pub const TABLE1_FILE: &str = "table1.json";
pub const KB_FILE: &str = "kb.json";

const EMBEDDED: [(&str, &str); 3] = [
    (DELTA_FILE, include_str!("../data/delta.json")),
    (TABLE1_FILE, include_str!("../data/table1.json")),
    (KB_FILE, include_str!("../data/kb.json")),
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DataSource {
    dir: Option<PathBuf>,
}

impl DataSource {
    pub fn embedded() -> Self {
        DataSource { dir: None }
    }

    pub fn dir(path: impl Into<PathBuf>) -> Self {
        DataSource { dir: Some(path.into()) }
    }

    /// Uses `HFORGE_DATA_DIR` when it is set and nonempty.
    pub fn from_env() -> Self {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::dir(PathBuf::from(d)),
            _ => Self::embedded(),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Contents of a shipped file.
    pub fn shipped(&self, name: &str) -> Result<String> {
        match &self.dir {
            Some(dir) => {
                let p = dir.join(name);
                if !p.is_file() {
                    return Err(Error::MissingData(p));
                }
                crate::objects::read(&p)
            }
            None => EMBEDDED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| Error::MissingData(PathBuf::from(name))),
        }
    }

    /// Path of an optional file in the directory, if present.
    pub fn optional(&self, name: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(name)).filter(|p| p.is_file())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_present() {
        let src = DataSource::embedded();
        for name in [DELTA_FILE, TABLE1_FILE, KB_FILE] {
            assert!(!src.shipped(name).unwrap().is_empty());
        }
        assert!(src.shipped("nope.json").is_err());
        assert!(src.optional("wt-73.json").is_none());
    }

    #[test]
    fn directory_without_files_is_an_error() {
        let src = DataSource::dir("/nonexistent-hforge-dir");
        assert!(matches!(src.shipped(DELTA_FILE), Err(Error::MissingData(_))));
    }
}
