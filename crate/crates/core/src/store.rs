//! JSON persistence for classifications: a self-describing document
//! format, atomic file writes, and an optional on-disk result cache keyed
//! by `(d, l, method, format_version)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::{Classification, EquivClass, Method};
use crate::error::Error;
use crate::gpm::Gpm;
use crate::set::GbsSet;

/// Bumped whenever the document layout changes incompatibly.
pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory. Unset or empty
/// disables the on-disk cache.
pub const CACHE_DIR_ENV: &str = "GBSCLASS_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error("unsupported format_version {0}")]
    FormatVersion(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub representative: Vec<[u32; 2]>,
    pub size: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Vec<[u32; 2]>>>,
}

/// The on-disk form of a [`Classification`]. Serialization is
/// deterministic: field order is fixed and every list is already sorted,
/// so equal classifications produce byte-identical documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub format_version: u32,
    pub d: u32,
    pub l: usize,
    pub method: Method,
    pub universe_size: u64,
    pub classes: Vec<ClassDoc>,
}

fn set_to_pairs(s: &GbsSet) -> Vec<[u32; 2]> {
    s.members().iter().map(|g| [g.x_exp(), g.z_exp()]).collect()
}

fn pairs_to_set(d: u32, pairs: &[[u32; 2]]) -> Result<GbsSet, Error> {
    GbsSet::canonicalize(pairs.iter().map(|&[m, n]| Gpm::new(d, m, n)))
}

impl ClassificationDoc {
    pub fn from_classification(c: &Classification) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            d: c.d,
            l: c.l,
            method: c.method,
            universe_size: c.universe_size,
            classes: c
                .classes
                .iter()
                .map(|class| ClassDoc {
                    representative: set_to_pairs(&class.representative),
                    size: class.size,
                    members: class
                        .members
                        .as_ref()
                        .map(|members| members.iter().map(set_to_pairs).collect()),
                })
                .collect(),
        }
    }

    pub fn into_classification(self) -> Result<Classification, StoreError> {
        if self.format_version != FORMAT_VERSION {
            return Err(StoreError::FormatVersion(self.format_version));
        }
        let classes = self
            .classes
            .into_iter()
            .map(|class| {
                Ok(EquivClass {
                    representative: pairs_to_set(self.d, &class.representative)?,
                    size: class.size,
                    members: class
                        .members
                        .map(|members| {
                            members
                                .iter()
                                .map(|m| pairs_to_set(self.d, m))
                                .collect::<Result<Vec<_>, Error>>()
                        })
                        .transpose()?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Classification {
            d: self.d,
            l: self.l,
            method: self.method,
            universe_size: self.universe_size,
            classes,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    /// Writes via a temporary file in the target directory followed by a
    /// rename, so readers never observe a partial document.
    pub fn write_atomic(&self, path: &Path) -> Result<(), StoreError> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
        let mut tmp = match dir {
            Some(parent) => {
                fs::create_dir_all(parent)?;
                tempfile::NamedTempFile::new_in(parent)?
            }
            None => tempfile::NamedTempFile::new_in(".")?,
        };
        tmp.write_all(self.to_json_string().as_bytes())?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, StoreError> {
        let raw = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&raw)?)
    }
}

/// The configured cache directory, if any.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn cache_file_name(d: u32, l: usize, method: Method) -> String {
    format!("classify-d{d}-l{l}-{method}-v{FORMAT_VERSION}.json")
}

/// Loads a cached document when present and well formed; any problem is
/// treated as a miss.
pub fn load_cached(dir: &Path, d: u32, l: usize, method: Method) -> Option<ClassificationDoc> {
    let path = dir.join(cache_file_name(d, l, method));
    let doc = ClassificationDoc::read(&path).ok()?;
    (doc.format_version == FORMAT_VERSION && doc.d == d && doc.l == l && doc.method == method)
        .then_some(doc)
}

pub fn store_cached(dir: &Path, doc: &ClassificationDoc) -> Result<PathBuf, StoreError> {
    fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(doc.d, doc.l, doc.method));
    doc.write_atomic(&path)?;
    Ok(path)
}
