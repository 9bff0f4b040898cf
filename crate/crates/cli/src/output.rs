//! Run-directory layout and file helpers.

use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const SUBDIRS: [&str; 5] = ["checkpoints", "history", "tables", "curves", "figures"];

pub fn ensure_layout(out: &Path) -> Result<(), CliError> {
    for sub in SUBDIRS {
        fs::create_dir_all(out.join(sub))
            .map_err(|e| CliError::io(format!("cannot create {}: {e}", out.display())))?;
    }
    Ok(())
}

pub fn checkpoint_path(out: &Path, index: usize) -> PathBuf {
    out.join("checkpoints").join(format!("resample_{index:02}.json"))
}

pub fn diverged_checkpoint_path(out: &Path, index: usize) -> PathBuf {
    out.join("checkpoints")
        .join(format!("resample_{index:02}.diverged.json"))
}

pub fn history_path(out: &Path, index: usize) -> PathBuf {
    out.join("history").join(format!("resample_{index:02}.csv"))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

/// File-name slug for a feature name: lowercase, spaces to underscores.
pub fn feature_slug(name: &str) -> String {
    name.to_lowercase()
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect()
}
