//! Atomic file output: every file is first written to a temporary sibling and
//! renamed into place, so readers never observe a half-written file and
//! failed runs leave no debris. Commands compute every output buffer before
//! the first write, so validation or computation errors produce no files.

use mertens_core::Error;
use std::fs;
use std::path::{Path, PathBuf};

/// One fully rendered output file waiting to be committed to disk.
pub struct Rendered {
    pub name: &'static str,
    pub bytes: Vec<u8>,
}

impl Rendered {
    pub fn new(name: &'static str, bytes: Vec<u8>) -> Self {
        Rendered { name, bytes }
    }
}

/// Write one file atomically (temp sibling + rename).
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, Error> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{name}.tmp"));
    let target = dir.join(name);
    fs::write(&tmp, bytes)?;
    if let Err(err) = fs::rename(&tmp, &target) {
        let _ = fs::remove_file(&tmp);
        return Err(err.into());
    }
    Ok(target)
}

/// Commit a batch of rendered files and report each path on stdout.
pub fn commit(dir: &Path, files: &[Rendered]) -> Result<(), Error> {
    for file in files {
        let path = write_atomic(dir, file.name, &file.bytes)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
