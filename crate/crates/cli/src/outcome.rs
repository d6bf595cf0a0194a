use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

pub const EXIT_OK: i32 = 0;
pub const EXIT_AUDIT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// What a finished command produced.
#[derive(Debug, Default)]
pub struct CommandOutcome {
    pub code: i32,
    pub reports: Vec<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable files, schema violations.
    Input(String),
    /// The physics did not hold up: failed audit or infeasible run.
    Audit(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Audit(_) => EXIT_AUDIT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Audit(m) => f.write_str(m),
        }
    }
}

pub type CliResult = Result<CommandOutcome, CliError>;

/// Loads a JSON document, reporting the field path of the first mismatch.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        CliError::Input(format!(
            "{}: field `{}`: {}",
            path.display(),
            e.path(),
            e.inner()
        ))
    })
}

pub fn write_report(dir: &Path, name: &str, body: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, body)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// Six significant digits for human-facing output.
pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}
