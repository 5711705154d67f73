use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::CliError;

/// Writes `content` to `path`, or to standard output for `-`.
pub fn emit(path: &Path, content: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        let mut stdout = io::stdout().lock();
        stdout
            .write_all(content.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))
    } else {
        fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
