//! Input data files: one numeric column, optional single header line.

use std::io::Read;
use std::path::Path;

use crate::CliError;

/// Reads the numeric column from `path` (`-` means stdin).
pub fn read_column(path: &Path) -> Result<Vec<f64>, CliError> {
    let shown = path.display().to_string();
    let text = if shown == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Core(scanstat::Error::Io(format!("stdin: {e}"))))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Core(scanstat::Error::Io(format!("{shown}: {e}"))))?
    };
    parse_column(&text, &shown)
}

/// Parses one value per line. The first non-empty line may be a textual
/// header; any later non-numeric line is an error. Returns the values in
/// file order (possibly empty).
pub fn parse_column(text: &str, origin: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    let mut saw_data_or_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if !saw_data_or_header => {} // tolerated header line
            Err(e) => {
                return Err(CliError::Parse(format!(
                    "{origin}:{}: expected a number, got {line:?}: {e}",
                    idx + 1
                )))
            }
        }
        saw_data_or_header = true;
    }
    Ok(values)
}
