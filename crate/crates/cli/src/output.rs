//! Number formatting and file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

/// `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// Writes `body` to `path`, or to `stdout` when there is no path.
pub fn emit(path: Option<&Path>, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Output {
            path: p.to_path_buf(),
            source,
        }),
        None => stdout.write_all(body.as_bytes()).map_err(CliError::stdout),
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}
