//! Deterministic file emission: atomic writes and fixed-precision number
//! formatting, so identical runs produce byte-identical outputs.

use std::fs;
use std::io;
use std::path::Path;

/// Write a file via a temporary sibling and rename, so readers never see
/// a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

/// Twelve significant digits in scientific notation; locale-independent.
pub fn sig12(value: f64) -> String {
    format!("{value:.11e}")
}

/// CSV cell for a flag column.
pub fn flag(value: bool) -> &'static str {
    if value {
        "1"
    } else {
        "0"
    }
}

/// `println!` that tolerates a closed stdout, so piping into `head` ends
/// the program instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}
pub(crate) use outln;
