//! Number formatting for data products.

/// Fixed 17-significant-digit scientific notation: losslessly round-trips
/// any finite f64 and keeps outputs byte-stable across runs.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write a file through a temporary sibling so interrupted runs never leave
/// a half-written product behind.
pub fn write_atomic(path: &std::path::Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}
