pub mod analyze;
pub mod degrade;
pub mod eval;
pub mod fit;
pub mod mask_demo;
pub mod resample;
pub mod synth;

use anyhow::{bail, Result};
use motioncurve::Vec3;

/// Parse "x,y,z" into a vector.
pub fn parse_vec3(text: &str) -> Result<Vec3> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        bail!("expected three comma-separated numbers, got {text:?}");
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<f64>()?;
    }
    Ok(Vec3::new(v[0], v[1], v[2]))
}

/// Parse a comma-separated list of values.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',').map(|p| Ok(p.trim().parse::<T>()?)).collect()
}

/// Write a CSV string to the given path with a trailing newline.
pub fn write_text(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}
