//! Write every catalog preset as JSON into a directory (default ./presets).

use std::fs;
use std::path::PathBuf;

use recmat::catalog::{preset, PRESETS};


fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "presets".into()));
    fs::create_dir_all(&dir)?;
    for name in PRESETS {
        let file = preset(name)?;
        fs::write(dir.join(format!("{name}.json")), file.to_json())?;
    }
    println!("wrote {} presets to {}", PRESETS.len(), dir.display());
    Ok(())
}
