//! Writes the bundled fixtures under `fixtures/`.

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for (path, text) in augcat_core::bundled::fixture_files()? {
        let full = root.join(&path);
        std::fs::create_dir_all(full.parent().expect("fixture paths have a parent"))?;
        std::fs::write(&full, text)?;
        println!("{path}");
    }
    Ok(())
}
