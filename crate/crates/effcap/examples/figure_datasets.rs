//! Writes every named reference dataset as CSV.
//!
//! The same datasets are available from the command line via
//! `effcap figure <id> --out <path>`; this produces all five in one go,
//! into `target/figures/` by default or a directory given as the first
//! argument.
//!
//! ```bash
//! cargo run --example figure_datasets [out_dir]
//! ```

use std::path::PathBuf;

use effcap::cli::{figure_dataset, FIGURE_IDS};

fn main() -> effcap::Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/figures"));
    std::fs::create_dir_all(&out_dir)?;

    for id in FIGURE_IDS {
        let dataset = figure_dataset(id)?;
        let path = out_dir.join(format!("{id}.csv"));
        dataset.write_to(&path)?;
        println!("{} -> {} rows", path.display(), dataset.row_count());
    }
    Ok(())
}
