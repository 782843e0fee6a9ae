//! Write the first atom and the first dual after 1, 3 and 5 insertions as CSV,
//! ready for any plotting tool.
//!
//! ```bash
//! cargo run -p biortho --example figures -- /tmp/hats_
//! ```

use biortho::cli::{cmd_figures, RunConfig};

fn main() {
    let out = std::env::args().nth(1).unwrap_or_default();
    let config = RunConfig {
        out,
        ..RunConfig::default()
    };
    match cmd_figures(&config) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
