//! Keeping only the first few terms of a larger dual expansion is not the
//! orthogonal projection onto those atoms.
//!
//! ```bash
//! cargo run -p biortho --example truncation_pitfall
//! ```

use biortho::{
    build_dictionary, project, truncated_expansion, DictionarySpec, DualFamily, Grid,
    DEFAULT_DEPENDENCE_TOL,
};

fn main() -> biortho::Result<()> {
    let grid = Grid::new(-5.0, 7.0, 1201)?;
    let atoms = build_dictionary(&DictionarySpec::mexican_hat(5, grid))?;
    let full = DualFamily::from_atoms(grid, DEFAULT_DEPENDENCE_TOL, &atoms)?;

    for keep in 1..5 {
        let small = DualFamily::from_atoms(grid, DEFAULT_DEPENDENCE_TOL, &atoms[..keep])?;
        let f = &atoms[keep];
        let truncated = f.sub(&truncated_expansion(&full, f, keep)?)?.norm();
        let proper = project(&small, f)?.residual_norm;
        println!(
            "target a{}: first {keep} of 5 duals -> {truncated:.6}, {keep}-atom family -> {proper:.6}",
            keep + 1
        );
    }
    Ok(())
}
