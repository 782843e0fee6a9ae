//! Grow the five-atom Mexican-hat family one atom at a time and watch the
//! residual norms and the biorthogonality defect.
//!
//! ```bash
//! cargo run -p biortho --example recursive_duals
//! ```

use biortho::{build_dictionary, DictionarySpec, DualFamily, Grid, DEFAULT_DEPENDENCE_TOL};

fn main() -> biortho::Result<()> {
    let grid = Grid::new(-5.0, 7.0, 1201)?;
    let atoms = build_dictionary(&DictionarySpec::mexican_hat(5, grid))?;

    let mut family = DualFamily::new(grid, DEFAULT_DEPENDENCE_TOL)?;
    println!(" k   ||psi_k||^2   ||a_k||^2   defect");
    for atom in &atoms {
        let outcome = family.insert_atom(atom)?;
        family = outcome.family;
        println!(
            "{:2}   {:.6}      {:.6}    {:.2e}",
            family.len(),
            outcome.residual_norm_sq,
            atom.norm_sq(),
            family.biorthogonality_defect()
        );
    }

    println!(
        "\nnorm of the first dual in the final family: {:.6}",
        family.duals()[0].norm()
    );
    Ok(())
}
