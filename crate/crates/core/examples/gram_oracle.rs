//! Compute the same duals from the Gram matrix spectrum and compare them with
//! the recursive ones.
//!
//! ```bash
//! cargo run -p biortho --example gram_oracle
//! ```

use biortho::oracle::{direct_duals, gram, spectrum};
use biortho::{build_dictionary, DictionarySpec, DualFamily, Grid, DEFAULT_DEPENDENCE_TOL};

fn main() -> biortho::Result<()> {
    let grid = Grid::new(-5.0, 7.0, 1201)?;
    let atoms = build_dictionary(&DictionarySpec::mexican_hat(5, grid))?;

    let g = gram(&atoms)?;
    println!("Gram matrix:");
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>9.5}")).collect();
        println!("  {}", cells.join(" "));
    }

    let spec = spectrum(&g)?;
    println!("eigenvalues: {:.6?}", spec.eigenvalues());
    println!("condition number: {:.4}", spec.condition_number());

    let oracle = direct_duals(&atoms)?;
    let family = DualFamily::from_atoms(grid, DEFAULT_DEPENDENCE_TOL, &atoms)?;
    for (n, (d, o)) in family.duals().iter().zip(&oracle).enumerate() {
        println!(
            "dual {}: ||recursive - oracle|| = {:.2e}",
            n + 1,
            d.sub(o)?.norm()
        );
    }
    Ok(())
}
