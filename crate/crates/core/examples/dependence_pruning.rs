//! Offer atoms that already lie in the span; they come back as
//! `RejectedDependent` and the family stays as it was.
//!
//! ```bash
//! cargo run -p biortho --example dependence_pruning
//! ```

use biortho::{build_dictionary, DictionarySpec, DualFamily, Grid, InsertionStatus};

fn main() -> biortho::Result<()> {
    let grid = Grid::new(-5.0, 7.0, 1201)?;
    let atoms = build_dictionary(&DictionarySpec::mexican_hat(3, grid))?;

    let mut candidates = atoms.clone();
    candidates.insert(2, atoms[0].scaled(2.0).axpy(1.0, &atoms[1])?);
    candidates.push(atoms[2].scaled(-0.5));

    let mut family = DualFamily::new(grid, 1e-12)?;
    for (i, c) in candidates.iter().enumerate() {
        let outcome = family.insert_atom(c)?;
        let relative = outcome.residual_norm_sq / c.norm_sq();
        match outcome.status {
            InsertionStatus::Accepted => {
                println!("candidate {i}: accepted, relative residual {relative:.3e}")
            }
            InsertionStatus::RejectedDependent => {
                println!("candidate {i}: rejected, relative residual {relative:.3e}")
            }
        }
        family = outcome.family;
    }
    println!("final family has {} atoms", family.len());
    Ok(())
}
