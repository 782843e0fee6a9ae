//! Many nearly parallel atoms push the recursion towards its rounding limit;
//! `refresh_duals` rebuilds the duals with a second orthogonalisation pass.
//!
//! ```bash
//! cargo run -p biortho --example refresh_drift
//! ```

use biortho::oracle::gram;
use biortho::{DualFamily, Grid, SampledFunction};

fn main() -> biortho::Result<()> {
    let grid = Grid::new(0.0, 10.0, 2001)?;
    let base = SampledFunction::from_fn(grid, |t| (-(t - 5.0).powi(2) / 8.0).exp());
    let atoms: Vec<SampledFunction> = (0..50)
        .map(|j| {
            let c = 0.2 * j as f64;
            let bump = SampledFunction::from_fn(grid, move |t| (-(t - c).powi(2) / 0.02).exp());
            base.axpy(1e-3, &bump)
        })
        .collect::<biortho::Result<_>>()?;

    let cond = gram(&atoms)?
        .eigen()
        .map(|s| s.condition_number())
        .unwrap_or(f64::INFINITY);
    println!("Gram condition number: {cond:.3e}");

    let family = DualFamily::from_atoms(grid, 1e-12, &atoms)?;
    println!("accepted atoms: {}", family.len());
    println!(
        "defect after insertion: {:.3e}",
        family.biorthogonality_defect()
    );
    let refreshed = family.refresh_duals();
    println!(
        "defect after refresh:   {:.3e}",
        refreshed.biorthogonality_defect()
    );
    Ok(())
}
