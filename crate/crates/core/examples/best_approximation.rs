//! Best approximation of a target, with the coefficients carried forward by
//! the recursion as atoms are added, checked against a fresh solve.
//!
//! ```bash
//! cargo run -p biortho --example best_approximation
//! ```

use biortho::{
    approximation_error_curve, build_dictionary, direct_coefficients, project, update_coefficients,
    DictionarySpec, DualFamily, Grid, SampledFunction, DEFAULT_DEPENDENCE_TOL,
};

fn main() -> biortho::Result<()> {
    let grid = Grid::new(-5.0, 7.0, 1201)?;
    let atoms = build_dictionary(&DictionarySpec::mexican_hat(5, grid))?;
    let target =
        SampledFunction::from_fn(grid, |t| (-(t - 1.7).powi(2) / 3.0).exp() * (2.0 * t).cos());

    let mut states = vec![DualFamily::new(grid, DEFAULT_DEPENDENCE_TOL)?];
    let mut coefficients = Vec::new();
    for atom in &atoms {
        let outcome = states.last().unwrap().insert_atom(atom)?;
        coefficients =
            update_coefficients(&coefficients, &outcome.family, &target, &outcome.residual)?;
        states.push(outcome.family);
        println!("k = {}: {:+.6?}", coefficients.len(), coefficients);
    }

    let direct = direct_coefficients(&atoms, &target)?;
    let gap = coefficients
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("max gap to the Gram solve: {gap:.2e}");

    let result = project(states.last().unwrap(), &target)?;
    println!(
        "||f|| = {:.6}, ||Pf|| = {:.6}, ||f - Pf|| = {:.6}",
        target.norm(),
        result.projection.norm(),
        result.residual_norm
    );

    println!("\nresidual by family size:");
    for (k, r) in approximation_error_curve(&states, &target)? {
        println!("  {k}  {r:.6}");
    }
    Ok(())
}
