//! Best approximation of a target in the span of a [`DualFamily`].

use crate::engine::DualFamily;
use crate::error::{Error, Result};
use crate::grid::{dot, SampledFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// Expansion coefficients `c_n = <d_n, f>`.
    pub coefficients: Vec<f64>,
    /// `P_k f = sum_n c_n a_n`.
    pub projection: SampledFunction,
    /// `||f - P_k f||`, measured directly.
    pub residual_norm: f64,
    /// Number of atoms in the family that produced this result.
    pub family_version: usize,
}

/// Orthogonal projection of `f` onto the span of the family's atoms.
pub fn project(family: &DualFamily, f: &SampledFunction) -> Result<ProjectionResult> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let coefficients = family.dual_coefficients(f)?;
    let projection = family.combine_atoms(&coefficients);
    let residual_norm = f.sub(&projection)?.norm();
    Ok(ProjectionResult {
        coefficients,
        projection,
        residual_norm,
        family_version: family.len(),
    })
}

/// Extends the best-approximation coefficients after one accepted insertion.
///
/// `prev` holds the `k` coefficients for the family before the insertion,
/// `family_after_insert` has `k + 1` atoms and `psi` is the residual that
/// insertion recorded. With `r = <psi, f> / ||psi||^2`:
///
/// ```text
/// c_n'     = c_n - <d_n^old, a_{k+1}> * r    n = 1..k
/// c_{k+1}' = r
/// ```
///
/// The old overlaps `<d_n^old, a_{k+1}>` are the coordinates of
/// `a_{k+1} - psi` in `V_k`, recovered with the new duals.
pub fn update_coefficients(
    prev: &[f64],
    family_after_insert: &DualFamily,
    f: &SampledFunction,
    psi: &SampledFunction,
) -> Result<Vec<f64>> {
    let k = prev.len();
    if family_after_insert.len() != k + 1 {
        return Err(Error::InvalidInput(format!(
            "{} previous coefficients need a family of {} atoms, got {}",
            k,
            k + 1,
            family_after_insert.len()
        )));
    }
    let grid = family_after_insert.grid();
    grid.ensure_same(f.grid())?;
    grid.ensure_same(psi.grid())?;

    let psi_norm_sq = psi.norm_sq();
    if psi_norm_sq == 0.0 {
        return Err(Error::InvalidInput("residual has zero norm".into()));
    }
    let ratio = psi.inner(f)? / psi_norm_sq;

    let step = grid.step();
    let new_atom = &family_after_insert.atoms()[k];
    let in_span: Vec<f64> = new_atom
        .values()
        .iter()
        .zip(psi.values())
        .map(|(a, p)| a - p)
        .collect();

    let mut next = Vec::with_capacity(k + 1);
    for (c, dual) in prev.iter().zip(family_after_insert.duals()) {
        let overlap = step * dot(dual.values(), &in_span);
        next.push(c - overlap * ratio);
    }
    next.push(ratio);
    Ok(next)
}

/// `(k, ||f - P_k f||)` for each family version. An empty version yields `||f||`.
pub fn approximation_error_curve(
    family_states: &[DualFamily],
    f: &SampledFunction,
) -> Result<Vec<(usize, f64)>> {
    family_states
        .iter()
        .map(|family| {
            if family.is_empty() {
                family.grid().ensure_same(f.grid())?;
                Ok((0, f.norm()))
            } else {
                project(family, f).map(|r| (family.len(), r.residual_norm))
            }
        })
        .collect()
}

/// `sum_{n < terms} a_n <d_n, f>` using only the first `terms` duals of `family`.
///
/// For `terms < family.len()` this is generally *not* the orthogonal
/// projection onto the first `terms` atoms, since those duals were built for
/// the larger span.
pub fn truncated_expansion(
    family: &DualFamily,
    f: &SampledFunction,
    terms: usize,
) -> Result<SampledFunction> {
    if terms > family.len() {
        return Err(Error::InvalidInput(format!(
            "cannot keep {terms} terms of a {}-atom family",
            family.len()
        )));
    }
    let mut coefficients = family.dual_coefficients(f)?;
    for c in coefficients.iter_mut().skip(terms) {
        *c = 0.0;
    }
    Ok(family.combine_atoms(&coefficients))
}
