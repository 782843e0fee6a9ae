//! Recursive maintenance of the reciprocal (dual) family.
//!
//! For atoms `a_1..a_k` spanning `V_k`, the duals `d_1..d_k` satisfy
//! `<a_m, d_n> = delta_mn` and `P_k = sum_n |a_n><d_n|` is the *orthogonal*
//! projector onto `V_k`. Adding `a_{k+1}` only needs its residual
//! `psi = a_{k+1} - P_k a_{k+1}`:
//!
//! ```text
//! d_{k+1}' = psi / ||psi||^2
//! d_n'     = d_n - d_{k+1}' * <a_{k+1}, d_n>      n = 1..k
//! ```
//!
//! No Gram matrix is formed or inverted.

use crate::error::{Error, Result};
use crate::grid::{dot, Grid, SampledFunction};

/// Default relative threshold below which a residual counts as zero.
pub const DEFAULT_DEPENDENCE_TOL: f64 = 1e-12;

/// One version of the atom family together with its duals.
///
/// Values are immutable; [`DualFamily::insert_atom`] returns a new version and
/// leaves the receiver untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFamily {
    grid: Grid,
    atoms: Vec<SampledFunction>,
    duals: Vec<SampledFunction>,
    residual_norms_sq: Vec<f64>,
    dependence_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionStatus {
    Accepted,
    /// The candidate lies in the current span to within the dependence tolerance.
    RejectedDependent,
}

#[derive(Debug, Clone)]
pub struct InsertionOutcome {
    pub status: InsertionStatus,
    /// `||psi||^2` of the candidate's residual, reported for rejections too.
    pub residual_norm_sq: f64,
    /// The candidate's component orthogonal to the previous span.
    pub residual: SampledFunction,
    /// New version on acceptance, the unchanged input family on rejection.
    pub family: DualFamily,
}

impl InsertionOutcome {
    pub fn accepted(&self) -> bool {
        self.status == InsertionStatus::Accepted
    }
}

impl DualFamily {
    /// Empty family on `grid`. `dependence_tol` must lie strictly inside (0, 1).
    pub fn new(grid: Grid, dependence_tol: f64) -> Result<Self> {
        if !(dependence_tol > 0.0 && dependence_tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "dependence tolerance must be in (0, 1), got {dependence_tol}"
            )));
        }
        Ok(DualFamily {
            grid,
            atoms: Vec::new(),
            duals: Vec::new(),
            residual_norms_sq: Vec::new(),
            dependence_tol,
        })
    }

    /// Builds a family by inserting `atoms` in order, skipping dependent ones.
    pub fn from_atoms<'a>(
        grid: Grid,
        dependence_tol: f64,
        atoms: impl IntoIterator<Item = &'a SampledFunction>,
    ) -> Result<Self> {
        let mut family = DualFamily::new(grid, dependence_tol)?;
        for atom in atoms {
            family = family.insert_atom(atom)?.family;
        }
        Ok(family)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Number of accepted atoms.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[SampledFunction] {
        &self.atoms
    }

    pub fn duals(&self) -> &[SampledFunction] {
        &self.duals
    }

    /// `||psi_j||^2` recorded when atom `j` was accepted.
    pub fn residual_norms_sq(&self) -> &[f64] {
        &self.residual_norms_sq
    }

    pub fn dependence_tol(&self) -> f64 {
        self.dependence_tol
    }

    /// `<d_n, f>` for every dual. These are the expansion coefficients of `P_k f`.
    pub fn dual_coefficients(&self, f: &SampledFunction) -> Result<Vec<f64>> {
        self.grid.ensure_same(f.grid())?;
        let step = self.grid.step();
        Ok(self
            .duals
            .iter()
            .map(|d| step * dot(d.values(), f.values()))
            .collect())
    }

    /// `P_k f` through the `sum_n a_n <d_n, f>` form of the projector.
    pub fn apply_projector(&self, f: &SampledFunction) -> Result<SampledFunction> {
        let coefficients = self.dual_coefficients(f)?;
        Ok(self.combine_atoms(&coefficients))
    }

    /// `candidate - P_k candidate`. For an empty family this is the candidate itself.
    pub fn compute_residual(&self, candidate: &SampledFunction) -> Result<SampledFunction> {
        let coefficients = self.dual_coefficients(candidate)?;
        Ok(self.residual_with(candidate, &coefficients))
    }

    fn residual_with(&self, candidate: &SampledFunction, coefficients: &[f64]) -> SampledFunction {
        let mut psi = candidate.values().to_vec();
        for (c, atom) in coefficients.iter().zip(&self.atoms) {
            for (p, a) in psi.iter_mut().zip(atom.values()) {
                *p -= c * a;
            }
        }
        SampledFunction::from_parts(self.grid, psi)
    }

    pub(crate) fn combine_atoms(&self, coefficients: &[f64]) -> SampledFunction {
        let mut acc = vec![0.0; self.grid.points()];
        for (c, atom) in coefficients.iter().zip(&self.atoms) {
            for (s, a) in acc.iter_mut().zip(atom.values()) {
                *s += c * a;
            }
        }
        SampledFunction::from_parts(self.grid, acc)
    }

    /// Tries to enlarge the family by `candidate`.
    ///
    /// A candidate whose residual satisfies `||psi||^2 <= tol * ||candidate||^2`
    /// is reported as [`InsertionStatus::RejectedDependent`] and the family is
    /// returned unchanged. Rejection is a status, not an error.
    pub fn insert_atom(&self, candidate: &SampledFunction) -> Result<InsertionOutcome> {
        let psi = self.compute_residual(candidate)?;
        Ok(self.insert_with_residual(candidate, psi, false))
    }

    fn insert_with_residual(
        &self,
        candidate: &SampledFunction,
        psi: SampledFunction,
        force: bool,
    ) -> InsertionOutcome {
        let residual_norm_sq = psi.norm_sq();
        let dependent = residual_norm_sq <= self.dependence_tol * candidate.norm_sq();
        if dependent && !(force && residual_norm_sq > 0.0) {
            return InsertionOutcome {
                status: InsertionStatus::RejectedDependent,
                residual_norm_sq,
                residual: psi,
                family: self.clone(),
            };
        }

        let new_dual = psi.scaled(1.0 / residual_norm_sq);
        let step = self.grid.step();
        let mut duals = Vec::with_capacity(self.len() + 1);
        for dual in &self.duals {
            let overlap = step * dot(candidate.values(), dual.values());
            let values = dual
                .values()
                .iter()
                .zip(new_dual.values())
                .map(|(d, n)| d - overlap * n)
                .collect();
            duals.push(SampledFunction::from_parts(self.grid, values));
        }
        duals.push(new_dual);

        let mut atoms = self.atoms.clone();
        atoms.push(candidate.clone());
        let mut residual_norms_sq = self.residual_norms_sq.clone();
        residual_norms_sq.push(residual_norm_sq);

        InsertionOutcome {
            status: InsertionStatus::Accepted,
            residual_norm_sq,
            residual: psi,
            family: DualFamily {
                grid: self.grid,
                atoms,
                duals,
                residual_norms_sq,
                dependence_tol: self.dependence_tol,
            },
        }
    }

    /// `max_{m,n} |<a_m, d_n> - delta_mn|`; zero for an empty family.
    pub fn biorthogonality_defect(&self) -> f64 {
        let step = self.grid.step();
        let mut worst: f64 = 0.0;
        for (m, atom) in self.atoms.iter().enumerate() {
            for (n, dual) in self.duals.iter().enumerate() {
                let target = if m == n { 1.0 } else { 0.0 };
                let value = step * dot(atom.values(), dual.values());
                worst = worst.max((value - target).abs());
            }
        }
        worst
    }

    /// Rebuilds the duals by replaying the insertions with a second
    /// orthogonalisation pass on every residual.
    ///
    /// The replay is returned only if its biorthogonality defect does not exceed
    /// the current one; otherwise the family is returned as is.
    pub fn refresh_duals(&self) -> DualFamily {
        if self.len() <= 1 {
            return self.clone();
        }
        let mut rebuilt = DualFamily {
            grid: self.grid,
            atoms: Vec::with_capacity(self.len()),
            duals: Vec::with_capacity(self.len()),
            residual_norms_sq: Vec::with_capacity(self.len()),
            dependence_tol: self.dependence_tol,
        };
        for atom in &self.atoms {
            let first = rebuilt.residual_with(atom, &rebuilt.dual_coefficients_unchecked(atom));
            let second =
                rebuilt.residual_with(&first, &rebuilt.dual_coefficients_unchecked(&first));
            rebuilt = rebuilt.insert_with_residual(atom, second, true).family;
        }
        if rebuilt.len() == self.len()
            && rebuilt.biorthogonality_defect() <= self.biorthogonality_defect()
        {
            rebuilt
        } else {
            self.clone()
        }
    }

    fn dual_coefficients_unchecked(&self, f: &SampledFunction) -> Vec<f64> {
        let step = self.grid.step();
        self.duals
            .iter()
            .map(|d| step * dot(d.values(), f.values()))
            .collect()
    }
}
