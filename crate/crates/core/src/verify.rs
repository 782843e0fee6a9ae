//! Self-check suite: runs the library's invariants on a Mexican-hat family and
//! seeded synthetic targets, recording the measured defect of each check.

use std::fmt;

use crate::approximation::{approximation_error_curve, project, update_coefficients};
use crate::dictionary::{build_dictionary, DictionarySpec};
use crate::engine::{DualFamily, InsertionStatus};
use crate::error::Result;
use crate::grid::{linear_combination, Grid, SampledFunction};
use crate::oracle::{direct_coefficients, direct_duals, gram, lifted_eigenfunctions, spectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub defect: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.defect <= self.tolerance
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub events: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn record(&mut self, name: &'static str, defect: f64, tolerance: f64) {
        self.checks.push(Check {
            name,
            defect,
            tolerance,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<4} {:<34} defect {:>10.3e}  tol {:>8.1e}",
                if c.passed() { "ok" } else { "FAIL" },
                c.name,
                c.defect,
                c.tolerance
            )?;
        }
        for e in &self.events {
            writeln!(f, "event: {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub grid: Grid,
    pub atom_count: usize,
    pub dependence_tol: f64,
    /// Number of seeded random targets for the projector checks.
    pub targets: usize,
    /// Also offer the dependent combination `2 a_1 + a_2` to the family.
    pub inject_dependent: bool,
}

fn targets(grid: Grid, count: usize) -> Result<Vec<SampledFunction>> {
    build_dictionary(&DictionarySpec::random_smooth(count, grid, 0x5eed, 1.0))
}

pub fn run_verification(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let grid = opts.grid;
    let atoms = build_dictionary(&DictionarySpec::mexican_hat(opts.atom_count, grid))?;

    let mut states = vec![DualFamily::new(grid, opts.dependence_tol)?];
    let mut residuals = Vec::new();
    for (j, atom) in atoms.iter().enumerate() {
        let out = states.last().unwrap().insert_atom(atom)?;
        if out.status == InsertionStatus::RejectedDependent {
            report.events.push(format!(
                "atom {} rejected as dependent (residual_norm_sq = {:e})",
                j + 1,
                out.residual_norm_sq
            ));
            continue;
        }
        residuals.push(out.residual);
        states.push(out.family);
    }
    let family = states.last().unwrap().clone();

    if opts.inject_dependent && atoms.len() >= 2 {
        let dependent = atoms[0].scaled(2.0).axpy(1.0, &atoms[1])?;
        let out = family.insert_atom(&dependent)?;
        report.events.push(format!(
            "injected 2*a1 + a2: {:?} (residual_norm_sq = {:e}, relative {:e})",
            out.status,
            out.residual_norm_sq,
            out.residual_norm_sq / dependent.norm_sq()
        ));
        let unchanged = out.family == family;
        report.record(
            "dependent_injection_rejected",
            if out.status == InsertionStatus::RejectedDependent && unchanged {
                0.0
            } else {
                1.0
            },
            0.0,
        );
    }

    report.record("biorthogonality", family.biorthogonality_defect(), 1e-8);

    let targets = targets(grid, opts.targets)?;
    let mut idempotence: f64 = 0.0;
    let mut symmetry: f64 = 0.0;
    let mut orthogonality: f64 = 0.0;
    let mut pythagoras: f64 = 0.0;
    let mut recursion: f64 = 0.0;
    let mut monotone: f64 = 0.0;
    let mut order: f64 = 0.0;
    let reversed = DualFamily::from_atoms(grid, opts.dependence_tol, family.atoms().iter().rev())?;
    for (i, f) in targets.iter().enumerate() {
        let g = &targets[(i + 1) % targets.len()];
        let nf = f.norm();
        let pf = family.apply_projector(f)?;
        let ppf = family.apply_projector(&pf)?;
        idempotence = idempotence.max(ppf.sub(&pf)?.norm() / nf);

        let pg = family.apply_projector(g)?;
        let sym = (pf.inner(g)? - f.inner(&pg)?).abs() / (nf * g.norm());
        symmetry = symmetry.max(sym);

        let r = project(&family, f)?;
        let resid = f.sub(&r.projection)?;
        for a in family.atoms() {
            orthogonality = orthogonality.max(a.inner(&resid)?.abs() / (nf * a.norm()));
        }
        let lhs = r.residual_norm.powi(2) + r.projection.norm_sq();
        pythagoras = pythagoras.max((lhs - f.norm_sq()).abs() / f.norm_sq());

        let mut coeffs: Vec<f64> = Vec::new();
        for (state, psi) in states[1..].iter().zip(&residuals) {
            coeffs = update_coefficients(&coeffs, state, f, psi)?;
        }
        let direct = direct_coefficients(family.atoms(), f)?;
        for (a, b) in coeffs.iter().zip(&direct) {
            recursion = recursion.max((a - b).abs());
        }

        let curve = approximation_error_curve(&states, f)?;
        for w in curve.windows(2) {
            monotone = monotone.max(w[1].1 - w[0].1);
        }

        let other = reversed.apply_projector(f)?;
        order = order.max(other.sub(&pf)?.norm() / nf);
    }
    report.record("projector_idempotence", idempotence, 1e-8);
    report.record("projector_self_adjoint", symmetry, 1e-8);
    report.record("residual_orthogonality", orthogonality, 1e-8);
    report.record("pythagoras", pythagoras, 1e-8);
    report.record("coefficient_recursion", recursion, 1e-8);
    report.record("error_curve_monotone", monotone.max(0.0), 1e-10);
    report.record("insertion_order_invariance", order, 1e-8);

    let coeffs: Vec<f64> = (0..family.len()).map(|n| 0.5 + n as f64 * 0.37).collect();
    let member = linear_combination(grid, &coeffs, family.atoms())?;
    let reproduced = family.apply_projector(&member)?;
    report.record(
        "span_reproduction",
        reproduced.sub(&member)?.norm() / member.norm(),
        1e-8,
    );

    let oracle = direct_duals(family.atoms())?;
    let dual_gap = family
        .duals()
        .iter()
        .zip(&oracle)
        .map(|(a, b)| a.sub(b).map(|d| d.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    report.record("oracle_dual_equivalence", dual_gap, 1e-8);

    let g = gram(family.atoms())?;
    let spec = spectrum(&g)?;
    report.record(
        "gram_reconstruction",
        spec.reconstruction_error(&g) / spec.eigenvalues()[0],
        1e-10,
    );
    report.record(
        "eigenvector_orthonormality",
        spec.orthonormality_defect(),
        1e-10,
    );
    let lifted = lifted_eigenfunctions(family.atoms(), &spec)?;
    let mut lift: f64 = 0.0;
    for (m, a) in lifted.iter().enumerate() {
        for (n, b) in lifted.iter().enumerate() {
            let target = if m == n { 1.0 } else { 0.0 };
            lift = lift.max((a.inner(b)? - target).abs());
        }
    }
    report.record("lifted_eigenfunctions_orthonormal", lift, 1e-8);
    report.events.push(format!(
        "gram condition number {:.6e}",
        spec.condition_number()
    ));

    Ok(report)
}
