//! File-producing commands behind the `biortho` binary.
//!
//! Every command takes a [`RunConfig`] and writes CSV files named
//! `<out><file>.csv`, where `out` is a plain string prefix (`results/` or
//! `results/run1_`). Output is sequential and deterministic: the same
//! configuration produces byte-identical files.

use std::fs;
use std::path::PathBuf;

use thiserror::Error;

use crate::approximation::{approximation_error_curve, project};
use crate::csv::{
    read_function_from_path, write_functions_to_path, write_indexed_rows_to_path, CsvError,
};
use crate::dictionary::{build_dictionary, DictionarySpec};
use crate::engine::{DualFamily, InsertionStatus, DEFAULT_DEPENDENCE_TOL};
use crate::grid::{Grid, SampledFunction};
use crate::verify::{run_verification, VerificationReport, VerifyOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Process exit status: every error is a usage or I/O failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_start: f64,
    pub grid_end: f64,
    pub grid_points: usize,
    pub atom_count: usize,
    pub dependence_tol: f64,
    /// Output prefix, joined to file names by plain concatenation.
    pub out: String,
    /// Target CSV for `project`.
    pub target: Option<PathBuf>,
    /// 1-based dual whose evolution over versions `duals` records.
    pub trace_dual: Option<usize>,
    /// `verify`: offer `2 a_1 + a_2` to the finished family.
    pub inject_dependent: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_start: -5.0,
            grid_end: 7.0,
            grid_points: 1201,
            atom_count: 5,
            dependence_tol: DEFAULT_DEPENDENCE_TOL,
            out: String::new(),
            target: None,
            trace_dual: None,
            inject_dependent: false,
        }
    }
}

impl RunConfig {
    pub fn grid(&self) -> Result<Grid, CliError> {
        Ok(Grid::new(self.grid_start, self.grid_end, self.grid_points)?)
    }

    pub fn output_path(&self, file: &str) -> PathBuf {
        PathBuf::from(format!("{}{}", self.out, file))
    }

    fn dictionary(&self, grid: Grid) -> Result<Vec<SampledFunction>, CliError> {
        Ok(build_dictionary(&DictionarySpec::mexican_hat(
            self.atom_count,
            grid,
        ))?)
    }

    fn ensure_out_dir(&self) -> Result<(), CliError> {
        let probe = self.output_path("x");
        if let Some(parent) = probe.parent() {
            if !parent.as_os_str().is_empty() && !parent.is_dir() {
                return Err(CliError::Usage(format!(
                    "output directory {} does not exist",
                    parent.display()
                )));
            }
        }
        Ok(())
    }
}

/// One row per offered atom: 1-based position, `[residual_norm_sq]`, outcome.
type InsertionLog = Vec<(usize, Vec<f64>, InsertionStatus)>;

/// Successive family versions `0..=k`, with the residual recorded at each accepted insertion.
fn grow(
    grid: Grid,
    tol: f64,
    atoms: &[SampledFunction],
) -> Result<(Vec<DualFamily>, InsertionLog), CliError> {
    let mut states = vec![DualFamily::new(grid, tol)?];
    let mut log = Vec::new();
    for (j, atom) in atoms.iter().enumerate() {
        let out = states.last().unwrap().insert_atom(atom)?;
        log.push((j + 1, vec![out.residual_norm_sq], out.status));
        if out.accepted() {
            states.push(out.family);
        }
    }
    Ok((states, log))
}

/// `atoms.csv`: the dictionary samples, one column per atom.
pub fn cmd_dict(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    config.ensure_out_dir()?;
    let grid = config.grid()?;
    let atoms = config.dictionary(grid)?;
    let headers: Vec<String> = (1..=atoms.len()).map(|n| format!("a{n}")).collect();
    let path = config.output_path("atoms.csv");
    write_functions_to_path(
        &path,
        &grid,
        &headers.iter().map(String::as_str).collect::<Vec<_>>(),
        &atoms.iter().collect::<Vec<_>>(),
    )?;
    Ok(vec![path])
}

/// `duals.csv` with the final duals and `insertions.csv` with one row per
/// offered atom (`k,residual_norm_sq,accepted`). With `trace_dual = Some(n)`
/// also writes `dual<n>_trace.csv`, the n-th dual in every version that has it.
pub fn cmd_duals(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    config.ensure_out_dir()?;
    let grid = config.grid()?;
    let atoms = config.dictionary(grid)?;
    let (states, log) = grow(grid, config.dependence_tol, &atoms)?;
    let family = states.last().unwrap();
    let mut written = Vec::new();

    let headers: Vec<String> = (1..=family.len()).map(|n| format!("d{n}")).collect();
    let path = config.output_path("duals.csv");
    write_functions_to_path(
        &path,
        &grid,
        &headers.iter().map(String::as_str).collect::<Vec<_>>(),
        &family.duals().iter().collect::<Vec<_>>(),
    )?;
    written.push(path);

    let rows: Vec<(usize, Vec<f64>)> = log
        .into_iter()
        .map(|(k, mut v, status)| {
            v.push(if status == InsertionStatus::Accepted {
                1.0
            } else {
                0.0
            });
            (k, v)
        })
        .collect();
    let path = config.output_path("insertions.csv");
    write_indexed_rows_to_path(&path, &["k", "residual_norm_sq", "accepted"], &rows)?;
    written.push(path);

    if let Some(n) = config.trace_dual {
        if n == 0 || n > family.len() {
            return Err(CliError::Usage(format!(
                "--trace must be between 1 and {}",
                family.len()
            )));
        }
        let versions: Vec<&DualFamily> = states.iter().filter(|s| s.len() >= n).collect();
        let headers: Vec<String> = versions.iter().map(|s| format!("k{}", s.len())).collect();
        let columns: Vec<&SampledFunction> = versions.iter().map(|s| &s.duals()[n - 1]).collect();
        let path = config.output_path(&format!("dual{n}_trace.csv"));
        write_functions_to_path(
            &path,
            &grid,
            &headers.iter().map(String::as_str).collect::<Vec<_>>(),
            &columns,
        )?;
        written.push(path);
    }
    Ok(written)
}

/// Projects the `--target` CSV onto the dictionary.
///
/// Writes `coefficients.csv` (`n,coefficient`) for the full family and
/// `residual_curve.csv` (`k,residual_norm`) over every version.
pub fn cmd_project(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let target_path = config
        .target
        .as_ref()
        .ok_or_else(|| CliError::Usage("project needs --target <csv>".into()))?;
    config.ensure_out_dir()?;
    let grid = config.grid()?;
    let target = read_function_from_path(target_path, &grid)?;
    let atoms = config.dictionary(grid)?;
    let (states, _) = grow(grid, config.dependence_tol, &atoms)?;

    let result = project(states.last().unwrap(), &target)?;
    let rows: Vec<(usize, Vec<f64>)> = result
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, c)| (n + 1, vec![*c]))
        .collect();
    let coeff_path = config.output_path("coefficients.csv");
    write_indexed_rows_to_path(&coeff_path, &["n", "coefficient"], &rows)?;

    let curve = approximation_error_curve(&states, &target)?;
    let rows: Vec<(usize, Vec<f64>)> = curve.into_iter().map(|(k, r)| (k, vec![r])).collect();
    let curve_path = config.output_path("residual_curve.csv");
    write_indexed_rows_to_path(&curve_path, &["k", "residual_norm"], &rows)?;
    Ok(vec![coeff_path, curve_path])
}

/// Versions of the first dual plotted in the figure: after 1, 3 and 5 atoms.
pub const FIGURE_VERSIONS: [usize; 3] = [1, 3, 5];

/// `fig1.csv` (`t,value`: the first atom) and `fig2.csv`
/// (`t,dual1_k1,dual1_k3,dual1_k5`: the first dual after 1, 3 and 5 insertions).
/// Versions beyond the configured atom count are omitted.
pub fn cmd_figures(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    config.ensure_out_dir()?;
    let grid = config.grid()?;
    let atoms = config.dictionary(grid)?;
    let (states, _) = grow(grid, config.dependence_tol, &atoms)?;

    let fig1 = config.output_path("fig1.csv");
    write_functions_to_path(&fig1, &grid, &["value"], &[&atoms[0]])?;

    let mut headers = Vec::new();
    let mut columns = Vec::new();
    for k in FIGURE_VERSIONS {
        if let Some(state) = states.iter().find(|s| s.len() == k) {
            headers.push(format!("dual1_k{k}"));
            columns.push(&state.duals()[0]);
        }
    }
    let fig2 = config.output_path("fig2.csv");
    write_functions_to_path(
        &fig2,
        &grid,
        &headers.iter().map(String::as_str).collect::<Vec<_>>(),
        &columns,
    )?;
    Ok(vec![fig1, fig2])
}

/// Runs the self-check suite and writes `verify_report.csv`
/// (`check,defect,tolerance,passed`). Exit status comes from
/// [`VerificationReport::passed`].
pub fn cmd_verify(config: &RunConfig) -> Result<VerificationReport, CliError> {
    config.ensure_out_dir()?;
    let report = run_verification(&VerifyOptions {
        grid: config.grid()?,
        atom_count: config.atom_count,
        dependence_tol: config.dependence_tol,
        targets: 20,
        inject_dependent: config.inject_dependent,
    })?;
    let path = config.output_path("verify_report.csv");
    let mut text = String::from("check,defect,tolerance,passed\n");
    for c in &report.checks {
        text.push_str(&format!(
            "{},{},{},{}\n",
            c.name,
            crate::csv::format_value(c.defect),
            crate::csv::format_value(c.tolerance),
            c.passed()
        ));
    }
    fs::write(&path, text).map_err(|source| CsvError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(report)
}
