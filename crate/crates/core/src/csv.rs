//! Plain CSV output for sampled functions.
//!
//! Every file starts with a header line (`t,value` or `t,c1,c2,...`), has one
//! row per grid point and writes floats with 17 significant digits so values
//! read back bit-exactly. Lines end in `\n`.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::grid::{Grid, SampledFunction};

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("target grid does not match: {0}")]
    GridMismatch(String),
}

impl CsvError {
    fn io(path: &Path, source: io::Error) -> Self {
        CsvError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Shortest form that still round-trips: scientific notation, 17 significant digits.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `t` followed by one column per function. All functions must share `grid`.
pub fn write_functions<W: Write>(
    mut out: W,
    grid: &Grid,
    headers: &[&str],
    columns: &[&SampledFunction],
) -> io::Result<()> {
    assert_eq!(headers.len(), columns.len(), "one header per column");
    assert!(
        columns.iter().all(|c| c.grid() == grid),
        "columns must share the grid"
    );
    write!(out, "t")?;
    for h in headers {
        write!(out, ",{h}")?;
    }
    writeln!(out)?;
    for (i, t) in grid.abscissae().enumerate() {
        write!(out, "{}", format_value(t))?;
        for c in columns {
            write!(out, ",{}", format_value(c.values()[i]))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Writes rows whose first column is an integer index (`k`, `n`, ...).
pub fn write_indexed_rows<W: Write>(
    mut out: W,
    headers: &[&str],
    rows: &[(usize, Vec<f64>)],
) -> io::Result<()> {
    writeln!(out, "{}", headers.join(","))?;
    for (index, values) in rows {
        write!(out, "{index}")?;
        for v in values {
            write!(out, ",{}", format_value(*v))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_functions_to_path(
    path: &Path,
    grid: &Grid,
    headers: &[&str],
    columns: &[&SampledFunction],
) -> Result<(), CsvError> {
    let file = File::create(path).map_err(|e| CsvError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_functions(&mut out, grid, headers, columns).map_err(|e| CsvError::io(path, e))?;
    out.flush().map_err(|e| CsvError::io(path, e))
}

pub fn write_indexed_rows_to_path(
    path: &Path,
    headers: &[&str],
    rows: &[(usize, Vec<f64>)],
) -> Result<(), CsvError> {
    let file = File::create(path).map_err(|e| CsvError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_indexed_rows(&mut out, headers, rows).map_err(|e| CsvError::io(path, e))?;
    out.flush().map_err(|e| CsvError::io(path, e))
}

/// Reads the first value column of a `t,...` file sampled on `grid`.
///
/// The `t` column must reproduce the grid abscissae to within `1e-9 * step`.
pub fn read_function<R: Read>(input: R, grid: &Grid) -> Result<SampledFunction, CsvError> {
    let reader = BufReader::new(input);
    let mut values = Vec::with_capacity(grid.points());
    let tol = 1e-9 * grid.step();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CsvError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            let first = line.split(',').next().unwrap_or("").trim();
            if first != "t" {
                return Err(CsvError::Parse {
                    line: line_no,
                    message: "expected header starting with `t`".into(),
                });
            }
            saw_header = true;
            continue;
        }
        let mut fields = line.split(',');
        let parse = |field: Option<&str>, what: &str| -> Result<f64, CsvError> {
            let field = field.ok_or_else(|| CsvError::Parse {
                line: line_no,
                message: format!("missing {what} column"),
            })?;
            field.trim().parse::<f64>().map_err(|e| CsvError::Parse {
                line: line_no,
                message: format!("{what}: {e}"),
            })
        };
        let t = parse(fields.next(), "t")?;
        let v = parse(fields.next(), "value")?;
        let i = values.len();
        if i >= grid.points() {
            return Err(CsvError::GridMismatch(format!(
                "more than {} rows",
                grid.points()
            )));
        }
        let expected = grid.abscissa(i);
        if (t - expected).abs() > tol {
            return Err(CsvError::GridMismatch(format!(
                "row {} has t = {t}, grid expects {expected}",
                i + 1
            )));
        }
        values.push(v);
    }
    if values.len() != grid.points() {
        return Err(CsvError::GridMismatch(format!(
            "{} rows for a {}-point grid",
            values.len(),
            grid.points()
        )));
    }
    SampledFunction::new(*grid, values).map_err(|e| CsvError::Parse {
        line: 0,
        message: e.to_string(),
    })
}

pub fn read_function_from_path(path: &Path, grid: &Grid) -> Result<SampledFunction, CsvError> {
    let file = File::open(path).map_err(|e| CsvError::io(path, e))?;
    read_function(file, grid)
}
