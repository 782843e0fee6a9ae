//! Direct (non-recursive) duals through the Gram matrix and its spectrum.
//!
//! This is the reference path used to check the recursive engine. The Gram
//! matrix `G[m][n] = <a_m, a_n>` is diagonalised with cyclic Jacobi rotations
//! and inverted only through `G^-1 = sum_n eta_n eta_n^T / lambda_n`.

use crate::error::{Error, Result};
use crate::grid::{linear_combination, Grid, SampledFunction};

/// Smallest admissible `lambda_min / lambda_max` before a Gram matrix is treated as singular.
pub const ILL_CONDITIONED_RATIO: f64 = 1e-13;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this fraction of `||G||_F`.
pub const JACOBI_TOLERANCE: f64 = 1e-14;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense symmetric `k x k` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    k: usize,
    entries: Vec<f64>,
}

impl GramMatrix {
    /// Builds a matrix from rows, symmetrising it as `(M + M^T) / 2`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidInput("empty Gram matrix".into()));
        }
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput("Gram matrix must be square".into()));
        }
        let mut entries: Vec<f64> = rows.iter().flatten().copied().collect();
        symmetrise(&mut entries, k);
        Ok(GramMatrix { k, entries })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.entries[m * self.k + n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.k).map(<[f64]>::to_vec).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.k)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Eigendecomposition without the conditioning check of [`spectrum`].
    pub fn eigen(&self) -> Result<GramSpectrum> {
        let (eigenvalues, eigenvectors) = jacobi_eigen(&self.entries, self.k)?;
        let lambda_max = eigenvalues[0];
        let lambda_min = eigenvalues[self.k - 1];
        let condition_number = if lambda_min > 0.0 {
            lambda_max / lambda_min
        } else {
            f64::INFINITY
        };
        Ok(GramSpectrum {
            k: self.k,
            eigenvalues,
            eigenvectors,
            condition_number,
        })
    }
}

fn symmetrise(entries: &mut [f64], k: usize) {
    for m in 0..k {
        for n in (m + 1)..k {
            let avg = 0.5 * (entries[m * k + n] + entries[n * k + m]);
            entries[m * k + n] = avg;
            entries[n * k + m] = avg;
        }
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSpectrum {
    k: usize,
    eigenvalues: Vec<f64>,
    /// Row-major `k x k`; column `n` is the eigenvector of `eigenvalues[n]`.
    eigenvectors: Vec<f64>,
    condition_number: f64,
}

impl GramSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Component `i` of eigenvector `n`.
    pub fn eigenvector_component(&self, i: usize, n: usize) -> f64 {
        self.eigenvectors[i * self.k + n]
    }

    pub fn eigenvector(&self, n: usize) -> Vec<f64> {
        (0..self.k)
            .map(|i| self.eigenvector_component(i, n))
            .collect()
    }

    /// `lambda_max / lambda_min`, infinite when `lambda_min <= 0`.
    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    /// `sum_n eta_n (eta_n . x) / lambda_n`.
    pub fn apply_inverse(&self, x: &[f64]) -> Vec<f64> {
        let k = self.k;
        let mut out = vec![0.0; k];
        for n in 0..k {
            let proj: f64 = (0..k)
                .map(|i| self.eigenvector_component(i, n) * x[i])
                .sum();
            let scale = proj / self.eigenvalues[n];
            for (i, o) in out.iter_mut().enumerate() {
                *o += scale * self.eigenvector_component(i, n);
            }
        }
        out
    }

    /// `||G - sum_n lambda_n eta_n eta_n^T||_F`.
    pub fn reconstruction_error(&self, g: &GramMatrix) -> f64 {
        let k = self.k;
        let mut err = 0.0;
        for i in 0..k {
            for j in 0..k {
                let r: f64 = (0..k)
                    .map(|n| {
                        self.eigenvalues[n]
                            * self.eigenvector_component(i, n)
                            * self.eigenvector_component(j, n)
                    })
                    .sum();
                err += (g.get(i, j) - r).powi(2);
            }
        }
        err.sqrt()
    }

    /// `max |<eta_m, eta_n> - delta_mn|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let k = self.k;
        let mut worst: f64 = 0.0;
        for m in 0..k {
            for n in 0..k {
                let dot: f64 = (0..k)
                    .map(|i| self.eigenvector_component(i, m) * self.eigenvector_component(i, n))
                    .sum();
                let target = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi eigensolver for a symmetric row-major matrix.
///
/// Returns eigenvalues sorted in descending order with the matching eigenvector
/// matrix (eigenvectors in columns, row-major storage).
fn jacobi_eigen(matrix: &[f64], k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; k * k];
    for i in 0..k {
        v[i * k + i] = 1.0;
    }
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_TOLERANCE * scale;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    s += a[i * k + j] * a[i * k + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..k {
            for q in (p + 1)..k {
                let apq = a[p * k + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- A J
                for i in 0..k {
                    let aip = a[i * k + p];
                    let aiq = a[i * k + q];
                    a[i * k + p] = c * aip - s * aiq;
                    a[i * k + q] = s * aip + c * aiq;
                }
                // A <- J^T A
                for j in 0..k {
                    let apj = a[p * k + j];
                    let aqj = a[q * k + j];
                    a[p * k + j] = c * apj - s * aqj;
                    a[q * k + j] = s * apj + c * aqj;
                }
                a[p * k + q] = 0.0;
                a[q * k + p] = 0.0;
                // V <- V J
                for i in 0..k {
                    let vip = v[i * k + p];
                    let viq = v[i * k + q];
                    v[i * k + p] = c * vip - s * viq;
                    v[i * k + q] = s * vip + c * viq;
                }
            }
        }
        converged = off_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| a[j * k + j].total_cmp(&a[i * k + i]));
    let eigenvalues = order.iter().map(|&i| a[i * k + i]).collect();
    let mut vectors = vec![0.0; k * k];
    for (col, &src) in order.iter().enumerate() {
        for i in 0..k {
            vectors[i * k + col] = v[i * k + src];
        }
    }
    Ok((eigenvalues, vectors))
}

fn common_grid(atoms: &[SampledFunction]) -> Result<Grid> {
    let first = atoms
        .first()
        .ok_or_else(|| Error::InvalidInput("atom list is empty".into()))?;
    let grid = *first.grid();
    for atom in &atoms[1..] {
        grid.ensure_same(atom.grid())?;
    }
    Ok(grid)
}

/// Gram matrix of `atoms` under the quadrature inner product.
pub fn gram(atoms: &[SampledFunction]) -> Result<GramMatrix> {
    common_grid(atoms)?;
    let k = atoms.len();
    let mut entries = vec![0.0; k * k];
    for m in 0..k {
        for n in 0..k {
            entries[m * k + n] = atoms[m].inner(&atoms[n])?;
        }
    }
    symmetrise(&mut entries, k);
    Ok(GramMatrix { k, entries })
}

/// Eigendecomposition of `g`, failing with [`Error::IllConditioned`] when
/// `lambda_min <= 1e-13 * lambda_max`.
pub fn spectrum(g: &GramMatrix) -> Result<GramSpectrum> {
    let spec = g.eigen()?;
    let lambda_max = spec.eigenvalues[0];
    let lambda_min = spec.eigenvalues[spec.k - 1];
    if lambda_max <= 0.0 || lambda_min <= ILL_CONDITIONED_RATIO * lambda_max {
        return Err(Error::IllConditioned {
            lambda_min,
            lambda_max,
        });
    }
    Ok(spec)
}

/// Duals `d_n = sum_m (G^-1)_{nm} a_m`, with `G^-1` taken from the spectrum.
pub fn direct_duals(atoms: &[SampledFunction]) -> Result<Vec<SampledFunction>> {
    let grid = common_grid(atoms)?;
    let spec = spectrum(&gram(atoms)?)?;
    let k = atoms.len();
    (0..k)
        .map(|n| {
            let mut unit = vec![0.0; k];
            unit[n] = 1.0;
            // G^-1 is symmetric, so its n-th row equals G^-1 e_n.
            let row = spec.apply_inverse(&unit);
            linear_combination(grid, &row, atoms)
        })
        .collect()
}

/// Least-squares coefficients `c = G^-1 b` with `b_m = <a_m, f>`.
pub fn direct_coefficients(atoms: &[SampledFunction], f: &SampledFunction) -> Result<Vec<f64>> {
    let grid = common_grid(atoms)?;
    grid.ensure_same(f.grid())?;
    let spec = spectrum(&gram(atoms)?)?;
    let rhs = atoms
        .iter()
        .map(|a| a.inner(f))
        .collect::<Result<Vec<f64>>>()?;
    Ok(spec.apply_inverse(&rhs))
}

/// `sum_n a_n <d_n, f>` with oracle duals.
pub fn direct_projection(
    atoms: &[SampledFunction],
    f: &SampledFunction,
) -> Result<SampledFunction> {
    let grid = common_grid(atoms)?;
    let c = direct_coefficients(atoms, f)?;
    linear_combination(grid, &c, atoms)
}

/// Eigenfunctions `phi_n = sum_m eta_n[m] a_m / sqrt(lambda_n)` of the Gram operator.
///
/// These are orthonormal in the function inner product whenever the spectrum is exact.
pub fn lifted_eigenfunctions(
    atoms: &[SampledFunction],
    spec: &GramSpectrum,
) -> Result<Vec<SampledFunction>> {
    let grid = common_grid(atoms)?;
    if spec.k != atoms.len() {
        return Err(Error::InvalidInput(format!(
            "spectrum of size {} for {} atoms",
            spec.k,
            atoms.len()
        )));
    }
    (0..spec.k)
        .map(|n| {
            let scale = 1.0 / spec.eigenvalues[n].sqrt();
            let coeffs: Vec<f64> = spec.eigenvector(n).iter().map(|c| c * scale).collect();
            linear_combination(grid, &coeffs, atoms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid2() -> Grid {
        Grid::new(0.0, 1.0, 2).unwrap()
    }

    fn f2(a: f64, b: f64) -> SampledFunction {
        SampledFunction::new(grid2(), vec![a, b]).unwrap()
    }

    #[test]
    fn gram_of_orthonormal_pair_is_identity() {
        let g = gram(&[f2(1.0, 0.0), f2(0.0, 1.0)]).unwrap();
        assert_eq!(g.rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn gram_two_point_case() {
        let g = gram(&[f2(1.0, 0.0), f2(1.0, 1.0)]).unwrap();
        assert_eq!(g.rows(), vec![vec![1.0, 1.0], vec![1.0, 2.0]]);
    }

    #[test]
    fn gram_rejects_empty_and_mismatched() {
        assert!(matches!(gram(&[]), Err(Error::InvalidInput(_))));
        let other = SampledFunction::zeros(Grid::new(0.0, 1.0, 3).unwrap());
        assert!(matches!(
            gram(&[f2(1.0, 0.0), other]),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn spectrum_of_identity() {
        let g = GramMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let s = spectrum(&g).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0]);
        assert_eq!(s.condition_number(), 1.0);
    }

    #[test]
    fn spectrum_two_by_two_closed_form() {
        let g = GramMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = spectrum(&g).unwrap();
        let root5 = 5f64.sqrt();
        assert!((s.eigenvalues()[0] - (3.0 + root5) / 2.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - (3.0 - root5) / 2.0).abs() < 1e-14);
        assert!(s.orthonormality_defect() < 1e-14);
        assert!(s.reconstruction_error(&g) < 1e-14);
    }

    #[test]
    fn rank_deficient_is_ill_conditioned() {
        let g = GramMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        match spectrum(&g) {
            Err(Error::IllConditioned { lambda_min, .. }) => assert!(lambda_min.abs() < 1e-14),
            other => panic!("expected IllConditioned, got {other:?}"),
        }
        assert_eq!(g.eigen().unwrap().condition_number(), f64::INFINITY);
    }

    #[test]
    fn jacobi_on_larger_matrix() {
        // Symmetric tridiagonal with known spectrum 2 - 2 cos(j pi / (k + 1)).
        let k = 8;
        let rows: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match (i as i64 - j as i64).abs() {
                        0 => 2.0,
                        1 => -1.0,
                        _ => 0.0,
                    })
                    .collect()
            })
            .collect();
        let g = GramMatrix::from_rows(&rows).unwrap();
        let s = spectrum(&g).unwrap();
        let mut expected: Vec<f64> = (1..=k)
            .map(|j| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / (k + 1) as f64).cos())
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in s.eigenvalues().iter().zip(&expected) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        assert!(s.orthonormality_defect() < 1e-13);
        assert!(s.reconstruction_error(&g) < 1e-13 * s.eigenvalues()[0]);
    }

    #[test]
    fn direct_duals_single_atom() {
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        let a = SampledFunction::new(g, vec![2.0, 2.0, 0.0]).unwrap();
        let d = direct_duals(&[a]).unwrap();
        assert_eq!(d[0].values(), &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn direct_duals_two_point_case() {
        let d = direct_duals(&[f2(1.0, 0.0), f2(1.0, 1.0)]).unwrap();
        for (got, want) in d[0].values().iter().zip([1.0, -1.0]) {
            assert!((got - want).abs() <= 1e-14);
        }
        for (got, want) in d[1].values().iter().zip([0.0, 1.0]) {
            assert!((got - want).abs() <= 1e-14);
        }
    }

    #[test]
    fn direct_duals_of_orthonormal_atoms_are_atoms() {
        let atoms = [f2(1.0, 0.0), f2(0.0, 1.0)];
        let d = direct_duals(&atoms).unwrap();
        assert_eq!(d, atoms);
    }

    #[test]
    fn direct_coefficients_examples() {
        let atoms = [f2(1.0, 0.0), f2(1.0, 1.0)];
        let c = direct_coefficients(&atoms, &atoms[0]).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-14 && c[1].abs() < 1e-14);

        let c = direct_coefficients(&atoms, &f2(3.0, 5.0)).unwrap();
        assert!((c[0] + 2.0).abs() <= 1e-14 && (c[1] - 5.0).abs() <= 1e-14);
        let g = gram(&atoms).unwrap();
        let gc = g.apply(&c);
        assert!((gc[0] - 3.0).abs() <= 1e-13 && (gc[1] - 8.0).abs() <= 1e-13);

        let g3 = Grid::new(0.0, 2.0, 3).unwrap();
        let atoms3 = [SampledFunction::new(g3, vec![1.0, 0.0, 0.0]).unwrap()];
        let orth = SampledFunction::new(g3, vec![0.0, 4.0, -1.0]).unwrap();
        assert_eq!(direct_coefficients(&atoms3, &orth).unwrap(), vec![0.0]);
    }

    #[test]
    fn direct_paths_propagate_ill_conditioning() {
        let a = f2(1.0, 2.0);
        assert!(matches!(
            direct_duals(&[a.clone(), a.scaled(3.0)]),
            Err(Error::IllConditioned { .. })
        ));
        assert!(matches!(
            direct_coefficients(&[a.clone(), a.scaled(3.0)], &a),
            Err(Error::IllConditioned { .. })
        ));
    }
}
