//! Atom generators: integer-shifted Mexican hats and seeded synthetic families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};

/// `2 / (sqrt(3) * pi^(1/4))`, the value of every Mexican-hat atom at its centre.
pub fn mexican_hat_peak() -> f64 {
    2.0 / (3f64.sqrt() * std::f64::consts::PI.powf(0.25))
}

/// Unshifted profile `peak * exp(-t^2) * (1 - t^2)`.
pub fn mexican_hat(t: f64) -> f64 {
    let t2 = t * t;
    mexican_hat_peak() * (-t2).exp() * (1.0 - t2)
}

/// Atom `n` (1-based) of the shifted family, centred at `t = n - 1`.
///
/// Panics if `n == 0`.
pub fn mexican_hat_atom(n: usize, grid: &Grid) -> SampledFunction {
    assert!(n >= 1, "Mexican-hat atoms are numbered from 1");
    let shift = (n - 1) as f64;
    SampledFunction::from_fn(*grid, |t| mexican_hat(t - shift))
}

#[derive(Debug, Clone, PartialEq)]
pub enum DictionaryKind {
    /// Atoms `1..=count` of the shifted Mexican-hat family.
    MexicanHat,
    /// Sums of Gaussian bumps placed by a seeded generator.
    ///
    /// Atom `j` has a dominant bump near the `j`-th of `count` evenly spaced
    /// centres plus two weaker bumps anywhere on the interior of the grid.
    /// Larger `length_scale` means more overlap and a worse-conditioned family.
    RandomSmooth { seed: u64, length_scale: f64 },
    /// Caller-provided samples, one vector per atom.
    ExplicitValues(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DictionarySpec {
    pub kind: DictionaryKind,
    pub count: usize,
    pub grid: Grid,
}

impl DictionarySpec {
    pub fn mexican_hat(count: usize, grid: Grid) -> Self {
        DictionarySpec {
            kind: DictionaryKind::MexicanHat,
            count,
            grid,
        }
    }

    pub fn random_smooth(count: usize, grid: Grid, seed: u64, length_scale: f64) -> Self {
        DictionarySpec {
            kind: DictionaryKind::RandomSmooth { seed, length_scale },
            count,
            grid,
        }
    }

    pub fn explicit(grid: Grid, values: Vec<Vec<f64>>) -> Self {
        DictionarySpec {
            count: values.len(),
            kind: DictionaryKind::ExplicitValues(values),
            grid,
        }
    }
}

pub fn build_dictionary(spec: &DictionarySpec) -> Result<Vec<SampledFunction>> {
    if spec.count == 0 {
        return Err(Error::InvalidConfig(
            "dictionary needs at least one atom".into(),
        ));
    }
    match &spec.kind {
        DictionaryKind::MexicanHat => Ok((1..=spec.count)
            .map(|n| mexican_hat_atom(n, &spec.grid))
            .collect()),
        DictionaryKind::RandomSmooth { seed, length_scale } => {
            random_smooth(spec.count, spec.grid, *seed, *length_scale)
        }
        DictionaryKind::ExplicitValues(values) => {
            if values.len() != spec.count {
                return Err(Error::InvalidConfig(format!(
                    "count {} does not match {} provided atoms",
                    spec.count,
                    values.len()
                )));
            }
            values
                .iter()
                .map(|v| SampledFunction::new(spec.grid, v.clone()))
                .collect()
        }
    }
}

fn random_smooth(
    count: usize,
    grid: Grid,
    seed: u64,
    length_scale: f64,
) -> Result<Vec<SampledFunction>> {
    if !(length_scale.is_finite() && length_scale > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "length scale must be positive, got {length_scale}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = grid.end() - grid.start();
    let lo = grid.start() + 0.1 * width;
    let hi = grid.end() - 0.1 * width;
    let spacing = (hi - lo) / count as f64;

    let atoms = (0..count)
        .map(|j| {
            let mut bumps = Vec::with_capacity(3);
            let centre = lo + spacing * (j as f64 + 0.5) + rng.gen_range(-0.25..0.25) * spacing;
            bumps.push((1.0, centre, length_scale * rng.gen_range(0.8..1.2)));
            for _ in 0..2 {
                let amplitude = rng.gen_range(-0.3..0.3);
                let c = rng.gen_range(lo..hi);
                bumps.push((amplitude, c, length_scale * rng.gen_range(0.5..1.5)));
            }
            SampledFunction::from_fn(grid, |t| {
                bumps
                    .iter()
                    .map(|&(a, c, s)| a * (-((t - c) / s).powi(2)).exp())
                    .sum()
            })
        })
        .collect();
    Ok(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_grid() -> Grid {
        Grid::new(-5.0, 7.0, 1201).unwrap()
    }

    #[test]
    fn peak_value() {
        let g = Grid::new(-1.0, 1.0, 3).unwrap();
        let a = mexican_hat_atom(1, &g);
        assert!((a.values()[1] - 0.86733).abs() < 1e-5);
        assert_eq!(a.values()[1], mexican_hat_peak());
    }

    #[test]
    fn zero_crossings_at_unit_distance() {
        let g = Grid::new(-1.0, 1.0, 3).unwrap();
        let a = mexican_hat_atom(1, &g);
        assert_eq!(a.values()[0], 0.0);
        assert_eq!(a.values()[2], 0.0);
    }

    #[test]
    fn shifted_atom_is_translate() {
        let g = Grid::new(1.0, 3.0, 3).unwrap();
        let a3 = mexican_hat_atom(3, &g);
        assert_eq!(a3.values()[1], mexican_hat_peak());
        assert_eq!(a3.values()[0], 0.0);
    }

    #[test]
    #[should_panic]
    fn atom_zero_panics() {
        mexican_hat_atom(0, &figure_grid());
    }

    #[test]
    fn mexican_hat_dictionary_norms() {
        // Squared norm of the continuous profile is 11 / (12 sqrt 2).
        let expected = 11.0 / (12.0 * 2f64.sqrt());
        let atoms = build_dictionary(&DictionarySpec::mexican_hat(5, figure_grid())).unwrap();
        assert_eq!(atoms.len(), 5);
        for a in &atoms {
            assert!((a.norm_sq() - expected).abs() < 2e-3);
        }
    }

    #[test]
    fn explicit_passthrough() {
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        let values = vec![vec![1.0, 2.0, 3.0], vec![0.0, -1.0, 0.5]];
        let atoms = build_dictionary(&DictionarySpec::explicit(g, values.clone())).unwrap();
        for (a, v) in atoms.iter().zip(&values) {
            assert_eq!(a.values(), v.as_slice());
        }
        let bad = DictionarySpec::explicit(g, vec![vec![1.0]]);
        assert!(build_dictionary(&bad).is_err());
    }

    #[test]
    fn random_smooth_is_deterministic() {
        let spec = DictionarySpec::random_smooth(6, figure_grid(), 42, 0.8);
        assert_eq!(
            build_dictionary(&spec).unwrap(),
            build_dictionary(&spec).unwrap()
        );
        let other = DictionarySpec::random_smooth(6, figure_grid(), 43, 0.8);
        assert_ne!(
            build_dictionary(&spec).unwrap(),
            build_dictionary(&other).unwrap()
        );
    }

    #[test]
    fn degenerate_specs_are_rejected() {
        assert!(matches!(
            build_dictionary(&DictionarySpec::mexican_hat(0, figure_grid())),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            build_dictionary(&DictionarySpec::random_smooth(3, figure_grid(), 1, 0.0)),
            Err(Error::InvalidConfig(_))
        ));
    }
}
