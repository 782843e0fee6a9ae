use proptest::prelude::*;

use biortho::csv::{read_function, write_functions};
use biortho::oracle::{direct_duals, direct_projection, gram, spectrum};
use biortho::{
    build_dictionary, inner, norm_sq, project, DictionarySpec, DualFamily, Grid, SampledFunction,
};

const TOL: f64 = 1e-12;

fn grid() -> Grid {
    Grid::new(-5.0, 7.0, 601).unwrap()
}

fn samples(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, len)
}

fn small_function() -> impl Strategy<Value = SampledFunction> {
    let g = Grid::new(0.0, 3.0, 16).unwrap();
    samples(16).prop_map(move |v| SampledFunction::new(g, v).unwrap())
}

/// Seeded synthetic dictionary of `count` atoms with condition number <= 1e6.
fn conditioned(count: usize, seed: u64) -> Option<Vec<SampledFunction>> {
    let atoms =
        build_dictionary(&DictionarySpec::random_smooth(count, grid(), seed, 0.25)).unwrap();
    let cond = spectrum(&gram(&atoms).ok()?).ok()?.condition_number();
    (cond <= 1e6).then_some(atoms)
}

fn target(seed: u64) -> SampledFunction {
    build_dictionary(&DictionarySpec::random_smooth(
        1,
        grid(),
        seed ^ 0xabcdef,
        1.3,
    ))
    .unwrap()
    .remove(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_is_bilinear_and_symmetric(a in small_function(), b in small_function(), c in small_function()) {
        let ab = a.axpy(1.0, &b).unwrap();
        let lhs = inner(&ab, &c).unwrap() - inner(&a, &c).unwrap() - inner(&b, &c).unwrap();
        prop_assert!(lhs.abs() <= 1e-12 * (a.norm() + b.norm()) * c.norm() + 1e-300);
        prop_assert_eq!(inner(&a, &b).unwrap(), inner(&b, &a).unwrap());
    }

    #[test]
    fn cauchy_schwarz(a in small_function(), b in small_function()) {
        let ab = inner(&a, &b).unwrap();
        prop_assert!(ab * ab <= norm_sq(&a) * norm_sq(&b) * (1.0 + 1e-12));
    }

    #[test]
    fn norm_sq_vanishes_only_for_zero(a in small_function(), idx in 0usize..16) {
        let mut values = vec![0.0; 16];
        prop_assert_eq!(norm_sq(&SampledFunction::new(*a.grid(), values.clone()).unwrap()), 0.0);
        values[idx] = a.values()[idx];
        let single = SampledFunction::new(*a.grid(), values).unwrap();
        prop_assert_eq!(norm_sq(&single) == 0.0, a.values()[idx] == 0.0);
    }

    #[test]
    fn csv_round_trip_is_bit_exact(values in samples(16)) {
        let g = Grid::new(-1.0, 2.0, 16).unwrap();
        let f = SampledFunction::new(g, values).unwrap();
        let mut buf = Vec::new();
        write_functions(&mut buf, &g, &["value"], &[&f]).unwrap();
        let back = read_function(buf.as_slice(), &g).unwrap();
        for (x, y) in f.values().iter().zip(back.values()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Biorthogonality holds for every block of the pairing matrix at every
    /// insertion step: old atoms vs old duals, the new atom vs old duals, old
    /// atoms vs the new dual, and the new atom vs the new dual.
    #[test]
    fn biorthogonality_at_every_step(count in 2usize..=30, seed in any::<u64>()) {
        let Some(atoms) = conditioned(count, seed) else { return Ok(()); };
        let mut family = DualFamily::new(grid(), TOL).unwrap();
        for atom in &atoms {
            let out = family.insert_atom(atom).unwrap();
            prop_assert!(out.accepted());
            family = out.family;
            let k = family.len() - 1;
            let pairing = |m: usize, n: usize| inner(&family.atoms()[m], &family.duals()[n]).unwrap();
            for m in 0..k {
                for n in 0..k {
                    let want = if m == n { 1.0 } else { 0.0 };
                    prop_assert!((pairing(m, n) - want).abs() <= 1e-8);
                }
                prop_assert!(pairing(k, m).abs() <= 1e-8);
                prop_assert!(pairing(m, k).abs() <= 1e-8);
            }
            prop_assert!((pairing(k, k) - 1.0).abs() <= 1e-8);
        }
        prop_assert!(family.biorthogonality_defect() <= 1e-8);
    }

    #[test]
    fn projector_properties(count in 1usize..=12, seed in any::<u64>(), coeff_seed in any::<u64>()) {
        let Some(atoms) = conditioned(count, seed) else { return Ok(()); };
        let family = DualFamily::from_atoms(grid(), TOL, &atoms).unwrap();
        let f = target(seed);
        let g = target(seed.wrapping_add(1));
        let (nf, ng) = (f.norm(), g.norm());

        let pf = family.apply_projector(&f).unwrap();
        let ppf = family.apply_projector(&pf).unwrap();
        prop_assert!(ppf.sub(&pf).unwrap().norm() <= 1e-8 * nf);

        let pg = family.apply_projector(&g).unwrap();
        let gap = (inner(&pf, &g).unwrap() - inner(&f, &pg).unwrap()).abs();
        prop_assert!(gap <= 1e-8 * nf * ng);

        let resid = f.sub(&pf).unwrap();
        for a in family.atoms() {
            prop_assert!(inner(a, &resid).unwrap().abs() <= 1e-8 * nf * a.norm());
        }

        let coeffs: Vec<f64> = (0..count)
            .map(|n| ((coeff_seed >> (n % 60)) & 0xff) as f64 / 64.0 - 2.0)
            .collect();
        let member = biortho::grid::linear_combination(grid(), &coeffs, &atoms).unwrap();
        let reproduced = family.apply_projector(&member).unwrap();
        prop_assert!(reproduced.sub(&member).unwrap().norm() <= 1e-8 * member.norm().max(1e-300));
    }

    #[test]
    fn projector_is_independent_of_insertion_order(count in 2usize..=10, seed in any::<u64>(), rot in 0usize..10) {
        let Some(atoms) = conditioned(count, seed) else { return Ok(()); };
        let mut shuffled = atoms.clone();
        shuffled.rotate_left(rot % count);
        shuffled.swap(0, count - 1);
        let a = DualFamily::from_atoms(grid(), TOL, &atoms).unwrap();
        let b = DualFamily::from_atoms(grid(), TOL, &shuffled).unwrap();
        let f = target(seed);
        let gap = a.apply_projector(&f).unwrap().sub(&b.apply_projector(&f).unwrap()).unwrap().norm();
        prop_assert!(gap <= 1e-8 * f.norm());
    }

    #[test]
    fn recursive_duals_match_oracle(count in 1usize..=12, seed in any::<u64>()) {
        let Some(atoms) = conditioned(count, seed) else { return Ok(()); };
        let family = DualFamily::from_atoms(grid(), TOL, &atoms).unwrap();
        let oracle = direct_duals(&atoms).unwrap();
        for (d, o) in family.duals().iter().zip(&oracle) {
            prop_assert!(d.sub(o).unwrap().norm() <= 1e-8);
        }
        let f = target(seed);
        let direct = direct_projection(&atoms, &f).unwrap();
        let recursive = family.apply_projector(&f).unwrap();
        prop_assert!(direct.sub(&recursive).unwrap().norm() <= 1e-8 * f.norm());
    }

    #[test]
    fn projection_minimises_distance(count in 1usize..=8, seed in any::<u64>(),
                                     perturb in prop::collection::vec(-1.0f64..1.0, 8)) {
        let Some(atoms) = conditioned(count, seed) else { return Ok(()); };
        let family = DualFamily::from_atoms(grid(), TOL, &atoms).unwrap();
        let f = target(seed);
        let best = project(&family, &f).unwrap();
        let shifted: Vec<f64> = best.coefficients.iter().zip(&perturb).map(|(c, d)| c + d).collect();
        let other = biortho::grid::linear_combination(grid(), &shifted, &atoms).unwrap();
        prop_assert!(f.sub(&other).unwrap().norm() >= best.residual_norm - 1e-10);

        let lhs = best.residual_norm.powi(2) + best.projection.norm_sq();
        prop_assert!((lhs - f.norm_sq()).abs() <= 1e-8 * f.norm_sq());
        let rebuilt = biortho::grid::linear_combination(grid(), &best.coefficients, &atoms).unwrap();
        prop_assert!(rebuilt.max_abs_diff(&best.projection).unwrap() <= 1e-12);
    }
}
