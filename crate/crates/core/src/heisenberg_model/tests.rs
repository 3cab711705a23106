use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::special::{laguerre, QuadratureRule};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn el(z: f64, w: &[(f64, f64)]) -> HeisenbergElement {
    HeisenbergElement::new(z, w.iter().map(|&(x, y)| c(x, y)).collect())
}

fn max_entry(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[test]
fn group_law_examples() {
    let g = el(1.0, &[(1.0, 0.0)]);
    let h = el(0.0, &[(0.0, 1.0)]);
    // ½ Im(1 · conj(i)) = -½.
    assert_eq!(g.mul(&h), el(0.5, &[(1.0, 1.0)]));
    assert_eq!(g.mul(&g.inverse()), HeisenbergElement::identity(1));
}

#[test]
fn zero_lambda_and_bad_models_rejected() {
    assert_eq!(SchrodingerModel::new(0.0, 1, 8).unwrap_err(), HeisenbergError::ZeroLambda);
    assert!(SchrodingerModel::new(1.0, 0, 8).is_err());
    assert!(SchrodingerModel::new(1.0, 1, 0).is_err());
    assert!(SchrodingerModel::with_quadrature(1.0, 1, 16, 8).is_err());
}

#[test]
fn identity_and_central_elements() {
    let model = SchrodingerModel::new(1.5, 1, 12).unwrap();
    let id = representation_matrix(&model, &HeisenbergElement::identity(1)).unwrap();
    assert!(max_entry(&(id - DMatrix::identity(12, 12))) < 1e-13);
    let z = 0.7;
    let central = representation_matrix(&model, &HeisenbergElement::central(z, 1)).unwrap();
    let scalar = DMatrix::<Complex64>::identity(12, 12) * Complex64::from_polar(1.0, 1.5 * z);
    assert!(max_entry(&(central - scalar)) < 1e-13);
}

#[test]
fn element_dimension_checked() {
    let model = SchrodingerModel::new(1.0, 2, 4).unwrap();
    let err = representation_matrix(&model, &HeisenbergElement::identity(1)).unwrap_err();
    assert_eq!(err, HeisenbergError::DimensionMismatch { expected: 2, found: 1 });
    let short = nalgebra::DVector::zeros(3);
    assert!(matrix_coefficient(&model, &short, &short, &HeisenbergElement::identity(2)).is_err());
}

#[test]
fn composition_at_32_levels() {
    let model = SchrodingerModel::new(1.0, 1, 32).unwrap();
    let gs = HeisenbergElement::random_batch(1, 100, PI, 1.0, 7);
    for pair in gs.chunks(2) {
        let d = homomorphism_defect(&model, &pair[0], &pair[1], 16).unwrap();
        assert!(d < 1e-8, "defect {d}");
    }
}

#[test]
fn unitarity_defect_shrinks_with_truncation() {
    let g = el(0.3, &[(1.4, -1.1)]);
    let defects: Vec<f64> = [8, 16, 32, 48]
        .iter()
        .map(|&n| unitarity_defect(&SchrodingerModel::new(1.0, 1, n).unwrap(), &g, n / 2).unwrap())
        .collect();
    assert!(defects.windows(2).all(|p| p[1] < p[0]), "{defects:?}");
    assert!(defects[3] < 1e-8);
}

#[test]
fn ground_state_coefficient_is_gaussian() {
    let model = SchrodingerModel::new(1.0, 1, 4).unwrap();
    let h0 = model.basis_vector(&[0]);
    for g in HeisenbergElement::random_batch(1, 20, 3.0, 2.5, 11) {
        let v = matrix_coefficient(&model, &h0, &h0, &g).unwrap();
        assert!((v.norm() - (-g.w_norm_sqr() / 4.0).exp()).abs() < 1e-13);
    }
}

#[test]
fn identity_coefficients() {
    let model = SchrodingerModel::new(2.0, 1, 6).unwrap();
    let (h0, h1) = (model.basis_vector(&[0]), model.basis_vector(&[1]));
    let e = HeisenbergElement::identity(1);
    assert!((matrix_coefficient(&model, &h0, &h0, &e).unwrap() - 1.0).norm() < 1e-14);
    assert!(matrix_coefficient(&model, &h0, &h1, &e).unwrap().norm() < 1e-14);
}

#[test]
fn diagonal_coefficients_are_laguerre() {
    // ⟨h_k, π_λ(0, w) h_k⟩ = L_k(|λ||w|²/2) e^{-|λ||w|²/4}.
    for &lambda in &[0.7, -1.3, 2.0] {
        let model = SchrodingerModel::new(lambda, 1, 10).unwrap();
        for g in HeisenbergElement::random_batch(1, 8, 0.0, 1.5, 3) {
            let r = lambda.abs() * g.w_norm_sqr() / 2.0;
            for k in 0..10 {
                let h = model.basis_vector(&[k]);
                let v = matrix_coefficient(&model, &h, &h, &g).unwrap();
                let expected = laguerre(k, 0.0, r) * (-r / 2.0).exp();
                assert!((v - expected).norm() < 1e-12, "λ={lambda} k={k}: {v} vs {expected}");
            }
        }
    }
}

#[test]
fn off_diagonal_coefficient_magnitudes() {
    // |⟨h_j, D h_k⟩| = √(j!/k!) ρ^{k-j} |L_j^{(k-j)}(ρ²)| e^{-ρ²/2}, ρ² = |λ||w|²/2.
    let model = SchrodingerModel::new(1.2, 1, 8).unwrap();
    let g = el(0.0, &[(0.8, -0.5)]);
    let rho2 = 1.2 * g.w_norm_sqr() / 2.0;
    for j in 0..8 {
        for k in j..8 {
            let v = matrix_coefficient(&model, &model.basis_vector(&[j]), &model.basis_vector(&[k]), &g).unwrap();
            let expected = (factorial(j) / factorial(k)).sqrt()
                * rho2.sqrt().powi((k - j) as i32)
                * laguerre(j, (k - j) as f64, rho2).abs()
                * (-rho2 / 2.0).exp();
            assert!((v.norm() - expected).abs() < 1e-12, "({j},{k})");
        }
    }
}

#[test]
fn central_character_of_coefficients() {
    let model = SchrodingerModel::new(-1.7, 1, 6).unwrap();
    let u = model.basis_vector(&[2]) + model.basis_vector(&[0]) * c(0.0, 1.0);
    let v = model.basis_vector(&[1]);
    let n = el(0.4, &[(0.3, 0.9)]);
    let z = 1.1;
    let base = matrix_coefficient(&model, &u, &v, &n).unwrap();
    let moved = matrix_coefficient(&model, &u, &v, &n.mul(&HeisenbergElement::central(z, 1))).unwrap();
    assert!((moved - Complex64::from_polar(1.0, -1.7 * z) * base).norm() < 1e-13);
}

#[test]
fn coefficient_matches_full_matrix_for_m2() {
    let model = SchrodingerModel::new(0.9, 2, 4).unwrap();
    let g = el(0.2, &[(0.5, -0.3), (-0.7, 0.4)]);
    let full = representation_matrix(&model, &g).unwrap();
    let u = model.basis_vector(&[1, 2]);
    let v = model.basis_vector(&[3, 0]) + model.basis_vector(&[0, 1]) * c(0.5, 0.0);
    let direct = (u.adjoint() * &full * &v)[(0, 0)];
    assert!((matrix_coefficient(&model, &u, &v, &g).unwrap() - direct).norm() < 1e-14);
}

#[test]
fn ground_state_norm_is_inverse_degree() {
    for &lambda in &[2.0, -2.0, 1.0, 3.0] {
        let model = SchrodingerModel::new(lambda, 1, 6).unwrap();
        let h0 = model.basis_vector(&[0]);
        let f = CoefficientFunction::new(&model, h0.clone(), h0).unwrap();
        let r = coefficient_inner_product(&f, &f).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0 / lambda.abs()).norm() < 1e-12, "λ={lambda}: {}", r.value);
    }
    let model = SchrodingerModel::new(2.0, 2, 3).unwrap();
    let h0 = model.basis_vector(&[0, 0]);
    let f = CoefficientFunction::new(&model, h0.clone(), h0).unwrap();
    assert!((coefficient_inner_product(&f, &f).unwrap().value - 0.25).norm() < 1e-12);
}

#[test]
fn orthogonality_of_distinct_coefficients() {
    let model = SchrodingerModel::new(2.0, 1, 6).unwrap();
    let (h0, h1) = (model.basis_vector(&[0]), model.basis_vector(&[1]));
    let a = CoefficientFunction::new(&model, h0.clone(), h0.clone()).unwrap();
    let b = CoefficientFunction::new(&model, h0.clone(), h1.clone()).unwrap();
    assert!(coefficient_inner_product(&a, &b).unwrap().value.norm() < 1e-13);

    let u = (&h0 + &h1 * c(0.0, 2.0)) * c(0.5, 0.0);
    let v = &h1 - &h0 * c(0.3, 0.0);
    let p = CoefficientFunction::new(&model, u.clone(), v.clone()).unwrap();
    let q = CoefficientFunction::new(&model, h1.clone(), v + &h0).unwrap();
    let r = coefficient_inner_product(&p, &q).unwrap();
    assert!((r.value - p.orthogonality_target(&q)).norm() < 1e-12);

    let report = coefficient_orthogonality(&model, 3).unwrap();
    assert_eq!(report.entries.len(), 81);
    assert!(report.max_error < 1e-12 && report.converged);
}

#[test]
fn mixed_central_characters_rejected() {
    let plus = SchrodingerModel::new(1.0, 1, 4).unwrap();
    let minus = plus.conjugate();
    let h0 = plus.basis_vector(&[0]);
    let a = CoefficientFunction::new(&plus, h0.clone(), h0.clone()).unwrap();
    let b = CoefficientFunction::new(&minus, h0.clone(), h0).unwrap();
    assert_eq!(
        coefficient_inner_product(&a, &b).unwrap_err(),
        HeisenbergError::MixedLambda { left: 1.0, right: -1.0 }
    );
}

#[test]
fn conjugate_model_conjugates_matrices() {
    let model = SchrodingerModel::new(1.3, 1, 8).unwrap();
    let g = el(0.5, &[(0.6, -0.2)]);
    let a = representation_matrix(&model, &g).unwrap();
    let b = representation_matrix(&model.conjugate(), &g).unwrap();
    assert!(max_entry(&(a.map(|v| v.conj()) - b)) < 1e-14);
}

/// `b |λ|^{-m} ∫ f(z, 0) e^{iλz} dz` by an independent fine trapezoid rule.
fn trace_oracle(f: &dyn GroupFunction, lambda: f64) -> Complex64 {
    let m = f.m();
    let zero = vec![c(0.0, 0.0); m];
    let rule = QuadratureRule::trapezoid(-20.0, 20.0, 4001);
    let integral: Complex64 =
        rule.nodes.iter().zip(&rule.weights).map(|(&z, &w)| f.eval(z, &zero) * Complex64::from_polar(w, lambda * z)).sum();
    integral * center_density(m) / lambda.abs().powi(m as i32)
}

#[test]
fn gaussian_transform_is_diagonal_with_known_eigenvalues() {
    // Diagonal entries b √(2π) e^{-λ²/2} · ½ (p - q)^k / p^{k+1}, p = ½ + |λ|/4, q = |λ|/2,
    // from integrating L_k(q|w|²) e^{-p|w|²} in polar coordinates.
    let f = GaussianFunction::standard(1);
    let lambda = 1.0;
    let model = SchrodingerModel::new(lambda, 1, 16).unwrap();
    let r = group_fourier(&f, &model, None).unwrap();
    assert!(r.converged, "residual {}", r.residual);
    let (p, q) = (0.5 + lambda / 4.0, lambda / 2.0);
    let pref = center_density(1) * (2.0 * PI).sqrt() * (-lambda * lambda / 2.0).exp();
    for j in 0..16 {
        for k in 0..16 {
            let expected = if j == k { pref * 0.5 * (p - q).powi(k as i32) / p.powi(k as i32 + 1) } else { 0.0 };
            assert!((r.matrix[(j, k)] - expected).norm() < 1e-14, "({j},{k})");
        }
    }
    let trace: Complex64 = (0..16).map(|k| r.matrix[(k, k)]).sum();
    let truncated = trace_oracle(&f, lambda) * (1.0 - ((p - q) / p).powi(16));
    assert!((trace - truncated).norm() < 1e-12 * trace.norm());
}

#[test]
fn odd_function_has_off_diagonal_transform() {
    let f = FnGroupFunction::new(1, Decay::default(), |z, w: &[Complex64]| {
        c(w[0].re * (-z * z / 2.0 - w[0].norm_sqr() / 2.0).exp(), 0.0)
    });
    let model = SchrodingerModel::new(1.0, 1, 16).unwrap();
    let r = group_fourier(&f, &model, None).unwrap();
    let diag = (0..16).map(|k| r.matrix[(k, k)].norm()).fold(0.0, f64::max);
    let off = max_entry(&r.matrix);
    assert!(diag < 1e-15 && off > 1e-3, "diag {diag}, off {off}");
    let trace: Complex64 = (0..16).map(|k| r.matrix[(k, k)]).sum();
    assert!((trace - trace_oracle(&f, 1.0)).norm() < 1e-14);
}

#[test]
fn narrow_bump_approximates_identity() {
    let f = GaussianFunction::bump(1, 0.02);
    let model = SchrodingerModel::new(1.0, 1, 6).unwrap();
    let r = group_fourier(&f, &model, Some(FourierGrid { z_points: 65, x_nodes: 40, y_nodes: 40, s_nodes: 40 })).unwrap();
    assert!(max_entry(&(r.matrix - DMatrix::identity(6, 6))) < 1e-2);
}

#[test]
fn central_translate_multiplies_by_character() {
    let base = GaussianFunction { amplitude: 1.0, z_rate: 0.5, z_center: 0.2, w_rates: vec![(0.5, 0.8)] };
    let z0 = 0.9;
    // n ↦ f(n (z₀, 0)) = f(z + z₀, w).
    let moved = GaussianFunction { z_center: 0.2 - z0, ..base.clone() };
    let model = SchrodingerModel::new(-1.4, 1, 10).unwrap();
    let a = group_fourier(&base, &model, None).unwrap().matrix;
    let b = group_fourier(&moved, &model, None).unwrap().matrix;
    assert!(max_entry(&(b - a * Complex64::from_polar(1.0, 1.4 * z0))) < 1e-13);
}

#[test]
fn transform_of_left_translate() {
    // π(f(g₀ ·)) = π(g₀)⁻¹ π(f): compare on a block well inside the truncation.
    let f = GaussianFunction::standard(1);
    let g0 = el(0.3, &[(0.4, -0.2)]);
    let translated = LeftTranslate { inner: &f, by: g0.clone() };
    let model = SchrodingerModel::new(0.8, 1, 40).unwrap();
    let a = group_fourier(&translated, &model, None).unwrap().matrix;
    let b = representation_matrix(&model, &g0.inverse()).unwrap() * group_fourier(&f, &model, None).unwrap().matrix;
    let block = |m: &DMatrix<Complex64>| m.view((0, 0), (12, 12)).into_owned();
    assert!(max_entry(&(block(&a) - block(&b))) < 1e-12);
}

#[test]
fn m2_transform_trace() {
    let f = GaussianFunction::standard(2);
    let model = SchrodingerModel::new(1.5, 2, 6).unwrap();
    let r = group_fourier(&f, &model, None).unwrap();
    let trace: Complex64 = (0..36).map(|k| r.matrix[(k, k)]).sum();
    let exact = trace_oracle(&f, 1.5);
    // Per axis the tail beyond 6 levels is ((2-λ)/(2+λ))^6.
    let ratio: f64 = (0.5f64 / 3.5).powi(6);
    let truncated = exact * (1.0 - ratio).powi(2);
    assert!((trace - truncated).norm() < 1e-10 * exact.norm(), "{trace} vs {truncated}");
}

#[test]
fn richardson_is_exact_on_quadratics() {
    let ladder = [16, 32, 48];
    let values: Vec<f64> = ladder.iter().map(|&n| 3.0 - 0.8 / n as f64 + 2.0 / (n * n) as f64).collect();
    assert!((richardson_extrapolate(&ladder, &values) - 3.0).abs() < 1e-13);
}

#[test]
fn lambda_grids_cover_the_interval() {
    for grid in [LambdaGrid::default(), LambdaGrid::Trapezoid { max: 8.0, nodes: 257 }] {
        let rule = grid.rule();
        assert!((rule.weights.iter().sum::<f64>() - 16.0).abs() < 1e-12);
        assert!((rule.integrate(|x| x.abs()) - 64.0).abs() < 1e-12);
    }
    assert_eq!(LambdaGrid::default().rule().len(), 256);
}

#[test]
fn plancherel_inversion_is_linear() {
    let opts = PlancherelOptions {
        ladder: vec![8, 12],
        lambda_grid: LambdaGrid::Graded { max: 7.0, levels: 5, points_per_panel: 8 },
        grid: None,
    };
    let f = GaussianFunction::standard(1);
    let a = plancherel_invert(&f, &opts).unwrap();
    let b = plancherel_invert(&f.scaled(-2.5), &opts).unwrap();
    assert!((b.value + 2.5 * a.value).abs() < 1e-12);
    assert!(a.monotone);
    assert!(a.samples_csv().starts_with("lambda,weight,N8,N12\n"));
}

#[test]
fn central_component_separates_variables() {
    // g(z) = e^{-z²/(2s²)} has ∫ g e^{iζz} dz = s√(2π) e^{-s²ζ²/2}.
    let s = 0.7;
    let w: Vec<Vec<Complex64>> = vec![vec![c(0.0, 0.0)], vec![c(0.5, -1.0)]];
    let h = |w: &[Complex64]| (-w[0].norm_sqr()).exp();
    let samples = CentralSamples::from_fn(1, -10.0, 10.0, 401, w.clone(), |z, w| c((-z * z / (2.0 * s * s)).exp() * h(w), 0.0));
    for &zeta in &[0.0, 1.0, -2.5] {
        let comp = central_component(&samples, zeta);
        assert!(comp.warnings.is_empty(), "{:?}", comp.warnings);
        let ghat = center_density(1) * s * (2.0 * PI).sqrt() * (-s * s * zeta * zeta / 2.0).exp();
        for (i, wi) in w.iter().enumerate() {
            for (l, &z) in samples.z.iter().enumerate() {
                let expected = Complex64::from_polar(ghat * h(wi), -zeta * z);
                assert!((comp.values[i][l] - expected).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn z_independent_function_concentrates_at_zero() {
    let samples = CentralSamples::from_fn(1, -20.0, 20.0, 801, vec![vec![c(0.0, 0.0)]], |_, _| c(1.0, 0.0));
    let at_zero = central_component(&samples, 0.0);
    let away = central_component(&samples, 1.3);
    assert!(away.values[0][0].norm() < 0.05 * at_zero.values[0][0].norm());
    assert!(!at_zero.warnings.is_empty());
}

#[test]
fn central_reconstruction_and_warnings() {
    let w = vec![vec![c(0.3, 0.1)]];
    let f = |z: f64, w: &[Complex64]| c((-z * z / 2.0).exp() * (1.0 + w[0].re), 0.0);
    let samples = CentralSamples::from_fn(1, -12.0, 12.0, 241, w, f);
    let zeta = QuadratureRule::trapezoid(-10.0, 10.0, 401);
    let (values, warnings) = central_reconstruct(&samples, &zeta);
    assert!(warnings.is_empty(), "{warnings:?}");
    for (l, &z) in samples.z.iter().enumerate() {
        assert!((values[0][l] - f(z, &[c(0.3, 0.1)])).norm() < 1e-10);
    }
    let coarse = CentralSamples::from_fn(1, -3.0, 3.0, 7, vec![vec![c(0.0, 0.0)]], f);
    let comp = central_component(&coarse, 5.0);
    assert_eq!(comp.warnings.len(), 2, "{:?}", comp.warnings);
}

#[test]
fn intertwiner_residuals() {
    let central = [HeisenbergElement::central(0.8, 1)];
    let r = polarization_intertwiner_check(1.0, 16, &central).unwrap();
    assert!(r.max_residual < 1e-12);
    let shifts = [el(0.0, &[(0.9, 0.0)]), el(0.0, &[(0.0, -0.7)])];
    let r = polarization_intertwiner_check(1.0, 24, &shifts).unwrap();
    assert!(r.max_residual < 1e-10 && r.fourier_unitarity < 1e-12, "{r:?}");
}

#[test]
fn intertwiner_is_symmetric_under_conjugation() {
    let gs = HeisenbergElement::random_batch(1, 5, PI, 1.5, 5);
    let a = polarization_intertwiner_check(1.5, 20, &gs).unwrap();
    let b = polarization_intertwiner_check(-1.5, 20, &gs).unwrap();
    for (x, y) in a.residuals.iter().zip(&b.residuals) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn fourier_matrix_is_diagonal_phase() {
    let model = SchrodingerModel::new(-0.6, 1, 10).unwrap();
    let f = fourier_matrix(&model, 90);
    for j in 0..10 {
        for k in 0..10 {
            // F ψ_k = (−iσ)^k ψ_k.
            let expected = if j == k { c(0.0, 1.0).powi(k as i32) } else { c(0.0, 0.0) };
            assert!((f[(j, k)] - expected).norm() < 1e-12, "({j},{k})");
        }
    }
}

fn element(m: usize) -> impl Strategy<Value = HeisenbergElement> {
    (-3.0..3.0f64, prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), m))
        .prop_map(|(z, w)| HeisenbergElement::new(z, w.into_iter().map(|(x, y)| c(x, y)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_is_associative(a in element(2), b in element(2), g in element(2)) {
        let left = a.mul(&b).mul(&g);
        let right = a.mul(&b.mul(&g));
        prop_assert!((left.z - right.z).abs() < 1e-12);
        prop_assert!(left.w.iter().zip(&right.w).all(|(x, y)| (x - y).norm() < 1e-14));
        prop_assert!(a.mul(&a.inverse()).z.abs() < 1e-15);
    }

    #[test]
    fn representation_is_a_homomorphism(a in element(1), b in element(1)) {
        // |w| up to 2√2 moves level 12 by ~3 levels per factor; 48 levels contain the spread.
        let model = SchrodingerModel::new(0.8, 1, 48).unwrap();
        prop_assert!(homomorphism_defect(&model, &a, &b, 12).unwrap() < 1e-8);
    }

    #[test]
    fn coefficients_transform_under_center(g in element(1), z in -3.0..3.0f64, k in 0usize..5) {
        let model = SchrodingerModel::new(1.3, 1, 5).unwrap();
        let h = model.basis_vector(&[k]);
        let a = matrix_coefficient(&model, &h, &h, &g).unwrap();
        let b = matrix_coefficient(&model, &h, &h, &g.mul(&HeisenbergElement::central(z, 1))).unwrap();
        prop_assert!((b - a * Complex64::from_polar(1.0, 1.3 * z)).norm() < 1e-13);
    }
}
