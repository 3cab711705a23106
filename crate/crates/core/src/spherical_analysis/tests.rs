use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::heisenberg_model::{
    center_density, group_fourier, GaussianFunction, GroupFunction, LambdaGrid, SchrodingerModel,
};

fn heis(z: f64, w: &[(f64, f64)]) -> GroupPoint {
    GroupPoint::Heisenberg(HeisenbergElement::new(z, w.iter().map(|&(x, y)| Complex64::new(x, y)).collect()))
}

fn gaussian_on_heisenberg(n: usize) -> impl Fn(&GroupPoint) -> Complex64 {
    let g = GaussianFunction::standard(n);
    move |p: &GroupPoint| match p {
        GroupPoint::Heisenberg(h) => g.at(h),
        GroupPoint::Euclidean(_) => Complex64::new(f64::NAN, 0.0),
    }
}

/// Closed form of `∫ e^{−z²/2 − |w|²/2} φ_{ζ,m}(g⁻¹) dg` on `H_n`, from
/// `∫_0^∞ e^{−su} L_m^{(α)}(au) u^α du = Γ(m+α+1)/m! · (s−a)^m / s^{m+α+1}`.
fn gaussian_transform_oracle(n: usize, zeta: f64, m: usize) -> f64 {
    let p = 0.5 + zeta.abs() / 4.0;
    let q = zeta.abs() / 2.0;
    let central = center_density(n) * (2.0 * PI).sqrt() * (-zeta * zeta / 2.0).exp();
    central * 0.5f64.powi(n as i32) * (p - q).powi(m as i32) / p.powi((m + n) as i32)
}

#[test]
fn spherical_functions_are_one_at_the_origin() {
    for n in 2..5 {
        let phi = SphericalFunction::bessel(n, 1.7).unwrap();
        assert_eq!(phi.eval(&GroupPoint::origin_euclidean(n)).unwrap(), Complex64::new(1.0, 0.0));
    }
    for (n, m) in [(1, 0), (1, 4), (2, 3), (3, 1)] {
        let phi = SphericalFunction::laguerre(n, -0.8, m).unwrap();
        assert!((phi.eval(&GroupPoint::origin_heisenberg(n)).unwrap() - 1.0).norm() < 1e-15);
    }
}

#[test]
fn bessel_examples() {
    // n = 3 gives sin(s)/s.
    for &r in &[0.3, 1.0, 2.5, 7.0] {
        let v = bessel_spherical(3, 1.3, &[0.0, r, 0.0]).unwrap();
        let s = 1.3 * r;
        assert!((v - s.sin() / s).abs() < 1e-13);
    }
    // First zero of J₀.
    let v = bessel_spherical(2, 1.0, &[2.404_825_557_695_773, 0.0]).unwrap();
    assert!(v.abs() < 1e-12);
}

#[test]
fn laguerre_examples_and_conjugation() {
    let g = HeisenbergElement::new(0.7, vec![Complex64::new(0.4, -1.1)]);
    let v = laguerre_spherical(1, 1.5, 1, &g).unwrap();
    // L₁(t) = 1 − t, t = |ζ||w|²/2.
    let t = 1.5 * g.w_norm_sqr() / 2.0;
    let expected = Complex64::from_polar((1.0 - t) * (-t / 2.0).exp(), 1.5 * 0.7);
    assert!((v - expected).norm() < 1e-14);
    let flipped = laguerre_spherical(1, -1.5, 1, &g).unwrap();
    assert!((flipped - v.conj()).norm() < 1e-14);
    let inv = laguerre_spherical(1, 1.5, 1, &g.inverse()).unwrap();
    assert!((inv - v.conj()).norm() < 1e-14);
}

#[test]
fn laguerre_values_stay_finite_far_out() {
    let g = HeisenbergElement::new(0.0, vec![Complex64::new(12.0, 0.0)]);
    // |ζ|‖w‖²/2 = 576 is inside the oscillatory range 4m + 2, so the value is O(1).
    let v = laguerre_spherical(1, 8.0, 160, &g).unwrap();
    assert!(v.is_finite() && v.norm() <= 1.0);
    let beyond = laguerre_spherical(1, 8.0, 40, &g).unwrap();
    assert!(beyond.is_finite() && beyond.norm() < 1e-40);
}

#[test]
fn parameter_validation() {
    assert!(matches!(SphericalFunction::bessel(1, 1.0), Err(SphericalError::Unsupported(_))));
    assert!(SphericalFunction::bessel(3, 0.0).is_err());
    assert!(SphericalFunction::laguerre(1, 0.0, 2).is_err());
    assert!(SphericalFunction::laguerre(0, 1.0, 2).is_err());
    assert!(SphericalFunction::laguerre(1, f64::NAN, 2).is_err());
    let phi = SphericalFunction::bessel(2, 1.0).unwrap();
    assert!(matches!(phi.eval(&GroupPoint::origin_heisenberg(2)), Err(SphericalError::PointMismatch(_))));
    assert!(bessel_spherical(3, 1.0, &[1.0, 2.0]).is_err());
}

#[test]
fn haar_unitary_moments() {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples = 4000;
    let (mut mean, mut second) = (Complex64::new(0.0, 0.0), 0.0);
    for _ in 0..samples {
        let u = haar_unitary(n, &mut rng);
        let defect = (&u.adjoint() * &u - DMatrix::<Complex64>::identity(n, n)).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(defect < 1e-12);
        mean += u[(0, 0)];
        second += u[(0, 0)].norm_sqr();
    }
    mean /= samples as f64;
    second /= samples as f64;
    // Var|U₁₁|² = (n−1)/(n²(n+1)), so 4000 samples give σ ≈ 0.003.
    assert!(mean.norm() < 0.05, "mean {mean}");
    assert!((second - 1.0 / n as f64).abs() < 0.015, "E|U11|² = {second}");
}

#[test]
fn haar_orthogonal_lands_in_so_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sum = 0.0;
    for _ in 0..2000 {
        let q = haar_orthogonal(4, &mut rng);
        assert!((q.determinant() - 1.0).abs() < 1e-12);
        assert!((&q.transpose() * &q - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);
        sum += q[(2, 1)] * q[(2, 1)];
    }
    assert!((sum / 2000.0 - 0.25).abs() < 0.02);
    assert_eq!(haar_orthogonal_sample(3, 9), haar_orthogonal_sample(3, 9));
    assert_eq!(haar_unitary_sample(2, 9), haar_unitary_sample(2, 9));
}

#[test]
fn functional_equation_on_the_circle_for_laguerre() {
    let pairs = random_pairs(&GroupPoint::origin_heisenberg(1), 8, 1.5, 21);
    for m in 0..=5 {
        for &zeta in &[-1.3, 0.7] {
            let phi = SphericalFunction::laguerre(1, zeta, m).unwrap();
            let rep = functional_equation_residual(&phi, &pairs, KIntegrator::Circle { nodes: 128 }).unwrap();
            assert!(rep.residual < 1e-10, "m={m} ζ={zeta}: {}", rep.residual);
            assert!(rep.sigma.is_none());
        }
    }
}

#[test]
fn functional_equation_for_bessel() {
    let phi2 = SphericalFunction::bessel(2, 1.4).unwrap();
    let pairs2 = random_pairs(&GroupPoint::origin_euclidean(2), 8, 2.0, 5);
    let rep = functional_equation_residual(&phi2, &pairs2, KIntegrator::Circle { nodes: 128 }).unwrap();
    assert!(rep.residual < 1e-5, "{}", rep.residual);

    let phi3 = SphericalFunction::bessel(3, 0.9).unwrap();
    let pairs3 = random_pairs(&GroupPoint::origin_euclidean(3), 8, 2.0, 6);
    let rep = functional_equation_residual(&phi3, &pairs3, KIntegrator::Radial { nodes: 64 }).unwrap();
    assert!(rep.residual < 1e-5, "{}", rep.residual);
}

#[test]
fn monte_carlo_functional_equation_within_error_bars() {
    let phi = SphericalFunction::bessel(2, 1.1).unwrap();
    let pairs = random_pairs(&GroupPoint::origin_euclidean(2), 4, 1.5, 8);
    let rep =
        functional_equation_residual(&phi, &pairs, KIntegrator::MonteCarlo { samples: 4000, seed: 17 }).unwrap();
    let sigma = rep.sigma.unwrap();
    assert!(sigma > 0.0 && sigma < 0.05);
    assert!(rep.residual < 5.0 * sigma, "residual {} σ {sigma}", rep.residual);
}

#[test]
fn non_spherical_function_fails_the_functional_equation() {
    let gauss = |p: &GroupPoint| Complex64::new((-p.radius_sqr()).exp(), 0.0);
    let pairs = random_pairs(&GroupPoint::origin_euclidean(2), 6, 1.0, 2);
    let rep = functional_equation_residual_with(&gauss, None, &pairs, KIntegrator::Circle { nodes: 128 }).unwrap();
    assert!(rep.residual > 1e-2, "{}", rep.residual);
}

#[test]
fn integrator_mismatches_are_reported() {
    let phi = SphericalFunction::laguerre(2, 1.0, 1).unwrap();
    let pairs = random_pairs(&GroupPoint::origin_heisenberg(2), 2, 1.0, 1);
    assert!(functional_equation_residual(&phi, &pairs, KIntegrator::Circle { nodes: 16 }).is_err());
    assert!(functional_equation_residual(&phi, &pairs, KIntegrator::Radial { nodes: 16 }).is_err());
    assert!(functional_equation_residual(&phi, &pairs, KIntegrator::MonteCarlo { samples: 1, seed: 0 }).is_err());
}

#[test]
fn gram_matrices_are_positive_semidefinite() {
    let pts = random_points(&GroupPoint::origin_heisenberg(2), 14, 1.5, 4);
    let phi = SphericalFunction::laguerre(2, -0.9, 2).unwrap();
    let rep = positive_definite_check(&phi, &pts).unwrap();
    assert_eq!(rep.size, 14);
    assert!(rep.min_eigenvalue > -1e-10, "{}", rep.min_eigenvalue);
    assert!(rep.hermitian_defect < 1e-12);

    let pts = random_points(&GroupPoint::origin_euclidean(3), 14, 2.0, 4);
    let phi = SphericalFunction::bessel(3, 1.2).unwrap();
    let rep = positive_definite_check(&phi, &pts).unwrap();
    assert!(rep.min_eigenvalue > -1e-10);

    let negated = |p: &GroupPoint| -phi.eval(p).unwrap();
    let rep = positive_definite_check(&negated, &pts).unwrap();
    assert!(rep.min_eigenvalue < -0.1);
}

fn eigen_residual(phi: &SphericalFunction, op: Operator, p: &GroupPoint, h: f64) -> f64 {
    eigenfunction_residual(phi, op, p, h).unwrap().residual
}

#[test]
fn eigenfunction_residuals_shrink_quadratically() {
    let cases = [
        (SphericalFunction::bessel(3, 1.3).unwrap(), Operator::Laplacian, GroupPoint::Euclidean(vec![0.4, -0.7, 1.1])),
        (SphericalFunction::laguerre(1, 1.2, 2).unwrap(), Operator::Sublaplacian, heis(0.3, &[(0.5, -0.4)])),
        (SphericalFunction::laguerre(2, -0.8, 1).unwrap(), Operator::Sublaplacian, heis(-0.2, &[(0.3, 0.1), (-0.6, 0.4)])),
        (SphericalFunction::laguerre(2, 0.6, 3).unwrap(), Operator::CentralDerivative, heis(0.9, &[(0.2, 0.2), (0.1, -0.3)])),
    ];
    for (phi, op, p) in &cases {
        let coarse = eigen_residual(phi, *op, p, 2e-2);
        let fine = eigen_residual(phi, *op, p, 1e-2);
        let ratio = coarse / fine;
        assert!((3.0..5.0).contains(&ratio), "{phi:?} {op:?}: ratio {ratio}");
        assert!(fine < 1e-3, "{phi:?} {op:?}: {fine}");
    }
}

#[test]
fn wrong_sublaplacian_eigenvalue_is_detected() {
    // φ_{ζ,m} with m = 2 is not an eigenfunction for the m = 1 eigenvalue.
    let p = heis(0.3, &[(0.5, -0.4)]);
    let rep = eigenfunction_residual(&SphericalFunction::laguerre(1, 1.2, 2).unwrap(), Operator::Sublaplacian, &p, 1e-3)
        .unwrap();
    let off = (rep.applied - Complex64::new(1.2 * 3.0, 0.0) * rep.value).norm();
    assert!(rep.residual < 1e-4 && off > 0.1);
}

#[test]
fn tiny_steps_raise_a_warning() {
    let phi = SphericalFunction::bessel(2, 1.0).unwrap();
    let p = GroupPoint::Euclidean(vec![0.3, 0.2]);
    let rep = eigenfunction_residual(&phi, Operator::Laplacian, &p, 1e-7).unwrap();
    assert_eq!(rep.warnings.len(), 1);
    let rep = eigenfunction_residual(&phi, Operator::Laplacian, &p, 1e-3).unwrap();
    assert!(rep.warnings.is_empty());
    assert!(eigenfunction_residual(&phi, Operator::Sublaplacian, &p, 1e-3).is_err());
    assert!(eigenfunction_residual(&phi, Operator::Laplacian, &p, 0.0).is_err());
}

#[test]
fn bessel_transform_of_a_gaussian() {
    let gauss = |p: &GroupPoint| Complex64::new((-p.radius_sqr() / 2.0).exp(), 0.0);
    for n in [2usize, 3, 4] {
        for &xi in &[0.5, 1.7, 3.0] {
            let phi = SphericalFunction::bessel(n, xi).unwrap();
            let v = spherical_transform(&gauss, &phi, &TransformGrid::default()).unwrap();
            let expected = (2.0 * PI).powf(n as f64 / 2.0) * (-xi * xi / 2.0).exp();
            assert!((v - expected).norm() < 1e-10 * expected.max(1.0), "n={n} ξ={xi}: {v} vs {expected}");
        }
    }
}

#[test]
fn laguerre_transform_matches_closed_form_and_schrodinger_diagonal() {
    let f = gaussian_on_heisenberg(1);
    let zeta = 0.9;
    let model = SchrodingerModel::new(zeta, 1, 8).unwrap();
    let diag = group_fourier(&GaussianFunction::standard(1), &model, None).unwrap().matrix;
    for m in 0..5 {
        let phi = SphericalFunction::laguerre(1, zeta, m).unwrap();
        let v = spherical_transform(&f, &phi, &TransformGrid::default()).unwrap();
        let oracle = gaussian_transform_oracle(1, zeta, m);
        assert!((v - oracle).norm() < 1e-12, "m={m}: {v} vs {oracle}");
        assert!((v - diag[(m, m)]).norm() < 1e-9, "m={m}: {v} vs {}", diag[(m, m)]);
    }
}

#[test]
fn batched_samples_agree_with_single_transforms() {
    let f = gaussian_on_heisenberg(2);
    let rule = crate::special::QuadratureRule { nodes: vec![-2.1, 0.4, 1.3], weights: vec![1.0; 3] };
    let grid = TransformGrid::default();
    let samples = SpectralSamples::heisenberg(&f, 2, &rule, 6, &grid).unwrap();
    for (i, &zeta) in rule.nodes.iter().enumerate() {
        for m in [0, 3, 6] {
            let phi = SphericalFunction::laguerre(2, zeta, m).unwrap();
            let direct = spherical_transform(&f, &phi, &grid).unwrap();
            assert!((samples.values[i][m] - direct).norm() < 1e-13);
            assert!((direct - gaussian_transform_oracle(2, zeta, m)).norm() < 1e-12);
        }
    }
}

#[test]
fn non_invariant_input_is_rejected() {
    let f = |p: &GroupPoint| match p {
        GroupPoint::Heisenberg(h) => Complex64::new((-h.z * h.z - h.w[0].re.powi(2) - 2.0 * h.w[0].im.powi(2)).exp(), 0.0),
        GroupPoint::Euclidean(_) => Complex64::new(0.0, 0.0),
    };
    let phi = SphericalFunction::laguerre(1, 1.0, 0).unwrap();
    assert!(matches!(spherical_transform(&f, &phi, &TransformGrid::default()), Err(SphericalError::NotInvariant(_))));
}

#[test]
fn inversion_recovers_the_gaussian() {
    let f = gaussian_on_heisenberg(1);
    let rule = LambdaGrid::default().rule();
    let samples = SpectralSamples::heisenberg(&f, 1, &rule, 160, &TransformGrid::default()).unwrap();
    let pts = [GroupPoint::origin_heisenberg(1), heis(0.4, &[(0.5, -0.3)])];
    let values = spherical_invert(&samples, &InversionWeights::Heisenberg, &pts).unwrap();
    for (p, v) in pts.iter().zip(&values) {
        let exact = f(p);
        assert!((v - exact).norm() < 1e-2, "{v} vs {exact}");
    }
    assert!(matches!(spherical_invert(&samples, &InversionWeights::Missing, &pts), Err(SphericalError::MissingWeights)));
    let custom = InversionWeights::Custom(
        samples.zeta.iter().map(|&z| (0..=160).map(|m| heisenberg_inversion_weight(1, z, m)).collect()).collect(),
    );
    let again = spherical_invert(&samples, &custom, &pts).unwrap();
    assert!((again[0] - values[0]).norm() < 1e-14);
}

#[test]
fn transform_is_linear_and_kills_zero() {
    let f = gaussian_on_heisenberg(1);
    let twice = |p: &GroupPoint| f(p) * 2.0 + Complex64::new(0.0, 1.0) * f(p);
    let phi = SphericalFunction::laguerre(1, -1.1, 2).unwrap();
    let grid = TransformGrid::default();
    let a = spherical_transform(&f, &phi, &grid).unwrap();
    let b = spherical_transform(&twice, &phi, &grid).unwrap();
    assert!((b - a * Complex64::new(2.0, 1.0)).norm() < 1e-14);
    let zero = |_: &GroupPoint| Complex64::new(0.0, 0.0);
    assert_eq!(spherical_transform(&zero, &phi, &grid).unwrap(), Complex64::new(0.0, 0.0));
    assert!(spherical_transform(&zero, &SphericalFunction::Trivial, &grid).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bessel_values_are_bounded(n in 2usize..6, xi in 0.1f64..5.0, r in 0.0f64..20.0) {
        let mut x = vec![0.0; n];
        x[n - 1] = r;
        let v = bessel_spherical(n, xi, &x).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn laguerre_values_are_bounded_and_hermitian(
        n in 1usize..4,
        zeta in prop_oneof![-4.0f64..-0.05, 0.05f64..4.0],
        m in 0usize..12,
        z in -3.0f64..3.0,
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
    ) {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        w[0] = Complex64::new(x, y);
        let g = HeisenbergElement::new(z, w);
        let v = laguerre_spherical(n, zeta, m, &g).unwrap();
        let inv = laguerre_spherical(n, zeta, m, &g.inverse()).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        prop_assert!((inv - v.conj()).norm() < 1e-13);
    }

    #[test]
    fn circle_functional_equation_holds(zeta in 0.2f64..2.0, m in 0usize..6, seed in 0u64..1000) {
        let pairs = random_pairs(&GroupPoint::origin_heisenberg(1), 2, 1.2, seed);
        let phi = SphericalFunction::laguerre(1, zeta, m).unwrap();
        let rep = functional_equation_residual(&phi, &pairs, KIntegrator::Circle { nodes: 128 }).unwrap();
        prop_assert!(rep.residual < 1e-10);
    }
}
