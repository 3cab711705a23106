use super::*;
use crate::exact_algebra::{determinant, rat, rat_frac, MultiPoly};
use crate::lie_core::builtins::*;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    rat(n)
}

fn qv(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[test]
fn skew_form_examples() {
    let h = heisenberg(1);
    let b = skew_form(&h, &qv(&[0, 0, 1])).unwrap();
    let expected = Matrix::from_rows(vec![qv(&[0, 1, 0]), qv(&[-1, 0, 0]), qv(&[0, 0, 0])], 3);
    assert_eq!(b.matrix(), &expected);
    assert!(skew_form(&h, &qv(&[0, 0, 0])).unwrap().matrix().is_zero());
    assert!(skew_form(&abelian(3), &qv(&[1, 2, 3])).unwrap().matrix().is_zero());
    assert!(skew_form(&h, &qv(&[1, 2])).is_err());
}

#[test]
fn radical_examples() {
    let h = heisenberg(1);
    assert_eq!(radical(&h, &qv(&[0, 0, 1])).unwrap(), vec![qv(&[0, 0, 1])]);
    assert_eq!(radical(&h, &qv(&[0, 0, 0])).unwrap().len(), 3);
    // f = X*: b_f = 0, radical is everything.
    assert_eq!(radical(&h, &qv(&[1, 0, 0])).unwrap().len(), 3);
}

#[test]
fn orbit_dimension_examples() {
    assert_eq!(orbit_dimension(&heisenberg(1), &qv(&[0, 0, 1])).unwrap(), 2);
    assert_eq!(orbit_dimension(&heisenberg(1), &qv(&[0, 0, 0])).unwrap(), 0);
    assert_eq!(orbit_dimension(&heisenberg(2), &qv(&[0, 0, 0, 0, 1])).unwrap(), 4);
}

#[test]
fn flatness_and_square_integrability() {
    let h = heisenberg(1);
    assert!(is_flat_orbit(&h, &qv(&[3, -1, 2])).unwrap());
    assert!(is_square_integrable(&h, &qv(&[3, -1, 2])).unwrap());
    assert!(!is_flat_orbit(&h, &qv(&[1, 0, 0])).unwrap());
    assert!(!is_square_integrable(&h, &qv(&[1, 0, 0])).unwrap());
    let a = abelian(2);
    assert!(is_flat_orbit(&a, &qv(&[1, 1])).unwrap());
    assert!(is_square_integrable(&a, &qv(&[1, 1])).unwrap());
    let g = free_rank2_class3();
    for f in [qv(&[0, 0, 0, 1, 0]), qv(&[1, 2, 3, 4, 5]), qv(&[0, 0, 0, 0, 0])] {
        assert!(!is_square_integrable(&g, &f).unwrap());
        assert!(!is_flat_orbit(&g, &f).unwrap());
    }
}

#[test]
fn polarization_examples() {
    let h = heisenberg(1);
    let f = qv(&[0, 0, 1]);
    let p = vergne_polarization(&h, &f, &h.ideal_flag()).unwrap();
    assert_eq!(BigRational::span_basis(&p, 3), BigRational::span_basis(&[qv(&[0, 0, 1]), qv(&[1, 0, 0])], 3));
    assert!(is_polarization(&h, &f, &[qv(&[0, 0, 1]), qv(&[1, 0, 0])]).unwrap().is_valid());
    let bad = is_polarization(&h, &f, &[qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
    assert!(!bad.is_valid());
    assert!(!bad.subalgebra && !bad.contains_radical && !bad.isotropic);
    let zero = qv(&[0, 0, 0]);
    assert_eq!(vergne_polarization(&h, &zero, &h.ideal_flag()).unwrap().len(), 3);
    let whole = vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])];
    assert!(is_polarization(&h, &zero, &whole).unwrap().is_valid());
    let h2 = heisenberg(2);
    let f2 = qv(&[0, 0, 0, 0, 1]);
    let p2 = vergne_polarization(&h2, &f2, &h2.ideal_flag()).unwrap();
    assert_eq!(p2.len(), 3);
    assert!(is_polarization(&h2, &f2, &p2).unwrap().is_valid());
}

/// Brute force over all 2-dim subspaces spanned by pairs of small integer
/// vectors containing Z: the valid ones for f = Z* are exactly span(Z, aX + bY).
#[test]
fn h1_polarizations_brute_force() {
    let h = heisenberg(1);
    let f = qv(&[0, 0, 1]);
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            if a == 0 && b == 0 {
                continue;
            }
            let p = vec![qv(&[0, 0, 1]), qv(&[a, b, 0])];
            assert!(is_polarization(&h, &f, &p).unwrap().is_valid());
        }
    }
    let no_center = vec![qv(&[1, 0, 0]), qv(&[0, 1, 1])];
    assert!(!is_polarization(&h, &f, &no_center).unwrap().is_valid());
}

#[test]
fn heisenberg_pfaffian_is_power_of_central_coordinate() {
    for m in 1..=3 {
        let pf = pfaffian_polynomial(&heisenberg(m), None).unwrap();
        let expected = MultiPoly::from_terms(&["z1".to_string()], [(vec![m as u32], rat(1))]).unwrap();
        assert_eq!(pf.poly, expected);
        assert_eq!(pf.m, Some(m));
    }
    assert_eq!(pfaffian_polynomial(&heisenberg(2), None).unwrap().poly.to_string(), "z1^2");
}

#[test]
fn pfaffian_polynomial_special_cases() {
    let a = pfaffian_polynomial(&abelian(2), None).unwrap();
    assert!(a.degenerate_abelian);
    assert_eq!(a.poly.to_string(), "1");
    let g = pfaffian_polynomial(&free_rank2_class3(), None).unwrap();
    assert!(g.poly.is_zero());
    assert_eq!(g.m, None);
    assert!(!has_square_integrable_reps(&free_rank2_class3()));
    assert!(has_square_integrable_reps(&heisenberg(2)));
    let hl = pfaffian_polynomial(&heisenberg_plus_line(), None).unwrap();
    assert_eq!(hl.poly.to_string(), "z1");
    assert!(has_square_integrable_reps(&heisenberg_plus_line()));
    // Free 2-step on 3 generators: 𝔫/𝔷 is 3-dimensional.
    assert!(!has_square_integrable_reps(&free_two_step(3)));
}

#[test]
fn complement_validation() {
    let h = heisenberg(1);
    assert!(pfaffian_polynomial(&h, Some(&[qv(&[1, 0, 0])])).is_err());
    assert!(pfaffian_polynomial(&h, Some(&[qv(&[1, 0, 0]), qv(&[0, 0, 1])])).is_err());
    assert!(pfaffian_polynomial(&h, Some(&[qv(&[1, 0]), qv(&[0, 1])])).is_err());
    // Swapping X and Y flips the orientation.
    let swapped = pfaffian_polynomial(&h, Some(&[qv(&[0, 1, 0]), qv(&[1, 0, 0])])).unwrap();
    assert_eq!(swapped.poly.to_string(), "-z1");
}

#[test]
fn formal_degree_and_density_examples() {
    let h1 = heisenberg(1);
    assert_eq!(formal_degree(&h1, &[q(2)]).unwrap(), q(2));
    assert_eq!(formal_degree(&h1, &[q(-2)]).unwrap(), q(2));
    assert_eq!(formal_degree(&h1, &[q(0)]).unwrap(), q(0));
    assert_eq!(formal_degree(&heisenberg(2), &[q(3)]).unwrap(), q(9));
    assert_eq!(plancherel_density(&h1, &[q(1)]).unwrap(), q(2));
    assert_eq!(plancherel_density(&h1, &[q(0)]).unwrap(), q(0));
    assert_eq!(plancherel_density(&heisenberg(2), &[q(1)]).unwrap(), q(8));
    assert!(matches!(plancherel_density(&free_rank2_class3(), &[q(1), q(1)]), Err(OrbitError::Unsupported(_))));
    assert!((formal_degree(&h1, &[2.5f64]).unwrap() - 2.5).abs() < 1e-15);
    assert_eq!(plancherel_constant(3), q(48));
}

#[test]
fn report_for_h1() {
    let r = orbit_report(&heisenberg(1), &qv(&[0, 0, 1])).unwrap();
    assert_eq!(r.orbit_dimension, 2);
    assert!(r.is_flat && r.is_square_integrable);
    assert_eq!(r.formal_degree, serde_json::json!("1"));
    assert_eq!(r.plancherel_density, Some(serde_json::json!("2")));
    let r2 = orbit_report(&heisenberg(1), &qv(&[1, 0, 0])).unwrap();
    assert_eq!(r2.orbit_dimension, 0);
    assert!(!r2.is_square_integrable);
    let r3 = orbit_report(&free_rank2_class3(), &qv(&[1, 1, 1, 1, 1])).unwrap();
    assert!(!r3.has_square_integrable_reps);
    assert!(r3.note.is_some());
    let rf = orbit_report(&heisenberg(1), &[0.0, 0.0, 0.5]).unwrap();
    assert!(!rf.exact);
    assert_eq!(rf.formal_degree, serde_json::json!(0.5));
}

#[test]
fn floating_path_matches_exact() {
    let h2 = heisenberg(2);
    let f = [0.3, -1.2, 0.7, 2.0, 1e-3];
    assert_eq!(orbit_dimension(&h2, &f).unwrap(), 4);
    assert!(is_flat_orbit(&h2, &f).unwrap());
    let tiny = [0.3, -1.2, 0.7, 2.0, 1e-14];
    assert_eq!(orbit_dimension(&h2, &tiny).unwrap(), 0);
    let p = vergne_polarization(&h2, &f, &h2.ideal_flag()).unwrap();
    assert_eq!(p.len(), 3);
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        3 => (-6i64..=6, 1i64..=4).prop_map(|(p, d)| rat_frac(p, d)),
        1 => Just(rat(0)),
    ]
}

fn test_algebras() -> Vec<NilpotentLieAlgebra> {
    vec![heisenberg(1), heisenberg(2), heisenberg_plus_line(), free_rank2_class3(), free_two_step(3)]
}

fn algebra_and_functional() -> impl Strategy<Value = (usize, Vec<BigRational>, Vec<BigRational>)> {
    (0..test_algebras().len()).prop_flat_map(|a| {
        let n = test_algebras()[a].dim();
        (Just(a), prop::collection::vec(small_rational(), n), prop::collection::vec(small_rational(), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn flat_iff_square_integrable((a, f, _) in algebra_and_functional()) {
        let alg = &test_algebras()[a];
        prop_assert_eq!(is_flat_orbit(alg, &f).unwrap(), is_square_integrable(alg, &f).unwrap());
    }

    #[test]
    fn vergne_output_is_polarization((a, f, _) in algebra_and_functional()) {
        let alg = &test_algebras()[a];
        let p = vergne_polarization(alg, &f, &alg.ideal_flag()).unwrap();
        prop_assert!(is_polarization(alg, &f, &p).unwrap().is_valid());
    }

    #[test]
    fn pfaffian_squared_is_restricted_determinant((a, f, _) in algebra_and_functional()) {
        let alg = &test_algebras()[a];
        let pf = pfaffian_polynomial(alg, None).unwrap();
        let v = Matrix::from_rows(pf.complement.clone(), alg.dim());
        let b = skew_form(alg, &f).unwrap().into_matrix();
        let restricted = v.mul(&b).mul(&v.transpose());
        let p = pf.value_at_functional(&f).unwrap();
        prop_assert_eq!(p.clone() * p, determinant(&restricted).unwrap());
    }

    #[test]
    fn orbit_dimension_constant_on_orbits((a, f, x) in algebra_and_functional()) {
        let alg = &test_algebras()[a];
        let g = alg.coadjoint_action(&x, &f).unwrap();
        prop_assert_eq!(orbit_dimension(alg, &g).unwrap(), orbit_dimension(alg, &f).unwrap());
        prop_assert_eq!(orbit_dimension(alg, &f).unwrap() % 2, 0);
    }

    #[test]
    fn volume_rescaling((a, f, _) in algebra_and_functional(), c in (1i64..=5, 1i64..=3)) {
        let alg = &test_algebras()[a];
        let base = pfaffian_polynomial(alg, None).unwrap();
        prop_assume!(!base.complement.is_empty());
        let c = rat_frac(c.0, c.1);
        let mut comp = base.complement.clone();
        comp[0] = comp[0].iter().map(|x| x * &c).collect();
        let scaled = pfaffian_polynomial(alg, Some(&comp)).unwrap();
        prop_assert_eq!(scaled.poly.clone(), base.poly.scale(&c));
        let zeta = central_restriction(alg, &f).unwrap();
        let d0 = base.formal_degree(&zeta).unwrap();
        prop_assert_eq!(scaled.formal_degree(&zeta).unwrap(), &d0 * &c);
        if !base.poly.is_zero() && !d0.is_zero() {
            let ratio = scaled.plancherel_density(&zeta).unwrap() / scaled.formal_degree(&zeta).unwrap();
            prop_assert_eq!(ratio, plancherel_constant(base.m.unwrap()));
        }
    }

    #[test]
    fn pfaffian_is_homogeneous((a, f, _) in algebra_and_functional(), t in -4i64..=4) {
        let alg = &test_algebras()[a];
        let pf = pfaffian_polynomial(alg, None).unwrap();
        prop_assert!(pf.poly.is_homogeneous());
        if let Some(m) = pf.m {
            let zeta = central_restriction(alg, &f).unwrap();
            let scaled: Vec<BigRational> = zeta.iter().map(|z| z * rat(t)).collect();
            let lhs = pf.value(&scaled).unwrap();
            let rhs = pf.value(&zeta).unwrap() * rat(t).pow(m as i32);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
