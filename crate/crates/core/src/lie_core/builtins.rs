//! Standard test algebras.

use num_rational::BigRational;

use super::NilpotentLieAlgebra;
use crate::exact_algebra::{rat, Ring};

fn build(name: &str, labels: Vec<String>, brackets: Vec<(usize, usize, Vec<(usize, BigRational)>)>) -> NilpotentLieAlgebra {
    NilpotentLieAlgebra::from_brackets(name, labels, &brackets).expect("built-in algebra is valid")
}

/// `𝔥_m` with basis `X1, Y1, …, Xm, Ym, Z` and `[X_i, Y_i] = Z`.
pub fn heisenberg(m: usize) -> NilpotentLieAlgebra {
    let mut labels = Vec::with_capacity(2 * m + 1);
    for i in 1..=m {
        labels.push(format!("X{i}"));
        labels.push(format!("Y{i}"));
    }
    labels.push("Z".into());
    let z = 2 * m;
    let brackets = (0..m).map(|i| (2 * i, 2 * i + 1, vec![(z, rat(1))])).collect();
    build(&format!("h{m}"), labels, brackets)
}

/// Abelian algebra `ℝ^n`.
pub fn abelian(n: usize) -> NilpotentLieAlgebra {
    build(&format!("R{n}"), (1..=n).map(|i| format!("E{i}")).collect(), Vec::new())
}

/// Free 2-step nilpotent algebra on `g` generators: `[X_a, X_b] = Y_ab`.
pub fn free_two_step(g: usize) -> NilpotentLieAlgebra {
    let mut labels: Vec<String> = (1..=g).map(|i| format!("X{i}")).collect();
    let mut brackets = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            brackets.push((a, b, vec![(labels.len(), rat(1))]));
            labels.push(format!("Y{}{}", a + 1, b + 1));
        }
    }
    build(&format!("free2step{g}"), labels, brackets)
}

/// Free nilpotent algebra of rank 2 and class 3 (dimension 5):
/// `[X1,X2] = X3`, `[X1,X3] = X4`, `[X2,X3] = X5`.
pub fn free_rank2_class3() -> NilpotentLieAlgebra {
    let labels = (1..=5).map(|i| format!("X{i}")).collect();
    let brackets = vec![(0, 1, vec![(2, rat(1))]), (0, 2, vec![(3, rat(1))]), (1, 2, vec![(4, rat(1))])];
    build("free_r2c3", labels, brackets)
}

/// Direct sum with basis of `a` followed by basis of `b`.
pub fn direct_sum(a: &NilpotentLieAlgebra, b: &NilpotentLieAlgebra) -> NilpotentLieAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut c = vec![BigRational::zero(); n * n * n];
    for (alg, off) in [(a, 0), (b, na)] {
        let d = alg.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    c[((i + off) * n + j + off) * n + k + off] = alg.structure_constant(i, j, k).clone();
                }
            }
        }
    }
    let labels = a.labels().iter().chain(b.labels()).cloned().collect();
    NilpotentLieAlgebra::from_structure(&format!("{}+{}", a.name(), b.name()), labels, c).expect("sum of nilpotent algebras")
}

/// `𝔥_1 ⊕ ℝ`: basis `X1, Y1, Z, E1`.
pub fn heisenberg_plus_line() -> NilpotentLieAlgebra {
    direct_sum(&heisenberg(1), &abelian(1))
}

/// Unvalidated `𝔰𝔩₂` brackets `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H` for
/// exercising rejection paths.
pub fn sl2_brackets() -> (Vec<String>, Vec<(usize, usize, Vec<(usize, BigRational)>)>) {
    let labels = vec!["H".into(), "E".into(), "F".into()];
    let brackets = vec![(0, 1, vec![(1, rat(2))]), (0, 2, vec![(2, rat(-2))]), (1, 2, vec![(0, rat(1))])];
    (labels, brackets)
}

/// All algebras used by property tests, by name.
pub fn registered() -> Vec<NilpotentLieAlgebra> {
    vec![
        heisenberg(1),
        heisenberg(2),
        heisenberg(3),
        heisenberg_plus_line(),
        free_rank2_class3(),
        free_two_step(3),
        abelian(3),
    ]
}
