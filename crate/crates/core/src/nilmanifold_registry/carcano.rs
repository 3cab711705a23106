//! Multiplicity-freeness of `ℂ[ℂ^m] = ⊕_d S^d((ℂ^m)*)` for small compact `K`.
//!
//! Characters are Laurent polynomials on the maximal torus. The multiplicity
//! of an irreducible `V_λ` in `S^d` is the Weyl integral
//! `(1/|W|) ∫_T χ_d conj(χ_λ) |Δ|² dt`, and the torus integral of a Laurent
//! polynomial is its constant term, so every multiplicity is computed exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::RegistryError;

/// Largest total torus rank accepted by the checker.
pub const MAX_TORUS_RANK: usize = 2;

/// Integer Laurent polynomial in the torus coordinates `t_1, …, t_r`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i32>, i128>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], 1)
    }

    pub fn monomial(exponent: Vec<i32>, coefficient: i128) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, coefficient);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, exponent: Vec<i32>, coefficient: i128) {
        assert_eq!(exponent.len(), self.rank, "exponent of the wrong rank");
        let slot = self.terms.entry(exponent).or_insert(0);
        *slot += coefficient;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn coefficient(&self, exponent: &[i32]) -> i128 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &i128)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut acc: BTreeMap<Vec<i32>, i128> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert(0) += ca * cb;
            }
        }
        acc.retain(|_, c| *c != 0);
        Self { rank: self.rank, terms: acc }
    }

    /// `p(t⁻¹)`, which is `conj(p)` on the torus for real coefficients.
    pub fn conjugate(&self) -> Self {
        Self { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), *c)).collect() }
    }

    /// `∫_T p dt` for the normalized Haar measure on the torus.
    pub fn constant_term(&self) -> i128 {
        self.coefficient(&vec![0; self.rank])
    }

    /// Torus integral by the product trapezoid rule on `q`-th roots of unity,
    /// exact once `q` exceeds every `|exponent|`.
    pub fn torus_quadrature(&self, q: usize) -> f64 {
        let mut total = 0.0;
        for (e, c) in &self.terms {
            let mut factor = 1.0;
            for &k in e {
                // Σ_j e^{2πi jk/q} / q is 1 when q | k, else 0.
                if k.rem_euclid(q as i32) != 0 {
                    factor = 0.0;
                }
            }
            total += factor * *c as f64;
        }
        total
    }

    fn max_abs_exponent(&self) -> i32 {
        self.terms.keys().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Embeds into a larger torus, placing the coordinates at `offset`.
    fn lift(&self, rank: usize, offset: usize) -> Self {
        let mut out = Self::zero(rank);
        for (e, c) in &self.terms {
            let mut big = vec![0; rank];
            big[offset..offset + e.len()].copy_from_slice(e);
            out.add_term(big, *c);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> =
                    e.iter().enumerate().filter(|(_, &k)| k != 0).map(|(i, k)| format!("t{}^{k}", i + 1)).collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Compact connected factor of `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// `U(1)`, acting through the listed integer weights.
    U1,
    /// `U(2)` on `ℂ²`.
    U2,
    /// `SU(2)` on `ℂ²`.
    Su2,
}

impl FactorKind {
    fn torus_rank(self) -> usize {
        match self {
            Self::U1 | Self::Su2 => 1,
            Self::U2 => 2,
        }
    }

    fn weyl_order(self) -> i128 {
        match self {
            Self::U1 => 1,
            Self::U2 | Self::Su2 => 2,
        }
    }

    /// `|Δ|²` on the factor torus.
    fn weyl_density(self) -> LaurentPoly {
        match self {
            Self::U1 => LaurentPoly::one(1),
            Self::U2 => {
                let mut p = LaurentPoly::monomial(vec![0, 0], 2);
                p.add_term(vec![1, -1], -1);
                p.add_term(vec![-1, 1], -1);
                p
            }
            Self::Su2 => {
                let mut p = LaurentPoly::monomial(vec![0], 2);
                p.add_term(vec![2], -1);
                p.add_term(vec![-2], -1);
                p
            }
        }
    }

    /// Irreducible character of highest weight `lambda`.
    fn character(self, lambda: &[i32]) -> LaurentPoly {
        match self {
            Self::U1 => LaurentPoly::monomial(vec![lambda[0]], 1),
            Self::U2 => {
                // Schur polynomial s_{(a,b)}(t1, t2) = Σ t1^{a−i} t2^{b+i}.
                let (a, b) = (lambda[0], lambda[1]);
                let mut p = LaurentPoly::zero(2);
                for i in 0..=(a - b) {
                    p.add_term(vec![a - i, b + i], 1);
                }
                p
            }
            Self::Su2 => {
                let j = lambda[0];
                let mut p = LaurentPoly::zero(1);
                for i in 0..=j {
                    p.add_term(vec![j - 2 * i], 1);
                }
                p
            }
        }
    }

    fn is_dominant(self, lambda: &[i32]) -> bool {
        match self {
            Self::U1 => true,
            Self::U2 => lambda[0] >= lambda[1],
            Self::Su2 => lambda[0] >= 0,
        }
    }

    /// Torus weights of the module the factor acts on.
    fn module_weights(self, u1_weights: &[i32]) -> Vec<Vec<i32>> {
        match self {
            Self::U1 => u1_weights.iter().map(|&w| vec![w]).collect(),
            Self::U2 => vec![vec![1, 0], vec![0, 1]],
            Self::Su2 => vec![vec![1], vec![-1]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFactor {
    pub kind: FactorKind,
    /// Weights for a `U(1)` factor; empty for the others.
    pub weights: Vec<i32>,
}

/// `K` as a product of small factors acting on the tensor product of their modules.
///
/// Textual form: factors joined by `*`, each `U1:<w1>,<w2>,…`, `U2:std` or
/// `SU2:std`. `U1:1` is `U(1)` on `ℂ` by weight 1; `U1:1,1` is the scalar
/// `U(1)` on `ℂ²`; `U1:1 * SU2:std` is `U(1) × SU(2)` on `ℂ ⊗ ℂ²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KDescriptor {
    pub factors: Vec<KFactor>,
}

impl KDescriptor {
    pub fn parse(src: &str) -> Result<Self, RegistryError> {
        let bad = |msg: String| RegistryError::Parse { input: src.to_string(), message: msg };
        let mut factors = Vec::new();
        for part in src.split('*').map(str::trim) {
            let (kind, args) = part.split_once(':').ok_or_else(|| bad(format!("factor '{part}' lacks ':'")))?;
            let factor = match kind.trim().to_ascii_uppercase().as_str() {
                "U1" => {
                    let weights = args
                        .split(',')
                        .map(|w| w.trim().parse::<i32>().map_err(|_| bad(format!("bad U(1) weight '{w}'"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    KFactor { kind: FactorKind::U1, weights }
                }
                "U2" | "SU2" if args.trim() == "std" => KFactor {
                    kind: if kind.trim().eq_ignore_ascii_case("U2") { FactorKind::U2 } else { FactorKind::Su2 },
                    weights: Vec::new(),
                },
                "U2" | "SU2" => {
                    return Err(RegistryError::Unsupported(format!(
                        "only the standard module of {kind} is available, got '{args}'"
                    )))
                }
                other => {
                    return Err(RegistryError::Unsupported(format!(
                        "factor type '{other}' has no exact Weyl integration here (supported: U1, U2, SU2)"
                    )))
                }
            };
            factors.push(factor);
        }
        let d = Self { factors };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), RegistryError> {
        if self.factors.is_empty() {
            return Err(RegistryError::Unsupported("empty group".into()));
        }
        if self.factors.iter().any(|f| f.kind == FactorKind::U1 && f.weights.is_empty()) {
            return Err(RegistryError::Unsupported("U(1) factor without weights".into()));
        }
        let rank = self.torus_rank();
        if rank > MAX_TORUS_RANK {
            return Err(RegistryError::Unsupported(format!(
                "torus rank {rank} exceeds the desk-scale limit {MAX_TORUS_RANK}; not checkable here"
            )));
        }
        Ok(())
    }

    pub fn torus_rank(&self) -> usize {
        self.factors.iter().map(|f| f.kind.torus_rank()).sum()
    }

    /// Complex dimension `m` of the module.
    pub fn module_dim(&self) -> usize {
        self.factors.iter().map(|f| f.kind.module_weights(&f.weights).len()).product()
    }

    /// The contragredient action.
    pub fn conjugate(&self) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .map(|f| KFactor { kind: f.kind, weights: f.weights.iter().map(|w| -w).collect() })
                .collect(),
        }
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.factors
            .iter()
            .map(|f| {
                let o = acc;
                acc += f.kind.torus_rank();
                o
            })
            .collect()
    }

    /// Torus weights of `ℂ^m`: sums over the tensor factors.
    pub fn weights(&self) -> Vec<Vec<i32>> {
        let rank = self.torus_rank();
        let mut out = vec![vec![0; rank]];
        for (f, off) in self.factors.iter().zip(self.offsets()) {
            let local = f.kind.module_weights(&f.weights);
            let mut next = Vec::with_capacity(out.len() * local.len());
            for w in &out {
                for l in &local {
                    let mut v = w.clone();
                    for (i, x) in l.iter().enumerate() {
                        v[off + i] += x;
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    fn weyl_density(&self) -> LaurentPoly {
        let rank = self.torus_rank();
        self.factors
            .iter()
            .zip(self.offsets())
            .fold(LaurentPoly::one(rank), |acc, (f, off)| acc.mul(&f.kind.weyl_density().lift(rank, off)))
    }

    fn weyl_order(&self) -> i128 {
        self.factors.iter().map(|f| f.kind.weyl_order()).product()
    }

    fn is_dominant(&self, lambda: &[i32]) -> bool {
        self.factors.iter().zip(self.offsets()).all(|(f, off)| f.kind.is_dominant(&lambda[off..off + f.kind.torus_rank()]))
    }

    /// Irreducible character with highest weight `lambda`.
    pub fn irreducible_character(&self, lambda: &[i32]) -> LaurentPoly {
        let rank = self.torus_rank();
        self.factors.iter().zip(self.offsets()).fold(LaurentPoly::one(rank), |acc, (f, off)| {
            acc.mul(&f.kind.character(&lambda[off..off + f.kind.torus_rank()]).lift(rank, off))
        })
    }
}

impl fmt::Display for KDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| match fac.kind {
                FactorKind::U1 => {
                    format!("U1:{}", fac.weights.iter().map(i32::to_string).collect::<Vec<_>>().join(","))
                }
                FactorKind::U2 => "U2:std".into(),
                FactorKind::Su2 => "SU2:std".into(),
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Character of `S^d(ℂ^m)`: the complete homogeneous polynomial `h_d` in the weight monomials.
pub fn symmetric_power_character(weights: &[Vec<i32>], rank: usize, d: usize) -> LaurentPoly {
    // h_d(x_1..x_k) = Σ_j x_k^j h_{d−j}(x_1..x_{k−1}), built up one weight at a time.
    let mut h: Vec<LaurentPoly> = (0..=d).map(|j| if j == 0 { LaurentPoly::one(rank) } else { LaurentPoly::zero(rank) }).collect();
    for w in weights {
        let mut next = vec![LaurentPoly::zero(rank); d + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            for j in 0..=total {
                let power = LaurentPoly::monomial(w.iter().map(|x| x * j as i32).collect(), 1);
                *slot = slot.add(&h[total - j].mul(&power));
            }
        }
        h = next;
    }
    h.swap_remove(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub highest_weight: Vec<i32>,
    pub multiplicity: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// `dim S^d(ℂ^m)`.
    pub dimension: i128,
    pub constituents: Vec<Constituent>,
    pub multiplicity_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub group: String,
    pub module_dim: usize,
    pub degree_cap: usize,
    pub multiplicity_free: bool,
    /// Smallest degree with a repeated constituent.
    pub first_failure: Option<usize>,
    pub degrees: Vec<DegreeReport>,
}

/// Decomposes `S^d(ℂ^m)` for `d ≤ degree_cap` and reports repeated constituents.
pub fn multiplicity_free_check(k: &KDescriptor, degree_cap: usize) -> Result<MultiplicityReport, RegistryError> {
    k.validate()?;
    let rank = k.torus_rank();
    let weights = k.weights();
    let density = k.weyl_density();
    let order = k.weyl_order();
    let mut degrees = Vec::with_capacity(degree_cap + 1);
    for d in 0..=degree_cap {
        let chi = symmetric_power_character(&weights, rank, d);
        let dimension = chi.terms().map(|(_, c)| *c).sum();
        let weighted = chi.mul(&density);
        let mut constituents = Vec::new();
        // Highest weights of constituents are dominant weights of χ_d.
        for (lambda, _) in chi.terms() {
            if !k.is_dominant(lambda) {
                continue;
            }
            let integral = weighted.mul(&k.irreducible_character(lambda).conjugate()).constant_term();
            if integral % order != 0 {
                return Err(RegistryError::Domain(format!(
                    "Weyl integral {integral} at {lambda:?} is not divisible by |W| = {order}"
                )));
            }
            let multiplicity = integral / order;
            if multiplicity != 0 {
                constituents.push(Constituent { highest_weight: lambda.clone(), multiplicity });
            }
        }
        let recovered = constituents
            .iter()
            .map(|c| c.multiplicity * k.irreducible_character(&c.highest_weight).terms().map(|(_, v)| *v).sum::<i128>())
            .sum::<i128>();
        if recovered != dimension {
            return Err(RegistryError::Domain(format!(
                "constituents of degree {d} account for dimension {recovered}, expected {dimension}"
            )));
        }
        let multiplicity_free = constituents.iter().all(|c| c.multiplicity <= 1);
        degrees.push(DegreeReport { degree: d, dimension, constituents, multiplicity_free });
    }
    let first_failure = degrees.iter().find(|r| !r.multiplicity_free).map(|r| r.degree);
    Ok(MultiplicityReport {
        group: k.to_string(),
        module_dim: k.module_dim(),
        degree_cap,
        multiplicity_free: first_failure.is_none(),
        first_failure,
        degrees,
    })
}

/// Numerical cross-check of a Weyl integral on roots of unity.
pub fn weyl_integral_by_quadrature(k: &KDescriptor, integrand: &LaurentPoly) -> f64 {
    let full = integrand.mul(&k.weyl_density());
    let q = full.max_abs_exponent() as usize + 1;
    full.torus_quadrature(q) / k.weyl_order() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binomial(n: i128, k: i128) -> i128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Number of monomials of degree `d` in the weight variables with each torus weight.
    fn monomial_weight_counts(weights: &[Vec<i32>], d: usize) -> BTreeMap<Vec<i32>, i128> {
        fn rec(weights: &[Vec<i32>], d: usize, start: usize, acc: Vec<i32>, out: &mut BTreeMap<Vec<i32>, i128>) {
            if d == 0 {
                *out.entry(acc).or_insert(0) += 1;
                return;
            }
            for i in start..weights.len() {
                let next: Vec<i32> = acc.iter().zip(&weights[i]).map(|(a, b)| a + b).collect();
                rec(weights, d - 1, i, next, out);
            }
        }
        let mut out = BTreeMap::new();
        rec(weights, d, 0, vec![0; weights[0].len()], &mut out);
        out
    }

    #[test]
    fn laurent_arithmetic() {
        let mut p = LaurentPoly::monomial(vec![1, -1], 2);
        p.add_term(vec![0, 0], 3);
        let q = p.conjugate();
        assert_eq!(q.coefficient(&[-1, 1]), 2);
        let pq = p.mul(&q);
        assert_eq!(pq.constant_term(), 4 + 9);
        p.add_term(vec![1, -1], -2);
        assert_eq!(p, LaurentPoly::monomial(vec![0, 0], 3));
        assert_eq!(LaurentPoly::zero(1).to_string(), "0");
    }

    #[test]
    fn constant_terms_agree_with_root_of_unity_quadrature() {
        for src in ["U1:1,2", "U2:std", "SU2:std", "U1:1 * SU2:std"] {
            let k = KDescriptor::parse(src).unwrap();
            for d in 0..5 {
                let chi = symmetric_power_character(&k.weights(), k.torus_rank(), d);
                let integrand = chi.mul(&chi.conjugate());
                let exact = integrand.mul(&k.weyl_density()).constant_term() as f64 / k.weyl_order() as f64;
                let numeric = weyl_integral_by_quadrature(&k, &integrand);
                assert!((exact - numeric).abs() < 1e-9, "{src} d={d}: {exact} vs {numeric}");
            }
        }
    }

    #[test]
    fn symmetric_power_matches_monomial_enumeration() {
        let k = KDescriptor::parse("U1:1,2,2").unwrap();
        for d in 0..6 {
            let chi = symmetric_power_character(&k.weights(), 1, d);
            let counts = monomial_weight_counts(&k.weights(), d);
            for (w, c) in &counts {
                assert_eq!(chi.coefficient(w), *c);
            }
            assert_eq!(chi.terms().count(), counts.len());
        }
    }

    #[test]
    fn u1_weight_one_on_c_is_multiplicity_free() {
        let rep = multiplicity_free_check(&KDescriptor::parse("U1:1").unwrap(), 12).unwrap();
        assert!(rep.multiplicity_free);
        for r in &rep.degrees {
            assert_eq!(r.constituents, vec![Constituent { highest_weight: vec![r.degree as i32], multiplicity: 1 }]);
        }
    }

    #[test]
    fn scalar_u1_on_c2_fails_at_degree_one() {
        let k = KDescriptor::parse("U1:1,1").unwrap();
        let rep = multiplicity_free_check(&k, 5).unwrap();
        assert!(!rep.multiplicity_free);
        assert_eq!(rep.first_failure, Some(1));
        for r in &rep.degrees {
            // Monomial oracle: all d + 1 monomials of degree d share the weight d.
            let counts = monomial_weight_counts(&k.weights(), r.degree);
            assert_eq!(counts.len(), 1);
            assert_eq!(counts[&vec![r.degree as i32]], r.degree as i128 + 1);
            assert_eq!(r.constituents[0].multiplicity, r.degree as i128 + 1);
        }
    }

    #[test]
    fn u2_standard_gives_one_constituent_per_degree() {
        let k = KDescriptor::parse("U2:std").unwrap();
        let rep = multiplicity_free_check(&k, 8).unwrap();
        assert!(rep.multiplicity_free);
        for r in &rep.degrees {
            // Schur oracle: S^d(ℂ²) = V_{(d,0)}, of dimension d + 1.
            assert_eq!(r.constituents.len(), 1);
            assert_eq!(r.constituents[0].highest_weight, vec![r.degree as i32, 0]);
            assert_eq!(r.dimension, r.degree as i128 + 1);
        }
    }

    #[test]
    fn tensor_products_decompose_correctly() {
        // U(1) × SU(2) on ℂ ⊗ ℂ² is U(2) in disguise: multiplicity free.
        let rep = multiplicity_free_check(&KDescriptor::parse("U1:1 * SU2:std").unwrap(), 6).unwrap();
        assert!(rep.multiplicity_free);
        // SU(2) alone on ℂ²: S^d = V_d, still multiplicity free.
        assert!(multiplicity_free_check(&KDescriptor::parse("SU2:std").unwrap(), 6).unwrap().multiplicity_free);
        // U(1) on ℂ³ with weights 1, 1, 2: degree 1 already repeats weight 1.
        let rep = multiplicity_free_check(&KDescriptor::parse("U1:1,1,2").unwrap(), 3).unwrap();
        assert_eq!(rep.first_failure, Some(1));
        // Dimensions follow C(m + d − 1, d).
        for r in &rep.degrees {
            assert_eq!(r.dimension, binomial(3 + r.degree as i128 - 1, r.degree as i128));
        }
    }

    #[test]
    fn unsupported_groups_are_rejected() {
        for src in ["U2:std * U1:1", "SU3:std", "U2:sym2", "U1:", "U1:a", "nonsense"] {
            assert!(KDescriptor::parse(src).is_err(), "{src}");
        }
        assert!(matches!(KDescriptor::parse("U1:1 * U1:1 * U1:1"), Err(RegistryError::Unsupported(_))));
        assert_eq!(KDescriptor::parse("U1:1 * SU2:std").unwrap().to_string(), "U1:1 * SU2:std");
    }

    proptest! {
        #[test]
        fn conjugate_action_gives_the_same_verdict(weights in prop::collection::vec(-3i32..=3, 1..4), cap in 0usize..5) {
            let src = format!("U1:{}", weights.iter().map(i32::to_string).collect::<Vec<_>>().join(","));
            let k = KDescriptor::parse(&src).unwrap();
            let a = multiplicity_free_check(&k, cap).unwrap();
            let b = multiplicity_free_check(&k.conjugate(), cap).unwrap();
            prop_assert_eq!(a.multiplicity_free, b.multiplicity_free);
            prop_assert_eq!(a.first_failure, b.first_failure);
        }

        #[test]
        fn verdicts_are_stable_under_raising_the_cap(weights in prop::collection::vec(-2i32..=2, 1..3), cap in 0usize..5) {
            let src = format!("U1:{}", weights.iter().map(i32::to_string).collect::<Vec<_>>().join(","));
            let k = KDescriptor::parse(&src).unwrap();
            let low = multiplicity_free_check(&k, cap).unwrap();
            let high = multiplicity_free_check(&k, cap + 2).unwrap();
            prop_assert_eq!(&high.degrees[..=cap], &low.degrees[..]);
            if let Some(d) = low.first_failure {
                prop_assert_eq!(high.first_failure, Some(d));
            }
            if high.multiplicity_free {
                prop_assert!(low.multiplicity_free);
            }
        }
    }
}
