use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::matrix::Matrix;
use super::rational::format_rational;
use super::ring::Ring;
use super::AlgebraError;

/// Exponent vector ordered graded-lexicographically (total degree first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// A polynomial with an empty variable list is a bare constant and combines
/// with any other polynomial; otherwise both operands must share the same
/// variable list.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    variables: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero_in(variables: &[String]) -> Self {
        Self { variables: variables.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(variables: &[String], c: BigRational) -> Self {
        let mut p = Self::zero_in(variables);
        p.add_term(Monomial(vec![0; variables.len()]), c);
        p
    }

    pub fn variable(variables: &[String], index: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[index] = 1;
        let mut p = Self::zero_in(variables);
        p.add_term(Monomial(e), BigRational::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; zero coefficients dropped.
    pub fn from_terms(
        variables: &[String],
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero_in(variables);
        for (e, c) in terms {
            if e.len() != variables.len() {
                return Err(AlgebraError::DimensionMismatch { expected: variables.len(), found: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Coefficient of the given exponent vector.
    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero_in(&self.variables);
        for (m, v) in &self.terms {
            p.add_term(m.clone(), v * c);
        }
        p
    }

    /// Lifts a bare constant into `variables`.
    fn lifted(&self, variables: &[String]) -> Self {
        if self.variables == variables {
            return self.clone();
        }
        assert!(
            self.variables.is_empty(),
            "{}",
            AlgebraError::VariableMismatch(self.variables.clone(), variables.to_vec())
        );
        let mut p = Self::zero_in(variables);
        for (m, c) in &self.terms {
            debug_assert!(m.0.is_empty());
            p.add_term(Monomial(vec![0; variables.len()]), c.clone());
        }
        p
    }

    fn common_variables(&self, other: &Self) -> Vec<String> {
        if self.variables.is_empty() {
            other.variables.clone()
        } else {
            self.variables.clone()
        }
    }

    /// Checked addition: errors instead of panicking on variable mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self.plus(other))
    }

    /// Checked multiplication.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self.times(other))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.variables.is_empty() || other.variables.is_empty() || self.variables == other.variables {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch(self.variables.clone(), other.variables.clone()))
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, AlgebraError> {
        if !self.variables.is_empty() && point.len() != self.variables.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.variables.len(), found: point.len() });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, AlgebraError> {
        if !self.variables.is_empty() && point.len() != self.variables.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.variables.len(), found: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                m.0.iter().zip(point).fold(c, |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable list.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Self, AlgebraError> {
        if images.len() != self.variables.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.variables.len(), found: images.len() });
        }
        let target: Vec<String> = images.iter().find(|p| !p.variables.is_empty()).map(|p| p.variables.clone()).unwrap_or_default();
        for img in images {
            if !img.variables.is_empty() && img.variables != target {
                return Err(AlgebraError::VariableMismatch(img.variables.clone(), target));
            }
        }
        let mut out = Self::zero_in(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.times(&img.lifted(&target));
                }
            }
            out = out.plus(&t);
        }
        Ok(out)
    }

    /// Restricts to a linearly parametrized subspace: old variable `i` becomes
    /// `Σ_j param[i][j] * new_j`. `param` has one row per old variable and one
    /// column per new variable.
    pub fn restrict(&self, param: &Matrix<BigRational>, new_variables: &[String]) -> Result<Self, AlgebraError> {
        if param.rows() != self.variables.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.variables.len(), found: param.rows() });
        }
        if param.cols() != new_variables.len() {
            return Err(AlgebraError::DimensionMismatch { expected: new_variables.len(), found: param.cols() });
        }
        let images: Vec<MultiPoly> = (0..param.rows())
            .map(|i| {
                let mut p = MultiPoly::zero_in(new_variables);
                for j in 0..param.cols() {
                    p = p.plus(&MultiPoly::variable(new_variables, j).scale(param.get(i, j)));
                }
                p
            })
            .collect();
        if self.variables.is_empty() {
            return Ok(self.lifted(new_variables));
        }
        let mut out = self.substitute(&images)?;
        if out.variables.is_empty() {
            out = out.lifted(new_variables);
        }
        Ok(out)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.variables == other.variables {
            return self.terms == other.terms;
        }
        if self.variables.is_empty() || other.variables.is_empty() {
            let vars = self.common_variables(other);
            return self.lifted(&vars).terms == other.lifted(&vars).terms;
        }
        false
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        Self::zero_in(&[])
    }
    fn one() -> Self {
        Self::constant(&[], BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let vars = self.common_variables(rhs);
        let mut out = self.lifted(&vars);
        for (m, c) in &rhs.lifted(&vars).terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let vars = self.common_variables(rhs);
        let a = self.lifted(&vars);
        let b = rhs.lifted(&vars);
        let mut out = Self::zero_in(&vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Monomial(e), ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: descending graded-lex order, e.g. `1/2*z1^2 - 3*z1*z2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&self.variables)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag == BigRational::one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}
