use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{format_rational, AlgebraError, Combination, GradedAlgebra, Rational};

/// An element of a [`GradedAlgebra`] in canonical sparse form: zero
/// coefficients are never stored, so equality is coefficient equality.
#[derive(Clone)]
pub struct AlgElement {
    algebra: GradedAlgebra,
    coeffs: BTreeMap<usize, Rational>,
}

impl AlgElement {
    pub fn zero(algebra: &GradedAlgebra) -> Self {
        AlgElement {
            algebra: algebra.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &GradedAlgebra) -> Self {
        Self::basis(algebra, algebra.unit())
    }

    pub fn basis(algebra: &GradedAlgebra, index: usize) -> Self {
        assert!(index < algebra.dim(), "basis index {index} out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, Rational::one());
        AlgElement {
            algebra: algebra.clone(),
            coeffs,
        }
    }

    pub fn from_label(algebra: &GradedAlgebra, label: &str) -> Result<Self, AlgebraError> {
        algebra
            .index_of(label)
            .map(|i| Self::basis(algebra, i))
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    pub fn from_combination(algebra: &GradedAlgebra, combo: Combination) -> Self {
        let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in combo {
            *coeffs.entry(i).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        AlgElement {
            algebra: algebra.clone(),
            coeffs,
        }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Rational)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.coeffs.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all terms, or `None` for zero and
    /// inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.coeffs.keys().map(|&i| self.algebra.degree(i));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn check(&self, other: &AlgElement) -> Result<(), AlgebraError> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            *out.coeffs.entry(*i).or_insert_with(Rational::zero) += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> AlgElement {
        if factor.is_zero() {
            return AlgElement::zero(&self.algebra);
        }
        AlgElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (*i, c * factor))
                .collect(),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        self.check(other)?;
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, ci) in &self.coeffs {
            for (j, cj) in &other.coeffs {
                let cij = ci * cj;
                for (k, ck) in self.algebra.basis_product(*i, *j) {
                    *acc.entry(k).or_insert_with(Rational::zero) += ck * &cij;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(AlgElement {
            algebra: self.algebra.clone(),
            coeffs: acc,
        })
    }

    pub fn pow(&self, exponent: u32) -> AlgElement {
        let mut out = AlgElement::one(&self.algebra);
        for _ in 0..exponent {
            out = out.mul(self).expect("same algebra");
        }
        out
    }

    /// Coefficients keyed by basis label.
    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(i, c)| (self.algebra.label(*i), format_rational(c)))
            .collect()
    }
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.algebra.same_as(&other.algebra)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let s = format_rational(c);
            let label = self.algebra.label(*i);
            match (n, s.strip_prefix('-')) {
                (0, Some(rest)) => write!(f, "-{rest}·{label}")?,
                (0, None) => write!(f, "{s}·{label}")?,
                (_, Some(rest)) => write!(f, " - {rest}·{label}")?,
                (_, None) => write!(f, " + {s}·{label}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElement({self})")
    }
}
