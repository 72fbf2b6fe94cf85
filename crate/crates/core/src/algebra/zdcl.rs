//! Zero-divisor cup-length search.
//!
//! Every candidate factor is homogeneous and graded-commutative elements
//! commute up to sign, so only multisets of factors need visiting. The
//! search walks non-decreasing index sequences depth first, abandons any
//! partial product that vanishes or whose degree would exceed the top
//! degree of `A ⊗ A`, and stops as soon as `max_len` is reached.

use num_traits::One;

use super::{zero_divisor_basis, AlgElement, AlgebraError, GradedAlgebra, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZdclMode {
    /// Products of canonical divisors `1⊗a − a⊗1`, repetition allowed.
    Canonical,
    /// Products of an exact basis of the zero-divisor ideal.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZdclResult {
    pub length: usize,
    /// The factors of the longest nonzero product found; all zero divisors.
    pub witness: Vec<AlgElement>,
    /// The product of the witness factors (the unit of `A ⊗ A` when empty).
    pub product_value: AlgElement,
}

/// The canonical zero divisor `1⊗a − a⊗1` in `A ⊗ A`.
pub fn canonical_divisor(algebra: &GradedAlgebra, generator: usize) -> AlgElement {
    let square = algebra.tensor_square();
    let unit = algebra.unit();
    let one = Rational::one();
    AlgElement::from_combination(
        &square,
        vec![
            (square.pair_index(unit, generator).unwrap(), one.clone()),
            (square.pair_index(generator, unit).unwrap(), -one),
        ],
    )
}

/// Zero-divisor cup-length with generators given by label.
///
/// `generators` only matters in canonical mode and defaults to every
/// positive-degree basis label.
pub fn zdcl(
    algebra: &GradedAlgebra,
    mode: ZdclMode,
    max_len: usize,
    generators: Option<&[String]>,
) -> Result<ZdclResult, AlgebraError> {
    let indices = match generators {
        None => None,
        Some(labels) => Some(
            labels
                .iter()
                .map(|l| {
                    algebra
                        .index_of(l)
                        .ok_or_else(|| AlgebraError::UnknownLabel(l.clone()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    zdcl_with_generators(algebra, mode, max_len, indices.as_deref())
}

/// Zero-divisor cup-length with generators given by basis index.
pub fn zdcl_with_generators(
    algebra: &GradedAlgebra,
    mode: ZdclMode,
    max_len: usize,
    generators: Option<&[usize]>,
) -> Result<ZdclResult, AlgebraError> {
    if max_len == 0 {
        return Err(AlgebraError::InvalidMaxLen);
    }
    let candidates = match mode {
        ZdclMode::Canonical => {
            let gens = match generators {
                Some([]) => return Err(AlgebraError::EmptyGeneratorSet),
                Some(g) => g.to_vec(),
                None => algebra.positive_degree_basis(),
            };
            if let Some(&g) = gens.iter().find(|&&g| algebra.degree(g) == 0) {
                return Err(AlgebraError::DegreeZeroGenerator(algebra.label(g)));
            }
            let mut gens = gens;
            gens.dedup();
            gens.into_iter()
                .map(|g| canonical_divisor(algebra, g))
                .collect()
        }
        ZdclMode::Exhaustive => zero_divisor_basis(algebra),
    };
    Ok(longest_product(algebra, &candidates, max_len))
}

fn longest_product(algebra: &GradedAlgebra, candidates: &[AlgElement], max_len: usize) -> ZdclResult {
    let square = algebra.tensor_square();
    let top = square.top_degree();
    let degrees: Vec<u32> = candidates
        .iter()
        .map(|c| c.degree().expect("zero divisors are homogeneous and nonzero"))
        .collect();

    struct Search<'a> {
        candidates: &'a [AlgElement],
        degrees: &'a [u32],
        top: u32,
        max_len: usize,
        stack: Vec<usize>,
        best: Option<(Vec<usize>, AlgElement)>,
    }

    impl Search<'_> {
        fn best_len(&self) -> usize {
            self.best.as_ref().map_or(0, |(w, _)| w.len())
        }

        fn visit(&mut self, start: usize, product: &AlgElement, degree: u32) {
            if self.stack.len() > self.best_len() {
                self.best = Some((self.stack.clone(), product.clone()));
            }
            if self.best_len() >= self.max_len || self.stack.len() >= self.max_len {
                return;
            }
            for i in start..self.candidates.len() {
                let d = degree + self.degrees[i];
                if d > self.top {
                    continue;
                }
                let next = product.mul(&self.candidates[i]).expect("same algebra");
                if next.is_zero() {
                    continue;
                }
                self.stack.push(i);
                self.visit(i, &next, d);
                self.stack.pop();
                if self.best_len() >= self.max_len {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        candidates,
        degrees: &degrees,
        top,
        max_len,
        stack: Vec::new(),
        best: None,
    };
    search.visit(0, &AlgElement::one(&square), 0);
    match search.best {
        Some((indices, value)) => ZdclResult {
            length: indices.len(),
            witness: indices.iter().map(|&i| candidates[i].clone()).collect(),
            product_value: value,
        },
        None => ZdclResult {
            length: 0,
            witness: Vec::new(),
            product_value: AlgElement::one(&square),
        },
    }
}

impl ZdclResult {
    /// Recomputes the witness product and checks every factor is killed by
    /// the cup homomorphism.
    pub fn verify(&self) -> bool {
        let Some(square) = self.witness.first().map(|w| w.algebra().clone()) else {
            return self.length == 0;
        };
        let mut acc = AlgElement::one(&square);
        for w in &self.witness {
            match super::cup_hom(w) {
                Ok(img) if img.is_zero() => {}
                _ => return false,
            }
            acc = match acc.mul(w) {
                Ok(p) => p,
                Err(_) => return false,
            };
        }
        self.witness.len() == self.length && !acc.is_zero() && acc == self.product_value
    }
}

#[cfg(test)]
mod tests {
    use super::super::presets::{cpn, point, sphere, surface, torus};
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn spheres_by_parity() {
        for n in 1..=7 {
            let r = zdcl(&sphere(n), ZdclMode::Canonical, 8, None).unwrap();
            assert_eq!(r.length, if n % 2 == 0 { 2 } else { 1 }, "S^{n}");
            assert!(r.verify());
        }
    }

    #[test]
    fn two_sphere_witness_is_minus_two_u_tensor_u() {
        let s = sphere(2);
        let r = zdcl(&s, ZdclMode::Canonical, 4, None).unwrap();
        let sq = s.tensor_square();
        let uu = AlgElement::basis(&sq, sq.pair_index(1, 1).unwrap());
        assert_eq!(r.product_value, uu.scale(&q(-2)));
    }

    #[test]
    fn genus_two_surface() {
        let s = surface(2);
        let gens: Vec<String> = ["u1", "v1", "u2", "v2"].map(String::from).to_vec();
        let r = zdcl(&s, ZdclMode::Canonical, 8, Some(&gens)).unwrap();
        assert_eq!(r.length, 4);
        let sq = s.tensor_square();
        let a = s.index_of("A").unwrap();
        let aa = AlgElement::basis(&sq, sq.pair_index(a, a).unwrap());
        assert_eq!(r.product_value, aa.scale(&q(2)));
    }

    #[test]
    fn projective_plane() {
        let c = cpn(2);
        let r = zdcl(&c, ZdclMode::Canonical, 8, Some(&["u".to_string()])).unwrap();
        assert_eq!(r.length, 4);
        let sq = c.tensor_square();
        let top = c.index_of("u^2").unwrap();
        let expected = AlgElement::basis(&sq, sq.pair_index(top, top).unwrap()).scale(&q(6));
        assert_eq!(r.product_value, expected);
    }

    #[test]
    fn exhaustive_torus() {
        let r = zdcl(&torus(2), ZdclMode::Exhaustive, 3, None).unwrap();
        assert_eq!(r.length, 2);
        assert!(r.verify());
    }

    #[test]
    fn point_has_length_zero() {
        let r = zdcl(&point(), ZdclMode::Canonical, 3, None).unwrap();
        assert_eq!(r.length, 0);
        assert!(r.witness.is_empty());
        assert!(r.verify());
        let r = zdcl(&point(), ZdclMode::Exhaustive, 3, None).unwrap();
        assert_eq!(r.length, 0);
    }

    #[test]
    fn argument_errors() {
        assert_eq!(
            zdcl(&sphere(2), ZdclMode::Canonical, 3, Some(&[])).unwrap_err(),
            AlgebraError::EmptyGeneratorSet
        );
        assert_eq!(
            zdcl(&sphere(2), ZdclMode::Canonical, 0, None).unwrap_err(),
            AlgebraError::InvalidMaxLen
        );
        assert_eq!(
            zdcl(&sphere(2), ZdclMode::Canonical, 2, Some(&["w".into()])).unwrap_err(),
            AlgebraError::UnknownLabel("w".into())
        );
        assert!(matches!(
            zdcl(&sphere(2), ZdclMode::Canonical, 2, Some(&["1".into()])),
            Err(AlgebraError::DegreeZeroGenerator(_))
        ));
    }

    #[test]
    fn max_len_caps_the_search() {
        let r = zdcl(&torus(3), ZdclMode::Canonical, 2, None).unwrap();
        assert_eq!(r.length, 2);
    }
}
