//! Finite-dimensional graded-commutative algebras over the rationals.
//!
//! An algebra is either a presented table of structure constants or a
//! tensor product of two algebras whose products are evaluated lazily with
//! the Koszul sign `(u1 ⊗ v1)(u2 ⊗ v2) = (-1)^{|v1||u2|} u1u2 ⊗ v1v2`.
//! Tensor squares of product-space cohomology get large quickly, so the
//! tensor variant never materialises its multiplication table.

mod element;
mod linalg;
mod presentation;
pub mod presets;
mod zdcl;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use element::AlgElement;
pub use linalg::nullspace;
pub use presentation::{validate_algebra, BasisEntry, Presentation, ProductEntry, TermEntry};
pub use zdcl::{canonical_divisor, zdcl, zdcl_with_generators, ZdclMode, ZdclResult};

/// Exact rational scalar used throughout the algebra code.
pub type Rational = BigRational;

/// Sparse linear combination of basis indices.
pub type Combination = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("basis label `{label}` has negative degree {degree}")]
    NegativeDegree { label: String, degree: i64 },
    #[error("coefficient `{0}` is not an exact rational of the form p or p/q")]
    BadCoefficient(String),
    #[error("unit `{unit}` missing: {reason}")]
    UnitMissing { unit: String, reason: String },
    #[error("unit law violated: {unit}·{label} must equal {label}")]
    UnitLawViolation { unit: String, label: String },
    #[error("product {left}·{right} given more than once")]
    DuplicateProduct { left: String, right: String },
    #[error("grading violation in {left}·{right}: term `{term}` has degree {found}, expected {expected}")]
    GradingViolation {
        left: String,
        right: String,
        term: String,
        expected: u32,
        found: u32,
    },
    #[error("graded commutativity violated: {left}·{right} ≠ (-1)^(|{left}||{right}|) {right}·{left}")]
    CommutativityViolation { left: String, right: String },
    #[error("associativity violated: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    AssociativityViolation { a: String, b: String, c: String },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element does not live in a tensor square")]
    NotATensorSquare,
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("generator `{0}` has degree 0; zero-divisor generators need positive degree")]
    DegreeZeroGenerator(String),
    #[error("max_len must be at least 1")]
    InvalidMaxLen,
}

/// A graded-commutative algebra with a distinguished basis.
///
/// Cloning is cheap: the structure lives behind an `Arc`.
#[derive(Clone)]
pub struct GradedAlgebra(Arc<Inner>);

struct Inner {
    structure: Structure,
    dim: usize,
    top_degree: u32,
}

enum Structure {
    Table(Table),
    Tensor {
        left: GradedAlgebra,
        right: GradedAlgebra,
    },
}

struct Table {
    labels: Vec<String>,
    degrees: Vec<u32>,
    unit: usize,
    index: HashMap<String, usize>,
    products: HashMap<(usize, usize), Combination>,
}

impl GradedAlgebra {
    /// Builds a table algebra without checking the algebra axioms.
    ///
    /// Products with the unit are filled in automatically. Callers outside
    /// this module go through [`validate_algebra`].
    pub(crate) fn from_table_unchecked(
        labels: Vec<String>,
        degrees: Vec<u32>,
        unit: usize,
        mut products: HashMap<(usize, usize), Combination>,
    ) -> Self {
        let dim = labels.len();
        for b in 0..dim {
            products.insert((unit, b), vec![(b, Rational::one())]);
            products.insert((b, unit), vec![(b, Rational::one())]);
        }
        products.retain(|_, c| !c.is_empty());
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let top_degree = degrees.iter().copied().max().unwrap_or(0);
        GradedAlgebra(Arc::new(Inner {
            structure: Structure::Table(Table {
                labels,
                degrees,
                unit,
                index,
                products,
            }),
            dim,
            top_degree,
        }))
    }

    /// The tensor product `A ⊗ B` with the Koszul sign convention.
    ///
    /// Basis index `(i, j)` is encoded as `i * dim(B) + j`.
    pub fn tensor(left: &GradedAlgebra, right: &GradedAlgebra) -> GradedAlgebra {
        let dim = left.dim() * right.dim();
        let top_degree = left.top_degree() + right.top_degree();
        GradedAlgebra(Arc::new(Inner {
            structure: Structure::Tensor {
                left: left.clone(),
                right: right.clone(),
            },
            dim,
            top_degree,
        }))
    }

    /// `A ⊗ A`, the algebra in which zero divisors live.
    pub fn tensor_square(&self) -> GradedAlgebra {
        GradedAlgebra::tensor(self, self)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn top_degree(&self) -> u32 {
        self.0.top_degree
    }

    pub fn unit(&self) -> usize {
        match &self.0.structure {
            Structure::Table(t) => t.unit,
            Structure::Tensor { left, right } => left.unit() * right.dim() + right.unit(),
        }
    }

    pub fn degree(&self, index: usize) -> u32 {
        match &self.0.structure {
            Structure::Table(t) => t.degrees[index],
            Structure::Tensor { left, right } => {
                let (i, j) = split(index, right.dim());
                left.degree(i) + right.degree(j)
            }
        }
    }

    pub fn label(&self, index: usize) -> String {
        match &self.0.structure {
            Structure::Table(t) => t.labels[index].clone(),
            Structure::Tensor { left, right } => {
                let (i, j) = split(index, right.dim());
                format!("{}⊗{}", left.label(i), right.label(j))
            }
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.0.structure {
            Structure::Table(t) => t.index.get(label).copied(),
            Structure::Tensor { .. } => (0..self.dim()).find(|&i| self.label(i) == label),
        }
    }

    /// The factors `(A, B)` when this algebra is a tensor product.
    pub fn tensor_factors(&self) -> Option<(&GradedAlgebra, &GradedAlgebra)> {
        match &self.0.structure {
            Structure::Table(_) => None,
            Structure::Tensor { left, right } => Some((left, right)),
        }
    }

    /// The factor `A` when this algebra is `A ⊗ A`.
    pub fn square_root(&self) -> Option<&GradedAlgebra> {
        self.tensor_factors()
            .filter(|(l, r)| l.same_as(r))
            .map(|(l, _)| l)
    }

    /// Index of the basis element `left_index ⊗ right_index`.
    pub fn pair_index(&self, left_index: usize, right_index: usize) -> Option<usize> {
        let (l, r) = self.tensor_factors()?;
        (left_index < l.dim() && right_index < r.dim())
            .then(|| left_index * r.dim() + right_index)
    }

    /// Product of two basis elements as a sparse combination.
    pub fn basis_product(&self, a: usize, b: usize) -> Combination {
        match &self.0.structure {
            Structure::Table(t) => t.products.get(&(a, b)).cloned().unwrap_or_default(),
            Structure::Tensor { left, right } => {
                let nr = right.dim();
                let (u1, v1) = split(a, nr);
                let (u2, v2) = split(b, nr);
                let left_part = left.basis_product(u1, u2);
                if left_part.is_empty() {
                    return Vec::new();
                }
                let right_part = right.basis_product(v1, v2);
                let odd = (right.degree(v1) * left.degree(u2)) % 2 == 1;
                let mut out = Vec::with_capacity(left_part.len() * right_part.len());
                for (l, cl) in &left_part {
                    for (r, cr) in &right_part {
                        let c = cl * cr;
                        out.push((l * nr + r, if odd { -c } else { c }));
                    }
                }
                out
            }
        }
    }

    /// Indices of all basis elements of the given degree.
    pub fn basis_of_degree(&self, degree: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    /// Basis indices of positive degree, the default zero-divisor generators.
    pub fn positive_degree_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) > 0).collect()
    }

    /// Same algebra, either by identity or by structure.
    pub fn same_as(&self, other: &GradedAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.structurally_equal(other)
    }

    fn structurally_equal(&self, other: &GradedAlgebra) -> bool {
        match (&self.0.structure, &other.0.structure) {
            (Structure::Table(a), Structure::Table(b)) => {
                a.labels == b.labels
                    && a.degrees == b.degrees
                    && a.unit == b.unit
                    && a.products == b.products
            }
            (
                Structure::Tensor { left: l1, right: r1 },
                Structure::Tensor { left: l2, right: r2 },
            ) => l1.same_as(l2) && r1.same_as(r2),
            _ => false,
        }
    }

    /// Checks the graded-commutative algebra axioms on every basis pair and
    /// triple. Products with the unit are checked against the unit law.
    pub fn check_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let unit = self.unit();
        let degree_zero: Vec<usize> = self.basis_of_degree(0);
        if degree_zero != [unit] {
            let extra = degree_zero
                .iter()
                .find(|&&i| i != unit)
                .map(|&i| self.label(i))
                .unwrap_or_default();
            return Err(AlgebraError::UnitMissing {
                unit: self.label(unit),
                reason: if self.degree(unit) != 0 {
                    "unit must have degree 0".into()
                } else {
                    format!("`{extra}` also has degree 0; the unit must be the only one")
                },
            });
        }
        for b in 0..n {
            let expect = vec![(b, Rational::one())];
            if normalize(self.basis_product(unit, b)) != expect
                || normalize(self.basis_product(b, unit)) != expect
            {
                return Err(AlgebraError::UnitLawViolation {
                    unit: self.label(unit),
                    label: self.label(b),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = normalize(self.basis_product(a, b));
                let expected = self.degree(a) + self.degree(b);
                if let Some((term, _)) = ab.iter().find(|(t, _)| self.degree(*t) != expected) {
                    return Err(AlgebraError::GradingViolation {
                        left: self.label(a),
                        right: self.label(b),
                        term: self.label(*term),
                        expected,
                        found: self.degree(*term),
                    });
                }
                let mut ba = normalize(self.basis_product(b, a));
                if (self.degree(a) * self.degree(b)) % 2 == 1 {
                    for (_, c) in ba.iter_mut() {
                        *c = -c.clone();
                    }
                }
                if ab != ba {
                    return Err(AlgebraError::CommutativityViolation {
                        left: self.label(a),
                        right: self.label(b),
                    });
                }
            }
        }
        for a in (0..n).filter(|&a| a != unit) {
            for b in (0..n).filter(|&b| b != unit) {
                let ab = self.basis_product(a, b);
                for c in (0..n).filter(|&c| c != unit) {
                    let left = normalize(
                        ab.iter()
                            .flat_map(|(x, cx)| {
                                self.basis_product(*x, c)
                                    .into_iter()
                                    .map(move |(y, cy)| (y, cx * cy))
                            })
                            .collect(),
                    );
                    let bc = self.basis_product(b, c);
                    let right = normalize(
                        bc.iter()
                            .flat_map(|(x, cx)| {
                                self.basis_product(a, *x)
                                    .into_iter()
                                    .map(move |(y, cy)| (y, cx * cy))
                            })
                            .collect(),
                    );
                    if left != right {
                        return Err(AlgebraError::AssociativityViolation {
                            a: self.label(a),
                            b: self.label(b),
                            c: self.label(c),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The cup-product homomorphism `A ⊗ A → A`, `x ⊗ y ↦ xy`.
    pub fn cup_hom(&self, z: &AlgElement) -> Result<AlgElement, AlgebraError> {
        cup_hom(z).and_then(|image| {
            if image.algebra().same_as(self) {
                Ok(image)
            } else {
                Err(AlgebraError::AlgebraMismatch)
            }
        })
    }
}

/// Tensor product of two algebras; the Künneth model of `H*(X × Y)`.
pub fn kunneth(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
    GradedAlgebra::tensor(a, b)
}

/// Tensor square `A ⊗ A` with the Koszul sign rule.
pub fn tensor_square(a: &GradedAlgebra) -> GradedAlgebra {
    a.tensor_square()
}

/// Applies the multiplication map `A ⊗ A → A` to an element of a tensor square.
pub fn cup_hom(z: &AlgElement) -> Result<AlgElement, AlgebraError> {
    let square = z.algebra();
    let base = square.square_root().ok_or(AlgebraError::NotATensorSquare)?;
    let nr = base.dim();
    let mut acc: Combination = Vec::new();
    for (idx, c) in z.terms() {
        let (i, j) = split(*idx, nr);
        acc.extend(
            base.basis_product(i, j)
                .into_iter()
                .map(|(t, ct)| (t, ct * c)),
        );
    }
    Ok(AlgElement::from_combination(base, acc))
}

/// Exact-rational basis of the kernel of the cup-product homomorphism,
/// computed one degree at a time. Elements live in `A ⊗ A`.
pub fn zero_divisor_basis(a: &GradedAlgebra) -> Vec<AlgElement> {
    let square = a.tensor_square();
    let n = a.dim();
    let mut by_degree: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for idx in 0..square.dim() {
        by_degree.entry(square.degree(idx)).or_default().push(idx);
    }
    let mut out = Vec::new();
    for (degree, columns) in by_degree {
        let rows = a.basis_of_degree(degree);
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(r, &b)| (b, r)).collect();
        let mut matrix = vec![vec![Rational::zero(); columns.len()]; rows.len()];
        for (col, &idx) in columns.iter().enumerate() {
            let (i, j) = split(idx, n);
            for (t, c) in a.basis_product(i, j) {
                let r = row_of[&t];
                matrix[r][col] += c;
            }
        }
        for kernel_vector in nullspace(matrix, columns.len()) {
            let combo = kernel_vector
                .into_iter()
                .map(|(col, c)| (columns[col], c))
                .collect();
            out.push(AlgElement::from_combination(&square, combo));
        }
    }
    out
}

fn split(index: usize, right_dim: usize) -> (usize, usize) {
    (index / right_dim, index % right_dim)
}

/// Sorts by index, merges duplicates and drops zero coefficients.
pub(crate) fn normalize(mut combo: Combination) -> Combination {
    combo.sort_by_key(|(i, _)| *i);
    let mut out: Combination = Vec::with_capacity(combo.len());
    for (i, c) in combo {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with optional sign; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::BadCoefficient(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let is_int = |x: &str| {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.trim_start_matches('+').parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.structure {
            Structure::Table(t) => f
                .debug_struct("GradedAlgebra")
                .field("basis", &t.labels)
                .field("degrees", &t.degrees)
                .finish(),
            Structure::Tensor { left, right } => f
                .debug_struct("TensorAlgebra")
                .field("left", left)
                .field("right", right)
                .finish(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn sphere_tensor_square_sign_rule() {
        // (1⊗u)(u⊗1) = (-1)^{|u||u|} u⊗u in H*(S^1)
        let s1 = sphere(1);
        let sq = s1.tensor_square();
        let u = s1.index_of("u").unwrap();
        let one = s1.unit();
        let a = AlgElement::basis(&sq, sq.pair_index(one, u).unwrap());
        let b = AlgElement::basis(&sq, sq.pair_index(u, one).unwrap());
        let uu = AlgElement::basis(&sq, sq.pair_index(u, u).unwrap());
        assert_eq!(a.mul(&b).unwrap(), uu.scale(&q(-1)));
        // same product in H*(S^2) has no sign
        let s2 = sphere(2);
        let sq2 = s2.tensor_square();
        let a = AlgElement::basis(&sq2, sq2.pair_index(0, 1).unwrap());
        let b = AlgElement::basis(&sq2, sq2.pair_index(1, 0).unwrap());
        let uu = AlgElement::basis(&sq2, sq2.pair_index(1, 1).unwrap());
        assert_eq!(a.mul(&b).unwrap(), uu);
    }

    #[test]
    fn unit_tensor_unit_is_identity() {
        let alg = surface(2);
        let sq = alg.tensor_square();
        let one = AlgElement::one(&sq);
        for idx in 0..sq.dim() {
            let x = AlgElement::basis(&sq, idx);
            assert_eq!(one.mul(&x).unwrap(), x);
            assert_eq!(x.mul(&one).unwrap(), x);
        }
    }

    #[test]
    fn canonical_divisor_squares_on_spheres() {
        for n in 1..=7u32 {
            let s = sphere(n);
            let a = canonical_divisor(&s, s.index_of("u").unwrap());
            let sq = a.algebra().clone();
            let uu = AlgElement::basis(&sq, sq.pair_index(1, 1).unwrap());
            let expected = if n % 2 == 0 { uu.scale(&q(-2)) } else { AlgElement::zero(&sq) };
            assert_eq!(a.mul(&a).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn cup_hom_examples() {
        let s = sphere(4);
        let sq = s.tensor_square();
        let a = canonical_divisor(&s, 1);
        assert!(cup_hom(&a).unwrap().is_zero());
        let one = AlgElement::one(&sq);
        assert_eq!(cup_hom(&one).unwrap(), AlgElement::one(&s));
        let uu = AlgElement::basis(&sq, sq.pair_index(1, 1).unwrap());
        assert!(cup_hom(&uu).unwrap().is_zero());
    }

    #[test]
    fn cup_hom_rejects_non_squares() {
        let s = sphere(2);
        let x = AlgElement::one(&s);
        assert_eq!(cup_hom(&x), Err(AlgebraError::NotATensorSquare));
        let mixed = kunneth(&sphere(1), &sphere(2));
        assert_eq!(
            cup_hom(&AlgElement::one(&mixed)),
            Err(AlgebraError::NotATensorSquare)
        );
        let other = sphere(3);
        let z = AlgElement::one(&other.tensor_square());
        assert_eq!(s.cup_hom(&z), Err(AlgebraError::AlgebraMismatch));
    }

    #[test]
    fn zero_divisor_basis_dimensions() {
        // dim(A⊗A) - rank(cup) with rank = dim A because cup is onto
        assert_eq!(zero_divisor_basis(&point()).len(), 0);
        assert_eq!(zero_divisor_basis(&sphere(1)).len(), 2);
        assert_eq!(zero_divisor_basis(&sphere(2)).len(), 2);
        let t2 = torus(2);
        assert_eq!(zero_divisor_basis(&t2).len(), 16 - 4);
        for z in zero_divisor_basis(&surface(2)) {
            assert!(cup_hom(&z).unwrap().is_zero());
        }
    }

    #[test]
    fn zero_divisor_basis_of_circle_spans_expected_elements() {
        let s = sphere(1);
        let sq = s.tensor_square();
        let basis = zero_divisor_basis(&s);
        let a = canonical_divisor(&s, 1);
        let uu = AlgElement::basis(&sq, sq.pair_index(1, 1).unwrap());
        // each degree part is one-dimensional and proportional to the expected element
        let proportional = |x: &AlgElement, y: &AlgElement| {
            let (&i, c) = y.terms().next().unwrap();
            x.scale(&(c / x.coefficient(i))) == *y
        };
        let deg1: Vec<_> = basis.iter().filter(|z| z.degree() == Some(1)).collect();
        assert_eq!(deg1.len(), 1);
        assert!(proportional(deg1[0], &a));
        let deg2: Vec<_> = basis.iter().filter(|z| z.degree() == Some(2)).collect();
        assert_eq!(deg2.len(), 1);
        assert!(proportional(deg2[0], &uu));
    }

    #[test]
    fn kunneth_of_circles_is_torus() {
        let t = kunneth(&sphere(1), &sphere(1));
        assert_eq!(t.dim(), 4);
        let a1 = AlgElement::basis(&t, t.pair_index(1, 0).unwrap());
        let a2 = AlgElement::basis(&t, t.pair_index(0, 1).unwrap());
        let p = a1.mul(&a2).unwrap();
        assert!(!p.is_zero());
        assert_eq!(a2.mul(&a1).unwrap(), p.neg());
        assert!(t.check_axioms().is_ok());
    }

    #[test]
    fn kunneth_with_point_is_isomorphic() {
        let s = surface(2);
        let k = kunneth(&s, &point());
        assert_eq!(k.dim(), s.dim());
        for i in 0..s.dim() {
            assert_eq!(k.degree(i), s.degree(i));
            for j in 0..s.dim() {
                assert_eq!(k.basis_product(i, j), s.basis_product(i, j));
            }
        }
    }

    #[test]
    fn iterated_kunneth_of_two_spheres() {
        let s2 = sphere(2);
        let x = kunneth(&kunneth(&s2, &s2), &s2);
        assert_eq!(x.dim(), 8);
        assert_eq!(x.top_degree(), 6);
        assert!(x.check_axioms().is_ok());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-2").unwrap(), q(-2));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&Rational::new((-4).into(), 6.into())), "-2/3");
    }
}
