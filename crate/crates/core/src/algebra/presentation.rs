//! JSON presentation of an algebra and its validation.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{
    format_rational, normalize, parse_rational, AlgebraError, Combination, GradedAlgebra,
};

/// Raw algebra presentation, as read from an algebra file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Presentation {
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<TermEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub name: String,
    pub coeff: String,
}

/// Checks a presentation and builds the algebra.
///
/// Products with the unit may be omitted; every other absent product is
/// zero. Explicit unit products must agree with the unit law.
pub fn validate_algebra(presentation: &Presentation) -> Result<GradedAlgebra, AlgebraError> {
    let mut labels = Vec::with_capacity(presentation.basis.len());
    let mut degrees = Vec::with_capacity(presentation.basis.len());
    let mut seen = HashSet::new();
    for entry in &presentation.basis {
        if !seen.insert(entry.name.as_str()) {
            return Err(AlgebraError::DuplicateLabel(entry.name.clone()));
        }
        let degree = u32::try_from(entry.degree).map_err(|_| AlgebraError::NegativeDegree {
            label: entry.name.clone(),
            degree: entry.degree,
        })?;
        labels.push(entry.name.clone());
        degrees.push(degree);
    }
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let unit = *index
        .get(presentation.unit.as_str())
        .ok_or_else(|| AlgebraError::UnitMissing {
            unit: presentation.unit.clone(),
            reason: "not a basis label".into(),
        })?;
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownLabel(name.to_string()))
    };

    let mut products: HashMap<(usize, usize), Combination> = HashMap::new();
    for p in &presentation.products {
        let l = lookup(&p.left)?;
        let r = lookup(&p.right)?;
        let mut combo = Vec::with_capacity(p.result.len());
        for t in &p.result {
            combo.push((lookup(&t.name)?, parse_rational(&t.coeff)?));
        }
        let combo = normalize(combo);
        if l == unit || r == unit {
            let other = if l == unit { r } else { l };
            let expect = vec![(other, num_traits::One::one())];
            if combo != expect {
                return Err(AlgebraError::UnitLawViolation {
                    unit: presentation.unit.clone(),
                    label: labels[other].clone(),
                });
            }
        }
        if products.insert((l, r), combo).is_some() {
            return Err(AlgebraError::DuplicateProduct {
                left: p.left.clone(),
                right: p.right.clone(),
            });
        }
    }

    let algebra = GradedAlgebra::from_table_unchecked(labels, degrees, unit, products);
    algebra.check_axioms()?;
    Ok(algebra)
}

impl GradedAlgebra {
    /// Exports the full multiplication table, omitting unit and zero products.
    pub fn to_presentation(&self) -> Presentation {
        let n = self.dim();
        let unit = self.unit();
        let basis = (0..n)
            .map(|i| BasisEntry {
                name: self.label(i),
                degree: i64::from(self.degree(i)),
            })
            .collect();
        let mut products = Vec::new();
        for a in (0..n).filter(|&a| a != unit) {
            for b in (0..n).filter(|&b| b != unit) {
                let combo = normalize(self.basis_product(a, b));
                if combo.is_empty() {
                    continue;
                }
                products.push(ProductEntry {
                    left: self.label(a),
                    right: self.label(b),
                    result: combo
                        .iter()
                        .map(|(t, c)| TermEntry {
                            name: self.label(*t),
                            coeff: format_rational(c),
                        })
                        .collect(),
                });
            }
        }
        Presentation {
            basis,
            unit: self.label(unit),
            products,
        }
    }
}
