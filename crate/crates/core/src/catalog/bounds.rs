use std::fmt;

use serde::Serialize;

use super::SpaceDescriptor;
use crate::algebra::{zdcl_with_generators, GradedAlgebra, ZdclMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum LowerSource {
    ZeroDivisorCupLength,
    Category,
    NonContractible,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum UpperSource {
    PlannerRuleCount,
    Contractible,
    Dimension,
    ProductInequality,
    Category,
}

impl fmt::Display for LowerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerSource::ZeroDivisorCupLength => "zero-divisor cup-length + 1",
            LowerSource::Category => "category: TC ≥ cat",
            LowerSource::NonContractible => "non-contractible space: TC ≥ 2",
            LowerSource::Trivial => "trivial: TC ≥ 1",
        })
    }
}

impl fmt::Display for UpperSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperSource::PlannerRuleCount => "explicit planner rule count",
            UpperSource::Contractible => "contractible space: TC = 1",
            UpperSource::Dimension => "dimension: TC ≤ 2·dim + 1",
            UpperSource::ProductInequality => "product inequality: Σ TC(factor) − (k − 1)",
            UpperSource::Category => "category: TC ≤ 2·cat − 1",
        })
    }
}

impl From<LowerSource> for String {
    fn from(s: LowerSource) -> String {
        s.to_string()
    }
}

impl From<UpperSource> for String {
    fn from(s: UpperSource) -> String {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub space: String,
    pub lower: u32,
    pub upper: u32,
    pub lower_provenance: LowerSource,
    pub upper_provenance: UpperSource,
    pub exact: bool,
    /// Zero-divisor cup-length found while computing the lower bound.
    pub zdcl: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Keeps the first candidate among equals, so candidate order is the tie
/// order.
fn pick<S: Copy>(candidates: &[(u32, S)], better: impl Fn(u32, u32) -> bool) -> (u32, S) {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if better(c.0, best.0) {
            best = c;
        }
    }
    best
}

fn upper_bound(space: &SpaceDescriptor, planner_rule_count: Option<u32>) -> (u32, UpperSource) {
    let mut candidates = Vec::new();
    if let Some(n) = planner_rule_count {
        candidates.push((n, UpperSource::PlannerRuleCount));
    }
    if space.contractible {
        candidates.push((1, UpperSource::Contractible));
    }
    candidates.push((2 * space.geometry_dim + 1, UpperSource::Dimension));
    if !space.factors.is_empty() {
        let sum: u32 = space
            .factors
            .iter()
            .map(|f| upper_bound(f, f.planner_rules).0)
            .sum();
        let k = space.factors.len() as u32;
        candidates.push((sum + 1 - k, UpperSource::ProductInequality));
    }
    if let Some(cat) = space.cat {
        candidates.push((2 * cat - 1, UpperSource::Category));
    }
    pick(&candidates, |a, b| a < b)
}

/// Lower and upper bounds on the topological complexity of a catalog space.
///
/// The cup-length search is capped at `upper − 1` factors, since a longer
/// product would contradict the upper bound anyway.
pub fn tc_bounds(space: &SpaceDescriptor, planner_rule_count: Option<u32>) -> BoundsReport {
    let (upper, upper_provenance) = upper_bound(space, planner_rule_count);

    let zdcl = if space.generators.is_empty() {
        0
    } else {
        let max_len = upper.saturating_sub(1).max(1) as usize;
        zdcl_with_generators(
            &space.algebra,
            ZdclMode::Canonical,
            max_len,
            Some(&space.generators),
        )
        .expect("catalog generators are valid")
        .length
    };

    let mut candidates = vec![(zdcl as u32 + 1, LowerSource::ZeroDivisorCupLength)];
    if let Some(cat) = space.cat {
        candidates.push((cat, LowerSource::Category));
    }
    if !space.contractible {
        candidates.push((2, LowerSource::NonContractible));
    }
    candidates.push((1, LowerSource::Trivial));
    let (lower, lower_provenance) = pick(&candidates, |a, b| a > b);

    BoundsReport {
        space: space.spec.to_string(),
        lower,
        upper,
        lower_provenance,
        upper_provenance,
        exact: lower == upper,
        zdcl,
        note: None,
    }
}

/// Bounds for a bare algebra: the cup-length lower bound and the dimension
/// bound with the dimension read off the top degree.
pub fn tc_bounds_for_algebra(algebra: &GradedAlgebra) -> BoundsReport {
    let upper = 2 * algebra.top_degree() + 1;
    let zdcl = zdcl_with_generators(
        algebra,
        ZdclMode::Canonical,
        (upper - 1).max(1) as usize,
        None,
    )
    .expect("default generators are valid")
    .length;
    let lower = zdcl as u32 + 1;
    BoundsReport {
        space: "custom algebra".into(),
        lower,
        upper,
        lower_provenance: LowerSource::ZeroDivisorCupLength,
        upper_provenance: UpperSource::Dimension,
        exact: lower == upper,
        zdcl,
        note: Some(format!(
            "dimension {} inferred from the algebra's top degree",
            algebra.top_degree()
        )),
    }
}
