//! Motion planners as ordered rule systems.
//!
//! A planner covers `X × X` by open sets, each with a continuous section of
//! the path fibration. Every rule carries a nonnegative weight whose
//! positivity set is exactly its domain, so the predicate of rule `i` is
//! `weight_i > 0` and normalized weights form a partition of unity. Planning
//! a pair picks the lowest-index rule containing it.

mod basic;
mod fields;
mod geometry;
mod kinematics;
mod path;
mod product;
mod transfer;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::catalog::SpaceSpec;

pub use basic::{circle_planner, sphere_planner, straight_line_planner, sphere_constants};
pub use fields::{even_vector_field, odd_vector_field};
pub use geometry::{
    any_tangent, arc_toward, basis_vector, dot, geodesic_distance, norm, stereo, stereo_inverse,
    ConfigPoint, Factor, Space, INPUT_TOLERANCE, PUNCTURE_RADIUS, UNIT_TOLERANCE,
};
pub use kinematics::forward_kinematics;
pub use path::{sample_path, GeodesicSpan, Homotopy, PathFn, PointMap};
pub use product::{arm_planner, product_cells, product_planner, ArmKind, Cell};
pub use transfer::{punctured_plane_planner, transfer_planner};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("coverage gap: no rule contains the pair")]
    CoverageGap,
    #[error("the pair lies outside the domain of rule {rule}")]
    OutsideDomain { rule: usize },
    #[error("no explicit planner for {spec}: {reason}")]
    NoPlanner { spec: String, reason: String },
    #[error("homotopy fails h_{end} on a sample (error {error:e})")]
    HomotopyEndpointMismatch { end: u8, error: f64 },
    #[error("expected {expected} bar lengths, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector field has the wrong parity for the sphere S^{n}")]
    ParityError { n: u32 },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// A product cell `(S, T)` of 1-based factor rule indices.
pub type CellSignature = (Vec<usize>, Vec<usize>);

/// A section value together with the product cells that selected it,
/// outermost first.
#[derive(Debug, Clone)]
pub struct Section {
    pub path: PathFn,
    pub cells: Vec<CellSignature>,
}

impl Section {
    pub fn plain(path: PathFn) -> Self {
        Section {
            path,
            cells: Vec::new(),
        }
    }
}

/// The rules of a planner. Indices here are 0-based.
pub trait RuleSystem: Send + Sync {
    fn rule_count(&self) -> usize;
    /// Unnormalized weights, one per rule, all nonnegative; rule `i`
    /// contains the pair exactly when its weight is positive.
    fn weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64>;
    /// Only called when the rule's weight is positive.
    fn section(&self, rule: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError>;
    fn rule_name(&self, rule: usize) -> String;
}

#[derive(Clone)]
pub struct Planner {
    space: Space,
    label: String,
    rules: Arc<dyn RuleSystem>,
}

/// One open set of the cover with its section, borrowed from a planner.
#[derive(Clone, Copy)]
pub struct PlannerRule<'a> {
    planner: &'a Planner,
    /// 1-based.
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    /// 1-based index of the first rule containing the pair.
    pub rule_index: usize,
    pub path: PathFn,
    pub cells: Vec<CellSignature>,
}

impl Planner {
    pub fn new(space: Space, label: impl Into<String>, rules: Arc<dyn RuleSystem>) -> Self {
        Planner {
            space,
            label: label.into(),
            rules,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rule_count(&self) -> usize {
        self.rules.rule_count()
    }

    pub fn rule(&self, index: usize) -> PlannerRule<'_> {
        assert!((1..=self.rule_count()).contains(&index), "rule index out of range");
        PlannerRule {
            planner: self,
            index,
        }
    }

    pub fn rules(&self) -> impl Iterator<Item = PlannerRule<'_>> {
        (1..=self.rule_count()).map(|index| PlannerRule {
            planner: self,
            index,
        })
    }

    pub fn weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64> {
        self.rules.weights(a, b)
    }

    /// Weights divided by their sum. The sum is positive wherever the rules
    /// cover the pair.
    pub fn normalized_weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64> {
        let w = self.weights(a, b);
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            w.iter().map(|x| x / total).collect()
        } else {
            w
        }
    }

    /// Section of rule `index` (1-based) at a pair in its domain.
    pub fn section(&self, index: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        if !(1..=self.rule_count()).contains(&index) || self.weights(a, b)[index - 1] <= 0.0 {
            return Err(PlanError::OutsideDomain { rule: index });
        }
        self.rules.section(index - 1, a, b)
    }

    pub fn plan(&self, a: &ConfigPoint, b: &ConfigPoint) -> Result<PlanResult, PlanError> {
        self.space.check(a)?;
        self.space.check(b)?;
        let weights = self.weights(a, b);
        let rule = weights.iter().position(|&w| w > 0.0).ok_or(PlanError::CoverageGap)?;
        let Section { path, cells } = self.rules.section(rule, a, b)?;
        Ok(PlanResult {
            rule_index: rule + 1,
            path,
            cells,
        })
    }
}

impl fmt::Debug for Planner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Planner")
            .field("label", &self.label)
            .field("space", &self.space)
            .field("rules", &self.rule_count())
            .finish()
    }
}

impl PlannerRule<'_> {
    pub fn name(&self) -> String {
        self.planner.rules.rule_name(self.index - 1)
    }

    pub fn weight(&self, a: &ConfigPoint, b: &ConfigPoint) -> f64 {
        self.planner.weights(a, b)[self.index - 1]
    }

    pub fn predicate(&self, a: &ConfigPoint, b: &ConfigPoint) -> bool {
        self.weight(a, b) > 0.0
    }

    pub fn section(&self, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        self.planner.section(self.index, a, b)
    }
}

/// The explicit planner for a catalog space.
pub fn planner_for(spec: &SpaceSpec) -> Result<Planner, PlanError> {
    let no_planner = || PlanError::NoPlanner {
        spec: spec.to_string(),
        reason: "no explicit planner is constructed for this space".into(),
    };
    let positive = |n: u32| {
        if n == 0 {
            Err(PlanError::InvalidArgument(format!("{spec} needs a positive parameter")))
        } else {
            Ok(n)
        }
    };
    let planner = match spec {
        SpaceSpec::Circle => circle_planner(),
        SpaceSpec::Sphere(n) => sphere_planner(positive(*n)?),
        SpaceSpec::Torus(n) => arm_planner(ArmKind::Planar, positive(*n)?),
        SpaceSpec::Convex(n) => straight_line_planner(*n),
        SpaceSpec::Surface(0) => sphere_planner(2),
        SpaceSpec::Surface(1) => arm_planner(ArmKind::Planar, 2),
        SpaceSpec::Surface(_) | SpaceSpec::Cpn(_) => return Err(no_planner()),
        SpaceSpec::Product(parts) => {
            let mut planners = parts.iter().map(planner_for);
            let first = planners.next().ok_or_else(no_planner)??;
            let mut acc = first;
            for p in planners {
                acc = product_planner(&acc, &p?);
            }
            acc
        }
    };
    Ok(planner.relabel(spec.to_string()))
}

impl Planner {
    fn relabel(mut self, label: String) -> Self {
        self.label = label;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planner(s: &str) -> Result<Planner, PlanError> {
        planner_for(&s.parse().unwrap())
    }

    #[test]
    fn rule_counts_for_catalog_spaces() {
        for (s, n) in [
            ("circle", 2),
            ("sphere:1", 2),
            ("sphere:2", 3),
            ("sphere:5", 2),
            ("torus:1", 2),
            ("torus:3", 4),
            ("convex:3", 1),
            ("surface:0", 3),
            ("surface:1", 3),
            ("product(sphere:2,sphere:2,sphere:2)", 7),
            ("product(circle,sphere:2)", 4),
        ] {
            let p = planner(s).unwrap();
            assert_eq!(p.rule_count(), n, "{s}");
            assert_eq!(p.label(), s);
        }
    }

    #[test]
    fn spaces_without_planners() {
        for s in ["surface:2", "cpn:1", "product(circle,cpn:2)"] {
            assert!(matches!(planner(s), Err(PlanError::NoPlanner { .. })), "{s}");
        }
    }

    #[test]
    fn section_outside_domain_is_an_error() {
        let p = circle_planner();
        let a = ConfigPoint::single(vec![1.0, 0.0]);
        let b = ConfigPoint::single(vec![-1.0, 0.0]);
        assert!(!p.rule(1).predicate(&a, &b));
        assert_eq!(
            p.section(1, &a, &b).unwrap_err(),
            PlanError::OutsideDomain { rule: 1 }
        );
        assert!(p.rule(2).section(&a, &b).is_ok());
    }

    #[test]
    fn plan_rejects_points_of_the_wrong_shape() {
        let p = sphere_planner(2);
        let a = ConfigPoint::single(vec![1.0, 0.0]);
        let b = ConfigPoint::single(vec![1.0, 0.0, 0.0]);
        assert!(matches!(p.plan(&a, &b), Err(PlanError::InvalidPoint(_))));
    }
}
