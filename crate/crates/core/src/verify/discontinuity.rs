//! Numerical evidence that a rule's section cannot be extended past its
//! domain: two families approaching the same boundary pair from inside the
//! domain produce paths that stay apart.

use std::sync::Arc;

use serde::Serialize;

use super::VerifyError;
use crate::planner::{ConfigPoint, Planner};

/// A one-parameter family of pairs indexed by a small positive offset.
pub type Family = Arc<dyn Fn(f64) -> (ConfigPoint, ConfigPoint) + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscontinuityReport {
    pub rule_index: usize,
    /// `(offset, gap)` in the order the offsets were given.
    pub gaps: Vec<(f64, f64)>,
    /// Gap at the smallest offset.
    pub limit_gap: f64,
}

const SAMPLES: usize = 65;

/// Sup distance between the two families' section paths at each offset.
pub fn demonstrate_discontinuity(
    planner: &Planner,
    rule_index: usize,
    families: [&Family; 2],
    offsets: &[f64],
) -> Result<DiscontinuityReport, VerifyError> {
    let mut gaps = Vec::with_capacity(offsets.len());
    for &offset in offsets {
        let mut paths = Vec::with_capacity(2);
        for (k, family) in families.iter().enumerate() {
            let (a, b) = family(offset);
            let leaves = || VerifyError::FamilyLeavesDomain {
                family: k + 1,
                rule: rule_index,
                offset,
            };
            if planner.space().check(&a).is_err() || planner.space().check(&b).is_err() {
                return Err(leaves());
            }
            let section = planner.section(rule_index, &a, &b).map_err(|_| leaves())?;
            paths.push(section.path);
        }
        let gap = (0..SAMPLES)
            .map(|i| {
                let t = i as f64 / (SAMPLES - 1) as f64;
                paths[0].eval(t).distance(&paths[1].eval(t))
            })
            .fold(0.0, f64::max);
        gaps.push((offset, gap));
    }
    let limit_gap = gaps
        .iter()
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map_or(0.0, |g| g.1);
    Ok(DiscontinuityReport {
        rule_index,
        gaps,
        limit_gap,
    })
}

/// `A` at angle 0 and `B` at angle `π ∓ ε`: both approach the antipodal
/// pair, from opposite sides.
pub fn circle_boundary_families() -> (Family, Family) {
    let at = |theta: f64| ConfigPoint::single(vec![theta.cos(), theta.sin()]);
    let a = ConfigPoint::single(vec![1.0, 0.0]);
    let a2 = a.clone();
    (
        Arc::new(move |eps| (a.clone(), at(std::f64::consts::PI - eps))),
        Arc::new(move |eps| (a2.clone(), at(std::f64::consts::PI + eps))),
    )
}

/// `A = e₁` and `B = −cos ε·e₁ + sin ε·e_k` for `k = 2, 3` on `S²`: `B`
/// approaches `−A` along two different great circles.
pub fn sphere_boundary_families() -> (Family, Family) {
    let a = ConfigPoint::single(vec![1.0, 0.0, 0.0]);
    let a2 = a.clone();
    (
        Arc::new(move |eps: f64| (a.clone(), ConfigPoint::single(vec![-eps.cos(), eps.sin(), 0.0]))),
        Arc::new(move |eps: f64| (a2.clone(), ConfigPoint::single(vec![-eps.cos(), 0.0, eps.sin()]))),
    )
}
