//! Seeded statistical checks of planner contracts.
//!
//! Sample `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`,
//! so samples can be evaluated in parallel and merged in index order with
//! identical results on every run.

mod adversarial;
mod discontinuity;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{zdcl, GradedAlgebra, ZdclMode};
use crate::catalog::{tc_bounds, BoundsReport, SpaceDescriptor};
use crate::planner::{ConfigPoint, Factor, PlanError, PlanResult, Planner};

pub use adversarial::{adversarial_count, adversarial_pair, MAX_ADVERSARIAL};
pub use discontinuity::{
    circle_boundary_families, demonstrate_discontinuity, sphere_boundary_families, DiscontinuityReport, Family,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid verification config: {0}")]
    InvalidConfig(String),
    #[error("family {family} leaves the domain of rule {rule} at offset {offset:e}")]
    FamilyLeavesDomain { family: usize, rule: usize, offset: f64 },
    #[error("planner has {rule_count} rules but the known value is {known_tc}")]
    Mismatch { rule_count: usize, known_tc: u32 },
    #[error("bounds {lower}..{upper} are not exact with the planner's rule count")]
    NotExact { lower: u32, upper: u32 },
    #[error("no known value to reconcile for {0}")]
    NoKnownValue(String),
    #[error(transparent)]
    Plan(#[from] PlanError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random pairs, in addition to the adversarial ones.
    pub pairs: usize,
    /// Perturbation size in geodesic units.
    pub delta: f64,
    /// Continuity is only checked where the active normalized weight is at
    /// least this.
    pub margin_eta: f64,
    /// Endpoint and norm tolerance.
    pub tolerance: f64,
    pub samples_per_path: usize,
    /// Largest accepted continuity ratio; an empirical regression guard.
    pub max_ratio: f64,
    /// Largest accepted relative speed variation on a geodesic span.
    pub speed_tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            pairs: 10_000,
            delta: 1e-4,
            margin_eta: 0.1,
            tolerance: 1e-9,
            samples_per_path: 33,
            max_ratio: 200.0,
            speed_tolerance: 0.01,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |m: &str| Err(VerifyError::InvalidConfig(m.into()));
        if self.pairs < 1 {
            return bad("pairs must be at least 1");
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return bad("delta must be positive");
        }
        if !(0.0..1.0).contains(&self.margin_eta) {
            return bad("eta must lie in [0, 1)");
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive");
        }
        if self.samples_per_path < 2 {
            return bad("samples per path must be at least 2");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionCheck {
    pub passed: bool,
    pub checked: usize,
    pub max_endpoint_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageCheck {
    pub passed: bool,
    pub checked: usize,
    pub uncovered: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityCheck {
    pub passed: bool,
    /// Pairs in the margin interior whose perturbation kept the rule and
    /// cells.
    pub checked: usize,
    pub skipped: usize,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryCheck {
    pub passed: bool,
    pub points_checked: usize,
    pub max_norm_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_puncture_radius: Option<f64>,
    pub spans_checked: usize,
    pub max_speed_variation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub planner: String,
    pub rule_count: usize,
    pub config: VerifyConfig,
    pub adversarial_pairs: usize,
    pub passed: bool,
    pub section: SectionCheck,
    pub coverage: CoverageCheck,
    pub continuity: ContinuityCheck,
    pub geometry: GeometryCheck,
    /// Pairs planned by each rule, first rule first.
    pub rule_usage: Vec<usize>,
}

/// Everything measured for one sampled pair.
#[derive(Debug, Clone, Default)]
struct Outcome {
    rule: Option<usize>,
    error: Option<String>,
    endpoint_error: f64,
    points: usize,
    norm_error: f64,
    puncture_radius: Option<f64>,
    spans: usize,
    speed_variation: f64,
    ratio: Option<f64>,
}

fn path_samples(plan: &PlanResult, n: usize) -> Vec<ConfigPoint> {
    (0..n).map(|i| plan.path.eval(i as f64 / (n - 1) as f64)).collect()
}

fn measure(planner: &Planner, cfg: &VerifyConfig, a: &ConfigPoint, b: &ConfigPoint, rng: &mut ChaCha8Rng) -> Outcome {
    let space = planner.space();
    let plan = match planner.plan(a, b) {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                error: Some(e.to_string()),
                ..Outcome::default()
            }
        }
    };
    let mut out = Outcome {
        rule: Some(plan.rule_index),
        ..Outcome::default()
    };
    out.endpoint_error = plan.path.eval(0.0).distance(a).max(plan.path.eval(1.0).distance(b));

    let samples = path_samples(&plan, cfg.samples_per_path);
    for p in &samples {
        out.points += 1;
        for (factor, x) in space.factors.iter().zip(&p.factors) {
            let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            match factor {
                Factor::Sphere(_) => out.norm_error = out.norm_error.max((r - 1.0).abs()),
                Factor::Punctured(_) => {
                    out.puncture_radius = Some(out.puncture_radius.map_or(r, |m: f64| m.min(r)))
                }
                Factor::Euclidean(_) => {}
            }
            if !r.is_finite() {
                out.norm_error = f64::INFINITY;
            }
        }
    }

    for span in plan.path.geodesic_spans() {
        if span.length < 1e-6 {
            continue;
        }
        let width = span.t1 - span.t0;
        let eps = width * 1e-3;
        let speeds: Vec<f64> = (1..=8)
            .map(|k| {
                let t = span.t0 + width * k as f64 / 10.0;
                let x = &plan.path.eval(t).factors[span.factor];
                let y = &plan.path.eval(t + eps).factors[span.factor];
                x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt() / eps
            })
            .collect();
        let lo = speeds.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = speeds.iter().cloned().fold(0.0, f64::max);
        let mean = speeds.iter().sum::<f64>() / speeds.len() as f64;
        out.spans += 1;
        out.speed_variation = out.speed_variation.max((hi - lo) / mean);
    }

    let weight = planner.normalized_weights(a, b)[plan.rule_index - 1];
    if weight >= cfg.margin_eta {
        let a2 = space.perturb(a, cfg.delta, rng);
        let b2 = space.perturb(b, cfg.delta, rng);
        if let Ok(plan2) = planner.plan(&a2, &b2) {
            if plan2.rule_index == plan.rule_index && plan2.cells == plan.cells {
                let gap = samples
                    .iter()
                    .zip(path_samples(&plan2, cfg.samples_per_path))
                    .map(|(p, q)| p.distance(&q))
                    .fold(0.0, f64::max);
                out.ratio = Some(gap / cfg.delta);
            }
        }
    }
    out
}

/// Runs the section, coverage, continuity and geometry checks over
/// adversarial pairs followed by `cfg.pairs` random pairs.
pub fn verify_planner(planner: &Planner, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    cfg.validate()?;
    let space = planner.space();
    let adversarial = adversarial_count(space);
    let total = adversarial + cfg.pairs;

    let outcomes: Vec<Outcome> = (0..total)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let (a, b) = if i < adversarial {
                adversarial_pair(space, i, &mut rng)
            } else {
                (space.random_point(&mut rng), space.random_point(&mut rng))
            };
            measure(planner, cfg, &a, &b, &mut rng)
        })
        .collect();

    let mut rule_usage = vec![0; planner.rule_count()];
    let mut section = SectionCheck {
        passed: true,
        checked: 0,
        max_endpoint_error: 0.0,
    };
    let mut coverage = CoverageCheck {
        passed: true,
        checked: 0,
        uncovered: 0,
        first_error: None,
    };
    let mut continuity = ContinuityCheck {
        passed: true,
        checked: 0,
        skipped: 0,
        max_ratio: 0.0,
    };
    let mut geometry = GeometryCheck {
        passed: true,
        points_checked: 0,
        max_norm_error: 0.0,
        min_puncture_radius: None,
        spans_checked: 0,
        max_speed_variation: 0.0,
    };
    for o in outcomes {
        coverage.checked += 1;
        let Some(rule) = o.rule else {
            coverage.uncovered += 1;
            coverage.first_error = coverage.first_error.or(o.error);
            continue;
        };
        rule_usage[rule - 1] += 1;
        section.checked += 1;
        section.max_endpoint_error = section.max_endpoint_error.max(o.endpoint_error);
        geometry.points_checked += o.points;
        geometry.max_norm_error = geometry.max_norm_error.max(o.norm_error);
        if let Some(r) = o.puncture_radius {
            geometry.min_puncture_radius = Some(geometry.min_puncture_radius.map_or(r, |m| m.min(r)));
        }
        geometry.spans_checked += o.spans;
        geometry.max_speed_variation = geometry.max_speed_variation.max(o.speed_variation);
        match o.ratio {
            Some(r) => {
                continuity.checked += 1;
                continuity.max_ratio = continuity.max_ratio.max(r);
            }
            None => continuity.skipped += 1,
        }
    }
    section.passed = section.checked > 0 && section.max_endpoint_error <= cfg.tolerance;
    coverage.passed = coverage.uncovered == 0;
    continuity.passed = continuity.checked > 0 && continuity.max_ratio <= cfg.max_ratio;
    geometry.passed = geometry.max_norm_error <= cfg.tolerance
        && geometry
            .min_puncture_radius
            .is_none_or(|r| r >= crate::planner::PUNCTURE_RADIUS)
        && geometry.max_speed_variation < cfg.speed_tolerance;

    Ok(VerifyReport {
        planner: planner.label().to_string(),
        rule_count: planner.rule_count(),
        config: cfg.clone(),
        adversarial_pairs: adversarial,
        passed: section.passed && coverage.passed && continuity.passed && geometry.passed,
        section,
        coverage,
        continuity,
        geometry,
        rule_usage,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconciliation {
    pub rule_count: usize,
    pub known_tc: u32,
    pub known_tc_source: String,
    pub bounds: BoundsReport,
}

/// Checks that the planner's rule count equals the known value and makes
/// the bounds exact.
pub fn reconcile(planner: &Planner, space: &SpaceDescriptor) -> Result<Reconciliation, VerifyError> {
    let known = space
        .known_tc
        .ok_or_else(|| VerifyError::NoKnownValue(space.spec.to_string()))?;
    let rule_count = planner.rule_count();
    if rule_count != known.value as usize {
        return Err(VerifyError::Mismatch {
            rule_count,
            known_tc: known.value,
        });
    }
    let bounds = tc_bounds(space, Some(rule_count as u32));
    if !bounds.exact {
        return Err(VerifyError::NotExact {
            lower: bounds.lower,
            upper: bounds.upper,
        });
    }
    Ok(Reconciliation {
        rule_count,
        known_tc: known.value,
        known_tc_source: known.source.to_string(),
        bounds,
    })
}

/// Canonical and exhaustive zero-divisor cup-lengths at the same cap; the
/// exhaustive search over a kernel basis is the oracle for the canonical
/// one.
pub fn zdcl_modes(algebra: &GradedAlgebra, max_len: usize) -> (usize, usize) {
    let canonical = zdcl(algebra, ZdclMode::Canonical, max_len, None).expect("valid max_len");
    let exhaustive = zdcl(algebra, ZdclMode::Exhaustive, max_len, None).expect("valid max_len");
    (canonical.length, exhaustive.length)
}
