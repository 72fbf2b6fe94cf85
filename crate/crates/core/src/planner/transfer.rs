//! Moving a planner along a homotopy domination.
//!
//! Given a planner on `Y`, maps `f: X → Y`, `g: Y → X` and a homotopy `h`
//! from the identity of `X` to `g∘f`, the path from `A` to `B` runs
//! `h_t(A)`, then the image under `g` of the `Y`-path from `f(A)` to
//! `f(B)`, then `h_t(B)` backwards. Each rule is pulled back through `f`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::geometry::{norm, scale, ConfigPoint, Factor, Space};
use super::{circle_planner, Homotopy, PathFn, PlanError, Planner, PointMap, RuleSystem, Section};

/// Endpoint identities of the homotopy must hold within this on samples.
pub const HOMOTOPY_TOLERANCE: f64 = 1e-6;
const HOMOTOPY_SAMPLES: usize = 256;

struct Transfer {
    q: Planner,
    f: PointMap,
    g: PointMap,
    h: Homotopy,
}

impl RuleSystem for Transfer {
    fn rule_count(&self) -> usize {
        self.q.rule_count()
    }

    fn weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64> {
        self.q.weights(&(self.f)(a), &(self.f)(b))
    }

    fn section(&self, rule: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        let inner = self.q.section(rule + 1, &(self.f)(a), &(self.f)(b))?;
        let path = PathFn::Concat(vec![
            PathFn::Track {
                homotopy: self.h.clone(),
                point: a.clone(),
            },
            PathFn::Mapped {
                map: self.g.clone(),
                inner: Box::new(inner.path),
            },
            PathFn::Reverse(Box::new(PathFn::Track {
                homotopy: self.h.clone(),
                point: b.clone(),
            })),
        ]);
        Ok(Section {
            path,
            cells: inner.cells,
        })
    }

    fn rule_name(&self, rule: usize) -> String {
        format!("transferred: {}", self.q.rule(rule + 1).name())
    }
}

/// A planner on `x` with the rule count of `q`. The homotopy's endpoint
/// identities are checked on seeded samples of `x`.
pub fn transfer_planner(
    x: Space,
    q: &Planner,
    f: PointMap,
    g: PointMap,
    h: Homotopy,
    label: impl Into<String>,
) -> Result<Planner, PlanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..HOMOTOPY_SAMPLES {
        let p = x.random_point(&mut rng);
        let start = h(0.0, &p).distance(&p);
        if !(start <= HOMOTOPY_TOLERANCE) {
            return Err(PlanError::HomotopyEndpointMismatch { end: 0, error: start });
        }
        let end = h(1.0, &p).distance(&g(&f(&p)));
        if !(end <= HOMOTOPY_TOLERANCE) {
            return Err(PlanError::HomotopyEndpointMismatch { end: 1, error: end });
        }
    }
    Ok(Planner::new(
        x,
        label,
        Arc::new(Transfer {
            q: q.clone(),
            f,
            g,
            h,
        }),
    ))
}

/// The punctured plane planned through the circle: radial retraction,
/// inclusion and the straight-line homotopy `(1−t)x + t·x/|x|`.
pub fn punctured_plane_planner() -> Planner {
    let retract = |p: &ConfigPoint| {
        let x = &p.factors[0];
        ConfigPoint::single(scale(x, 1.0 / norm(x)))
    };
    let f: PointMap = Arc::new(retract);
    let g: PointMap = Arc::new(|p: &ConfigPoint| p.clone());
    let h: Homotopy = Arc::new(move |t, p: &ConfigPoint| {
        let x = &p.factors[0];
        let k = (1.0 - t) + t / norm(x);
        ConfigPoint::single(scale(x, k))
    });
    transfer_planner(
        Space::single(Factor::Punctured(2)),
        &circle_planner(),
        f,
        g,
        h,
        "punctured plane",
    )
    .expect("the radial homotopy has the right endpoints")
}

#[cfg(test)]
mod tests {
    use super::super::sphere_planner;
    use super::*;

    #[test]
    fn punctured_plane_paths_avoid_the_origin() {
        let p = punctured_plane_planner();
        assert_eq!(p.rule_count(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut rules = [0usize; 2];
        for _ in 0..500 {
            let a = p.space().random_point(&mut rng);
            let b = p.space().random_point(&mut rng);
            let r = p.plan(&a, &b).unwrap();
            rules[r.rule_index - 1] += 1;
            assert!(r.path.eval(0.0).distance(&a) < 1e-9);
            assert!(r.path.eval(1.0).distance(&b) < 1e-9);
            for k in 0..=60 {
                let x = r.path.eval(k as f64 / 60.0);
                let radius = norm(&x.factors[0]);
                assert!(radius >= norm(&a.factors[0]).min(norm(&b.factors[0])).min(1.0) - 1e-12);
            }
        }
        assert!(rules[0] > 0);
        let a = ConfigPoint::single(vec![2.0, 0.0]);
        let b = ConfigPoint::single(vec![-0.5, 0.0]);
        assert_eq!(p.plan(&a, &b).unwrap().rule_index, 2);
    }

    #[test]
    fn identity_transfer_reproduces_the_planner() {
        let q = sphere_planner(2);
        let id: PointMap = Arc::new(|p: &ConfigPoint| p.clone());
        let h: Homotopy = Arc::new(|_, p: &ConfigPoint| p.clone());
        let t = transfer_planner(q.space().clone(), &q, id.clone(), id, h, "copy").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let a = q.space().random_point(&mut rng);
            let b = q.space().random_point(&mut rng);
            let (r1, r2) = (q.plan(&a, &b).unwrap(), t.plan(&a, &b).unwrap());
            assert_eq!(r1.rule_index, r2.rule_index);
            for k in 0..=20 {
                let s = k as f64 / 20.0;
                let lhs = r2.path.eval((1.0 + s) / 3.0);
                assert!(lhs.distance(&r1.path.eval(s)) < 1e-12);
            }
        }
    }

    #[test]
    fn bad_homotopies_are_rejected() {
        let q = circle_planner();
        let id: PointMap = Arc::new(|p: &ConfigPoint| p.clone());
        let shifted: Homotopy = Arc::new(|_, p: &ConfigPoint| {
            ConfigPoint::single(p.factors[0].iter().map(|c| -c).collect())
        });
        let err = transfer_planner(q.space().clone(), &q, id.clone(), id, shifted, "bad").unwrap_err();
        assert!(matches!(err, PlanError::HomotopyEndpointMismatch { end: 0, .. }));
    }
}
