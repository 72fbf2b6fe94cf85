//! Planners for convex sets, the circle and spheres.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use super::fields::{even_vector_field, odd_vector_field};
use super::geometry::{arc_toward, basis_vector, geodesic_distance, neg, norm, scale, stereo, ConfigPoint, Factor, Space};
use super::{PathFn, PlanError, Planner, RuleSystem, Section};

struct StraightLine;

impl RuleSystem for StraightLine {
    fn rule_count(&self) -> usize {
        1
    }

    fn weights(&self, _: &ConfigPoint, _: &ConfigPoint) -> Vec<f64> {
        vec![1.0]
    }

    fn section(&self, _: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        let (from, to) = (&a.factors[0], &b.factors[0]);
        Ok(Section::plain(if from == to {
            PathFn::Constant(a.clone())
        } else {
            PathFn::Segment {
                from: from.clone(),
                to: to.clone(),
            }
        }))
    }

    fn rule_name(&self, _: usize) -> String {
        "straight segment".into()
    }
}

/// One rule on `R^dim`: the constant-velocity segment.
pub fn straight_line_planner(dim: u32) -> Planner {
    Planner::new(
        Space::single(Factor::Euclidean(dim)),
        format!("convex:{dim}"),
        Arc::new(StraightLine),
    )
}

fn shortest_arc(a: &[f64], b: &[f64]) -> PathFn {
    let (tangent, angle) = arc_toward(a, b);
    PathFn::Arc {
        start: a.to_vec(),
        tangent,
        angle,
    }
}

struct Circle;

impl RuleSystem for Circle {
    fn rule_count(&self) -> usize {
        2
    }

    fn weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64> {
        let (a, b) = (&a.factors[0], &b.factors[0]);
        vec![
            geodesic_distance(a, &neg(b)) / PI,
            geodesic_distance(a, b) / PI,
        ]
    }

    fn section(&self, rule: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        let (a, b) = (&a.factors[0], &b.factors[0]);
        Ok(Section::plain(match rule {
            0 => shortest_arc(a, b),
            _ => {
                let mut angle = (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
                if angle <= 0.0 {
                    angle += TAU;
                }
                PathFn::Arc {
                    start: a.clone(),
                    tangent: vec![-a[1], a[0]],
                    angle,
                }
            }
        }))
    }

    fn rule_name(&self, rule: usize) -> String {
        match rule {
            0 => "shortest arc (A ≠ −B)".into(),
            _ => "counterclockwise arc (A ≠ B)".into(),
        }
    }
}

/// Two rules on the circle: the shortest arc away from antipodal pairs and
/// the counterclockwise arc away from the diagonal.
pub fn circle_planner() -> Planner {
    Planner::new(Space::single(Factor::Sphere(1)), "circle", Arc::new(Circle))
}

/// The fixed points of the even-sphere planner on `S^n`: the zero `B₀ =
/// e_{n+1}` of the vector field and the chart center `C = e₁`.
pub fn sphere_constants(n: u32) -> (Vec<f64>, Vec<f64>) {
    let dim = n as usize + 1;
    (basis_vector(dim, dim - 1), basis_vector(dim, 0))
}

struct Sphere {
    n: u32,
    b0: Vec<f64>,
    c: Vec<f64>,
}

impl Sphere {
    fn even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// The unit field at `b`; for even spheres `b ≠ B₀` is required.
    fn unit_field(&self, b: &[f64]) -> Vec<f64> {
        if self.even() {
            let v = even_vector_field(b, &self.b0, &self.c).expect("even sphere");
            scale(&v, 1.0 / norm(&v))
        } else {
            odd_vector_field(b).expect("odd sphere")
        }
    }
}

impl RuleSystem for Sphere {
    fn rule_count(&self) -> usize {
        if self.even() {
            3
        } else {
            2
        }
    }

    fn weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64> {
        let (a, b) = (&a.factors[0], &b.factors[0]);
        let d = |x: &[f64], y: &[f64]| geodesic_distance(x, y) / PI;
        if self.even() {
            vec![
                d(a, &neg(b)),
                d(a, b).min(d(b, &self.b0)),
                d(a, &self.c).min(d(b, &self.c)),
            ]
        } else {
            vec![d(a, &neg(b)), d(a, b)]
        }
    }

    fn section(&self, rule: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        let (a, b) = (&a.factors[0], &b.factors[0]);
        Ok(Section::plain(match rule {
            0 => shortest_arc(a, b),
            1 => {
                // first to −B, then half a great circle through v(B) to B
                let minus_b = neg(b);
                PathFn::Concat(vec![
                    shortest_arc(a, &minus_b),
                    PathFn::Arc {
                        start: minus_b,
                        tangent: self.unit_field(b),
                        angle: PI,
                    },
                ])
            }
            _ => PathFn::Chart {
                pole: self.c.clone(),
                from: stereo(&self.c, a),
                to: stereo(&self.c, b),
            },
        }))
    }

    fn rule_name(&self, rule: usize) -> String {
        match (rule, self.even()) {
            (0, _) => "shortest arc (A ≠ −B)".into(),
            (1, false) => "through −B along the field (A ≠ B)".into(),
            (1, true) => "through −B along the field (A ≠ B, B ≠ B₀)".into(),
            _ => "stereographic chart from C (A ≠ C, B ≠ C)".into(),
        }
    }
}

/// Two rules on odd spheres, three on even ones.
pub fn sphere_planner(n: u32) -> Planner {
    assert!(n >= 1, "sphere dimension must be positive");
    let (b0, c) = sphere_constants(n);
    Planner::new(
        Space::single(Factor::Sphere(n)),
        format!("sphere:{n}"),
        Arc::new(Sphere { n, b0, c }),
    )
}
