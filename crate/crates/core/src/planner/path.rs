//! Paths `[0,1] → X` as evaluable trees of arcs, segments and combinators.

use std::fmt;
use std::sync::Arc;

use super::geometry::{add, scale, stereo_inverse, ConfigPoint};

/// A continuous map between configuration spaces.
pub type PointMap = Arc<dyn Fn(&ConfigPoint) -> ConfigPoint + Send + Sync>;
/// A homotopy `h(t, x)` with `t ∈ [0,1]`.
pub type Homotopy = Arc<dyn Fn(f64, &ConfigPoint) -> ConfigPoint + Send + Sync>;

#[derive(Clone)]
pub enum PathFn {
    Constant(ConfigPoint),
    /// `cos(tθ)·start + sin(tθ)·tangent` on one sphere factor, with
    /// `tangent` a unit vector orthogonal to `start`.
    Arc {
        start: Vec<f64>,
        tangent: Vec<f64>,
        angle: f64,
    },
    /// Constant-velocity segment on one Euclidean factor.
    Segment { from: Vec<f64>, to: Vec<f64> },
    /// Straight segment between chart coordinates of the stereographic
    /// chart from `pole`, mapped back to the sphere.
    Chart {
        pole: Vec<f64>,
        from: Vec<f64>,
        to: Vec<f64>,
    },
    /// The parts run one after another on equal time slices.
    Concat(Vec<PathFn>),
    Reverse(Box<PathFn>),
    /// Factorwise paths on a product, run simultaneously.
    Product(Vec<PathFn>),
    /// `t ↦ h(t, point)`.
    Track { homotopy: Homotopy, point: ConfigPoint },
    Mapped { map: PointMap, inner: Box<PathFn> },
}

/// A stretch of a path on which one factor moves along a geodesic at
/// constant speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSpan {
    pub factor: usize,
    pub t0: f64,
    pub t1: f64,
    /// Arc angle or segment length covered by the span.
    pub length: f64,
}

impl PathFn {
    pub fn constant(x: Vec<f64>) -> PathFn {
        PathFn::Constant(ConfigPoint::single(x))
    }

    pub fn eval(&self, t: f64) -> ConfigPoint {
        let t = t.clamp(0.0, 1.0);
        match self {
            PathFn::Constant(p) => p.clone(),
            PathFn::Arc {
                start,
                tangent,
                angle,
            } => {
                let (s, c) = (t * angle).sin_cos();
                ConfigPoint::single(add(&scale(start, c), &scale(tangent, s)))
            }
            PathFn::Segment { from, to } => ConfigPoint::single(lerp(from, to, t)),
            PathFn::Chart { pole, from, to } => {
                ConfigPoint::single(stereo_inverse(pole, &lerp(from, to, t)))
            }
            PathFn::Concat(parts) => {
                let (i, local) = slice(parts.len(), t);
                parts[i].eval(local)
            }
            PathFn::Reverse(inner) => inner.eval(1.0 - t),
            PathFn::Product(parts) => ConfigPoint::new(
                parts
                    .iter()
                    .flat_map(|p| p.eval(t).factors)
                    .collect(),
            ),
            PathFn::Track { homotopy, point } => homotopy(t, point),
            PathFn::Mapped { map, inner } => map(&inner.eval(t)),
        }
    }

    /// Geodesic stretches visible in the path structure. Stretches under a
    /// map or homotopy are not reported, and chart segments are not
    /// geodesics.
    pub fn geodesic_spans(&self) -> Vec<GeodesicSpan> {
        let mut out = Vec::new();
        self.collect_spans(0, 0.0, 1.0, false, &mut out);
        out
    }

    fn collect_spans(&self, factor: usize, t0: f64, t1: f64, reversed: bool, out: &mut Vec<GeodesicSpan>) {
        // The subpath occupies [t0, t1] of the outer parameter; `reversed`
        // means its own parameter runs backwards there.
        match self {
            PathFn::Arc { angle, .. } => out.push(GeodesicSpan {
                factor,
                t0,
                t1,
                length: *angle,
            }),
            PathFn::Segment { from, to } => out.push(GeodesicSpan {
                factor,
                t0,
                t1,
                length: super::geometry::norm(&super::geometry::sub(to, from)),
            }),
            PathFn::Concat(parts) => {
                let k = parts.len() as f64;
                for (i, p) in parts.iter().enumerate() {
                    let (a, b) = (i as f64 / k, (i + 1) as f64 / k);
                    let (a, b) = if reversed { (1.0 - b, 1.0 - a) } else { (a, b) };
                    p.collect_spans(factor, t0 + a * (t1 - t0), t0 + b * (t1 - t0), reversed, out);
                }
            }
            PathFn::Reverse(inner) => inner.collect_spans(factor, t0, t1, !reversed, out),
            PathFn::Product(parts) => {
                let mut offset = factor;
                for p in parts {
                    p.collect_spans(offset, t0, t1, reversed, out);
                    offset += p.eval(0.0).factors.len();
                }
            }
            PathFn::Constant(_) | PathFn::Chart { .. } | PathFn::Track { .. } | PathFn::Mapped { .. } => {}
        }
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Which of `k` equal slices holds `t`, and the local parameter there.
fn slice(k: usize, t: f64) -> (usize, f64) {
    let scaled = t * k as f64;
    let i = (scaled.floor() as usize).min(k - 1);
    (i, scaled - i as f64)
}

impl fmt::Debug for PathFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathFn::Constant(p) => f.debug_tuple("Constant").field(&p.factors).finish(),
            PathFn::Arc {
                start,
                tangent,
                angle,
            } => f
                .debug_struct("Arc")
                .field("start", start)
                .field("tangent", tangent)
                .field("angle", angle)
                .finish(),
            PathFn::Segment { from, to } => {
                f.debug_struct("Segment").field("from", from).field("to", to).finish()
            }
            PathFn::Chart { pole, from, to } => f
                .debug_struct("Chart")
                .field("pole", pole)
                .field("from", from)
                .field("to", to)
                .finish(),
            PathFn::Concat(parts) => f.debug_tuple("Concat").field(parts).finish(),
            PathFn::Reverse(inner) => f.debug_tuple("Reverse").field(inner).finish(),
            PathFn::Product(parts) => f.debug_tuple("Product").field(parts).finish(),
            PathFn::Track { point, .. } => f.debug_struct("Track").field("point", &point.factors).finish(),
            PathFn::Mapped { inner, .. } => f.debug_struct("Mapped").field("inner", inner).finish(),
        }
    }
}

/// `n` uniformly spaced samples `(t_i, path(t_i))` with `t_i = i/(n−1)`.
pub fn sample_path(path: &PathFn, n: usize) -> Vec<(f64, ConfigPoint)> {
    assert!(n >= 2, "at least two samples are needed");
    (0..n)
        .map(|i| {
            let t = if i == n - 1 { 1.0 } else { i as f64 / (n - 1) as f64 };
            (t, path.eval(t))
        })
        .collect()
}
