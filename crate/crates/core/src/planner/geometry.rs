//! Points of configuration spaces built from spheres and Euclidean factors,
//! plus the small amount of vector algebra the planners need.

use rand::Rng;
use rand_distr::StandardNormal;

use super::PlanError;

/// Norm tolerance for points handed to the planners.
pub const UNIT_TOLERANCE: f64 = 1e-9;
/// Norm tolerance for user-supplied sphere coordinates, which are then
/// renormalized.
pub const INPUT_TOLERANCE: f64 = 1e-6;
/// Smallest radius accepted on a punctured Euclidean factor.
pub const PUNCTURE_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// The unit sphere `S^n` in `R^{n+1}`; the circle is `Sphere(1)`.
    Sphere(u32),
    /// `R^d`, standing in for any convex set.
    Euclidean(u32),
    /// `R^d` minus the origin.
    Punctured(u32),
}

impl Factor {
    pub fn ambient_dim(self) -> usize {
        match self {
            Factor::Sphere(n) => n as usize + 1,
            Factor::Euclidean(d) | Factor::Punctured(d) => d as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigPoint {
    pub factors: Vec<Vec<f64>>,
}

impl Space {
    pub fn new(factors: Vec<Factor>) -> Self {
        Space { factors }
    }

    pub fn single(factor: Factor) -> Self {
        Space {
            factors: vec![factor],
        }
    }

    pub fn product(&self, other: &Space) -> Space {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Space { factors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.factors.iter().map(|f| f.ambient_dim()).sum()
    }

    /// Checks factor shapes, unit norms on spheres and the puncture.
    pub fn check(&self, point: &ConfigPoint) -> Result<(), PlanError> {
        if point.factors.len() != self.factors.len() {
            return Err(PlanError::InvalidPoint(format!(
                "expected {} factors, found {}",
                self.factors.len(),
                point.factors.len()
            )));
        }
        for (i, (factor, x)) in self.factors.iter().zip(&point.factors).enumerate() {
            if x.len() != factor.ambient_dim() {
                return Err(PlanError::InvalidPoint(format!(
                    "factor {} needs {} coordinates, found {}",
                    i + 1,
                    factor.ambient_dim(),
                    x.len()
                )));
            }
            if x.iter().any(|c| !c.is_finite()) {
                return Err(PlanError::InvalidPoint(format!(
                    "factor {} has a non-finite coordinate",
                    i + 1
                )));
            }
            match factor {
                Factor::Sphere(_) if (norm(x) - 1.0).abs() > UNIT_TOLERANCE => {
                    return Err(PlanError::InvalidPoint(format!(
                        "factor {} has norm {} instead of 1",
                        i + 1,
                        norm(x)
                    )));
                }
                Factor::Punctured(_) if norm(x) < PUNCTURE_RADIUS => {
                    return Err(PlanError::InvalidPoint(format!(
                        "factor {} is too close to the puncture",
                        i + 1
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Splits flat coordinates into factors, renormalizing sphere factors
    /// whose norm is within `INPUT_TOLERANCE` of 1.
    pub fn parse_point(&self, coords: &[f64]) -> Result<ConfigPoint, PlanError> {
        if coords.len() != self.ambient_dim() {
            return Err(PlanError::InvalidPoint(format!(
                "expected {} coordinates, found {}",
                self.ambient_dim(),
                coords.len()
            )));
        }
        let mut rest = coords;
        let mut factors = Vec::with_capacity(self.factors.len());
        for (i, factor) in self.factors.iter().enumerate() {
            let (head, tail) = rest.split_at(factor.ambient_dim());
            rest = tail;
            let mut x = head.to_vec();
            if let Factor::Sphere(_) = factor {
                let r = norm(&x);
                if (r - 1.0).abs() > INPUT_TOLERANCE {
                    return Err(PlanError::InvalidPoint(format!(
                        "factor {} has norm {r}, not within {INPUT_TOLERANCE} of 1",
                        i + 1
                    )));
                }
                x.iter_mut().for_each(|c| *c /= r);
            }
            factors.push(x);
        }
        let point = ConfigPoint { factors };
        self.check(&point)?;
        Ok(point)
    }

    /// Samples a point: normalized Gaussians on spheres, standard Gaussians
    /// on Euclidean factors.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> ConfigPoint {
        let factors = self
            .factors
            .iter()
            .map(|factor| loop {
                let x = gaussian(rng, factor.ambient_dim());
                match factor {
                    Factor::Sphere(_) => {
                        let r = norm(&x);
                        if r > 1e-3 {
                            break scale(&x, 1.0 / r);
                        }
                    }
                    Factor::Punctured(_) if norm(&x) < 1e-3 => {}
                    _ => break x,
                }
            })
            .collect();
        ConfigPoint { factors }
    }

    /// Moves every factor a distance `delta` in a random tangent direction,
    /// along a great circle on spheres.
    pub fn perturb<R: Rng + ?Sized>(&self, point: &ConfigPoint, delta: f64, rng: &mut R) -> ConfigPoint {
        let factors = self
            .factors
            .iter()
            .zip(&point.factors)
            .map(|(factor, x)| loop {
                let v = gaussian(rng, x.len());
                let v = match factor {
                    Factor::Sphere(_) => sub(&v, &scale(x, dot(&v, x))),
                    _ => v,
                };
                let r = norm(&v);
                if r < 1e-6 {
                    continue;
                }
                let u = scale(&v, 1.0 / r);
                break match factor {
                    Factor::Sphere(_) => {
                        let y = add(&scale(x, delta.cos()), &scale(&u, delta.sin()));
                        scale(&y, 1.0 / norm(&y))
                    }
                    _ => add(x, &scale(&u, delta)),
                };
            })
            .collect();
        ConfigPoint { factors }
    }
}

impl ConfigPoint {
    pub fn new(factors: Vec<Vec<f64>>) -> Self {
        ConfigPoint { factors }
    }

    pub fn single(x: Vec<f64>) -> Self {
        ConfigPoint { factors: vec![x] }
    }

    pub fn flat(&self) -> Vec<f64> {
        self.factors.concat()
    }

    /// The first `at` factors and the rest.
    pub fn split(&self, at: usize) -> (ConfigPoint, ConfigPoint) {
        let (a, b) = self.factors.split_at(at);
        (ConfigPoint::new(a.to_vec()), ConfigPoint::new(b.to_vec()))
    }

    pub fn concat(mut self, other: ConfigPoint) -> ConfigPoint {
        self.factors.extend(other.factors);
        self
    }

    /// Euclidean distance of the flattened ambient coordinates.
    pub fn distance(&self, other: &ConfigPoint) -> f64 {
        self.factors
            .iter()
            .zip(&other.factors)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[f64]) -> Vec<f64> {
    scale(a, -1.0)
}

/// Standard basis vector `e_{k+1}` of `R^n`.
pub fn basis_vector(n: usize, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[k] = 1.0;
    e
}

/// Geodesic distance on the unit sphere, stable near 0 and π.
pub fn geodesic_distance(a: &[f64], b: &[f64]) -> f64 {
    2.0 * norm(&sub(a, b)).atan2(norm(&add(a, b)))
}

/// A unit vector orthogonal to `a`; the first coordinate axis with the
/// smallest overlap, projected and normalized.
pub fn any_tangent(a: &[f64]) -> Vec<f64> {
    let k = (0..a.len())
        .min_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
        .unwrap_or(0);
    let e = basis_vector(a.len(), k);
    let v = sub(&e, &scale(a, dot(&e, a)));
    scale(&v, 1.0 / norm(&v))
}

/// Unit tangent at `a` pointing along the shortest arc to `b`, with the
/// arc's angle. Falls back to an arbitrary tangent when `b = ±a`.
pub fn arc_toward(a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let angle = geodesic_distance(a, b);
    let v = sub(b, &scale(a, dot(a, b)));
    let r = norm(&v);
    let tangent = if r > 0.0 && r.is_finite() {
        scale(&v, 1.0 / r)
    } else {
        any_tangent(a)
    };
    (tangent, angle)
}

/// Stereographic chart from `pole`: the point `x ≠ pole` goes to the
/// hyperplane orthogonal to `pole`.
pub fn stereo(pole: &[f64], x: &[f64]) -> Vec<f64> {
    let c = dot(x, pole);
    let proj = sub(x, &scale(pole, c));
    scale(&proj, 1.0 / (1.0 - c))
}

/// Inverse of [`stereo`].
pub fn stereo_inverse(pole: &[f64], y: &[f64]) -> Vec<f64> {
    let s = dot(y, y);
    let v = add(&scale(pole, s - 1.0), &scale(y, 2.0));
    scale(&v, 1.0 / (s + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn geodesic_distance_extremes() {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        assert_eq!(geodesic_distance(&e1, &e1), 0.0);
        assert!((geodesic_distance(&e1, &neg(&e1)) - std::f64::consts::PI).abs() < 1e-15);
        assert!((geodesic_distance(&e1, &e2) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn parse_point_renormalizes_and_rejects() {
        let s = Space::new(vec![Factor::Sphere(1), Factor::Euclidean(2)]);
        let p = s.parse_point(&[1.0 + 5e-7, 0.0, 3.0, -4.0]).unwrap();
        assert_eq!(p.factors[0], vec![1.0, 0.0]);
        assert_eq!(p.factors[1], vec![3.0, -4.0]);
        assert!(s.parse_point(&[1.1, 0.0, 0.0, 0.0]).is_err());
        assert!(s.parse_point(&[1.0, 0.0, 0.0]).is_err());
        let punctured = Space::single(Factor::Punctured(2));
        assert!(punctured.parse_point(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn stereographic_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = Space::single(Factor::Sphere(4));
        let pole = basis_vector(5, 0);
        for _ in 0..100 {
            let x = s.random_point(&mut rng).factors.remove(0);
            let y = stereo(&pole, &x);
            assert!(dot(&y, &pole).abs() < 1e-12);
            let back = stereo_inverse(&pole, &y);
            assert!(norm(&sub(&back, &x)) < 1e-9);
        }
        assert_eq!(stereo_inverse(&pole, &[0.0; 5]), neg(&pole));
    }

    #[test]
    fn perturbation_has_the_requested_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = Space::new(vec![Factor::Sphere(2), Factor::Euclidean(3)]);
        for _ in 0..50 {
            let p = s.random_point(&mut rng);
            let q = s.perturb(&p, 1e-3, &mut rng);
            s.check(&q).unwrap();
            let d0 = geodesic_distance(&p.factors[0], &q.factors[0]);
            let d1 = norm(&sub(&p.factors[1], &q.factors[1]));
            assert!((d0 - 1e-3).abs() < 1e-12 && (d1 - 1e-3).abs() < 1e-12);
        }
    }

    #[test]
    fn arcs_toward_antipodes_use_a_fallback_tangent() {
        let a = [0.0, 0.0, 1.0];
        let (t, angle) = arc_toward(&a, &neg(&a));
        assert!((angle - std::f64::consts::PI).abs() < 1e-15);
        assert!(dot(&t, &a).abs() < 1e-15 && (norm(&t) - 1.0).abs() < 1e-15);
    }
}
