//! Tangent vector fields on spheres used by the second rule of the sphere
//! planners.

use super::geometry::{dot, scale, sub};
use super::PlanError;

/// `v(x) = (−x₂, x₁, −x₄, x₃, …)` on an odd-dimensional sphere: unit length
/// and tangent everywhere.
pub fn odd_vector_field(x: &[f64]) -> Result<Vec<f64>, PlanError> {
    let n = x.len().saturating_sub(1);
    if !x.len().is_multiple_of(2) {
        return Err(PlanError::ParityError { n: n as u32 });
    }
    let mut v = vec![0.0; x.len()];
    for k in (0..x.len()).step_by(2) {
        v[k] = -x[k + 1];
        v[k + 1] = x[k];
    }
    Ok(v)
}

/// Pushforward of the constant field `direction` on the stereographic
/// chart from `pole`, extended by zero at the pole.
///
/// With `x' = x − (x·p)p` and `h = 1 − x·p` the differential of the inverse
/// chart gives `v = h·d − (x·d)·x' + (x·d)·h·p`, which is polynomial in `x`
/// and vanishes only at `p`. `direction` must be a unit vector orthogonal
/// to `pole`.
pub fn even_vector_field(x: &[f64], pole: &[f64], direction: &[f64]) -> Result<Vec<f64>, PlanError> {
    let n = x.len().saturating_sub(1);
    if x.len().is_multiple_of(2) {
        return Err(PlanError::ParityError { n: n as u32 });
    }
    let c = dot(x, pole);
    let xp = sub(x, &scale(pole, c));
    // near the pole 1 − c cancels; |x'|² = (1 − c)(1 + c) does not
    let h = if c > 0.0 { dot(&xp, &xp) / (1.0 + c) } else { 1.0 - c };
    let xd = dot(x, direction);
    Ok(direction
        .iter()
        .zip(&xp)
        .zip(pole)
        .map(|((d, y), p)| h * d - xd * y + xd * h * p)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::geometry::{
        basis_vector, geodesic_distance, neg, norm, stereo, stereo_inverse, Factor, Space,
    };
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn odd_field_example_and_invariants() {
        assert_eq!(odd_vector_field(&[1.0, 0.0, 0.0, 0.0]).unwrap(), vec![0.0, 1.0, 0.0, 0.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 3, 5] {
            let s = Space::single(Factor::Sphere(n));
            for _ in 0..1000 {
                let x = s.random_point(&mut rng).factors.remove(0);
                let v = odd_vector_field(&x).unwrap();
                assert!(dot(&v, &x).abs() < 1e-15);
                assert!((norm(&v) - 1.0).abs() < 1e-12);
            }
        }
        assert!(matches!(
            odd_vector_field(&[0.0, 0.0, 1.0]),
            Err(PlanError::ParityError { n: 2 })
        ));
    }

    #[test]
    fn even_field_vanishes_only_at_the_pole() {
        let pole = basis_vector(3, 2);
        let d = basis_vector(3, 0);
        assert_eq!(norm(&even_vector_field(&pole, &pole, &d).unwrap()), 0.0);
        assert!(norm(&even_vector_field(&neg(&pole), &pole, &d).unwrap()) > 1.0);
        assert!(matches!(
            even_vector_field(&[1.0, 0.0], &[0.0, 1.0], &[1.0, 0.0]),
            Err(PlanError::ParityError { n: 1 })
        ));
    }

    #[test]
    fn even_field_decays_quadratically_near_the_pole() {
        let pole = basis_vector(3, 2);
        let d = basis_vector(3, 0);
        let mut last = f64::INFINITY;
        for k in 1..=8 {
            let eps = 10f64.powi(-k) * 3.0;
            let x = vec![eps.sin() * 0.6, eps.sin() * 0.8, eps.cos()];
            let r = norm(&even_vector_field(&x, &pole, &d).unwrap());
            assert!(r < last);
            last = r;
            if geodesic_distance(&x, &pole) <= 1e-2 {
                assert!(r < 1e-3, "norm {r} at distance {eps}");
            }
        }
    }

    #[test]
    fn even_field_matches_a_finite_difference_of_the_inverse_chart() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [2u32, 4, 6] {
            let dim = n as usize + 1;
            let pole = basis_vector(dim, dim - 1);
            let d = basis_vector(dim, 0);
            let s = Space::single(Factor::Sphere(n));
            for _ in 0..200 {
                let x = s.random_point(&mut rng).factors.remove(0);
                if geodesic_distance(&x, &pole) < 0.1 {
                    continue;
                }
                let y = stereo(&pole, &x);
                let step = 1e-6;
                let plus = stereo_inverse(&pole, &super::super::geometry::add(&y, &scale(&d, step)));
                let minus = stereo_inverse(&pole, &sub(&y, &scale(&d, step)));
                let fd = scale(&sub(&plus, &minus), 0.5 / step);
                let v = even_vector_field(&x, &pole, &d).unwrap();
                assert!(norm(&sub(&fd, &v)) < 1e-6 * (1.0 + norm(&v)));
                assert!(dot(&v, &x).abs() < 1e-12);
            }
        }
    }
}
