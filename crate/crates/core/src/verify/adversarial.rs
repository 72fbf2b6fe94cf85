//! Fixed lists of boundary pairs that random sampling would almost never
//! hit, combined factor by factor.

use rand::Rng;

use crate::planner::{any_tangent, dot, sphere_constants, ConfigPoint, Factor, Space};

/// Upper limit on the number of combined adversarial pairs.
pub const MAX_ADVERSARIAL: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Random,
    Equal,
    Antipodal,
    Perpendicular,
    PoleToPole,
    ToPole,
    FromPole,
    FromCenter,
    ToCenter,
}

fn kinds(factor: Factor) -> Vec<Kind> {
    use Kind::*;
    match factor {
        Factor::Sphere(n) if n % 2 == 0 => vec![
            Random,
            Equal,
            Antipodal,
            Perpendicular,
            PoleToPole,
            ToPole,
            FromPole,
            FromCenter,
            ToCenter,
        ],
        Factor::Sphere(_) => vec![Random, Equal, Antipodal, Perpendicular],
        Factor::Euclidean(_) => vec![Random, Equal],
        Factor::Punctured(_) => vec![Random, Equal, Antipodal],
    }
}

fn factor_pair<R: Rng + ?Sized>(factor: Factor, kind: Kind, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let single = Space::single(factor);
    let mut draw = || single.random_point(rng).factors.remove(0);
    let a = draw();
    let b = draw();
    let poles = || match factor {
        Factor::Sphere(n) => sphere_constants(n),
        _ => unreachable!("pole kinds only occur on spheres"),
    };
    match kind {
        Kind::Random => (a, b),
        Kind::Equal => (a.clone(), a),
        Kind::Antipodal => {
            let minus = a.iter().map(|x| -x).collect();
            (a, minus)
        }
        Kind::Perpendicular => {
            // project a random point onto the tangent space at `a`
            let v: Vec<f64> = b.iter().zip(&a).map(|(y, x)| y - dot(&b, &a) * x).collect();
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let t = if r > 1e-6 {
                v.iter().map(|x| x / r).collect()
            } else {
                any_tangent(&a)
            };
            (a, t)
        }
        Kind::PoleToPole => {
            let (b0, _) = poles();
            (b0.iter().map(|x| -x).collect(), b0)
        }
        Kind::ToPole => (a, poles().0),
        Kind::FromPole => (poles().0, b),
        Kind::FromCenter => (poles().1, b),
        Kind::ToCenter => (a, poles().1),
    }
}

/// Number of combined adversarial pairs for `space`.
pub fn adversarial_count(space: &Space) -> usize {
    let total = space
        .factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(kinds(*f).len()));
    total.map_or(MAX_ADVERSARIAL, |t| t.min(MAX_ADVERSARIAL))
}

/// The `index`-th combined adversarial pair. When the full Cartesian
/// product exceeds the cap, indices are spread evenly over it.
pub fn adversarial_pair<R: Rng + ?Sized>(space: &Space, index: usize, rng: &mut R) -> (ConfigPoint, ConfigPoint) {
    let lists: Vec<Vec<Kind>> = space.factors.iter().map(|f| kinds(*f)).collect();
    let total: u128 = lists.iter().map(|l| l.len() as u128).product();
    let count = adversarial_count(space) as u128;
    let mut code = index as u128 * total / count;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (factor, list) in space.factors.iter().zip(&lists) {
        let k = list[(code % list.len() as u128) as usize];
        code /= list.len() as u128;
        let (x, y) = factor_pair(*factor, k, rng);
        a.push(x);
        b.push(y);
    }
    (ConfigPoint::new(a), ConfigPoint::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts() {
        assert_eq!(adversarial_count(&Space::single(Factor::Sphere(1))), 4);
        assert_eq!(adversarial_count(&Space::single(Factor::Sphere(2))), 9);
        assert_eq!(adversarial_count(&Space::new(vec![Factor::Sphere(1); 4])), 256);
        assert_eq!(adversarial_count(&Space::new(vec![Factor::Sphere(2); 5])), MAX_ADVERSARIAL);
    }

    #[test]
    fn pairs_are_valid_points() {
        let space = Space::new(vec![Factor::Sphere(2), Factor::Sphere(1), Factor::Euclidean(3)]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..adversarial_count(&space) {
            let (a, b) = adversarial_pair(&space, i, &mut rng);
            space.check(&a).unwrap();
            space.check(&b).unwrap();
        }
    }

    #[test]
    fn pole_to_pole_is_injected() {
        let space = Space::single(Factor::Sphere(2));
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let found = (0..9).any(|i| {
            let (a, b) = adversarial_pair(&space, i, &mut rng);
            a.factors[0] == vec![0.0, 0.0, -1.0] && b.factors[0] == vec![0.0, 0.0, 1.0]
        });
        assert!(found);
    }
}
