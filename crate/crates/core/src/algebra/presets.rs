//! Rational cohomology rings of the catalog spaces.

use std::collections::HashMap;

use num_traits::One;

use super::{kunneth, Combination, GradedAlgebra, Rational};

/// `H*(point)`: just the unit.
pub fn point() -> GradedAlgebra {
    GradedAlgebra::from_table_unchecked(vec!["1".into()], vec![0], 0, HashMap::new())
}

/// `H*(S^n) = Q[u]/(u²)` with `|u| = n`.
pub fn sphere(n: u32) -> GradedAlgebra {
    assert!(n >= 1, "sphere dimension must be positive");
    GradedAlgebra::from_table_unchecked(
        vec!["1".into(), "u".into()],
        vec![0, n],
        0,
        HashMap::new(),
    )
}

/// `H*(Σ_g)` for g ≥ 1: classes `u_i, v_i` in degree 1 forming a symplectic
/// system, `u_i v_i = A = -v_i u_i`, every other product of degree-1
/// classes zero. Genus 0 is the 2-sphere with its class named `A`.
pub fn surface(genus: u32) -> GradedAlgebra {
    let mut labels = vec!["1".to_string()];
    let mut degrees = vec![0];
    for i in 1..=genus {
        labels.push(format!("u{i}"));
        labels.push(format!("v{i}"));
        degrees.extend([1, 1]);
    }
    labels.push("A".into());
    degrees.push(2);
    let top = labels.len() - 1;
    let mut products: HashMap<(usize, usize), Combination> = HashMap::new();
    for i in 0..genus as usize {
        let (u, v) = (1 + 2 * i, 2 + 2 * i);
        products.insert((u, v), vec![(top, Rational::one())]);
        products.insert((v, u), vec![(top, -Rational::one())]);
    }
    GradedAlgebra::from_table_unchecked(labels, degrees, 0, products)
}

/// `H*(CP^n) = Q[u]/(u^{n+1})` with `|u| = 2`.
pub fn cpn(n: u32) -> GradedAlgebra {
    assert!(n >= 1, "projective dimension must be positive");
    let labels = (0..=n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "u".to_string(),
            k => format!("u^{k}"),
        })
        .collect();
    let degrees = (0..=n).map(|k| 2 * k).collect();
    let mut products = HashMap::new();
    for a in 1..=n as usize {
        for b in 1..=n as usize {
            if a + b <= n as usize {
                products.insert((a, b), vec![(a + b, Rational::one())]);
            }
        }
    }
    GradedAlgebra::from_table_unchecked(labels, degrees, 0, products)
}

/// `H*(T^n)` as the iterated Künneth product of circle cohomologies.
pub fn torus(n: u32) -> GradedAlgebra {
    assert!(n >= 1, "torus dimension must be positive");
    let circle = sphere(1);
    let mut alg = circle.clone();
    for _ in 1..n {
        alg = kunneth(&alg, &circle);
    }
    alg
}

/// The pulled-back fundamental classes of an iterated Künneth product
/// `((A_1 ⊗ A_2) ⊗ …) ⊗ A_k`, given each factor's chosen generators.
pub fn pulled_back_generators(
    product: &GradedAlgebra,
    factor_generators: &[Vec<usize>],
) -> Vec<usize> {
    fn go(alg: &GradedAlgebra, gens: &[Vec<usize>]) -> Vec<usize> {
        match gens {
            [] => Vec::new(),
            [only] => only.clone(),
            [init @ .., last] => {
                let (left, right) = alg
                    .tensor_factors()
                    .expect("iterated product has a tensor structure");
                let mut out: Vec<usize> = go(left, init)
                    .into_iter()
                    .map(|g| g * right.dim() + right.unit())
                    .collect();
                out.extend(last.iter().map(|&g| left.unit() * right.dim() + g));
                out
            }
        }
    }
    go(product, factor_generators)
}
