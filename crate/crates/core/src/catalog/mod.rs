//! Catalog of configuration spaces: geometry, cohomology algebra and
//! literature metadata, plus the bound calculator.
//!
//! Category values are external constants (every catalog space has
//! `cat = cup-length + 1`, and that formula is additive over products); they
//! are stored, never computed. Exact TC values are recorded only where the
//! planners and cup-length witnesses here pin them down.

mod bounds;
mod spec;

use thiserror::Error;

use crate::algebra::presets;
use crate::algebra::{kunneth, GradedAlgebra};

pub use bounds::{tc_bounds, tc_bounds_for_algebra, BoundsReport, LowerSource, UpperSource};
pub use spec::SpaceSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad space spec at position {position}: {message}")]
    BadSpec { position: usize, message: String },
    #[error("unsupported parameter in `{spec}`: {reason}")]
    UnsupportedParameter { spec: String, reason: String },
}

/// Largest algebra rank accepted for a catalog space; tensor squares of
/// larger algebras are too big to search.
pub const MAX_ALGEBRA_RANK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownTc {
    pub value: u32,
    pub source: &'static str,
}

#[derive(Debug, Clone)]
pub struct SpaceDescriptor {
    pub spec: SpaceSpec,
    pub geometry_dim: u32,
    pub algebra: GradedAlgebra,
    /// Multiplicative generators used for canonical zero divisors.
    pub generators: Vec<usize>,
    /// Lusternik–Schnirelmann category, external metadata.
    pub cat: Option<u32>,
    pub known_tc: Option<KnownTc>,
    pub contractible: bool,
    /// Rule count of the planner built for this space, if one exists.
    pub planner_rules: Option<u32>,
    /// Factors for the product inequality; empty for non-products.
    pub factors: Vec<SpaceDescriptor>,
}

pub fn catalog_space(spec: &SpaceSpec) -> Result<SpaceDescriptor, CatalogError> {
    let unsupported = |reason: &str| CatalogError::UnsupportedParameter {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let in_range = |value: u32, lo: u32, hi: u32, what: &str| {
        if (lo..=hi).contains(&value) {
            Ok(())
        } else {
            Err(unsupported(&format!("{what} must lie in {lo}..={hi}")))
        }
    };

    let mut desc = match spec {
        SpaceSpec::Circle => SpaceDescriptor {
            spec: spec.clone(),
            geometry_dim: 1,
            algebra: presets::sphere(1),
            generators: vec![1],
            cat: Some(2),
            known_tc: None,
            contractible: false,
            planner_rules: Some(2),
            factors: Vec::new(),
        },
        SpaceSpec::Sphere(n) => {
            in_range(*n, 1, 64, "sphere dimension")?;
            SpaceDescriptor {
                spec: spec.clone(),
                geometry_dim: *n,
                algebra: presets::sphere(*n),
                generators: vec![1],
                cat: Some(2),
                known_tc: None,
                contractible: false,
                planner_rules: Some(if n % 2 == 1 { 2 } else { 3 }),
                factors: Vec::new(),
            }
        }
        SpaceSpec::Surface(g) => {
            in_range(*g, 0, 16, "genus")?;
            match g {
                // the sphere and the torus are the genus 0 and 1 surfaces
                0 => relabel(catalog_space(&SpaceSpec::Sphere(2))?, spec),
                1 => relabel(catalog_space(&SpaceSpec::Torus(2))?, spec),
                _ => {
                    let algebra = presets::surface(*g);
                    let generators = (1..=2 * *g as usize).collect();
                    SpaceDescriptor {
                        spec: spec.clone(),
                        geometry_dim: 2,
                        algebra,
                        generators,
                        cat: Some(3),
                        known_tc: None,
                        contractible: false,
                        planner_rules: None,
                        factors: Vec::new(),
                    }
                }
            }
        }
        SpaceSpec::Cpn(n) => {
            in_range(*n, 1, 16, "complex dimension")?;
            SpaceDescriptor {
                spec: spec.clone(),
                geometry_dim: 2 * n,
                algebra: presets::cpn(*n),
                generators: vec![1],
                cat: Some(n + 1),
                known_tc: None,
                contractible: false,
                planner_rules: None,
                factors: Vec::new(),
            }
        }
        SpaceSpec::Torus(n) => {
            in_range(*n, 1, 12, "torus dimension")?;
            let circles = vec![SpaceSpec::Circle; *n as usize];
            let mut desc = if *n == 1 {
                catalog_space(&SpaceSpec::Circle)?
            } else {
                product_descriptor(spec, &circles)?
            };
            desc.spec = spec.clone();
            desc
        }
        SpaceSpec::Convex(n) => {
            in_range(*n, 1, 1024, "dimension")?;
            SpaceDescriptor {
                spec: spec.clone(),
                geometry_dim: *n,
                algebra: presets::point(),
                generators: Vec::new(),
                cat: Some(1),
                known_tc: None,
                contractible: true,
                planner_rules: Some(1),
                factors: Vec::new(),
            }
        }
        SpaceSpec::Product(parts) => product_descriptor(spec, parts)?,
    };
    desc.known_tc = known_tc(spec);
    Ok(desc)
}

fn relabel(mut desc: SpaceDescriptor, spec: &SpaceSpec) -> SpaceDescriptor {
    desc.spec = spec.clone();
    desc
}

fn product_descriptor(
    spec: &SpaceSpec,
    parts: &[SpaceSpec],
) -> Result<SpaceDescriptor, CatalogError> {
    let factors = parts
        .iter()
        .map(catalog_space)
        .collect::<Result<Vec<_>, _>>()?;
    let rank: usize = factors.iter().map(|f| f.algebra.dim()).product();
    if rank > MAX_ALGEBRA_RANK {
        return Err(CatalogError::UnsupportedParameter {
            spec: spec.to_string(),
            reason: format!("cohomology rank {rank} exceeds {MAX_ALGEBRA_RANK}"),
        });
    }
    let mut algebra = factors[0].algebra.clone();
    for f in &factors[1..] {
        algebra = kunneth(&algebra, &f.algebra);
    }
    let factor_generators: Vec<Vec<usize>> = factors.iter().map(|f| f.generators.clone()).collect();
    let generators = presets::pulled_back_generators(&algebra, &factor_generators);
    let cat = factors
        .iter()
        .map(|f| f.cat)
        .sum::<Option<u32>>()
        .map(|total| total + 1 - factors.len() as u32);
    let planner_rules = factors
        .iter()
        .map(|f| f.planner_rules)
        .sum::<Option<u32>>()
        .map(|total| total + 1 - factors.len() as u32);
    Ok(SpaceDescriptor {
        spec: spec.clone(),
        geometry_dim: factors.iter().map(|f| f.geometry_dim).sum(),
        algebra,
        generators,
        cat,
        known_tc: None,
        contractible: factors.iter().all(|f| f.contractible),
        planner_rules,
        factors,
    })
}

/// Sphere dimensions of the factors, dropping contractible ones; `None`
/// when some factor is not a product of spheres.
fn sphere_factors(spec: &SpaceSpec) -> Option<Vec<u32>> {
    match spec {
        SpaceSpec::Circle => Some(vec![1]),
        SpaceSpec::Sphere(n) => Some(vec![*n]),
        SpaceSpec::Torus(n) => Some(vec![1; *n as usize]),
        SpaceSpec::Surface(0) => Some(vec![2]),
        SpaceSpec::Surface(1) => Some(vec![1, 1]),
        SpaceSpec::Convex(_) => Some(Vec::new()),
        SpaceSpec::Surface(_) | SpaceSpec::Cpn(_) => None,
        SpaceSpec::Product(parts) => parts
            .iter()
            .map(sphere_factors)
            .collect::<Option<Vec<_>>>()
            .map(|v| v.concat()),
    }
}

fn known_tc(spec: &SpaceSpec) -> Option<KnownTc> {
    if let SpaceSpec::Surface(g) = spec {
        if *g >= 2 {
            return Some(KnownTc {
                value: 5,
                source: "surfaces of genus ≥ 2: cup-length witness 2·A⊗A and the dimension bound",
            });
        }
    }
    let dims = sphere_factors(spec)?;
    let Some(&m) = dims.first() else {
        return Some(KnownTc {
            value: 1,
            source: "contractible space",
        });
    };
    if dims.iter().any(|&d| d != m) {
        return None;
    }
    let n = dims.len() as u32;
    Some(if m % 2 == 1 {
        KnownTc {
            value: n + 1,
            source: "product of n odd-dimensional spheres: n + 1",
        }
    } else {
        KnownTc {
            value: 2 * n + 1,
            source: "product of n even-dimensional spheres: 2n + 1",
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(s: &str) -> SpaceDescriptor {
        catalog_space(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn catalog_examples() {
        let s = space("sphere:2");
        assert_eq!((s.geometry_dim, s.known_tc.unwrap().value), (2, 3));
        let t = space("torus:3");
        assert_eq!((t.geometry_dim, t.known_tc.unwrap().value), (3, 4));
        let g = space("surface:2");
        assert_eq!((g.geometry_dim, g.known_tc.unwrap().value), (2, 5));
        let c = space("cpn:2");
        assert_eq!(c.geometry_dim, 4);
        assert!(c.known_tc.is_none());
    }

    #[test]
    fn closed_manifolds_have_top_degree_equal_to_dimension() {
        for s in [
            "circle",
            "sphere:5",
            "surface:0",
            "surface:1",
            "surface:3",
            "cpn:3",
            "torus:4",
            "product(sphere:2,sphere:2,circle)",
        ] {
            let d = space(s);
            assert_eq!(d.algebra.top_degree(), d.geometry_dim, "{s}");
        }
    }

    #[test]
    fn known_values_respect_category_bounds() {
        for s in [
            "circle",
            "sphere:1",
            "sphere:2",
            "sphere:7",
            "surface:0",
            "surface:1",
            "surface:4",
            "torus:5",
            "convex:3",
            "product(sphere:2,sphere:2,sphere:2)",
            "product(torus:2,circle)",
            "product(convex:2,sphere:3)",
        ] {
            let d = space(s);
            let (cat, tc) = (d.cat.unwrap(), d.known_tc.unwrap().value);
            assert!(cat <= tc && tc < 2 * cat, "{s}: cat {cat}, tc {tc}");
        }
    }

    #[test]
    fn mixed_products_have_no_known_value() {
        assert!(space("product(circle,sphere:2)").known_tc.is_none());
        assert!(space("product(cpn:1,sphere:2)").known_tc.is_none());
        assert!(space("product(sphere:2,sphere:2)").known_tc.is_some());
    }

    #[test]
    fn product_generators_are_pulled_back() {
        let d = space("product(sphere:2,sphere:2,sphere:2)");
        assert_eq!(d.algebra.dim(), 8);
        assert_eq!(d.generators.len(), 3);
        assert!(d.generators.iter().all(|&g| d.algebra.degree(g) == 2));
        assert_eq!(d.planner_rules, Some(7));
        assert_eq!(d.cat, Some(4));
    }

    #[test]
    fn parameter_ranges() {
        for s in ["sphere:0", "torus:0", "torus:13", "cpn:0", "convex:0", "surface:17"] {
            assert!(
                matches!(
                    catalog_space(&s.parse().unwrap()),
                    Err(CatalogError::UnsupportedParameter { .. })
                ),
                "{s}"
            );
        }
        let big = "product(torus:12,circle)".parse().unwrap();
        assert!(catalog_space(&big).is_err());
    }
}
