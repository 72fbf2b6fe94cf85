//! Planners on products from planners on the factors.
//!
//! With normalized factor weights `f` and `g`, the cell `W(S,T)` holds the
//! pairs where `f_i g_j > f_i' g_j'` for every `(i,j) ∈ S×T` and every
//! `(i',j') ∉ S×T`, and all `f_i g_j` on `S×T` are positive. Cells with the
//! same `|S| + |T|` are disjoint and form one rule, so `n + m − 1` rules
//! suffice.

use std::sync::Arc;

use super::geometry::{ConfigPoint, Factor, Space};
use super::{circle_planner, sphere_planner, PathFn, PlanError, Planner, RuleSystem, Section};

/// A product cell with its margin: the smallest gap in the defining
/// inequalities, positive exactly on the cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// 1-based, ascending.
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub margin: f64,
}

impl Cell {
    pub fn level(&self) -> usize {
        self.s.len() + self.t.len()
    }
}

/// Indices sorted by decreasing weight, ties by index.
fn ranking(w: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&i, &j| w[j].total_cmp(&w[i]).then(i.cmp(&j)));
    order
}

/// The cells that can have positive margin: `S` and `T` must be upper sets
/// of `f` and `g`, so only prefixes of the rankings are listed.
pub fn product_cells(f: &[f64], g: &[f64]) -> Vec<Cell> {
    let (rf, rg) = (ranking(f), ranking(g));
    let (fmax, gmax) = (f[rf[0]], g[rg[0]]);
    let mut cells = Vec::with_capacity(f.len() * g.len());
    for s in 1..=f.len() {
        for t in 1..=g.len() {
            let inside = f[rf[s - 1]] * g[rg[t - 1]];
            let mut outside: f64 = 0.0;
            if s < f.len() {
                outside = outside.max(f[rf[s]] * gmax);
            }
            if t < g.len() {
                outside = outside.max(fmax * g[rg[t]]);
            }
            let mut cs: Vec<usize> = rf[..s].iter().map(|i| i + 1).collect();
            let mut ct: Vec<usize> = rg[..t].iter().map(|j| j + 1).collect();
            cs.sort_unstable();
            ct.sort_unstable();
            cells.push(Cell {
                s: cs,
                t: ct,
                margin: inside - outside,
            });
        }
    }
    cells
}

struct ProductRules {
    p: Planner,
    q: Planner,
    split: usize,
}

impl ProductRules {
    fn factor_weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> (Vec<f64>, Vec<f64>) {
        let (a1, a2) = a.split(self.split);
        let (b1, b2) = b.split(self.split);
        (
            self.p.normalized_weights(&a1, &b1),
            self.q.normalized_weights(&a2, &b2),
        )
    }
}

impl RuleSystem for ProductRules {
    fn rule_count(&self) -> usize {
        self.p.rule_count() + self.q.rule_count() - 1
    }

    fn weights(&self, a: &ConfigPoint, b: &ConfigPoint) -> Vec<f64> {
        let (f, g) = self.factor_weights(a, b);
        let mut levels = vec![0.0; self.rule_count()];
        for cell in product_cells(&f, &g) {
            levels[cell.level() - 2] += cell.margin.max(0.0);
        }
        levels
    }

    fn section(&self, rule: usize, a: &ConfigPoint, b: &ConfigPoint) -> Result<Section, PlanError> {
        let (f, g) = self.factor_weights(a, b);
        let cell = product_cells(&f, &g)
            .into_iter()
            .find(|c| c.level() == rule + 2 && c.margin > 0.0)
            .ok_or(PlanError::OutsideDomain { rule: rule + 1 })?;
        let (i, j) = (cell.s[0], cell.t[0]);
        let (a1, a2) = a.split(self.split);
        let (b1, b2) = b.split(self.split);
        let left = self.p.section(i, &a1, &b1)?;
        let right = self.q.section(j, &a2, &b2)?;
        let mut cells = vec![(cell.s, cell.t)];
        cells.extend(left.cells);
        cells.extend(right.cells);
        Ok(Section {
            path: PathFn::Product(vec![left.path, right.path]),
            cells,
        })
    }

    fn rule_name(&self, rule: usize) -> String {
        format!("level {} cells W(S,T) with |S|+|T| = {}", rule + 2, rule + 2)
    }
}

/// The product planner with `n + m − 1` rules.
pub fn product_planner(p: &Planner, q: &Planner) -> Planner {
    Planner::new(
        p.space().product(q.space()),
        format!("product({},{})", p.label(), q.label()),
        Arc::new(ProductRules {
            p: p.clone(),
            q: q.clone(),
            split: p.space().factors.len(),
        }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmKind {
    /// Bars in the plane: the torus `T^n`.
    Planar,
    /// Bars in space: `(S²)^n`.
    Spatial,
}

/// Left fold of the product construction over `n` circle or 2-sphere
/// planners.
pub fn arm_planner(kind: ArmKind, n: u32) -> Planner {
    assert!(n >= 1, "an arm needs at least one bar");
    let base = match kind {
        ArmKind::Planar => circle_planner(),
        ArmKind::Spatial => sphere_planner(2),
    };
    let mut acc = base.clone();
    for _ in 1..n {
        acc = product_planner(&acc, &base);
    }
    let label = match kind {
        ArmKind::Planar if n == 1 => "circle".to_string(),
        ArmKind::Planar => format!("torus:{n}"),
        ArmKind::Spatial => format!("product of {n} copies of sphere:2"),
    };
    Planner::new(
        Space::new(vec![
            match kind {
                ArmKind::Planar => Factor::Sphere(1),
                ArmKind::Spatial => Factor::Sphere(2),
            };
            n as usize
        ]),
        label,
        acc.rules,
    )
}
