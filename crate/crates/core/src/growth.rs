//! Concatenations, superadditivity and finite-prefix growth estimates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dualgraph::DualGraph;
use crate::enumerator::{ClassCount, CountTable, Kind};
use crate::grid::{GridPoint, LatticeEdge};

/// Lower end of the band for the area growth constant (display only).
pub const KAPPA_P: f64 = 3.97094397;
/// Lower end of the band for the length growth constant (display only).
pub const MU_P: f64 = 2.63815853035;

/// Rightmost vertex of the top row.
fn top_right(g: &DualGraph) -> GridPoint {
    let vs = g.vertices();
    *vs.iter().max_by_key(|p| (p.y, p.x)).expect("at least one vertex")
}

/// Leftmost vertex of the bottom row.
fn bottom_left(g: &DualGraph) -> GridPoint {
    let vs = g.vertices();
    *vs.iter().min_by_key(|p| (p.y, p.x)).expect("at least one vertex")
}

fn glue(g1: &DualGraph, g2: &DualGraph, dy: i32, bridge: bool) -> DualGraph {
    let (a, b) = (top_right(g1), bottom_left(g2));
    let moved = g2.translate(a.x - b.x, a.y + dy - b.y);
    let mut edges: Vec<LatticeEdge> = g1.edges().iter().chain(moved.edges()).copied().collect();
    if bridge {
        edges.push(LatticeEdge::north(a.x, a.y));
    }
    if edges.is_empty() {
        return DualGraph::circle_at(a);
    }
    DualGraph::new(edges).expect("concatenation of dual graphs is a dual graph")
}

/// Places `g2` so its leftmost bottom vertex is `g1`'s rightmost top vertex.
/// Sizes and square counts add.
pub fn concat_area(g1: &DualGraph, g2: &DualGraph) -> DualGraph {
    glue(g1, g2, 0, false)
}

/// Places `g2` one unit above `g1`'s rightmost top vertex and joins them with
/// a vertical edge. Classes add.
pub fn concat_length(g1: &DualGraph, g2: &DualGraph) -> DualGraph {
    glue(g1, g2, 1, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub left: u32,
    pub right: u32,
    pub product: u128,
    pub combined: u64,
}

impl ProductCheck {
    pub fn holds(&self) -> bool {
        self.product <= self.combined as u128
    }
}

/// Every in-range instance of `a_0(m1)·a_0(m2) ≤ a_0(m1+m2)` (by size) and
/// `ℓ_0(c1)·ℓ_0(c2) ≤ ℓ_0(c1+c2)` (by class, complete classes only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperadditivityReport {
    pub by_size: Vec<ProductCheck>,
    pub by_class: Vec<ProductCheck>,
}

impl SuperadditivityReport {
    pub fn violations(&self) -> Vec<&ProductCheck> {
        self.by_size.iter().chain(&self.by_class).filter(|p| !p.holds()).collect()
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Fixed counts of complete classes, merged from the table and any extra
/// class-complete runs.
fn complete_classes(tables: &CountTable, extra: &[ClassCount]) -> Vec<(u32, u64)> {
    let mut out: Vec<(u32, u64)> = (1..=tables.max_complete_class())
        .map(|c| (c, tables.class_total(c).fixed))
        .collect();
    for cc in extra.iter().filter(|cc| cc.complete) {
        if !out.iter().any(|&(c, _)| c == cc.class) {
            out.push((cc.class, cc.counts.fixed));
        }
    }
    out.sort_unstable();
    out
}

pub fn check_superadditivity(tables: &CountTable, class_counts: &[ClassCount]) -> SuperadditivityReport {
    let a = |m: u32| tables.size_total(m).fixed;
    let max = tables.max_size();
    let mut by_size = Vec::new();
    for m1 in 1..=max {
        for m2 in m1..=max - m1 {
            by_size.push(ProductCheck { left: m1, right: m2, product: a(m1) as u128 * a(m2) as u128, combined: a(m1 + m2) });
        }
    }
    let classes = complete_classes(tables, class_counts);
    let ell = |c: u32| classes.iter().find(|&&(k, _)| k == c).map(|&(_, v)| v);
    let mut by_class = Vec::new();
    for &(c1, l1) in &classes {
        for &(c2, l2) in classes.iter().filter(|&&(c2, _)| c2 >= c1) {
            if let Some(l) = ell(c1 + c2) {
                by_class.push(ProductCheck { left: c1, right: c2, product: l1 as u128 * l2 as u128, combined: l });
            }
        }
    }
    SuperadditivityReport { by_size, by_class }
}

/// `(x_0, x_1, x_2)` for one size or class; holds when `x_0 ≤ 8·x_2` and `x_2 ≤ x_1 ≤ x_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SandwichRow {
    pub index: u32,
    pub fixed: u64,
    pub one_sided: u64,
    pub free: u64,
}

impl SandwichRow {
    pub fn holds(&self) -> bool {
        self.fixed <= 8 * self.free && self.free <= self.one_sided && self.one_sided <= self.fixed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub by_size: Vec<SandwichRow>,
    pub by_class: Vec<SandwichRow>,
}

impl SandwichReport {
    pub fn violations(&self) -> Vec<&SandwichRow> {
        self.by_size.iter().chain(&self.by_class).filter(|r| !r.holds()).collect()
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

pub fn check_sandwich(tables: &CountTable, class_counts: &[ClassCount]) -> SandwichReport {
    let row = |index, c: crate::Counts| SandwichRow { index, fixed: c.fixed, one_sided: c.one_sided, free: c.free };
    let by_size = (0..=tables.max_size()).map(|m| row(m, tables.size_total(m))).collect();
    let mut seen = BTreeSet::new();
    let mut by_class: Vec<SandwichRow> = (1..=tables.max_complete_class())
        .map(|c| {
            seen.insert(c);
            row(c, tables.class_total(c))
        })
        .collect();
    for cc in class_counts.iter().filter(|cc| cc.complete) {
        if seen.insert(cc.class) {
            by_class.push(row(cc.class, cc.counts));
        }
    }
    by_class.sort_by_key(|r| r.index);
    SandwichReport { by_size, by_class }
}

/// `x^{1/n}` for one size or class and each symmetry kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootRow {
    pub index: u32,
    pub fixed: f64,
    pub one_sided: f64,
    pub free: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    /// `a_i(m)^{1/m}` for `1 ≤ m ≤ max_size`.
    pub by_size: Vec<RootRow>,
    /// `ℓ_i(c)^{1/c}` for each complete class.
    pub by_class: Vec<RootRow>,
    pub superadditivity: SuperadditivityReport,
    pub sandwich: SandwichReport,
    pub kappa_p: f64,
    pub mu_p: f64,
    /// `[κ_p, κ_p²]`, context only.
    pub kappa_band: (f64, f64),
    /// `[μ_p, μ_p²]`, context only.
    pub mu_band: (f64, f64),
}

fn roots(index: u32, c: crate::Counts) -> RootRow {
    let r = |k: Kind| (c.get(k) as f64).powf(1.0 / index as f64);
    RootRow { index, fixed: r(Kind::Fixed), one_sided: r(Kind::OneSided), free: r(Kind::Free) }
}

/// Root sequences with both checks attached. Nothing here is compared with the
/// asymptotic bands; finite prefixes need not lie in them.
pub fn growth_estimates(tables: &CountTable, class_counts: &[ClassCount]) -> GrowthReport {
    let by_size = (1..=tables.max_size()).map(|m| roots(m, tables.size_total(m))).collect();
    let sandwich = check_sandwich(tables, class_counts);
    let by_class = sandwich
        .by_class
        .iter()
        .map(|r| roots(r.index, crate::Counts { fixed: r.fixed, one_sided: r.one_sided, free: r.free }))
        .collect();
    GrowthReport {
        by_size,
        by_class,
        superadditivity: check_superadditivity(tables, class_counts),
        sandwich,
        kappa_p: KAPPA_P,
        mu_p: MU_P,
        kappa_band: (KAPPA_P, KAPPA_P * KAPPA_P),
        mu_band: (MU_P, MU_P * MU_P),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::count_tables;

    fn dumbbell() -> DualGraph {
        DualGraph::new([LatticeEdge::east(0, 0)]).unwrap()
    }

    fn unit_square() -> DualGraph {
        DualGraph::new([LatticeEdge::east(0, 0), LatticeEdge::north(0, 0), LatticeEdge::east(0, 1), LatticeEdge::north(1, 0)])
            .unwrap()
    }

    #[test]
    fn area_concatenation_examples() {
        assert!(concat_area(&DualGraph::circle(), &DualGraph::circle()).is_circle());
        let two = concat_area(&dumbbell(), &dumbbell());
        assert_eq!(two.size(), 2);
        assert_eq!(two.edges(), &[LatticeEdge::east(0, 0), LatticeEdge::east(1, 0)]);
        let g = concat_area(&unit_square(), &dumbbell());
        assert_eq!((g.size(), g.count_squares(), g.class()), (5, 1, 4));
    }

    #[test]
    fn length_concatenation_examples() {
        let d = concat_length(&DualGraph::circle(), &DualGraph::circle());
        assert_eq!((d.size(), d.class()), (1, 2));
        let g = concat_length(&dumbbell(), &DualGraph::circle());
        assert_eq!((g.size(), g.class()), (2, 3));
        let g = concat_length(&unit_square(), &unit_square());
        assert_eq!((g.size(), g.count_squares(), g.class()), (9, 2, 6));
    }

    #[test]
    fn table_inequalities() {
        let t = count_tables(8);
        let s = check_superadditivity(&t, &[]);
        assert!(s.holds());
        assert!(s.by_size.contains(&ProductCheck { left: 1, right: 1, product: 4, combined: 6 }));
        assert!(s.by_size.contains(&ProductCheck { left: 2, right: 2, product: 36, combined: 88 }));
        assert!(s.by_class.contains(&ProductCheck { left: 2, right: 2, product: 4, combined: 32 }));
        let w = check_sandwich(&t, &[]);
        assert!(w.holds());
        assert_eq!(w.by_size[4], SandwichRow { index: 4, fixed: 88, one_sided: 25, free: 16 });
        assert_eq!(w.by_size[0], SandwichRow { index: 0, fixed: 1, one_sided: 1, free: 1 });
    }

    #[test]
    fn sandwich_flags_bad_rows() {
        let row = SandwichRow { index: 3, fixed: 100, one_sided: 20, free: 12 };
        assert!(!row.holds());
        let row = SandwichRow { index: 3, fixed: 10, one_sided: 2, free: 3 };
        assert!(!row.holds());
    }

    #[test]
    fn roots() {
        let g = growth_estimates(&count_tables(4), &[]);
        assert_eq!(g.by_size[0].fixed, 2.0);
        let c3 = g.by_class.iter().find(|r| r.index == 3).unwrap();
        assert!((c3.fixed - 7f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((c3.fixed - 1.913).abs() < 1e-3);
        assert!(g.by_size.iter().chain(&g.by_class).all(|r| r.fixed.is_finite() && r.free > 0.0));
    }
}
