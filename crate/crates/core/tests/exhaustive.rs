//! Exhaustive checks over every dual graph (or polystick) up to a small size.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::f64::consts::PI;

use tangles_core::dualgraph::{self, is_valid_with, ValidityCheck};
use tangles_core::enumerator::{brute_force_oracle, count_tables, enumerate_fixed, enumerate_graphs, search_polysticks, Node};
use tangles_core::geometry::{check_smooth_simple, numeric_area, trace, GeometryConfig};
use tangles_core::grid::{apply_symmetry, canonical_form, stabilizer, Symmetry};
use tangles_core::growth::{concat_area, concat_length};
use tangles_core::polyomino::{
    chan_inverse_full, chan_inverse_tree, chan_polyomino, enumerate_holefree, fleron_polyomino, is_corner, omega_rotation,
};
use tangles_core::{DualGraph, Kind, LatticeEdge};

#[test]
fn size_class_identities_up_to_8() {
    for g in enumerate_graphs(8) {
        let (m, v, k, c) = (g.size(), g.vertex_count(), g.count_squares(), g.class());
        assert_eq!(v + k, m + 1, "{:?}", g.edges());
        assert_eq!(c as i64, m as i64 - 2 * k as i64 + 1);
        assert!(c >= 1);
        let (lo, hi) = dualgraph::edge_bounds(c as u32);
        assert!(lo as usize <= m && m <= hi as usize);
        assert_eq!(m % 2, (c - 1) % 2);
        assert!(k as u32 <= dualgraph::max_squares(m as u32));
        let a = dualgraph::area(m as u32, 1.0).unwrap();
        assert!((a - (4.0 * m as f64 + PI)).abs() < 1e-12);
    }
}

#[test]
fn checkers_agree_on_all_polysticks_up_to_8() {
    let (mut total, mut valid) = (0u64, 0u64);
    search_polysticks(8, &mut |n: &Node<'_>| {
        let walk = is_valid_with(n.edges, ValidityCheck::FaceWalk).unwrap();
        let cycles = is_valid_with(n.edges, ValidityCheck::FundamentalCycles).unwrap();
        assert_eq!(walk, cycles, "{:?}", n.edges);
        assert_eq!(walk, n.is_dual_graph());
        total += 1;
        valid += walk as u64;
    });
    // fixed polysticks with 1..=8 sticks
    assert_eq!(total, 2 + 6 + 22 + 88 + 372 + 1628 + 7312 + 33466);
    assert_eq!(valid, count_tables(8).iter().filter(|((m, _), _)| *m > 0).map(|(_, n)| n.fixed).sum::<u64>());
}

#[test]
fn brute_force_matches_redelmeier() {
    assert_eq!(brute_force_oracle(6).unwrap(), count_tables(6));
}

#[test]
fn orbit_counting_up_to_7() {
    let t = count_tables(7);
    let graphs = enumerate_graphs(7);
    for m in 1..=7u32 {
        let (mut one_sided, mut free) = (0usize, 0usize);
        for g in graphs.iter().filter(|g| g.size() == m as usize) {
            let stab = stabilizer(g.edges());
            free += stab.len();
            one_sided += stab.iter().filter(|s| !s.is_reflection()).count();
        }
        let totals = t.size_total(m);
        assert_eq!(free % 8, 0);
        assert_eq!(one_sided % 4, 0);
        assert_eq!(free as u64 / 8, totals.get(Kind::Free), "m={m}");
        assert_eq!(one_sided as u64 / 4, totals.get(Kind::OneSided), "m={m}");
    }
}

#[test]
fn symmetries_preserve_validity_and_class() {
    for g in enumerate_graphs(7).into_iter().skip(1) {
        for s in Symmetry::ALL {
            let h = DualGraph::new(apply_symmetry(g.edges(), s)).unwrap();
            assert_eq!((h.size(), h.count_squares(), h.class()), (g.size(), g.count_squares(), g.class()));
        }
    }
}

#[test]
fn trees_are_the_diagonal() {
    let mut trees = [0u64; 9];
    enumerate_fixed(8, |n| {
        if n.squares == 0 {
            trees[n.size()] += 1;
        }
    });
    trees[0] = 1;
    assert_eq!(trees, [1, 2, 6, 22, 87, 364, 1574, 6986, 31581]);
    let t = count_tables(8);
    for (m, &n) in trees.iter().enumerate() {
        assert_eq!(t.get(m as u32, m as u32 + 1).fixed, n);
    }
}

#[test]
fn polyomino_properties_up_to_8() {
    let graphs = enumerate_graphs(8);
    let mut fleron_images = HashSet::new();
    let mut small = 0;
    let mut holed = [0; 9];
    for g in &graphs {
        let (m, k, c) = (g.size(), g.count_squares(), g.class());
        let f = fleron_polyomino(g);
        assert_eq!(f.len(), 2 * m + 1);
        assert_eq!(f.perimeter(), 4 * c);
        let p = chan_polyomino(g);
        assert_eq!(p.len(), m - k + 1);
        if !p.is_hole_free() {
            holed[m] += 1;
        }
        if m <= 7 {
            small += 1;
            assert!(fleron_images.insert(f.canonical()), "{:?}", g.edges());
        }
    }
    assert_eq!(fleron_images.len(), small);
    // Chan images are not always hole-free: vertices can surround an empty point
    assert_eq!(holed, [0, 0, 0, 0, 0, 0, 4, 48, 428]);

    for p in enumerate_holefree(7).unwrap() {
        let tree = chan_inverse_tree(&p).unwrap();
        assert!(tree.is_tree() || tree.is_circle());
        assert_eq!(chan_polyomino(&tree), p);
        let full = chan_inverse_full(&p).unwrap();
        assert_eq!(chan_polyomino(&full), p);
        assert_eq!(full.class(), p.perimeter() / 2 - 1);
        for cell in p.cells() {
            if is_corner(&p, cell) {
                let q = omega_rotation(&p, cell).unwrap();
                assert_eq!(q.perimeter(), p.perimeter());
                assert_eq!(q.len() + 1, p.len());
            } else {
                assert!(omega_rotation(&p, cell).is_err());
            }
        }
    }
}

#[test]
fn curves_up_to_6() {
    for r in [0.5, 1.0, 2.0] {
        let cfg = GeometryConfig::with_radius(r).unwrap();
        for g in enumerate_graphs(6) {
            let curve = trace(&g, &cfg).unwrap();
            assert_eq!(curve.len(), 4 * g.class());
            let report = check_smooth_simple(&curve);
            assert!(report.passes(), "{:?} {report:?}", g.edges());
            let want = (4.0 * g.size() as f64 + PI) * r * r;
            let got = numeric_area(&curve).unwrap();
            assert!((got - want).abs() / want < 1e-9, "{got} vs {want}");
            assert!((curve.length() - 2.0 * PI * r * g.class() as f64).abs() < 1e-9 * r);
        }
    }
}

#[test]
fn chan_image_with_a_hole() {
    // the holed heptomino as a 6-edge tree; still a simple smooth curve
    let g = DualGraph::new([
        LatticeEdge::east(0, 0),
        LatticeEdge::east(1, 0),
        LatticeEdge::north(2, 0),
        LatticeEdge::north(0, 0),
        LatticeEdge::north(0, 1),
        LatticeEdge::east(0, 2),
    ])
    .unwrap();
    let p = chan_polyomino(&g);
    assert_eq!(p.len(), 7);
    assert!(!p.is_hole_free());
    assert!(fleron_polyomino(&g).is_hole_free());
    let curve = trace(&g, &GeometryConfig::default()).unwrap();
    assert!(check_smooth_simple(&curve).passes());
}

fn by_size(graphs: &[DualGraph], m: usize) -> impl Iterator<Item = &DualGraph> {
    graphs.iter().filter(move |g| g.size() == m)
}

#[test]
fn area_concatenation_up_to_6() {
    let graphs = enumerate_graphs(6);
    for m1 in 0..=6 {
        for m2 in 0..=6 - m1 {
            let mut outputs = BTreeSet::new();
            let mut pairs = 0;
            for g1 in by_size(&graphs, m1) {
                for g2 in by_size(&graphs, m2) {
                    let g = concat_area(g1, g2);
                    assert!(dualgraph::is_valid(g.edges()).unwrap() || g.is_circle());
                    assert_eq!(g.size(), m1 + m2);
                    assert_eq!(g.count_squares(), g1.count_squares() + g2.count_squares());
                    pairs += 1;
                    outputs.insert(canonical_form(g.edges()));
                }
            }
            // with a circle on either side the other graph comes back unchanged
            assert_eq!(outputs.len(), pairs, "sizes {m1} + {m2}");
        }
    }
}

#[test]
fn length_concatenation_up_to_5() {
    let graphs = enumerate_graphs(5);
    let mut outputs: BTreeMap<(usize, usize), BTreeSet<Vec<LatticeEdge>>> = BTreeMap::new();
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for m1 in 0..=5 {
        for m2 in 0..=5 - m1 {
            for g1 in by_size(&graphs, m1) {
                for g2 in by_size(&graphs, m2) {
                    let g = concat_length(g1, g2);
                    assert!(dualgraph::is_valid(g.edges()).unwrap());
                    assert_eq!(g.size(), m1 + m2 + 1);
                    assert_eq!(g.class(), g1.class() + g2.class());
                    let split = (g1.class(), g2.class());
                    *pairs.entry(split).or_default() += 1;
                    outputs.entry(split).or_default().insert(canonical_form(g.edges()));
                }
            }
        }
    }
    for (split, n) in pairs {
        assert_eq!(outputs[&split].len(), n, "classes {split:?}");
    }
}
