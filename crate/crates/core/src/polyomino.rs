//! Polyominoes attached to a dual graph.
//!
//! The Chan polyomino has one cell per vertex. The Fleron polyomino lives on the
//! doubled lattice: vertex `(x, y)` gives cell `(2x, 2y)`, an East edge at
//! `(x, y)` gives `(2x + 1, 2y)`, a North edge `(2x, 2y + 1)`, and each complete
//! square with lower-left corner `(x, y)` fills `(2x + 1, 2y + 1)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::dualgraph::DualGraph;
use crate::grid::{GridPoint, LatticeEdge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyominoError {
    #[error("a polyomino needs at least one cell")]
    Empty,
    #[error("cells are not edge-connected")]
    Disconnected,
    #[error("polyomino has a hole")]
    HasHoles,
    #[error("cell {0} is not a removable corner")]
    NotRemovableCorner(GridPoint),
    #[error("enumeration supports up to {limit} cells, got {requested}")]
    BoundExceeded { requested: u32, limit: u32 },
}

/// A connected set of unit cells, each named by its lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    cells: BTreeSet<GridPoint>,
}

impl CellSet {
    pub fn new(cells: impl IntoIterator<Item = GridPoint>) -> Result<Self, PolyominoError> {
        let cells: BTreeSet<GridPoint> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(PolyominoError::Empty);
        }
        if !connected(&cells) {
            return Err(PolyominoError::Disconnected);
        }
        Ok(CellSet { cells })
    }

    pub fn cells(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.cells.iter().copied()
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.cells.contains(&p)
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of edge-adjacent cell pairs.
    pub fn adjacencies(&self) -> usize {
        self.cells
            .iter()
            .map(|p| self.contains(p.offset(1, 0)) as usize + self.contains(p.offset(0, 1)) as usize)
            .sum()
    }

    /// Boundary length, `4n − 2a`.
    pub fn perimeter(&self) -> usize {
        4 * self.len() - 2 * self.adjacencies()
    }

    fn bounds(&self) -> (GridPoint, GridPoint) {
        let min_x = self.cells.iter().map(|p| p.x).min().unwrap_or(0);
        let max_x = self.cells.iter().map(|p| p.x).max().unwrap_or(0);
        let min_y = self.cells.iter().map(|p| p.y).min().unwrap_or(0);
        let max_y = self.cells.iter().map(|p| p.y).max().unwrap_or(0);
        (GridPoint::new(min_x, min_y), GridPoint::new(max_x, max_y))
    }

    /// True when every empty cell of the bounding box, grown by one, is reachable
    /// from outside.
    pub fn is_hole_free(&self) -> bool {
        let (lo, hi) = self.bounds();
        let (lo, hi) = (lo.offset(-1, -1), hi.offset(1, 1));
        let inside = |p: GridPoint| p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
        let total = ((hi.x - lo.x + 1) * (hi.y - lo.y + 1)) as usize;
        let mut seen = HashSet::from([lo]);
        let mut queue = VecDeque::from([lo]);
        while let Some(p) = queue.pop_front() {
            for q in p.neighbours() {
                if inside(q) && !self.contains(q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen.len() + self.len() == total
    }

    /// Translate with the bounding-box corner at the origin.
    pub fn canonical(&self) -> CellSet {
        let (lo, _) = self.bounds();
        CellSet { cells: self.cells.iter().map(|p| p.offset(-lo.x, -lo.y)).collect() }
    }

    /// All cells in one row or one column.
    pub fn is_straight(&self) -> bool {
        let (lo, hi) = self.bounds();
        lo.x == hi.x || lo.y == hi.y
    }
}

fn connected(cells: &BTreeSet<GridPoint>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for q in p.neighbours() {
            if cells.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == cells.len()
}

/// One cell per dual-graph vertex.
pub fn chan_polyomino(g: &DualGraph) -> CellSet {
    CellSet { cells: g.vertices().into_iter().collect() }
}

/// Cells for vertices, edges and complete squares on the doubled lattice.
pub fn fleron_polyomino(g: &DualGraph) -> CellSet {
    let mut cells: BTreeSet<GridPoint> = g
        .vertices()
        .into_iter()
        .map(|v| GridPoint::new(2 * v.x, 2 * v.y))
        .collect();
    cells.extend(g.edges().iter().map(|e| {
        let (x, y) = e.doubled_midpoint();
        GridPoint::new(x, y)
    }));
    cells.extend(g.squares().into_iter().map(|s| GridPoint::new(2 * s.x + 1, 2 * s.y + 1)));
    CellSet { cells }
}

/// Breadth-first spanning tree of the cell adjacency graph, from the least cell,
/// neighbours tried East, North, West, South.
pub fn chan_inverse_tree(p: &CellSet) -> Result<DualGraph, PolyominoError> {
    if !p.is_hole_free() {
        return Err(PolyominoError::HasHoles);
    }
    let start = *p.cells.iter().next().expect("non-empty");
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut edges = Vec::with_capacity(p.len() - 1);
    while let Some(c) = queue.pop_front() {
        for q in c.neighbours() {
            if p.contains(q) && seen.insert(q) {
                edges.push(LatticeEdge::between(c, q).expect("adjacent"));
                queue.push_back(q);
            }
        }
    }
    if edges.is_empty() {
        return Ok(DualGraph::circle_at(start));
    }
    Ok(DualGraph::new(edges).expect("a spanning tree is a valid dual graph"))
}

/// Full adjacency graph of the cells.
pub fn chan_inverse_full(p: &CellSet) -> Result<DualGraph, PolyominoError> {
    if !p.is_hole_free() {
        return Err(PolyominoError::HasHoles);
    }
    let mut edges = Vec::new();
    for &c in &p.cells {
        for q in [c.offset(1, 0), c.offset(0, 1)] {
            if p.contains(q) {
                edges.push(LatticeEdge::between(c, q).expect("adjacent"));
            }
        }
    }
    if edges.is_empty() {
        return Ok(DualGraph::circle_at(*p.cells.iter().next().expect("non-empty")));
    }
    Ok(DualGraph::new(edges).expect("adjacency graph of a hole-free polyomino is valid"))
}

/// Whether `corner` has exactly two neighbours, at right angles, and the cell
/// diagonally between them is present.
pub fn is_corner(p: &CellSet, corner: GridPoint) -> bool {
    if !p.contains(corner) || p.len() < 4 {
        return false;
    }
    let nb = corner.neighbours();
    let present: Vec<usize> = (0..4).filter(|&d| p.contains(nb[d])).collect();
    let [a, b] = present[..] else {
        return false;
    };
    if (a + 2) % 4 == b {
        return false;
    }
    let (da, db) = (nb[a], nb[b]);
    let diagonal = GridPoint::new(da.x + db.x - corner.x, da.y + db.y - corner.y);
    p.contains(diagonal)
}

/// Removes a corner cell; the perimeter is unchanged and the result stays
/// connected and hole-free.
pub fn omega_rotation(p: &CellSet, corner: GridPoint) -> Result<CellSet, PolyominoError> {
    if !is_corner(p, corner) {
        return Err(PolyominoError::NotRemovableCorner(corner));
    }
    let mut cells = p.cells.clone();
    cells.remove(&corner);
    let out = CellSet { cells };
    if !connected(&out.cells) || !out.is_hole_free() {
        return Err(PolyominoError::NotRemovableCorner(corner));
    }
    Ok(out)
}

/// Largest cell count [`enumerate_polyominoes`] accepts.
pub const POLYOMINO_LIMIT: u32 = 8;

/// Every fixed polyomino with `1..=n_max` cells in canonical form, sorted by
/// `(n, cells)`. Redelmeier growth from a root cell with everything below it,
/// or left of it in its row, blocked.
pub fn enumerate_polyominoes(n_max: u32) -> Result<Vec<CellSet>, PolyominoError> {
    if n_max > POLYOMINO_LIMIT {
        return Err(PolyominoError::BoundExceeded { requested: n_max, limit: POLYOMINO_LIMIT });
    }
    fn allowed(p: GridPoint) -> bool {
        p.y > 0 || (p.y == 0 && p.x >= 0)
    }
    fn grow(
        n_max: usize,
        untried: &mut Vec<GridPoint>,
        lo: usize,
        seen: &mut HashSet<GridPoint>,
        current: &mut Vec<GridPoint>,
        out: &mut Vec<CellSet>,
    ) {
        let hi = untried.len();
        for i in lo..hi {
            let c = untried[i];
            current.push(c);
            out.push(CellSet { cells: current.iter().copied().collect() }.canonical());
            if current.len() < n_max {
                for q in c.neighbours() {
                    if allowed(q) && seen.insert(q) {
                        untried.push(q);
                    }
                }
                grow(n_max, untried, i + 1, seen, current, out);
                for q in untried.drain(hi..) {
                    seen.remove(&q);
                }
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n_max > 0 {
        let mut untried = vec![GridPoint::ORIGIN];
        let mut seen = HashSet::from([GridPoint::ORIGIN]);
        grow(n_max as usize, &mut untried, 0, &mut seen, &mut Vec::new(), &mut out);
    }
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Fixed hole-free polyominoes with `1..=n_max` cells.
pub fn enumerate_holefree(n_max: u32) -> Result<Vec<CellSet>, PolyominoError> {
    Ok(enumerate_polyominoes(n_max)?.into_iter().filter(CellSet::is_hole_free).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(pts: &[(i32, i32)]) -> CellSet {
        CellSet::new(pts.iter().map(|&(x, y)| GridPoint::new(x, y))).unwrap()
    }

    fn unit_square() -> DualGraph {
        DualGraph::new([
            LatticeEdge::east(0, 0),
            LatticeEdge::north(0, 0),
            LatticeEdge::east(0, 1),
            LatticeEdge::north(1, 0),
        ])
        .unwrap()
    }

    fn tangle_24() -> DualGraph {
        DualGraph::new([
            LatticeEdge::east(0, 0),
            LatticeEdge::north(0, 0),
            LatticeEdge::north(1, 0),
            LatticeEdge::east(0, 1),
            LatticeEdge::east(1, 1),
            LatticeEdge::north(1, 1),
            LatticeEdge::east(0, 2),
        ])
        .unwrap()
    }

    #[test]
    fn perimeter_and_holes() {
        let ring = cells(&[(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)]);
        assert!(!ring.is_hole_free());
        assert_eq!(ring.perimeter(), 16);
        let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(block.is_hole_free());
        assert_eq!(block.perimeter(), 8);
        assert_eq!(CellSet::new([]), Err(PolyominoError::Empty));
        assert_eq!(
            CellSet::new([GridPoint::new(0, 0), GridPoint::new(2, 0)]),
            Err(PolyominoError::Disconnected)
        );
    }

    #[test]
    fn chan_of_small_graphs() {
        assert_eq!(chan_polyomino(&DualGraph::circle()).len(), 1);
        let dumbbell = DualGraph::new([LatticeEdge::east(0, 0)]).unwrap();
        assert_eq!(chan_polyomino(&dumbbell), cells(&[(0, 0), (1, 0)]));
        let chan = chan_polyomino(&tangle_24());
        assert_eq!(chan, cells(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2)]));
        assert!(chan.is_hole_free());
    }

    #[test]
    fn fleron_of_small_graphs() {
        let dumbbell = DualGraph::new([LatticeEdge::east(0, 0)]).unwrap();
        let f = fleron_polyomino(&dumbbell);
        assert_eq!((f.len(), f.perimeter()), (3, 8));
        assert!(f.is_straight());
        let f = fleron_polyomino(&unit_square());
        assert_eq!(f.canonical(), cells(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)]));
        assert_eq!(f.perimeter(), 12);
        let f = fleron_polyomino(&DualGraph::circle());
        assert_eq!((f.len(), f.perimeter()), (1, 4));
        let f = fleron_polyomino(&tangle_24());
        assert_eq!((f.len(), f.perimeter()), (15, 24));
    }

    #[test]
    fn inverse_constructions() {
        let domino = cells(&[(0, 0), (1, 0)]);
        assert_eq!(chan_inverse_tree(&domino).unwrap().size(), 1);
        let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let t = chan_inverse_tree(&block).unwrap();
        assert_eq!((t.size(), t.class()), (3, 4));
        assert_eq!(chan_polyomino(&t), block);
        let full = chan_inverse_full(&block).unwrap();
        assert_eq!((full.size(), full.count_squares(), full.class()), (4, 1, 3));
        let tromino = cells(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(chan_inverse_tree(&tromino).unwrap().class(), 3);
        let mono = cells(&[(3, 4)]);
        let circle = chan_inverse_full(&mono).unwrap();
        assert!(circle.is_circle());
        assert_eq!(circle.class(), 1);
        assert_eq!(chan_polyomino(&circle), mono);
        assert_eq!(chan_inverse_full(&domino).unwrap().class(), 2);
        let ring = cells(&[(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)]);
        assert_eq!(chan_inverse_tree(&ring), Err(PolyominoError::HasHoles));
        assert_eq!(chan_inverse_full(&ring), Err(PolyominoError::HasHoles));
    }

    #[test]
    fn omega_rotation_cases() {
        let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        for c in block.cells() {
            let r = omega_rotation(&block, c).unwrap();
            assert_eq!((r.len(), r.perimeter()), (3, 8));
        }
        let l = cells(&[(0, 0), (1, 0), (0, 1)]);
        assert!(omega_rotation(&l, GridPoint::new(0, 0)).is_err());
        assert!(omega_rotation(&l, GridPoint::new(1, 1)).is_err());
        // P pentomino
        let p = cells(&[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)]);
        let r = omega_rotation(&p, GridPoint::new(1, 0)).unwrap();
        assert_eq!(r.perimeter(), p.perimeter());
        assert_eq!(r.perimeter(), 4 * r.len() - 2 * r.adjacencies());
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(enumerate_holefree(9), Err(PolyominoError::BoundExceeded { .. })));
        let two = enumerate_holefree(2).unwrap();
        assert_eq!(two.len(), 3);
        assert_eq!(two[1], cells(&[(0, 0), (0, 1)]));
        assert_eq!(two[2], cells(&[(0, 0), (1, 0)]));
    }
}
