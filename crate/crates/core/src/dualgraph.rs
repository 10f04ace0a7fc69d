//! Tangle dual graphs: connected polysticks whose bounded faces are all unit
//! squares, together with the size/class/area relations they satisfy.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

use thiserror::Error;

use crate::grid::{canonical_form, Dir, GridPoint, LatticeEdge};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge set is not connected")]
    DisconnectedInput,
    #[error("edge {0} appears more than once")]
    DuplicateEdge(LatticeEdge),
    #[error("polystick has a bounded face of length {0}; only unit squares are allowed")]
    NonSquareFace(usize),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
}

/// Which validity test to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidityCheck {
    /// Walk every face of the plane embedding; bounded faces must have length 4.
    #[default]
    FaceWalk,
    /// Build a spanning tree and require every fundamental cycle to be a 4-cycle.
    FundamentalCycles,
}

/// The dual graph of a planar Tangle.
///
/// Edges are kept sorted. The circle has no edges and a single vertex, stored in
/// `anchor`; for every other graph `anchor` is the smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualGraph {
    edges: Vec<LatticeEdge>,
    anchor: GridPoint,
}

impl DualGraph {
    /// The one-vertex graph of the circle.
    pub fn circle_at(p: GridPoint) -> Self {
        DualGraph { edges: Vec::new(), anchor: p }
    }

    pub fn circle() -> Self {
        Self::circle_at(GridPoint::ORIGIN)
    }

    /// Validates `edges` (face walk) and builds the graph.
    pub fn new(edges: impl IntoIterator<Item = LatticeEdge>) -> Result<Self, GraphError> {
        let mut edges: Vec<LatticeEdge> = edges.into_iter().collect();
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        if edges.is_empty() {
            return Ok(Self::circle());
        }
        check_valid(&edges)?;
        let anchor = edges[0].origin;
        Ok(DualGraph { edges, anchor })
    }

    /// Builds a graph from edges already known to be a valid, sorted, duplicate-free set.
    pub(crate) fn from_sorted_unchecked(edges: Vec<LatticeEdge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let anchor = edges.first().map(|e| e.origin).unwrap_or_default();
        DualGraph { edges, anchor }
    }

    pub fn edges(&self) -> &[LatticeEdge] {
        &self.edges
    }

    /// Number of edges `m`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_circle(&self) -> bool {
        self.edges.is_empty()
    }

    /// A vertex of the graph; the circle's only vertex.
    pub fn anchor(&self) -> GridPoint {
        self.anchor
    }

    /// Sorted vertex list. The circle has exactly one vertex.
    pub fn vertices(&self) -> Vec<GridPoint> {
        if self.edges.is_empty() {
            return vec![self.anchor];
        }
        let set: BTreeSet<GridPoint> = self.edges.iter().flat_map(|e| e.endpoints()).collect();
        set.into_iter().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    /// Number of unit squares with all four sides present.
    pub fn count_squares(&self) -> usize {
        square_corners(&self.edges).len()
    }

    /// Lower-left corners of the complete unit squares.
    pub fn squares(&self) -> Vec<GridPoint> {
        square_corners(&self.edges)
    }

    /// `m − 2k + 1`; the Tangle has `4c` links.
    pub fn class(&self) -> usize {
        class_of(self.size(), self.count_squares())
    }

    pub fn translate(&self, dx: i32, dy: i32) -> Self {
        DualGraph {
            edges: self.edges.iter().map(|e| e.translate(dx, dy)).collect(),
            anchor: self.anchor.offset(dx, dy),
        }
    }

    /// Translate of this graph whose bounding box corner is the origin.
    pub fn canonical(&self) -> Self {
        if self.edges.is_empty() {
            return Self::circle();
        }
        Self::from_sorted_unchecked(canonical_form(&self.edges))
    }

    pub fn contains_edge(&self, e: &LatticeEdge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn is_tree(&self) -> bool {
        self.count_squares() == 0
    }
}

/// `c = m − 2k + 1`.
pub fn class_of(size: usize, squares: usize) -> usize {
    size + 1 - 2 * squares
}

/// Sizes a class-`c` dual graph can have: `(c − 1, ⌊(c² − 1)/2⌋)`.
pub fn edge_bounds(class: u32) -> (u32, u32) {
    assert!(class >= 1, "class must be positive");
    (class - 1, (class * class - 1) / 2)
}

/// Upper bound `⌊(m + 1 − √(2m + 1))/2⌋` on the squares of an `m`-edge dual graph.
pub fn max_squares(size: u32) -> u32 {
    // largest k with m + 1 − 2k ≥ √(2m + 1), in integers
    let (r, d) = (size as u64 + 1, 2 * size as u64 + 1);
    let mut k = 0u64;
    while 2 * (k + 1) <= r && (r - 2 * (k + 1)).pow(2) >= d {
        k += 1;
    }
    k as u32
}

/// Enclosed area `(4m + π) r²` of a size-`m` Tangle with arc radius `r`.
pub fn area(size: u32, radius: f64) -> Result<f64, GraphError> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(GraphError::NonPositiveRadius(radius));
    }
    Ok((4.0 * size as f64 + PI) * radius * radius)
}

pub(crate) fn square_corners(edges: &[LatticeEdge]) -> Vec<GridPoint> {
    let set: HashSet<LatticeEdge> = edges.iter().copied().collect();
    let mut out: Vec<GridPoint> = edges
        .iter()
        .filter(|e| e.dir == Dir::East)
        .map(|e| e.origin)
        .filter(|p| {
            set.contains(&LatticeEdge::north(p.x, p.y))
                && set.contains(&LatticeEdge::north(p.x + 1, p.y))
                && set.contains(&LatticeEdge::east(p.x, p.y + 1))
        })
        .collect();
    out.sort_unstable();
    out
}

type Adjacency = BTreeMap<GridPoint, [bool; 4]>;

/// Direction index 0..4 = E, N, W, S (counterclockwise by angle).
fn adjacency(edges: &[LatticeEdge]) -> Adjacency {
    let mut adj: Adjacency = BTreeMap::new();
    for e in edges {
        let (a, b) = (e.origin, e.far_end());
        let (da, db) = match e.dir {
            Dir::East => (0, 2),
            Dir::North => (1, 3),
        };
        adj.entry(a).or_default()[da] = true;
        adj.entry(b).or_default()[db] = true;
    }
    adj
}

fn step(p: GridPoint, dir: usize) -> GridPoint {
    p.neighbours()[dir]
}

fn is_connected(adj: &Adjacency) -> bool {
    let Some((&start, _)) = adj.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for (d, &has) in adj[&p].iter().enumerate() {
            if has {
                let q = step(p, d);
                if seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
    }
    seen.len() == adj.len()
}

/// Face structure of a connected polystick's plane embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSummary {
    /// Boundary lengths of the bounded faces, ascending.
    pub bounded: Vec<usize>,
    /// Boundary length of the unbounded face.
    pub outer: usize,
}

/// Traces every face by the rotation system: arriving at a vertex, leave along the
/// clockwise successor of the edge just used. Bounded faces come out
/// counterclockwise (positive area), the outer face clockwise.
pub fn face_walk(edges: &[LatticeEdge]) -> Result<FaceSummary, GraphError> {
    let adj = adjacency(edges);
    if !is_connected(&adj) {
        return Err(GraphError::DisconnectedInput);
    }
    if edges.is_empty() {
        return Ok(FaceSummary { bounded: Vec::new(), outer: 0 });
    }
    let mut used: HashSet<(GridPoint, usize)> = HashSet::new();
    let mut bounded = Vec::new();
    let mut outer = None;
    for (&p, dirs) in &adj {
        for (d, &has) in dirs.iter().enumerate() {
            if !has || used.contains(&(p, d)) {
                continue;
            }
            let (mut at, mut dir) = (p, d);
            let mut len = 0usize;
            let mut twice_area: i64 = 0;
            loop {
                used.insert((at, dir));
                let next = step(at, dir);
                twice_area += at.x as i64 * next.y as i64 - next.x as i64 * at.y as i64;
                len += 1;
                let back = (dir + 2) % 4;
                // clockwise successor of `back` among the edges at `next`
                let nd = (1..=4)
                    .map(|i| (back + 4 - i) % 4)
                    .find(|&c| adj[&next][c])
                    .expect("arrival edge is present");
                at = next;
                dir = nd;
                if at == p && dir == d {
                    break;
                }
            }
            if twice_area > 0 {
                bounded.push(len);
            } else {
                debug_assert!(outer.is_none(), "a connected graph has one outer face");
                outer = Some(len);
            }
        }
    }
    bounded.sort_unstable();
    Ok(FaceSummary { bounded, outer: outer.unwrap_or(0) })
}

/// Whether a connected polystick is a Tangle dual graph (face-walk test).
pub fn is_valid(edges: &[LatticeEdge]) -> Result<bool, GraphError> {
    is_valid_with(edges, ValidityCheck::FaceWalk)
}

pub fn is_valid_with(edges: &[LatticeEdge], method: ValidityCheck) -> Result<bool, GraphError> {
    match method {
        ValidityCheck::FaceWalk => Ok(face_walk(edges)?.bounded.iter().all(|&l| l == 4)),
        ValidityCheck::FundamentalCycles => fundamental_cycles_are_squares(edges),
    }
}

fn check_valid(edges: &[LatticeEdge]) -> Result<(), GraphError> {
    let faces = face_walk(edges)?;
    match faces.bounded.iter().find(|&&l| l != 4) {
        Some(&l) => Err(GraphError::NonSquareFace(l)),
        None => Ok(()),
    }
}

/// Lengths of the fundamental cycles of the spanning tree chosen by
/// [`fundamental_cycles_are_squares`].
///
/// The tree is chosen by peeling complete squares: while some intact square has
/// a side that is neither protected nor shared with another intact square, drop
/// that side from the tree and protect the square's other three sides. A
/// breadth-first tree of what remains completes the spanning tree.
pub fn fundamental_cycle_lengths(edges: &[LatticeEdge]) -> Result<Vec<usize>, GraphError> {
    let adj = adjacency(edges);
    if !is_connected(&adj) {
        return Err(GraphError::DisconnectedInput);
    }
    let mut present: BTreeSet<LatticeEdge> = edges.iter().copied().collect();
    let mut protected: HashSet<LatticeEdge> = HashSet::new();
    let mut peeled: Vec<LatticeEdge> = Vec::new();

    let sides = |p: GridPoint| {
        [
            LatticeEdge::east(p.x, p.y),
            LatticeEdge::north(p.x + 1, p.y),
            LatticeEdge::east(p.x, p.y + 1),
            LatticeEdge::north(p.x, p.y),
        ]
    };
    loop {
        let snapshot: Vec<LatticeEdge> = present.iter().copied().collect();
        let intact = square_corners(&snapshot);
        let mut owners: HashMap<LatticeEdge, usize> = HashMap::new();
        for &sq in &intact {
            for s in sides(sq) {
                *owners.entry(s).or_default() += 1;
            }
        }
        let pick = intact.iter().find_map(|&sq| {
            sides(sq)
                .into_iter()
                .find(|s| owners[s] == 1 && !protected.contains(s))
                .map(|s| (sq, s))
        });
        let Some((sq, side)) = pick else { break };
        present.remove(&side);
        peeled.push(side);
        protected.extend(sides(sq).into_iter().filter(|s| *s != side));
    }

    // breadth-first spanning tree of the remaining edges
    let rest: Vec<LatticeEdge> = present.iter().copied().collect();
    let rest_adj = adjacency(&rest);
    let root = *rest_adj.keys().next().unwrap_or(&GridPoint::ORIGIN);
    let mut parent: HashMap<GridPoint, Option<GridPoint>> = HashMap::from([(root, None)]);
    let mut depth: HashMap<GridPoint, usize> = HashMap::from([(root, 0)]);
    let mut tree: HashSet<LatticeEdge> = HashSet::new();
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        let Some(dirs) = rest_adj.get(&p) else { continue };
        for (d, &has) in dirs.iter().enumerate() {
            if has {
                let q = step(p, d);
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(q) {
                    slot.insert(Some(p));
                    depth.insert(q, depth[&p] + 1);
                    tree.insert(LatticeEdge::between(p, q).expect("adjacent"));
                    queue.push_back(q);
                }
            }
        }
    }

    let path_len = |mut a: GridPoint, mut b: GridPoint| {
        let mut len = 0;
        while depth[&a] > depth[&b] {
            a = parent[&a].expect("non-root");
            len += 1;
        }
        while depth[&b] > depth[&a] {
            b = parent[&b].expect("non-root");
            len += 1;
        }
        while a != b {
            a = parent[&a].expect("non-root");
            b = parent[&b].expect("non-root");
            len += 2;
        }
        len
    };
    let mut lengths: Vec<usize> = edges
        .iter()
        .filter(|e| !tree.contains(e))
        .map(|e| path_len(e.origin, e.far_end()) + 1)
        .collect();
    lengths.sort_unstable();
    Ok(lengths)
}

/// Validity via a fundamental cycle basis: true iff every fundamental cycle of the
/// peeling spanning tree is a 4-cycle (hence a unit square).
pub fn fundamental_cycles_are_squares(edges: &[LatticeEdge]) -> Result<bool, GraphError> {
    Ok(fundamental_cycle_lengths(edges)?.iter().all(|&l| l == 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<LatticeEdge> {
        vec![
            LatticeEdge::east(0, 0),
            LatticeEdge::north(0, 0),
            LatticeEdge::east(0, 1),
            LatticeEdge::north(1, 0),
        ]
    }

    fn rectangle_2x1(with_chord: bool) -> Vec<LatticeEdge> {
        let mut e = vec![
            LatticeEdge::east(0, 0),
            LatticeEdge::east(1, 0),
            LatticeEdge::east(0, 1),
            LatticeEdge::east(1, 1),
            LatticeEdge::north(0, 0),
            LatticeEdge::north(2, 0),
        ];
        if with_chord {
            e.push(LatticeEdge::north(1, 0));
        }
        e
    }

    fn block(w: i32, h: i32) -> Vec<LatticeEdge> {
        let mut e = Vec::new();
        for x in 0..=w {
            for y in 0..=h {
                if x < w {
                    e.push(LatticeEdge::east(x, y));
                }
                if y < h {
                    e.push(LatticeEdge::north(x, y));
                }
            }
        }
        e
    }

    #[test]
    fn trees_are_valid() {
        let path = [LatticeEdge::east(0, 0), LatticeEdge::east(1, 0), LatticeEdge::north(2, 0)];
        assert_eq!(is_valid(&path), Ok(true));
        assert_eq!(is_valid_with(&path, ValidityCheck::FundamentalCycles), Ok(true));
    }

    #[test]
    fn chordless_six_cycle_is_invalid() {
        let r = rectangle_2x1(false);
        assert_eq!(is_valid(&r), Ok(false));
        assert_eq!(is_valid_with(&r, ValidityCheck::FundamentalCycles), Ok(false));
        assert_eq!(DualGraph::new(r), Err(GraphError::NonSquareFace(6)));
    }

    #[test]
    fn rectangle_with_chord_is_valid_class_four() {
        let g = DualGraph::new(rectangle_2x1(true)).unwrap();
        assert_eq!(g.size(), 7);
        assert_eq!(g.count_squares(), 2);
        assert_eq!(g.class(), 4);
        assert_eq!(
            is_valid_with(g.edges(), ValidityCheck::FundamentalCycles),
            Ok(true)
        );
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let e = [LatticeEdge::east(0, 0), LatticeEdge::east(5, 5)];
        assert_eq!(is_valid(&e), Err(GraphError::DisconnectedInput));
        assert_eq!(
            is_valid_with(&e, ValidityCheck::FundamentalCycles),
            Err(GraphError::DisconnectedInput)
        );
        assert_eq!(DualGraph::new(e), Err(GraphError::DisconnectedInput));
    }

    #[test]
    fn duplicate_edges_are_rejected() {
        let e = [LatticeEdge::east(0, 0), LatticeEdge::east(0, 0)];
        assert!(matches!(DualGraph::new(e), Err(GraphError::DuplicateEdge(_))));
    }

    #[test]
    fn square_counts_and_classes() {
        let sq = DualGraph::new(unit_square()).unwrap();
        assert_eq!(sq.count_squares(), 1);
        assert_eq!(sq.class(), 3);
        let b = DualGraph::new(block(2, 2)).unwrap();
        assert_eq!(b.size(), 12);
        assert_eq!(b.count_squares(), 4);
        assert_eq!(b.class(), 5);
        assert_eq!(face_walk(b.edges()).unwrap().bounded, vec![4, 4, 4, 4]);
        assert_eq!(DualGraph::circle().class(), 1);
        assert_eq!(DualGraph::circle().vertex_count(), 1);
        let dumbbell = DualGraph::new([LatticeEdge::east(0, 0)]).unwrap();
        assert_eq!(dumbbell.class(), 2);
    }

    #[test]
    fn euler_relation_on_examples() {
        for e in [unit_square(), rectangle_2x1(true), block(2, 2), block(3, 1)] {
            let g = DualGraph::new(e).unwrap();
            assert_eq!(g.vertex_count() + g.count_squares(), g.size() + 1);
        }
    }

    #[test]
    fn ring_with_inner_stick_is_invalid() {
        let mut e: Vec<_> = block(2, 2)
            .into_iter()
            .filter(|e| !(e.origin == GridPoint::new(1, 1) || *e == LatticeEdge::east(0, 1) || *e == LatticeEdge::north(1, 0)))
            .collect();
        // 2x2 ring (8 edges) plus one stick poking in from the left
        e.push(LatticeEdge::east(0, 1));
        assert_eq!(e.len(), 9);
        assert_eq!(is_valid(&e), Ok(false));
    }

    #[test]
    fn edge_bound_values() {
        assert_eq!(edge_bounds(1), (0, 0));
        assert_eq!(edge_bounds(4), (3, 7));
        assert_eq!(edge_bounds(5), (4, 12));
        assert_eq!(edge_bounds(11), (10, 60));
    }

    #[test]
    fn max_squares_values() {
        assert_eq!(max_squares(0), 0);
        assert_eq!(max_squares(4), 1);
        assert_eq!(max_squares(7), 2);
        assert_eq!(max_squares(12), 4);
        // brute force over the defining inequality 2k + 2√k ≤ m
        for m in 0..500u32 {
            let f = ((m as f64 + 1.0 - (2.0 * m as f64 + 1.0).sqrt()) / 2.0).floor() as u32;
            assert_eq!(max_squares(m), f, "m = {m}");
        }
    }

    #[test]
    fn area_formula() {
        assert!((area(0, 1.0).unwrap() - PI).abs() < 1e-12);
        assert!((area(6, 1.0).unwrap() - (24.0 + PI)).abs() < 1e-12);
        assert!((area(5, 2.0).unwrap() - (80.0 + 4.0 * PI)).abs() < 1e-12);
        assert_eq!(area(1, 0.0), Err(GraphError::NonPositiveRadius(0.0)));
        assert!(area(1, -1.0).is_err());
    }

    #[test]
    fn plus_of_five_squares_has_no_square_fundamental_basis() {
        // centre square does not touch the outer face, so no spanning tree makes
        // every fundamental cycle a square even though the graph is valid
        let mut e = unit_square();
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            e.extend(unit_square().into_iter().map(|s| s.translate(dx, dy)));
        }
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 16);
        assert_eq!(is_valid(&e), Ok(true));
        assert_eq!(is_valid_with(&e, ValidityCheck::FundamentalCycles), Ok(false));
    }

    #[test]
    fn removing_a_leaf_edge_drops_class_by_one() {
        let g = DualGraph::new([LatticeEdge::east(0, 0), LatticeEdge::north(1, 0), LatticeEdge::east(1, 1)]).unwrap();
        let h = DualGraph::new([LatticeEdge::east(0, 0), LatticeEdge::north(1, 0)]).unwrap();
        assert_eq!(g.class(), h.class() + 1);
    }
}
