//! Square-lattice primitives: points, unit edges, the eight symmetries of the
//! square and the canonical forms used for deduplication.

use std::fmt;

/// A point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GridPoint {
    pub x: i32,
    pub y: i32,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        GridPoint { x, y }
    }

    pub const fn offset(self, dx: i32, dy: i32) -> Self {
        GridPoint { x: self.x + dx, y: self.y + dy }
    }

    /// The four lattice neighbours in the order East, North, West, South.
    pub fn neighbours(self) -> [GridPoint; 4] {
        [
            self.offset(1, 0),
            self.offset(0, 1),
            self.offset(-1, 0),
            self.offset(0, -1),
        ]
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axis of a unit edge. `East < North` in the lattice order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    East,
    North,
}

/// A unit stick of the lattice, stored by its lower/left endpoint.
///
/// `East` joins `(x, y)`–`(x+1, y)`, `North` joins `(x, y)`–`(x, y+1)`.
/// The derived order is lexicographic on `(x, y, dir)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeEdge {
    pub origin: GridPoint,
    pub dir: Dir,
}

impl LatticeEdge {
    pub const fn new(x: i32, y: i32, dir: Dir) -> Self {
        LatticeEdge { origin: GridPoint::new(x, y), dir }
    }

    pub const fn east(x: i32, y: i32) -> Self {
        Self::new(x, y, Dir::East)
    }

    pub const fn north(x: i32, y: i32) -> Self {
        Self::new(x, y, Dir::North)
    }

    /// Builds the edge joining two lattice-adjacent points, in either order.
    pub fn between(a: GridPoint, b: GridPoint) -> Option<Self> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match (hi.x - lo.x, hi.y - lo.y) {
            (1, 0) => Some(LatticeEdge { origin: lo, dir: Dir::East }),
            (0, 1) => Some(LatticeEdge { origin: lo, dir: Dir::North }),
            _ => None,
        }
    }

    pub fn far_end(self) -> GridPoint {
        match self.dir {
            Dir::East => self.origin.offset(1, 0),
            Dir::North => self.origin.offset(0, 1),
        }
    }

    pub fn endpoints(self) -> [GridPoint; 2] {
        [self.origin, self.far_end()]
    }

    pub fn translate(self, dx: i32, dy: i32) -> Self {
        LatticeEdge { origin: self.origin.offset(dx, dy), dir: self.dir }
    }

    /// Midpoint in doubled coordinates; an East edge has odd x, a North edge odd y.
    pub fn doubled_midpoint(self) -> (i32, i32) {
        let (x, y) = (2 * self.origin.x, 2 * self.origin.y);
        match self.dir {
            Dir::East => (x + 1, y),
            Dir::North => (x, y + 1),
        }
    }

    /// Inverse of [`LatticeEdge::doubled_midpoint`]. Exactly one coordinate must be odd.
    pub fn from_doubled_midpoint(mx: i32, my: i32) -> Self {
        debug_assert!((mx & 1) != (my & 1));
        if mx & 1 == 1 {
            LatticeEdge::east(mx >> 1, my >> 1)
        } else {
            LatticeEdge::north(mx >> 1, my >> 1)
        }
    }
}

impl fmt::Display for LatticeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Dir::East => 'E',
            Dir::North => 'N',
        };
        write!(f, "{}{}", d, self.origin)
    }
}

/// An element of the dihedral group of the square: an optional reflection
/// in the y axis followed by `rotation` quarter turns counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    rotation: u8,
    reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { rotation: 0, reflect: false };

    pub const ROTATIONS: [Symmetry; 4] = [
        Symmetry { rotation: 0, reflect: false },
        Symmetry { rotation: 1, reflect: false },
        Symmetry { rotation: 2, reflect: false },
        Symmetry { rotation: 3, reflect: false },
    ];

    pub const ALL: [Symmetry; 8] = [
        Symmetry { rotation: 0, reflect: false },
        Symmetry { rotation: 1, reflect: false },
        Symmetry { rotation: 2, reflect: false },
        Symmetry { rotation: 3, reflect: false },
        Symmetry { rotation: 0, reflect: true },
        Symmetry { rotation: 1, reflect: true },
        Symmetry { rotation: 2, reflect: true },
        Symmetry { rotation: 3, reflect: true },
    ];

    pub const fn new(rotation: u8, reflect: bool) -> Self {
        Symmetry { rotation: rotation % 4, reflect }
    }

    pub fn rotation(self) -> u8 {
        self.rotation
    }

    pub fn is_reflection(self) -> bool {
        self.reflect
    }

    /// `self.then(t)` is the symmetry "apply `self`, then `t`".
    pub fn then(self, t: Symmetry) -> Symmetry {
        // R^a F^b R^c F^d = R^(a + (-1)^b c) F^(b xor d)
        let c = if t.reflect { (4 - self.rotation) % 4 } else { self.rotation };
        Symmetry {
            rotation: (t.rotation + c) % 4,
            reflect: t.reflect ^ self.reflect,
        }
    }

    pub fn inverse(self) -> Symmetry {
        if self.reflect {
            self
        } else {
            Symmetry { rotation: (4 - self.rotation) % 4, reflect: false }
        }
    }

    /// Acts on an arbitrary integer point (about the origin).
    pub fn apply_xy(self, x: i32, y: i32) -> (i32, i32) {
        let (mut x, mut y) = if self.reflect { (-x, y) } else { (x, y) };
        for _ in 0..self.rotation {
            (x, y) = (-y, x);
        }
        (x, y)
    }

    pub fn apply_point(self, p: GridPoint) -> GridPoint {
        let (x, y) = self.apply_xy(p.x, p.y);
        GridPoint::new(x, y)
    }

    pub fn apply_edge(self, e: LatticeEdge) -> LatticeEdge {
        let (mx, my) = e.doubled_midpoint();
        let (mx, my) = self.apply_xy(mx, my);
        LatticeEdge::from_doubled_midpoint(mx, my)
    }
}

/// Equivalence used when counting: translations combined with a subgroup of the
/// square's symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryGroup {
    /// Translations only (fixed objects).
    Translations,
    /// Translations and rotations (one-sided objects).
    Rotations,
    /// Translations, rotations and reflections (free objects).
    Full,
}

impl SymmetryGroup {
    pub fn elements(self) -> &'static [Symmetry] {
        match self {
            SymmetryGroup::Translations => &Symmetry::ALL[..1],
            SymmetryGroup::Rotations => &Symmetry::ROTATIONS,
            SymmetryGroup::Full => &Symmetry::ALL,
        }
    }
}

/// Image of an edge set under a symmetry (not translated back).
pub fn apply_symmetry(edges: &[LatticeEdge], s: Symmetry) -> Vec<LatticeEdge> {
    edges.iter().map(|&e| s.apply_edge(e)).collect()
}

/// Lower-left corner of the bounding box of the edges' endpoints.
pub fn min_corner(edges: &[LatticeEdge]) -> Option<GridPoint> {
    // the lower/left endpoint carries both minima
    let x = edges.iter().map(|e| e.origin.x).min()?;
    let y = edges.iter().map(|e| e.origin.y).min()?;
    Some(GridPoint::new(x, y))
}

/// Translates the bounding box corner to the origin and sorts the edges.
/// Two edge sets have equal canonical forms iff they are translates.
pub fn canonical_form(edges: &[LatticeEdge]) -> Vec<LatticeEdge> {
    let Some(corner) = min_corner(edges) else {
        return Vec::new();
    };
    let mut out: Vec<LatticeEdge> = edges
        .iter()
        .map(|e| e.translate(-corner.x, -corner.y))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Lexicographically least canonical form over the images under `group`.
pub fn canonical_under(edges: &[LatticeEdge], group: SymmetryGroup) -> Vec<LatticeEdge> {
    group
        .elements()
        .iter()
        .map(|&s| canonical_form(&apply_symmetry(edges, s)))
        .min()
        .unwrap_or_default()
}

/// Symmetries fixing the edge set up to translation.
pub fn stabilizer(edges: &[LatticeEdge]) -> Vec<Symmetry> {
    let base = canonical_form(edges);
    Symmetry::ALL
        .iter()
        .copied()
        .filter(|&s| canonical_form(&apply_symmetry(edges, s)) == base)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn rotating_an_east_edge_gives_a_north_edge() {
        let img = apply_symmetry(&[LatticeEdge::east(0, 0)], Symmetry::new(1, false));
        assert_eq!(canonical_form(&img), vec![LatticeEdge::north(0, 0)]);
    }

    #[test]
    fn unit_square_is_fully_symmetric() {
        let sq = [
            LatticeEdge::east(0, 0),
            LatticeEdge::north(0, 0),
            LatticeEdge::east(0, 1),
            LatticeEdge::north(1, 0),
        ];
        let base = canonical_form(&sq);
        for s in Symmetry::ALL {
            assert_eq!(canonical_form(&apply_symmetry(&sq, s)), base);
        }
        assert_eq!(stabilizer(&sq).len(), 8);
        assert_eq!(
            canonical_under(&sq, SymmetryGroup::Rotations),
            canonical_under(&sq, SymmetryGroup::Full)
        );
    }

    #[test]
    fn l_shape_has_four_images() {
        let l = [LatticeEdge::east(0, 0), LatticeEdge::north(1, 0)];
        let images: BTreeSet<_> = Symmetry::ALL
            .iter()
            .map(|&s| canonical_form(&apply_symmetry(&l, s)))
            .collect();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn canonical_form_translates_to_origin() {
        assert_eq!(
            canonical_form(&[LatticeEdge::east(5, 7)]),
            vec![LatticeEdge::east(0, 0)]
        );
        let a = canonical_form(&[LatticeEdge::east(0, 0), LatticeEdge::north(1, 0)]);
        let b = canonical_form(&[LatticeEdge::north(4, 3), LatticeEdge::east(3, 3)]);
        assert_eq!(a, b);
        let sq = canonical_form(&[
            LatticeEdge::east(2, 2),
            LatticeEdge::north(2, 2),
            LatticeEdge::east(2, 3),
            LatticeEdge::north(3, 2),
        ]);
        assert_eq!(sq.len(), 4);
        assert_eq!(sq[0], LatticeEdge::east(0, 0));
    }

    #[test]
    fn dumbbells_share_a_one_sided_form() {
        let h = canonical_under(&[LatticeEdge::east(0, 0)], SymmetryGroup::Rotations);
        let v = canonical_under(&[LatticeEdge::north(3, -2)], SymmetryGroup::Rotations);
        assert_eq!(h, v);
    }

    #[test]
    fn chiral_pair_differs_only_under_reflection() {
        // S and Z shaped 4-sticks
        let s = [
            LatticeEdge::east(0, 0),
            LatticeEdge::north(1, 0),
            LatticeEdge::north(1, 1),
            LatticeEdge::east(1, 2),
        ];
        let z: Vec<_> = apply_symmetry(&s, Symmetry::new(0, true));
        assert_ne!(
            canonical_under(&s, SymmetryGroup::Rotations),
            canonical_under(&z, SymmetryGroup::Rotations)
        );
        assert_eq!(
            canonical_under(&s, SymmetryGroup::Full),
            canonical_under(&z, SymmetryGroup::Full)
        );
    }

    #[test]
    fn composition_table_is_a_group() {
        for a in Symmetry::ALL {
            assert_eq!(a.then(a.inverse()), Symmetry::IDENTITY);
            for b in Symmetry::ALL {
                for p in [(1, 0), (2, 5), (-3, 1)] {
                    let (x, y) = a.apply_xy(p.0, p.1);
                    assert_eq!(b.apply_xy(x, y), a.then(b).apply_xy(p.0, p.1));
                }
            }
        }
    }

    #[test]
    fn edge_between_points() {
        let a = GridPoint::new(1, 1);
        assert_eq!(LatticeEdge::between(a, a.offset(-1, 0)), Some(LatticeEdge::east(0, 1)));
        assert_eq!(LatticeEdge::between(a, a.offset(0, 1)), Some(LatticeEdge::north(1, 1)));
        assert_eq!(LatticeEdge::between(a, a.offset(1, 1)), None);
    }
}
