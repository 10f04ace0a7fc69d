//! Exhaustive generation of Tangle dual graphs.
//!
//! Polysticks are grown Redelmeier-style from a root edge at the origin. Every
//! edge lexicographically smaller than the root is blocked, so each fixed
//! polystick is produced exactly once, rooted at its smallest edge. Vertex and
//! complete-square counts are kept incrementally; a polystick is a dual graph
//! exactly when its bounded faces (`m − v + 1` of them) are all squares, i.e.
//! when `v + k = m + 1`.
//!
//! One-sided and free counts come from orbit representatives: a fixed graph
//! is counted when its own canonical form is the least canonical form among
//! its rotated (or rotated and reflected) images. Every orbit has exactly one
//! such member, so no table of seen forms is needed.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualgraph::{self, edge_bounds, DualGraph};
use crate::grid::{self, canonical_form, canonical_under, Dir, LatticeEdge, Symmetry, SymmetryGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("brute-force oracle supports sizes up to {limit}, got {requested}")]
    BoundExceeded { requested: u32, limit: u32 },
    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
}

/// Counts of one `(m, c)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub fixed: u64,
    pub one_sided: u64,
    pub free: u64,
}

impl Counts {
    pub const ONE: Counts = Counts { fixed: 1, one_sided: 1, free: 1 };

    pub fn get(&self, kind: Kind) -> u64 {
        match kind {
            Kind::Fixed => self.fixed,
            Kind::OneSided => self.one_sided,
            Kind::Free => self.free,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.fixed == 0 && self.one_sided == 0 && self.free == 0
    }
}

impl std::ops::AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        self.fixed += o.fixed;
        self.one_sided += o.one_sided;
        self.free += o.free;
    }
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(mut self, o: Counts) -> Counts {
        self += o;
        self
    }
}

/// Equivalence used for a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Fixed,
    OneSided,
    Free,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Fixed, Kind::OneSided, Kind::Free];

    pub fn group(self) -> SymmetryGroup {
        match self {
            Kind::Fixed => SymmetryGroup::Translations,
            Kind::OneSided => SymmetryGroup::Rotations,
            Kind::Free => SymmetryGroup::Full,
        }
    }
}

/// Dual-graph counts by size `m` and class `c`, complete for `m ≤ max_size`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    max_size: u32,
    entries: BTreeMap<(u32, u32), Counts>,
}

impl CountTable {
    pub fn new(max_size: u32) -> Self {
        CountTable { max_size, entries: BTreeMap::new() }
    }

    pub fn max_size(&self) -> u32 {
        self.max_size
    }

    pub fn add(&mut self, size: u32, class: u32, counts: Counts) {
        if counts.is_zero() {
            return;
        }
        *self.entries.entry((size, class)).or_default() += counts;
    }

    pub fn get(&self, size: u32, class: u32) -> Counts {
        self.entries.get(&(size, class)).copied().unwrap_or_default()
    }

    /// Nonzero cells in `(m, c)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), Counts)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a_i(m)`: totals over all classes at size `m`.
    pub fn size_total(&self, size: u32) -> Counts {
        self.entries
            .range((size, 0)..=(size, u32::MAX))
            .fold(Counts::default(), |acc, (_, &c)| acc + c)
    }

    /// Totals over the enumerated sizes at class `c`; only the full count when
    /// [`CountTable::is_class_complete`] holds.
    pub fn class_total(&self, class: u32) -> Counts {
        self.entries
            .iter()
            .filter(|((_, c), _)| *c == class)
            .fold(Counts::default(), |acc, (_, &c)| acc + c)
    }

    pub fn is_class_complete(&self, class: u32) -> bool {
        class >= 1 && edge_bounds(class).1 <= self.max_size
    }

    /// Largest `c` whose every size was enumerated.
    pub fn max_complete_class(&self) -> u32 {
        (1..).take_while(|&c| self.is_class_complete(c)).last().unwrap_or(0)
    }

    pub fn class_count(&self, class: u32) -> ClassCount {
        let by_size = self
            .entries
            .iter()
            .filter(|((_, c), _)| *c == class)
            .map(|(&(m, _), &v)| (m, v))
            .collect();
        ClassCount {
            class,
            counts: self.class_total(class),
            by_size,
            complete: self.is_class_complete(class),
            max_size: self.max_size,
        }
    }

    /// Entrywise sum; the bound is the smaller of the two.
    pub fn merge(mut self, other: CountTable) -> CountTable {
        self.max_size = self.max_size.min(other.max_size);
        for (k, v) in other.entries {
            *self.entries.entry(k).or_default() += v;
        }
        self
    }
}

/// Counts of one class across all sizes that were enumerated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub class: u32,
    pub counts: Counts,
    pub by_size: BTreeMap<u32, Counts>,
    /// All sizes up to `⌊(c² − 1)/2⌋` were enumerated.
    pub complete: bool,
    pub max_size: u32,
}

/// A polystick reached by the search.
#[derive(Debug, Clone, Copy)]
pub struct Node<'a> {
    /// Edges in the order they were added; the first is the root.
    pub edges: &'a [LatticeEdge],
    pub vertices: usize,
    pub squares: usize,
}

impl Node<'_> {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// All bounded faces are unit squares.
    pub fn is_dual_graph(&self) -> bool {
        self.vertices + self.squares == self.edges.len() + 1
    }

    pub fn class(&self) -> usize {
        dualgraph::class_of(self.edges.len(), self.squares)
    }
}

/// Receives every polystick of the search (valid or not).
pub trait Visitor {
    fn visit(&mut self, node: &Node<'_>);
}

impl<F: FnMut(&Node<'_>)> Visitor for F {
    fn visit(&mut self, node: &Node<'_>) {
        self(node)
    }
}

/// A subtree of the search: the root axis and the untried-list index chosen at
/// each level.
#[derive(Debug, Clone)]
struct Task {
    root: Dir,
    path: Vec<u32>,
}

/// Redelmeier search state over a padded window of the lattice.
struct Search {
    max: usize,
    off: i32,
    height: i32,
    present: Vec<bool>,
    seen: Vec<bool>,
    degree: Vec<u8>,
    untried: Vec<u32>,
    stack: Vec<LatticeEdge>,
    vertices: usize,
    squares: usize,
    path: Vec<u32>,
    split_at: usize,
    tasks: Vec<Task>,
    root: Dir,
}

impl Search {
    fn new(max: usize, root: Dir) -> Self {
        let m = max as i32;
        // x in [-1, m + 1], y in [-m - 1, m + 1]
        let height = 2 * m + 3;
        let cells = ((m + 3) * height) as usize;
        let mut s = Search {
            max,
            off: m + 1,
            height,
            present: vec![false; cells * 2],
            seen: vec![false; cells * 2],
            degree: vec![0; cells],
            untried: Vec::with_capacity(6 * max + 2),
            stack: Vec::with_capacity(max),
            vertices: 0,
            squares: 0,
            path: Vec::with_capacity(max),
            split_at: usize::MAX,
            tasks: Vec::new(),
            root,
        };
        for x in -1..=m + 1 {
            for y in -m - 1..=m + 1 {
                for dir in [Dir::East, Dir::North] {
                    let e = LatticeEdge::new(x, y, dir);
                    if e < LatticeEdge::new(0, 0, root) {
                        let i = s.edge_index(e);
                        s.seen[i] = true;
                    }
                }
            }
        }
        let r = s.edge_index(LatticeEdge::new(0, 0, root)) as u32;
        s.seen[r as usize] = true;
        s.untried.push(r);
        s
    }

    #[inline]
    fn cell(&self, x: i32, y: i32) -> usize {
        ((x + 1) * self.height + (y + self.off)) as usize
    }

    #[inline]
    fn edge_index(&self, e: LatticeEdge) -> usize {
        self.cell(e.origin.x, e.origin.y) * 2 + (e.dir == Dir::North) as usize
    }

    #[inline]
    fn edge_at(&self, idx: u32) -> LatticeEdge {
        let cell = (idx / 2) as i32;
        let x = cell / self.height - 1;
        let y = cell % self.height - self.off;
        LatticeEdge::new(x, y, if idx & 1 == 1 { Dir::North } else { Dir::East })
    }

    #[inline]
    fn has(&self, x: i32, y: i32, dir: Dir) -> bool {
        self.present[self.cell(x, y) * 2 + (dir == Dir::North) as usize]
    }

    #[inline]
    fn square_at(&self, x: i32, y: i32) -> bool {
        self.has(x, y, Dir::East)
            && self.has(x, y + 1, Dir::East)
            && self.has(x, y, Dir::North)
            && self.has(x + 1, y, Dir::North)
    }

    /// Squares that `e` would complete or currently completes.
    #[inline]
    fn squares_through(&self, e: LatticeEdge) -> usize {
        let (x, y) = (e.origin.x, e.origin.y);
        match e.dir {
            Dir::East => self.square_at(x, y - 1) as usize + self.square_at(x, y) as usize,
            Dir::North => self.square_at(x - 1, y) as usize + self.square_at(x, y) as usize,
        }
    }

    fn place(&mut self, idx: u32) {
        let e = self.edge_at(idx);
        self.present[idx as usize] = true;
        self.squares += self.squares_through(e);
        for p in e.endpoints() {
            let c = self.cell(p.x, p.y);
            if self.degree[c] == 0 {
                self.vertices += 1;
            }
            self.degree[c] += 1;
        }
        self.stack.push(e);
    }

    fn unplace(&mut self, idx: u32) {
        let e = self.stack.pop().expect("placed edge");
        self.squares -= self.squares_through(e);
        self.present[idx as usize] = false;
        for p in e.endpoints() {
            let c = self.cell(p.x, p.y);
            self.degree[c] -= 1;
            if self.degree[c] == 0 {
                self.vertices -= 1;
            }
        }
    }

    /// Appends the unseen neighbours of edge `idx` to the untried list.
    fn expand(&mut self, idx: u32) {
        let e = self.edge_at(idx);
        let (x, y) = (e.origin.x, e.origin.y);
        let nbrs = match e.dir {
            Dir::East => [
                LatticeEdge::north(x, y),
                LatticeEdge::north(x, y - 1),
                LatticeEdge::east(x - 1, y),
                LatticeEdge::north(x + 1, y),
                LatticeEdge::north(x + 1, y - 1),
                LatticeEdge::east(x + 1, y),
            ],
            Dir::North => [
                LatticeEdge::east(x, y),
                LatticeEdge::east(x - 1, y),
                LatticeEdge::north(x, y - 1),
                LatticeEdge::east(x, y + 1),
                LatticeEdge::east(x - 1, y + 1),
                LatticeEdge::north(x, y + 1),
            ],
        };
        for n in nbrs {
            let i = self.edge_index(n);
            if !self.seen[i] {
                self.seen[i] = true;
                self.untried.push(i as u32);
            }
        }
    }

    fn retract(&mut self, len: usize) {
        for k in len..self.untried.len() {
            let i = self.untried[k] as usize;
            self.seen[i] = false;
        }
        self.untried.truncate(len);
    }

    fn node(&self) -> Node<'_> {
        Node { edges: &self.stack, vertices: self.vertices, squares: self.squares }
    }

    fn grow<V: Visitor>(&mut self, lo: usize, v: &mut V) {
        let hi = self.untried.len();
        for i in lo..hi {
            let idx = self.untried[i];
            self.place(idx);
            self.path.push(i as u32);
            if self.stack.len() == self.split_at {
                self.tasks.push(Task { root: self.root, path: self.path.clone() });
            } else {
                v.visit(&self.node());
                if self.stack.len() < self.max {
                    self.expand(idx);
                    self.grow(i + 1, v);
                    self.retract(hi);
                }
            }
            self.path.pop();
            self.unplace(idx);
        }
    }

    /// Replays a task's prefix, visits its node and searches below it.
    fn run_task<V: Visitor>(&mut self, task: &Task, v: &mut V) {
        let mut lo = 0;
        let mut placed = Vec::with_capacity(task.path.len());
        for &i in &task.path {
            let idx = self.untried[i as usize];
            self.place(idx);
            placed.push(idx);
            if self.stack.len() < self.max {
                self.expand(idx);
            }
            lo = i as usize + 1;
        }
        v.visit(&self.node());
        if self.stack.len() < self.max {
            self.grow(lo, v);
        }
        for &idx in placed.iter().rev() {
            self.unplace(idx);
        }
        self.retract(1);
    }
}

/// Size at which the search tree is cut into parallel tasks.
const SPLIT_SIZE: usize = 5;

/// Visits every fixed polystick with `1 ≤ m ≤ max_size`, serially and in a
/// deterministic order. The circle is not visited.
pub fn search_polysticks<V: Visitor>(max_size: u32, visitor: &mut V) {
    if max_size == 0 {
        return;
    }
    for root in [Dir::East, Dir::North] {
        let mut s = Search::new(max_size as usize, root);
        s.grow(0, visitor);
    }
}

/// Visits every fixed valid dual graph with `1 ≤ m ≤ max_size` exactly once.
pub fn enumerate_fixed<F: FnMut(&Node<'_>)>(max_size: u32, mut visit: F) {
    search_polysticks(max_size, &mut |n: &Node<'_>| {
        if n.is_dual_graph() {
            visit(n)
        }
    });
}

/// Runs the search split into independent subtrees on the current rayon pool.
/// Each subtree gets a fresh visitor from `make`; partial results are combined
/// with `merge` in task order, so the result does not depend on scheduling.
pub fn par_search<V, F, M>(max_size: u32, make: F, merge: M) -> V
where
    V: Visitor + Send,
    F: Fn() -> V + Sync,
    M: Fn(V, V) -> V + Sync,
{
    let mut acc = make();
    if max_size == 0 {
        return acc;
    }
    let max = max_size as usize;
    let split = SPLIT_SIZE.min(max);
    let mut tasks = Vec::new();
    for root in [Dir::East, Dir::North] {
        let mut s = Search::new(max, root);
        s.split_at = split;
        s.grow(0, &mut acc);
        tasks.append(&mut s.tasks);
    }
    let parts: Vec<V> = tasks
        .par_iter()
        .map_init(
            || None::<(Dir, Search)>,
            |state, task| {
                if state.as_ref().map(|(d, _)| *d) != Some(task.root) {
                    *state = Some((task.root, Search::new(max, task.root)));
                }
                let (_, s) = state.as_mut().expect("initialised");
                let mut v = make();
                s.run_task(task, &mut v);
                v
            },
        )
        .collect();
    parts.into_iter().fold(acc, merge)
}

/// Canonical key of an edge under the `(x, y, dir)` order.
#[inline]
fn edge_key(mx: i32, my: i32) -> u32 {
    // mx, my: translated doubled midpoint; exactly one is odd
    (((mx >> 1) as u32) << 17) | (((my >> 1) as u32) << 1) | ((mx & 1) as u32 ^ 1)
}

/// Sorted canonical keys of the image of `mids` under `s`.
fn image_keys(mids: &[(i32, i32)], s: Symmetry, out: &mut Vec<u32>) {
    out.clear();
    let (mut minx, mut miny) = (i32::MAX, i32::MAX);
    let mut tmp = [(0i32, 0i32); 64];
    for (k, &(x, y)) in mids.iter().enumerate() {
        let (a, b) = s.apply_xy(x, y);
        tmp[k] = (a, b);
        // lower/left endpoint in doubled coordinates
        minx = minx.min(a & !1);
        miny = miny.min(b & !1);
    }
    for &(a, b) in &tmp[..mids.len()] {
        out.push(edge_key(a - minx, b - miny));
    }
    out.sort_unstable();
}

/// Whether a fixed graph is the representative of its one-sided and free orbits.
pub(crate) fn orbit_representative(edges: &[LatticeEdge]) -> (bool, bool) {
    assert!(edges.len() <= 64, "graph too large for the fast canonicaliser");
    let mids: Vec<(i32, i32)> = edges.iter().map(|e| e.doubled_midpoint()).collect();
    let mut own = Vec::with_capacity(edges.len());
    let mut other = Vec::with_capacity(edges.len());
    image_keys(&mids, Symmetry::IDENTITY, &mut own);
    let mut one_sided = true;
    let mut free = true;
    for s in &Symmetry::ALL[1..] {
        image_keys(&mids, *s, &mut other);
        if other < own {
            free = false;
            if !s.is_reflection() {
                one_sided = false;
                break;
            }
        }
    }
    (one_sided, free)
}

/// Per-task accumulator for the counting mode.
struct Tally {
    // indexed by m * (max + 2) + c
    cells: Vec<Counts>,
    stride: usize,
    class_filter: Option<usize>,
}

impl Tally {
    fn new(max: u32, class_filter: Option<u32>) -> Self {
        let stride = max as usize + 2;
        Tally {
            cells: vec![Counts::default(); (max as usize + 1) * stride],
            stride,
            class_filter: class_filter.map(|c| c as usize),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.cells.iter_mut().zip(other.cells) {
            *a += b;
        }
        self
    }

    fn into_table(self, max: u32) -> CountTable {
        let mut t = CountTable::new(max);
        for (i, c) in self.cells.into_iter().enumerate() {
            t.add((i / self.stride) as u32, (i % self.stride) as u32, c);
        }
        t
    }
}

impl Visitor for Tally {
    #[inline]
    fn visit(&mut self, n: &Node<'_>) {
        if !n.is_dual_graph() {
            return;
        }
        let c = n.class();
        let cell = &mut self.cells[n.size() * self.stride + c];
        cell.fixed += 1;
        if self.class_filter.is_none_or(|f| f == c) {
            let (one_sided, free) = orbit_representative(n.edges);
            cell.one_sided += one_sided as u64;
            cell.free += free as u64;
        }
    }
}

fn counting_run(max_size: u32, class_filter: Option<u32>) -> CountTable {
    let tally = par_search(max_size, || Tally::new(max_size, class_filter), Tally::merge);
    let mut t = tally.into_table(max_size);
    t.add(0, 1, Counts::ONE);
    t
}

/// Fixed, one-sided and free counts for every `m ≤ max_size`, including the circle.
/// Runs on the current rayon pool; results are independent of the worker count.
pub fn count_tables(max_size: u32) -> CountTable {
    counting_run(max_size, None)
}

/// [`count_tables`] on a dedicated pool of `threads` workers.
pub fn count_tables_with_threads(max_size: u32, threads: usize) -> Result<CountTable, EnumError> {
    with_threads(threads, || count_tables(max_size))
}

pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, EnumError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
    Ok(pool.install(f))
}

/// All Tangles of class `c`, enumerating every size up to `⌊(c² − 1)/2⌋`.
pub fn enumerate_by_class(class: u32) -> ClassCount {
    let (_, max) = edge_bounds(class);
    counting_run(max, Some(class)).class_count(class)
}

/// Collects the canonical form of every valid dual graph with `m ≤ max_size`,
/// circle included, sorted by `(m, edges)`.
pub fn enumerate_graphs(max_size: u32) -> Vec<DualGraph> {
    struct Collect(Vec<Vec<LatticeEdge>>);
    impl Visitor for Collect {
        fn visit(&mut self, n: &Node<'_>) {
            if n.is_dual_graph() {
                self.0.push(canonical_form(n.edges));
            }
        }
    }
    let Collect(mut all) = par_search(
        max_size,
        || Collect(Vec::new()),
        |mut a, b| {
            a.0.extend(b.0);
            a
        },
    );
    all.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    std::iter::once(DualGraph::circle())
        .chain(all.into_iter().map(DualGraph::from_sorted_unchecked))
        .collect()
}

/// Table built from materialised graphs by collecting distinct canonical forms
/// per symmetry group.
pub fn table_from_graphs(graphs: &[DualGraph], max_size: u32) -> CountTable {
    let mut seen: [BTreeSet<Vec<LatticeEdge>>; 2] = Default::default();
    let mut t = CountTable::new(max_size);
    for g in graphs {
        let (m, c) = (g.size() as u32, g.class() as u32);
        if g.is_circle() {
            t.add(0, 1, Counts::ONE);
            continue;
        }
        let mut counts = Counts { fixed: 1, ..Counts::default() };
        if seen[0].insert(canonical_under(g.edges(), SymmetryGroup::Rotations)) {
            counts.one_sided = 1;
        }
        if seen[1].insert(canonical_under(g.edges(), SymmetryGroup::Full)) {
            counts.free = 1;
        }
        t.add(m, c, counts);
    }
    t
}

/// Largest size the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: u32 = 6;

/// Independent count: grows connected edge sets one edge at a time, level by
/// level, deduplicating by canonical form, then keeps the valid ones (face walk).
pub fn brute_force_oracle(max_size: u32) -> Result<CountTable, EnumError> {
    if max_size > BRUTE_FORCE_LIMIT {
        return Err(EnumError::BoundExceeded { requested: max_size, limit: BRUTE_FORCE_LIMIT });
    }
    let mut table = CountTable::new(max_size);
    table.add(0, 1, Counts::ONE);
    let mut level: BTreeSet<Vec<LatticeEdge>> = BTreeSet::new();
    if max_size >= 1 {
        level.insert(vec![LatticeEdge::east(0, 0)]);
        level.insert(vec![LatticeEdge::north(0, 0)]);
    }
    for m in 1..=max_size {
        let mut one_sided = BTreeSet::new();
        let mut free = BTreeSet::new();
        for g in &level {
            if !dualgraph::is_valid(g).expect("grown sets are connected") {
                continue;
            }
            let k = dualgraph::square_corners(g).len();
            let c = dualgraph::class_of(g.len(), k) as u32;
            table.add(m, c, Counts { fixed: 1, ..Counts::default() });
            if one_sided.insert(grid::canonical_under(g, SymmetryGroup::Rotations)) {
                table.add(m, c, Counts { one_sided: 1, ..Counts::default() });
            }
            if free.insert(grid::canonical_under(g, SymmetryGroup::Full)) {
                table.add(m, c, Counts { free: 1, ..Counts::default() });
            }
        }
        if m == max_size {
            break;
        }
        let mut next = BTreeSet::new();
        for g in &level {
            let have: BTreeSet<LatticeEdge> = g.iter().copied().collect();
            let verts: BTreeSet<_> = g.iter().flat_map(|e| e.endpoints()).collect();
            for v in verts {
                for w in v.neighbours() {
                    let e = LatticeEdge::between(v, w).expect("adjacent");
                    if !have.contains(&e) {
                        let mut h = g.clone();
                        h.push(e);
                        next.insert(canonical_form(&h));
                    }
                }
            }
        }
        level = next;
    }
    Ok(table)
}
