//! Exhaustive search for tilings of rectangular regions.
//!
//! Domains are `u64` bitsets over catalog indices, so catalogs are limited to
//! 64 oriented tiles. Constraints are the edge tables (one support mask per
//! tile and direction) plus the vertex rule: exactly one bumpy corner around
//! each vertex that has all four cells inside the region, at most one around
//! the others. Under [`Boundary::Torus`] every vertex is complete and
//! neighbours wrap; under [`Boundary::Open`] nothing is required past the
//! region's edge.
//!
//! Search is depth-first. Uncapped runs branch on the cell with the fewest
//! remaining tiles (row-major tie-break); capped runs branch in row-major order
//! so that the solutions found first are exactly the canonical prefix. Values
//! are tried in catalog order. Output is sorted by the row-major sequence of
//! catalog indices, independent of the number of worker threads.

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{Cell, Patch};
use crate::tiles::{compatible, compatible_ignoring_types, Catalog, OrientedTile, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("region dimensions must be positive, got {width}x{height}")]
    EmptyRegion { width: usize, height: usize },
    #[error("fixed cell {0:?} lies outside the region")]
    FixedOutOfBounds(Cell),
    #[error("{0} is not a member of the solver's catalog")]
    NotInCatalog(OrientedTile),
    #[error("catalog has {0} tiles; domains hold at most 64")]
    CatalogTooLarge(usize),
    #[error("cell {0:?} is outside the region")]
    CellOutOfBounds(Cell),
    #[error("region has no solution")]
    Unsat,
}

/// Propagation emptied the domain of `cell`.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("contradiction at {cell:?}")]
pub struct Contradiction {
    pub cell: Cell,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Torus,
}

/// A search problem: a rectangle, some pre-assigned cells, a boundary mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    origin: Cell,
    width: usize,
    height: usize,
    boundary: Boundary,
    fixed: Vec<Option<OrientedTile>>,
}

impl Region {
    /// A free region anchored at `(0, 0)`.
    pub fn new(width: usize, height: usize, boundary: Boundary) -> Result<Region, SolverError> {
        if width == 0 || height == 0 {
            return Err(SolverError::EmptyRegion { width, height });
        }
        Ok(Region {
            origin: (0, 0),
            width,
            height,
            boundary,
            fixed: vec![None; width * height],
        })
    }

    /// The region covering `patch`, with its present cells fixed.
    pub fn from_patch(patch: &Patch, boundary: Boundary) -> Region {
        Region {
            origin: patch.origin(),
            width: patch.width(),
            height: patch.height(),
            boundary,
            fixed: patch.cells().to_vec(),
        }
    }

    pub fn with_origin(mut self, origin: Cell) -> Region {
        self.origin = origin;
        self
    }

    pub fn origin(&self) -> Cell {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    fn offset(&self, (x, y): Cell) -> Option<usize> {
        let dx = x - self.origin.0;
        let dy = y - self.origin.1;
        if dx < 0 || dy < 0 || dx >= self.width as i64 || dy >= self.height as i64 {
            return None;
        }
        Some(dy as usize * self.width + dx as usize)
    }

    fn cell_at(&self, i: usize) -> Cell {
        (
            self.origin.0 + (i % self.width) as i64,
            self.origin.1 + (i / self.width) as i64,
        )
    }

    pub fn fixed(&self, cell: Cell) -> Option<OrientedTile> {
        self.offset(cell).and_then(|i| self.fixed[i])
    }

    pub fn fix(&mut self, cell: Cell, tile: OrientedTile) -> Result<(), SolverError> {
        let i = self.offset(cell).ok_or(SolverError::FixedOutOfBounds(cell))?;
        self.fixed[i] = Some(tile);
        Ok(())
    }

    pub fn unfix(&mut self, cell: Cell) {
        if let Some(i) = self.offset(cell) {
            self.fixed[i] = None;
        }
    }

    /// Fixes every present cell of `patch` (absolute coordinates).
    pub fn fix_patch(&mut self, patch: &Patch) -> Result<(), SolverError> {
        for (c, t) in patch.iter() {
            self.fix(c, t)?;
        }
        Ok(())
    }
}

/// Per-cell sets of still-possible tiles.
#[derive(Clone, Debug)]
pub struct DomainState<'c> {
    catalog: &'c Catalog,
    origin: Cell,
    width: usize,
    height: usize,
    domains: Vec<u64>,
}

impl<'c> DomainState<'c> {
    pub fn catalog(&self) -> &'c Catalog {
        self.catalog
    }

    pub fn origin(&self) -> Cell {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self, (x, y): Cell) -> u64 {
        let dx = (x - self.origin.0) as usize;
        let dy = (y - self.origin.1) as usize;
        self.domains[dy * self.width + dx]
    }

    pub fn domain(&self, cell: Cell) -> Vec<OrientedTile> {
        tiles_of(self.catalog, self.mask(cell))
    }

    /// Singleton cells become tiles, the rest are absent.
    pub fn to_patch(&self) -> Patch {
        let cells = self
            .domains
            .iter()
            .map(|&m| (m.count_ones() == 1).then(|| self.catalog.tile(m.trailing_zeros() as usize)))
            .collect();
        Patch::from_raw(self.origin, self.width, self.height, cells)
    }

    pub fn is_determined(&self) -> bool {
        self.domains.iter().all(|m| m.count_ones() == 1)
    }
}

/// Tiles of a domain bitset, in catalog order.
pub fn tiles_of(cat: &Catalog, mut mask: u64) -> Vec<OrientedTile> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(cat.tile(i));
        mask &= mask - 1;
    }
    out
}

/// How adjacent edges are matched.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum MatchRule {
    #[default]
    Strict,
    /// Arrow types are ignored (diagnostic mutation).
    IgnoreTypes,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 1 searches sequentially, 0 uses rayon's default pool.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1 }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Branching {
    MinRemaining,
    RowMajor,
}

#[derive(Clone, Debug)]
struct Vertex {
    /// Distinct cells with their multiplicity around the vertex.
    cells: Vec<(usize, u32)>,
    complete: bool,
}

/// A region compiled against a solver's tables.
struct Problem {
    neighbors: Vec<[Option<usize>; 4]>,
    vertices: Vec<Vertex>,
    cell_vertices: Vec<Vec<usize>>,
    initial: Vec<u64>,
}

/// Search engine over one catalog.
#[derive(Clone, Debug)]
pub struct Solver<'c> {
    catalog: &'c Catalog,
    /// `support[side][i]`: tiles that may sit across `side` of tile `i`.
    support: [Vec<u64>; 4],
    /// Tiles compatible with their own copy across `side` (1-wide tori).
    self_support: [u64; 4],
    bumpy: u64,
    all: u64,
    options: SearchOptions,
}

impl<'c> Solver<'c> {
    pub fn new(catalog: &'c Catalog) -> Result<Self, SolverError> {
        Solver::with_rule(catalog, MatchRule::Strict)
    }

    pub fn with_rule(catalog: &'c Catalog, rule: MatchRule) -> Result<Self, SolverError> {
        let n = catalog.len();
        if n > 64 {
            return Err(SolverError::CatalogTooLarge(n));
        }
        let fits = |a, b| match rule {
            MatchRule::Strict => compatible(a, b),
            MatchRule::IgnoreTypes => compatible_ignoring_types(a, b),
        };
        let mut support: [Vec<u64>; 4] = Default::default();
        let mut self_support = [0u64; 4];
        for side in Side::ALL {
            let s = side as usize;
            support[s] = (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| {
                            let (a, b) = match side {
                                Side::E | Side::N => (catalog.edge_at(i, side), catalog.edge_at(j, side.opposite())),
                                Side::W | Side::S => (catalog.edge_at(j, side.opposite()), catalog.edge_at(i, side)),
                            };
                            fits(a, b)
                        })
                        .fold(0u64, |m, j| m | 1 << j)
                })
                .collect();
            self_support[s] = (0..n)
                .filter(|&i| support[s][i] >> i & 1 == 1)
                .fold(0u64, |m, i| m | 1 << i);
        }
        let bumpy = (0..n)
            .filter(|&i| catalog.is_bumpy(catalog.tile(i)))
            .fold(0u64, |m, i| m | 1 << i);
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Solver {
            catalog,
            support,
            self_support,
            bumpy,
            all,
            options: SearchOptions::default(),
        })
    }

    pub fn with_options(mut self, options: SearchOptions) -> Self {
        self.options = options;
        self
    }

    pub fn catalog(&self) -> &'c Catalog {
        self.catalog
    }

    fn compile(&self, r: &Region) -> Result<Problem, SolverError> {
        let (w, h) = (r.width, r.height);
        let torus = r.boundary == Boundary::Torus;
        let idx = |x: i64, y: i64| -> Option<usize> {
            if torus {
                let x = x.rem_euclid(w as i64) as usize;
                let y = y.rem_euclid(h as i64) as usize;
                Some(y * w + x)
            } else if x < 0 || y < 0 || x >= w as i64 || y >= h as i64 {
                None
            } else {
                Some(y as usize * w + x as usize)
            }
        };
        let mut neighbors = Vec::with_capacity(w * h);
        for y in 0..h as i64 {
            for x in 0..w as i64 {
                let mut nb = [None; 4];
                for side in Side::ALL {
                    let (dx, dy) = side.delta();
                    nb[side as usize] = idx(x + dx, y + dy);
                }
                neighbors.push(nb);
            }
        }
        let mut vertices = Vec::new();
        let mut cell_vertices = vec![Vec::new(); w * h];
        let (vx_max, vy_max) = if torus {
            (w as i64, h as i64)
        } else {
            (w as i64 + 1, h as i64 + 1)
        };
        for vy in 0..vy_max {
            for vx in 0..vx_max {
                let around: Vec<usize> = [(vx - 1, vy - 1), (vx, vy - 1), (vx - 1, vy), (vx, vy)]
                    .into_iter()
                    .filter_map(|(x, y)| idx(x, y))
                    .collect();
                let complete = around.len() == 4;
                let mut cells: Vec<(usize, u32)> = Vec::new();
                for c in around {
                    match cells.iter_mut().find(|(d, _)| *d == c) {
                        Some((_, m)) => *m += 1,
                        None => cells.push((c, 1)),
                    }
                }
                let total: u32 = cells.iter().map(|&(_, m)| m).sum();
                if !complete && total < 2 {
                    continue;
                }
                let v = vertices.len();
                for &(c, _) in &cells {
                    cell_vertices[c].push(v);
                }
                vertices.push(Vertex { cells, complete });
            }
        }
        let mut initial = vec![self.all; w * h];
        for (i, t) in r.fixed.iter().enumerate() {
            if let Some(t) = t {
                let k = self.catalog.index_of(*t).ok_or(SolverError::NotInCatalog(*t))?;
                initial[i] = 1 << k;
            }
        }
        Ok(Problem {
            neighbors,
            vertices,
            cell_vertices,
            initial,
        })
    }

    /// Prunes `dom` to the arc-consistent fixpoint. `seeds` are the cells whose
    /// domains changed; `None` means every cell.
    fn propagate_from(&self, p: &Problem, dom: &mut [u64], seeds: Option<usize>) -> Result<(), usize> {
        let n = dom.len();
        let mut queued = vec![false; n];
        let mut queue: Vec<usize> = match seeds {
            Some(c) => vec![c],
            None => (0..n).rev().collect(),
        };
        for &c in &queue {
            queued[c] = true;
        }
        for (c, &d) in dom.iter().enumerate() {
            if d == 0 {
                return Err(c);
            }
        }
        while let Some(c) = queue.pop() {
            queued[c] = false;
            for side in Side::ALL {
                let s = side as usize;
                let Some(nb) = p.neighbors[c][s] else { continue };
                let before = dom[nb];
                if nb == c {
                    dom[c] &= self.self_support[s];
                } else {
                    let mut allowed = 0u64;
                    let mut m = dom[c];
                    while m != 0 {
                        let i = m.trailing_zeros() as usize;
                        allowed |= self.support[s][i];
                        m &= m - 1;
                    }
                    dom[nb] &= allowed;
                }
                if dom[nb] != before {
                    if dom[nb] == 0 {
                        return Err(nb);
                    }
                    if !queued[nb] {
                        queued[nb] = true;
                        queue.push(nb);
                    }
                }
            }
            for &v in &p.cell_vertices[c] {
                let vert = &p.vertices[v];
                let m = vert.cells.len();
                let can_b: Vec<bool> = vert.cells.iter().map(|&(x, _)| dom[x] & self.bumpy != 0).collect();
                let can_d: Vec<bool> = vert.cells.iter().map(|&(x, _)| dom[x] & !self.bumpy != 0).collect();
                let mut sup_b = vec![false; m];
                let mut sup_d = vec![false; m];
                for combo in 0u32..(1 << m) {
                    let mut bumps = 0;
                    let mut ok = true;
                    for (j, &(_, mult)) in vert.cells.iter().enumerate() {
                        if combo >> j & 1 == 1 {
                            ok &= can_b[j];
                            bumps += mult;
                        } else {
                            ok &= can_d[j];
                        }
                    }
                    let fine = if vert.complete { bumps == 1 } else { bumps <= 1 };
                    if ok && fine {
                        for j in 0..m {
                            if combo >> j & 1 == 1 {
                                sup_b[j] = true;
                            } else {
                                sup_d[j] = true;
                            }
                        }
                    }
                }
                for (j, &(x, _)) in vert.cells.iter().enumerate() {
                    let before = dom[x];
                    if !sup_b[j] {
                        dom[x] &= !self.bumpy;
                    }
                    if !sup_d[j] {
                        dom[x] &= self.bumpy;
                    }
                    if dom[x] != before {
                        if dom[x] == 0 {
                            return Err(x);
                        }
                        if !queued[x] {
                            queued[x] = true;
                            queue.push(x);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn root(&self, r: &Region) -> Result<(Problem, Option<Vec<u64>>), SolverError> {
        let p = self.compile(r)?;
        let mut dom = p.initial.clone();
        let ok = self.propagate_from(&p, &mut dom, None).is_ok();
        Ok((p, ok.then_some(dom)))
    }

    /// Arc-consistent fixpoint of the region.
    pub fn propagate(&self, r: &Region) -> Result<Result<DomainState<'c>, Contradiction>, SolverError> {
        let p = self.compile(r)?;
        let mut dom = p.initial.clone();
        Ok(match self.propagate_from(&p, &mut dom, None) {
            Ok(()) => Ok(DomainState {
                catalog: self.catalog,
                origin: r.origin,
                width: r.width,
                height: r.height,
                domains: dom,
            }),
            Err(c) => Err(Contradiction { cell: r.cell_at(c) }),
        })
    }

    fn choose(&self, dom: &[u64], branching: Branching) -> Option<usize> {
        match branching {
            Branching::RowMajor => dom.iter().position(|m| m.count_ones() > 1),
            Branching::MinRemaining => {
                let mut best: Option<(u32, usize)> = None;
                for (i, m) in dom.iter().enumerate() {
                    let k = m.count_ones();
                    if k > 1 && best.is_none_or(|(b, _)| k < b) {
                        best = Some((k, i));
                        if k == 2 {
                            break;
                        }
                    }
                }
                best.map(|(_, i)| i)
            }
        }
    }

    /// Child states of branching on `cell`, in value order.
    fn children(&self, p: &Problem, dom: &[u64], cell: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut m = dom[cell];
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            let mut child = dom.to_vec();
            child[cell] = 1 << v;
            if self.propagate_from(p, &mut child, Some(cell)).is_ok() {
                out.push(child);
            }
        }
        out
    }

    /// Depth-first walk; `visit` returns false to stop.
    fn walk(&self, p: &Problem, dom: Vec<u64>, branching: Branching, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        match self.choose(&dom, branching) {
            None => visit(&dom),
            Some(cell) => {
                for child in self.children(p, &dom, cell) {
                    if !self.walk(p, child, branching, visit) {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Runs `job` on each root branch, in parallel when configured; results
    /// come back in branch order.
    fn per_branch<T: Send>(
        &self,
        p: &Problem,
        dom: Vec<u64>,
        branching: Branching,
        job: impl Fn(Vec<u64>) -> T + Sync + Send,
    ) -> Vec<T> {
        let branches = match self.choose(&dom, branching) {
            None => vec![dom],
            Some(cell) => self.children(p, &dom, cell),
        };
        match self.options.threads {
            1 => branches.into_iter().map(job).collect(),
            0 => branches.into_par_iter().map(job).collect(),
            n => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(|| branches.into_par_iter().map(job).collect()),
        }
    }

    fn to_patch(&self, r: &Region, dom: &[u64]) -> Patch {
        let cells = dom
            .iter()
            .map(|m| Some(self.catalog.tile(m.trailing_zeros() as usize)))
            .collect();
        Patch::from_raw(r.origin, r.width, r.height, cells)
    }

    fn solution_key(dom: &[u64]) -> Vec<u8> {
        dom.iter().map(|m| m.trailing_zeros() as u8).collect()
    }

    /// All solutions (or the first `cap` in canonical order), sorted
    /// canonically.
    pub fn enumerate(&self, r: &Region, cap: Option<usize>) -> Result<Vec<Patch>, SolverError> {
        let (p, Some(dom)) = self.root(r)? else {
            return Ok(Vec::new());
        };
        if cap == Some(0) {
            return Ok(Vec::new());
        }
        let branching = if cap.is_some() {
            Branching::RowMajor
        } else {
            Branching::MinRemaining
        };
        let limit = cap.unwrap_or(usize::MAX);
        let per = self.per_branch(&p, dom, branching, |d| {
            let mut found: Vec<Vec<u8>> = Vec::new();
            self.walk(&p, d, branching, &mut |s| {
                found.push(Self::solution_key(s));
                found.len() < limit
            });
            found
        });
        let mut keys: Vec<Vec<u8>> = per.into_iter().flatten().collect();
        keys.truncate(limit);
        keys.sort();
        Ok(keys
            .into_iter()
            .map(|k| {
                let dom: Vec<u64> = k.iter().map(|&i| 1u64 << i).collect();
                self.to_patch(r, &dom)
            })
            .collect())
    }

    pub fn count(&self, r: &Region) -> Result<u64, SolverError> {
        let (p, Some(dom)) = self.root(r)? else {
            return Ok(0);
        };
        let per = self.per_branch(&p, dom, Branching::MinRemaining, |d| {
            let mut n = 0u64;
            self.walk(&p, d, Branching::MinRemaining, &mut |_| {
                n += 1;
                true
            });
            n
        });
        Ok(per.into_iter().sum())
    }

    /// The canonically least solution.
    pub fn first(&self, r: &Region) -> Result<Patch, SolverError> {
        self.enumerate(r, Some(1))?.pop().ok_or(SolverError::Unsat)
    }

    /// Union over all solutions of the tiles at each cell (row-major masks).
    pub fn project_all(&self, r: &Region) -> Result<DomainState<'c>, SolverError> {
        let n = r.width * r.height;
        let union = match self.root(r)? {
            (_, None) => vec![0u64; n],
            (p, Some(dom)) => {
                let per = self.per_branch(&p, dom, Branching::MinRemaining, |d| {
                    let mut acc = vec![0u64; n];
                    self.walk(&p, d, Branching::MinRemaining, &mut |s| {
                        for (a, m) in acc.iter_mut().zip(s) {
                            *a |= m;
                        }
                        true
                    });
                    acc
                });
                per.into_iter().fold(vec![0u64; n], |mut acc, part| {
                    for (a, m) in acc.iter_mut().zip(part) {
                        *a |= m;
                    }
                    acc
                })
            }
        };
        Ok(DomainState {
            catalog: self.catalog,
            origin: r.origin,
            width: r.width,
            height: r.height,
            domains: union,
        })
    }

    /// Tiles appearing at `cell` across all complete solutions.
    pub fn project(&self, r: &Region, cell: Cell) -> Result<Vec<OrientedTile>, SolverError> {
        if r.offset(cell).is_none() {
            return Err(SolverError::CellOutOfBounds(cell));
        }
        Ok(self.project_all(r)?.domain(cell))
    }
}
