//! Rectangular patches of optional oriented tiles.
//!
//! Coordinates follow the mathematical convention: `x` grows east, `y` grows
//! north, and `origin` is the southwest cell. Cells are stored row-major from
//! the southern row upwards; "row-major order" below always means that order.
//! The text format lists rows north to south so that a file reads like the
//! picture.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::tiles::{compatible, Catalog, EdgeSignature, OrientedTile, Side, TileIdError};

pub type Cell = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("patch dimensions must be positive, got {width}x{height}")]
    EmptyPatch { width: usize, height: usize },
    #[error("expected {expected} cells, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("rectangle {rect:?} is not inside the patch bounds {bounds:?}")]
    OutOfBounds { rect: Rect, bounds: Rect },
    #[error("overlay conflict at {cell:?}: {a} vs {b}")]
    OverlayConflict {
        cell: Cell,
        a: OrientedTile,
        b: OrientedTile,
    },
    #[error("{0} is not a member of the catalog")]
    NotInCatalog(OrientedTile),
}

#[derive(Debug, Error)]
pub enum PatchFileError {
    #[error("invalid patch document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("patch document declares {declared} rows but has {actual}")]
    RowCount { declared: usize, actual: usize },
    #[error("row {row} has {actual} cells, expected {declared}")]
    RowWidth { row: usize, declared: usize, actual: usize },
    #[error(transparent)]
    Tile(#[from] TileIdError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Axis-aligned rectangle of cells, anchored at its southwest cell.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn new(x0: i64, y0: i64, width: usize, height: usize) -> Self {
        Rect { x0, y0, width, height }
    }

    /// Square of odd or even side centred on the origin cell (for even sides
    /// the extra column and row go west and south).
    pub fn centered(side: usize) -> Self {
        let lo = -(side as i64 / 2);
        Rect::new(lo, lo, side, side)
    }

    pub fn x1(&self) -> i64 {
        self.x0 + self.width as i64
    }

    pub fn y1(&self) -> i64 {
        self.y0 + self.height as i64
    }

    pub fn contains(&self, (x, y): Cell) -> bool {
        x >= self.x0 && x < self.x1() && y >= self.y0 && y < self.y1()
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.x0 >= self.x0 && other.y0 >= self.y0 && other.x1() <= self.x1() && other.y1() <= self.y1()
    }

    /// Cells in row-major order (south row first).
    pub fn cells(self) -> impl Iterator<Item = Cell> {
        (self.y0..self.y1()).flat_map(move |y| (self.x0..self.x1()).map(move |x| (x, y)))
    }
}

/// A local matching failure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The tile at `at` does not fit its neighbour across `side`.
    Edge {
        at: Cell,
        side: Side,
        ours: EdgeSignature,
        theirs: EdgeSignature,
    },
    /// The vertex at lattice point `at` (southwest corner of cell `at`) sees
    /// `bumpy` bumpy corners among its `present` incident tiles. A vertex
    /// needs exactly one when all four tiles are present, at most one
    /// otherwise.
    Vertex { at: Cell, bumpy: usize, present: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Patch {
    origin: Cell,
    width: usize,
    height: usize,
    cells: Vec<Option<OrientedTile>>,
}

impl Patch {
    /// A patch with every cell absent.
    pub fn empty(origin: Cell, width: usize, height: usize) -> Result<Self, GridError> {
        if width == 0 || height == 0 {
            return Err(GridError::EmptyPatch { width, height });
        }
        Ok(Patch {
            origin,
            width,
            height,
            cells: vec![None; width * height],
        })
    }

    /// Builds a patch from cells in row-major order (south row first).
    pub fn from_cells(
        origin: Cell,
        width: usize,
        height: usize,
        cells: Vec<Option<OrientedTile>>,
    ) -> Result<Self, GridError> {
        let mut p = Patch::empty(origin, width, height)?;
        if cells.len() != width * height {
            return Err(GridError::CellCount {
                expected: width * height,
                got: cells.len(),
            });
        }
        let cat = Catalog::robinson();
        if let Some(t) = cells.iter().flatten().find(|t| !cat.contains(**t)) {
            return Err(GridError::NotInCatalog(*t));
        }
        p.cells = cells;
        Ok(p)
    }

    /// No catalog check; callers guarantee dimensions and membership.
    pub(crate) fn from_raw(origin: Cell, width: usize, height: usize, cells: Vec<Option<OrientedTile>>) -> Self {
        debug_assert_eq!(cells.len(), width * height);
        Patch {
            origin,
            width,
            height,
            cells,
        }
    }

    pub fn single(origin: Cell, tile: OrientedTile) -> Self {
        Patch {
            origin,
            width: 1,
            height: 1,
            cells: vec![Some(tile)],
        }
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

    pub fn bounds(&self) -> Rect {
        Rect::new(self.origin.0, self.origin.1, self.width, self.height)
    }

    pub fn cells(&self) -> &[Option<OrientedTile>] {
        &self.cells
    }

    fn offset(&self, (x, y): Cell) -> Option<usize> {
        if !self.bounds().contains((x, y)) {
            return None;
        }
        let dx = (x - self.origin.0) as usize;
        let dy = (y - self.origin.1) as usize;
        Some(dy * self.width + dx)
    }

    /// Tile at an absolute cell, `None` if absent or out of bounds.
    pub fn get(&self, cell: Cell) -> Option<OrientedTile> {
        self.offset(cell).and_then(|i| self.cells[i])
    }

    /// Sets an in-bounds cell; returns false when `cell` is out of bounds.
    pub fn set(&mut self, cell: Cell, tile: Option<OrientedTile>) -> bool {
        match self.offset(cell) {
            Some(i) => {
                self.cells[i] = tile;
                true
            }
            None => false,
        }
    }

    /// Present tiles with their cells, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, OrientedTile)> + '_ {
        self.bounds()
            .cells()
            .zip(&self.cells)
            .filter_map(|(c, t)| t.map(|t| (c, t)))
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn subpatch(&self, rect: Rect) -> Result<Patch, GridError> {
        if rect.width == 0 || rect.height == 0 || !self.bounds().contains_rect(&rect) {
            return Err(GridError::OutOfBounds {
                rect,
                bounds: self.bounds(),
            });
        }
        let cells = rect.cells().map(|c| self.get(c)).collect();
        Ok(Patch {
            origin: (rect.x0, rect.y0),
            width: rect.width,
            height: rect.height,
            cells,
        })
    }

    pub fn translate(&self, (dx, dy): Cell) -> Patch {
        Patch {
            origin: (self.origin.0 + dx, self.origin.1 + dy),
            ..self.clone()
        }
    }

    /// Union of two patches over their bounding box. Fails on the first cell
    /// (row-major) where both are present and differ.
    pub fn overlay(&self, other: &Patch) -> Result<Patch, GridError> {
        let a = self.bounds();
        let b = other.bounds();
        let x0 = a.x0.min(b.x0);
        let y0 = a.y0.min(b.y0);
        let bbox = Rect::new(
            x0,
            y0,
            (a.x1().max(b.x1()) - x0) as usize,
            (a.y1().max(b.y1()) - y0) as usize,
        );
        let mut cells = Vec::with_capacity(bbox.width * bbox.height);
        for c in bbox.cells() {
            let t = match (self.get(c), other.get(c)) {
                (Some(p), Some(q)) if p != q => return Err(GridError::OverlayConflict { cell: c, a: p, b: q }),
                (p, q) => p.or(q),
            };
            cells.push(t);
        }
        Ok(Patch {
            origin: (x0, y0),
            width: bbox.width,
            height: bbox.height,
            cells,
        })
    }

    /// Writes `other` into this patch; `other` must lie within bounds.
    pub fn paste(&mut self, other: &Patch) -> Result<(), GridError> {
        if !self.bounds().contains_rect(&other.bounds()) {
            return Err(GridError::OutOfBounds {
                rect: other.bounds(),
                bounds: self.bounds(),
            });
        }
        for (c, t) in other.iter() {
            self.set(c, Some(t));
        }
        Ok(())
    }

    /// Every matching failure inside the patch against the Robinson catalog.
    pub fn violations(&self) -> Vec<Violation> {
        self.violations_with(Catalog::robinson())
    }

    /// Edge violations first (row-major, checking east then north of each
    /// cell), then vertex violations (row-major over lattice points).
    pub fn violations_with(&self, cat: &Catalog) -> Vec<Violation> {
        let mut out = Vec::new();
        for (c, t) in self.iter() {
            for side in [Side::E, Side::N] {
                let (dx, dy) = side.delta();
                let Some(u) = self.get((c.0 + dx, c.1 + dy)) else {
                    continue;
                };
                let ours = cat.edge(t, side);
                let theirs = cat.edge(u, side.opposite());
                if !compatible(ours, theirs) {
                    out.push(Violation::Edge {
                        at: c,
                        side,
                        ours: ours.clone(),
                        theirs: theirs.clone(),
                    });
                }
            }
        }
        let (ox, oy) = self.origin;
        for vy in oy..=oy + self.height as i64 {
            for vx in ox..=ox + self.width as i64 {
                let around = [(vx - 1, vy - 1), (vx, vy - 1), (vx - 1, vy), (vx, vy)];
                let present: Vec<_> = around.iter().filter_map(|&c| self.get(c)).collect();
                let bumpy = present.iter().filter(|&&t| cat.is_bumpy(t)).count();
                let ok = if present.len() == 4 { bumpy == 1 } else { bumpy <= 1 };
                if !ok {
                    out.push(Violation::Vertex {
                        at: (vx, vy),
                        bumpy,
                        present: present.len(),
                    });
                }
            }
        }
        out
    }

    /// Violations of a full patch read as one period of a torus: neighbours
    /// and vertices wrap around. Absent cells are reported as vertex
    /// violations only through the count they leave short.
    pub fn torus_violations_with(&self, cat: &Catalog) -> Vec<Violation> {
        let (w, h) = (self.width as i64, self.height as i64);
        let (ox, oy) = self.origin;
        let wrap = |(x, y): Cell| (ox + (x - ox).rem_euclid(w), oy + (y - oy).rem_euclid(h));
        let mut out = Vec::new();
        for (c, t) in self.iter() {
            for side in [Side::E, Side::N] {
                let (dx, dy) = side.delta();
                let Some(u) = self.get(wrap((c.0 + dx, c.1 + dy))) else {
                    continue;
                };
                let ours = cat.edge(t, side);
                let theirs = cat.edge(u, side.opposite());
                if !compatible(ours, theirs) {
                    out.push(Violation::Edge {
                        at: c,
                        side,
                        ours: ours.clone(),
                        theirs: theirs.clone(),
                    });
                }
            }
        }
        for (vx, vy) in self.bounds().cells() {
            let around = [(vx - 1, vy - 1), (vx, vy - 1), (vx - 1, vy), (vx, vy)];
            let present: Vec<_> = around.iter().filter_map(|&c| self.get(wrap(c))).collect();
            let bumpy = present.iter().filter(|&&t| cat.is_bumpy(t)).count();
            if bumpy != 1 {
                out.push(Violation::Vertex {
                    at: (vx, vy),
                    bumpy,
                    present: present.len(),
                });
            }
        }
        out
    }

    /// Canonical text form: two-space indent, keys `origin`, `width`,
    /// `height`, `rows`; rows north to south, absent cells as `null`.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"origin\": [{}, {}],", self.origin.0, self.origin.1);
        let _ = writeln!(s, "  \"width\": {},", self.width);
        let _ = writeln!(s, "  \"height\": {},", self.height);
        s.push_str("  \"rows\": [\n");
        for (i, row) in self.cells.chunks(self.width).rev().enumerate() {
            s.push_str("    [");
            for (j, t) in row.iter().enumerate() {
                if j > 0 {
                    s.push_str(", ");
                }
                match t {
                    Some(t) => {
                        let _ = write!(s, "\"{t}\"");
                    }
                    None => s.push_str("null"),
                }
            }
            s.push(']');
            if i + 1 < self.height {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("  ]\n}\n");
        s
    }

    pub fn from_json(text: &str) -> Result<Patch, PatchFileError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            origin: [i64; 2],
            width: usize,
            height: usize,
            rows: Vec<Vec<Option<String>>>,
        }
        let doc: Doc = serde_json::from_str(text)?;
        if doc.rows.len() != doc.height {
            return Err(PatchFileError::RowCount {
                declared: doc.height,
                actual: doc.rows.len(),
            });
        }
        let cat = Catalog::robinson();
        let mut cells = Vec::with_capacity(doc.width * doc.height);
        for (i, row) in doc.rows.iter().enumerate().rev() {
            if row.len() != doc.width {
                return Err(PatchFileError::RowWidth {
                    row: i,
                    declared: doc.width,
                    actual: row.len(),
                });
            }
            for id in row {
                cells.push(match id {
                    Some(id) => Some(cat.parse_id(id)?),
                    None => None,
                });
            }
        }
        Ok(Patch::from_cells(
            (doc.origin[0], doc.origin[1]),
            doc.width,
            doc.height,
            cells,
        )?)
    }
}

/// Every matching failure of `p` against the Robinson catalog.
pub fn validate(p: &Patch) -> Vec<Violation> {
    p.violations()
}
