//! Corners of every order and the infinite tiling they nest into.
//!
//! `corner(1, o)` is the single bumpy corner oriented `o`. For `n >= 2`,
//! `corner(n, o)` is a `(2^n - 1)`-square: four copies of `corner(n - 1)` in
//! its quadrants, each pointing at the centre, a dented corner oriented `o`
//! at the centre, and the one-cell cross between them filled by the solver.
//! The fill is required to be unique.
//!
//! The spiral chains corners so that step `k` sits inside step `k + 1` at the
//! same absolute position; the limit tiling is their union.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;
use thiserror::Error;

use crate::grid::{Cell, Patch, Rect};
use crate::solver::{Boundary, Region, Solver, SolverError};
use crate::tiles::{pos, BaseTileKind, Catalog, Diagonal, Ink, Orientation, OrientedTile, Segment, Side};

/// Largest order the spiral is allowed to reach; coordinates stay in `i64`.
pub const MAX_ORDER: u32 = 61;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HierarchyError {
    #[error("corner order must be at least 1")]
    ZeroOrder,
    #[error("corner order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u32),
    #[error("filling corner({order}, {orientation}) gave {solutions} solutions, expected exactly one")]
    NotUnique {
        order: u32,
        orientation: Diagonal,
        solutions: usize,
    },
    #[error("the catalog has no {kind:?} oriented {orientation}")]
    MissingCorner { kind: BaseTileKind, orientation: Diagonal },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CornerSpec {
    pub order: u32,
    pub orientation: Diagonal,
}

impl CornerSpec {
    pub fn new(order: u32, orientation: Diagonal) -> Self {
        CornerSpec { order, orientation }
    }

    /// Side length `2^order - 1`.
    pub fn side(&self) -> usize {
        side(self.order)
    }

    fn check(&self) -> Result<(), HierarchyError> {
        match self.order {
            0 => Err(HierarchyError::ZeroOrder),
            n if n > MAX_ORDER => Err(HierarchyError::OrderTooLarge(n)),
            _ => Ok(()),
        }
    }
}

pub fn side(order: u32) -> usize {
    (1usize << order) - 1
}

/// Offset of quadrant `q` inside a corner of order `n >= 2`.
pub fn quadrant_origin(order: u32, q: Diagonal) -> Cell {
    let s = (1i64 << (order - 1)) - 1;
    match q {
        Diagonal::SW => (0, 0),
        Diagonal::SE => (s + 1, 0),
        Diagonal::NW => (0, s + 1),
        Diagonal::NE => (s + 1, s + 1),
    }
}

/// Sub-corners face the centre: quadrant `q` holds one oriented `q.opposite()`.
pub fn quadrant_orientation(q: Diagonal) -> Diagonal {
    q.opposite()
}

/// Builds corners by search, memoised per spec.
pub struct Hierarchy<'c> {
    solver: Solver<'c>,
    memo: RwLock<HashMap<CornerSpec, Arc<Patch>>>,
}

impl<'c> Hierarchy<'c> {
    pub fn new(catalog: &'c Catalog) -> Result<Self, HierarchyError> {
        Ok(Hierarchy {
            solver: Solver::new(catalog)?,
            memo: RwLock::new(HashMap::new()),
        })
    }

    /// Shared hierarchy over the Robinson catalog.
    pub fn robinson() -> &'static Hierarchy<'static> {
        static H: OnceLock<Hierarchy<'static>> = OnceLock::new();
        H.get_or_init(|| Hierarchy::new(Catalog::robinson()).expect("Robinson catalog fits the solver"))
    }

    pub fn solver(&self) -> &Solver<'c> {
        &self.solver
    }

    pub fn catalog(&self) -> &'c Catalog {
        self.solver.catalog()
    }

    /// The first tile of `kind` in catalog order whose blue corner faces `o`.
    pub fn corner_tile(&self, kind: BaseTileKind, o: Diagonal) -> Result<OrientedTile, HierarchyError> {
        let cat = self.catalog();
        cat.tiles()
            .iter()
            .copied()
            .find(|&t| t.kind == kind && cat.classify(t).orientation == Orientation::from(o))
            .ok_or(HierarchyError::MissingCorner { kind, orientation: o })
    }

    /// The four quadrant corners and the centre, everything else free.
    pub fn fill_region(&self, spec: CornerSpec) -> Result<Region, HierarchyError> {
        spec.check()?;
        let n = spec.order;
        let s = spec.side();
        let mut r = Region::new(s, s, Boundary::Open)?;
        if n == 1 {
            return Ok(r);
        }
        for q in Diagonal::ALL {
            let sub = self.corner(CornerSpec::new(n - 1, quadrant_orientation(q)))?;
            r.fix_patch(&sub.translate(quadrant_origin(n, q)))?;
        }
        let c = (s / 2) as i64;
        r.fix((c, c), self.corner_tile(BaseTileKind::DentedCorner, spec.orientation)?)?;
        Ok(r)
    }

    /// `corner(n, o)` anchored at `(0, 0)`.
    pub fn corner(&self, spec: CornerSpec) -> Result<Arc<Patch>, HierarchyError> {
        spec.check()?;
        if let Some(p) = self.memo.read().expect("memo lock").get(&spec) {
            return Ok(p.clone());
        }
        let patch = if spec.order == 1 {
            Patch::single((0, 0), self.corner_tile(BaseTileKind::BumpyCorner, spec.orientation)?)
        } else {
            let region = self.fill_region(spec)?;
            let mut sols = self.solver.enumerate(&region, Some(2))?;
            if sols.len() != 1 {
                return Err(HierarchyError::NotUnique {
                    order: spec.order,
                    orientation: spec.orientation,
                    solutions: sols.len(),
                });
            }
            sols.pop().expect("one solution")
        };
        let mut memo = self.memo.write().expect("memo lock");
        Ok(memo.entry(spec).or_insert_with(|| Arc::new(patch)).clone())
    }

    /// Step `k` of the spiral as an absolutely placed patch.
    pub fn spiral_patch(&self, step: SpiralStep) -> Result<Patch, HierarchyError> {
        Ok(self.corner(step.spec)?.translate(step.origin))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpiralStep {
    pub spec: CornerSpec,
    /// Absolute position of the corner's southwest cell.
    pub origin: Cell,
}

impl SpiralStep {
    pub fn bounds(&self) -> Rect {
        Rect::new(self.origin.0, self.origin.1, self.spec.side(), self.spec.side())
    }
}

/// Orientation of spiral step `k`: NE, SE, SW, NW, repeating.
pub fn spiral_orientation(k: u32) -> Diagonal {
    Diagonal::ALL[((k - 1) % 4) as usize]
}

fn next_step(prev: Option<&SpiralStep>, k: u32) -> SpiralStep {
    let spec = CornerSpec::new(k, spiral_orientation(k));
    let origin = match prev {
        None => (0, 0),
        Some(p) => {
            let (qx, qy) = quadrant_origin(k, p.spec.orientation.opposite());
            (p.origin.0 - qx, p.origin.1 - qy)
        }
    };
    SpiralStep { spec, origin }
}

/// Spiral steps `1..=upto`. Step 1 is the bumpy corner at the origin; step
/// `k` sits in quadrant `o_k.opposite()` of step `k + 1`.
pub fn spiral(upto: u32) -> Result<Vec<SpiralStep>, HierarchyError> {
    if upto > MAX_ORDER {
        return Err(HierarchyError::OrderTooLarge(upto));
    }
    let mut out: Vec<SpiralStep> = Vec::with_capacity(upto as usize);
    for k in 1..=upto {
        out.push(next_step(out.last(), k));
    }
    Ok(out)
}

/// First spiral step whose square contains `cell`.
pub fn spiral_step_containing(cell: Cell) -> Result<SpiralStep, HierarchyError> {
    let mut prev: Option<SpiralStep> = None;
    for k in 1..=MAX_ORDER {
        let step = next_step(prev.as_ref(), k);
        if step.bounds().contains(cell) {
            return Ok(step);
        }
        prev = Some(step);
    }
    Err(HierarchyError::OrderTooLarge(MAX_ORDER + 1))
}

struct Tables {
    bumpy: [OrientedTile; 4],
    dented: [OrientedTile; 4],
    arms: HashMap<(Side, Vec<Segment>), OrientedTile>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let h = Hierarchy::robinson();
        let cat = h.catalog();
        let pick = |kind| Diagonal::ALL.map(|o| h.corner_tile(kind, o).expect("corner present"));
        let mut arms = HashMap::new();
        for &t in cat.tiles() {
            let heading = match cat.classify(t).orientation {
                Orientation::N => Side::N,
                Orientation::E => Side::E,
                Orientation::S => Side::S,
                Orientation::W => Side::W,
                _ => continue,
            };
            let mut blue: Vec<Segment> = cat.decoration(t).blue().copied().collect();
            blue.sort();
            arms.insert((heading, blue), t);
        }
        Tables {
            bumpy: pick(BaseTileKind::BumpyCorner),
            dented: pick(BaseTileKind::DentedCorner),
            arms,
        }
    })
}

fn diag_index(o: Diagonal) -> usize {
    Diagonal::ALL.iter().position(|&d| d == o).expect("diagonal")
}

/// The arm on the central cross of `corner(order, o)` at local cell
/// `(lx, ly)`, which must lie on the cross but off the centre.
///
/// It points away from the centre. It carries a blue line across it, on its
/// tail side, exactly at distance `2^(order-2)` from the centre, where the
/// quadrant corners' lines meet the cross. It carries a blue line along it
/// exactly when the centre's blue corner extends that way.
fn gap_arm(order: u32, o: Diagonal, lx: i64, ly: i64) -> OrientedTile {
    let c = (1i64 << (order - 1)) - 1;
    let d = 1i64 << (order - 2);
    let (heading, t) = match (lx - c, ly - c) {
        (0, dy) if dy < 0 => (Side::S, -dy),
        (0, dy) => (Side::N, dy),
        (dx, 0) if dx < 0 => (Side::W, -dx),
        (dx, _) => (Side::E, dx),
    };
    let q = |n| pos(n, 4);
    let (zero, one) = (pos(0, 1), pos(1, 1));
    let vertical = |x| Segment::new(Ink::Blue, (x, zero), (x, one));
    let horizontal = |y| Segment::new(Ink::Blue, (zero, y), (one, y));
    let (ox, oy) = o.delta();
    let mut blue = Vec::new();
    if t == d {
        blue.push(match heading {
            Side::S => horizontal(q(3)),
            Side::N => horizontal(q(1)),
            Side::E => vertical(q(1)),
            Side::W => vertical(q(3)),
        });
    }
    let (along, at) = match heading {
        Side::N => (oy > 0, ox),
        Side::S => (oy < 0, ox),
        Side::E => (ox > 0, oy),
        Side::W => (ox < 0, oy),
    };
    if along {
        let p = if at > 0 { q(3) } else { q(1) };
        blue.push(match heading {
            Side::N | Side::S => vertical(p),
            Side::E | Side::W => horizontal(p),
        });
    }
    blue.sort();
    tables().arms[&(heading, blue)]
}

/// Tile at local cell `(lx, ly)` of the Robinson `corner(order, o)`, by
/// descending through the quadrants. `O(order)`.
pub fn corner_tile_at(spec: CornerSpec, (mut lx, mut ly): Cell) -> OrientedTile {
    let (mut n, mut o) = (spec.order, spec.orientation);
    loop {
        if n == 1 {
            return tables().bumpy[diag_index(o)];
        }
        let c = (1i64 << (n - 1)) - 1;
        if lx == c && ly == c {
            return tables().dented[diag_index(o)];
        }
        if lx == c || ly == c {
            return gap_arm(n, o, lx, ly);
        }
        let q = match (lx > c, ly > c) {
            (true, true) => Diagonal::NE,
            (true, false) => Diagonal::SE,
            (false, false) => Diagonal::SW,
            (false, true) => Diagonal::NW,
        };
        let (qx, qy) = quadrant_origin(n, q);
        lx -= qx;
        ly -= qy;
        o = quadrant_orientation(q);
        n -= 1;
    }
}

/// `corner(order, o)` of the Robinson catalog without search.
pub fn closed_form_corner(spec: CornerSpec) -> Patch {
    let s = spec.side();
    let cells = Rect::new(0, 0, s, s)
        .cells()
        .map(|c| Some(corner_tile_at(spec, c)))
        .collect();
    Patch::from_raw((0, 0), s, s, cells)
}

/// Tile of the limit tiling at an absolute cell.
pub fn limit_tile(x: i64, y: i64) -> Result<OrientedTile, HierarchyError> {
    let step = spiral_step_containing((x, y))?;
    Ok(corner_tile_at(step.spec, (x - step.origin.0, y - step.origin.1)))
}

/// The limit tiling restricted to `rect`.
pub fn limit_window(rect: Rect) -> Result<Patch, HierarchyError> {
    if rect.width == 0 || rect.height == 0 {
        return Err(SolverError::EmptyRegion {
            width: rect.width,
            height: rect.height,
        }
        .into());
    }
    let cells = rect
        .cells()
        .map(|(x, y)| limit_tile(x, y).map(Some))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Patch::from_raw((rect.x0, rect.y0), rect.width, rect.height, cells))
}

/// Robinson `corner(n, o)` through the shared memoised hierarchy.
pub fn corner(order: u32, orientation: Diagonal) -> Result<Arc<Patch>, HierarchyError> {
    Hierarchy::robinson().corner(CornerSpec::new(order, orientation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::validate;

    #[test]
    fn order_one_is_a_bumpy_corner() {
        for o in Diagonal::ALL {
            let p = corner(1, o).unwrap();
            let t = p.get((0, 0)).unwrap();
            assert_eq!(t.kind, BaseTileKind::BumpyCorner);
            assert_eq!(Catalog::robinson().classify(t).orientation, o.into());
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(corner(0, Diagonal::NE).unwrap_err(), HierarchyError::ZeroOrder);
    }

    #[test]
    fn quadrants_hold_smaller_corners() {
        for n in 2..=5 {
            for o in Diagonal::ALL {
                let p = corner(n, o).unwrap();
                let s = side(n - 1);
                for q in Diagonal::ALL {
                    let (qx, qy) = quadrant_origin(n, q);
                    let sub = p.subpatch(Rect::new(qx, qy, s, s)).unwrap().translate((-qx, -qy));
                    assert_eq!(sub, *corner(n - 1, q.opposite()).unwrap(), "n={n} o={o} q={q}");
                }
                let c = (side(n) / 2) as i64;
                let centre = p.get((c, c)).unwrap();
                assert_eq!(centre.kind, BaseTileKind::DentedCorner);
                assert_eq!(Catalog::robinson().classify(centre).orientation, o.into());
            }
        }
    }

    #[test]
    fn gap_arms_point_away_from_centre() {
        let cat = Catalog::robinson();
        let n = 4;
        let p = corner(n, Diagonal::SW).unwrap();
        let c = (side(n) / 2) as i64;
        for (cell, t) in p.iter() {
            let want = match (cell.0 - c, cell.1 - c) {
                (0, 0) => continue,
                (0, d) if d > 0 => Orientation::N,
                (0, _) => Orientation::S,
                (d, 0) if d > 0 => Orientation::E,
                (_, 0) => Orientation::W,
                _ => continue,
            };
            assert_eq!(cat.classify(t).orientation, want, "{cell:?}");
        }
    }

    #[test]
    fn closed_form_matches_search() {
        for n in 1..=5 {
            for o in Diagonal::ALL {
                let spec = CornerSpec::new(n, o);
                assert_eq!(closed_form_corner(spec), *corner(n, o).unwrap(), "{spec:?}");
            }
        }
    }

    #[test]
    fn corners_are_valid() {
        for n in 1..=5 {
            for o in Diagonal::ALL {
                assert!(validate(&corner(n, o).unwrap()).is_empty());
            }
        }
    }

    #[test]
    fn spiral_nests() {
        let steps = spiral(8).unwrap();
        assert_eq!(steps[0].origin, (0, 0));
        for w in steps.windows(2) {
            let big = closed_form_corner(w[1].spec).translate(w[1].origin);
            let small = closed_form_corner(w[0].spec).translate(w[0].origin);
            assert_eq!(big.subpatch(small.bounds()).unwrap(), small);
        }
    }

    #[test]
    fn spiral_orientations_cycle() {
        let got: Vec<_> = spiral(5).unwrap().iter().map(|s| s.spec.orientation).collect();
        use Diagonal::*;
        assert_eq!(got, [NE, SE, SW, NW, NE]);
    }

    #[test]
    fn spiral_covers_growing_squares() {
        let steps = spiral(12).unwrap();
        for k in 1..=40i64 {
            let r = Rect::new(-k, -k, 2 * k as usize + 1, 2 * k as usize + 1);
            assert!(steps.iter().any(|s| s.bounds().contains_rect(&r)), "K={k}");
        }
    }

    #[test]
    fn limit_agrees_with_spiral() {
        let step = spiral(7).unwrap()[6];
        let p = closed_form_corner(step.spec).translate(step.origin);
        for (c, t) in p.iter() {
            assert_eq!(limit_tile(c.0, c.1).unwrap(), t);
        }
        assert_eq!(
            limit_tile(0, 0).unwrap(),
            corner(1, Diagonal::NE).unwrap().get((0, 0)).unwrap()
        );
    }

    #[test]
    fn limit_window_is_valid() {
        let w = limit_window(Rect::centered(41)).unwrap();
        assert!(w.is_full());
        assert!(validate(&w).is_empty());
    }
}
