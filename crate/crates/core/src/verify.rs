//! Finite checks of the aperiodicity argument.
//!
//! Forcing regions are the square window of side `2^(n+1) - 1` with
//! `corner(n, NE)` fixed in its southwest quadrant. Inside that window the
//! fixed corner occupies `[0, h)²` with `h = 2^n - 1` and the window's centre
//! cell is `(h, h)`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::grid::{Cell, Patch, Rect};
use crate::hierarchy::{
    limit_tile, limit_window, quadrant_orientation, quadrant_origin, side, CornerSpec, Hierarchy, HierarchyError,
};
use crate::solver::{Boundary, DomainState, Region, SearchOptions, Solver, SolverError};
use crate::tiles::{
    ArrowOrientation, BaseTileKind, Catalog, Diagonal, Family, Orientation, OrientedTile, Position, Side,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("order {got} is out of range (need {min} <= order <= {max})")]
    Order { got: u32, min: u32, max: u32 },
    #[error("the zero vector is not a period candidate")]
    ZeroVector,
    #[error("maxnorm must be at least 1")]
    ZeroNorm,
    #[error("window {window} is too small for maxnorm {maxnorm}: shifted overlap falls under half the window")]
    WindowTooSmall { maxnorm: u32, window: usize },
    #[error("kmax must be at least 1")]
    ZeroSize,
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

fn check_order(n: u32, min: u32, max: u32) -> Result<(), VerifyError> {
    if n < min || n > max {
        return Err(VerifyError::Order { got: n, min, max });
    }
    Ok(())
}

/// Largest order accepted by the exhaustive checks.
pub const MAX_CHECK_ORDER: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniqueFill {
    pub orientation: Diagonal,
    pub count: u64,
    /// The single completion is valid and equals `corner(n, o)`.
    pub equals_corner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingReport {
    pub order: u32,
    pub window: usize,
    pub solutions: usize,
    /// Independent count of the same region.
    pub solver_count: u64,
    /// For each solution in canonical order, the orientation of the
    /// order-(n+1) corner it equals.
    pub classification: Vec<Option<Diagonal>>,
    /// Every solution restricted to the fixed corner's footprint is that corner.
    pub embeds_fixed: bool,
}

impl ForcingReport {
    pub fn passed(&self) -> bool {
        self.solutions > 0
            && self.solver_count == self.solutions as u64
            && self.embeds_fixed
            && self.classification.iter().all(Option::is_some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub label: char,
    pub claim: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodWitness {
    pub vector: (i64, i64),
    /// First cell `x` (row-major) with `limit_tile(x) != limit_tile(x + v)`.
    pub witness: Option<Cell>,
}

fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_point<S: Serializer>(p: &(Ratio<i64>, Ratio<i64>), s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&p.0.to_string())?;
    t.serialize_element(&p.1.to_string())?;
    t.end()
}

/// An axis-aligned square whose four sides are unbroken blue lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlueSquare {
    /// In plane coordinates, cell `(x, y)` covering `[x, x+1] × [y, y+1]`.
    #[serde(serialize_with = "ser_point")]
    pub southwest: (Ratio<i64>, Ratio<i64>),
    #[serde(serialize_with = "ser_ratio")]
    pub side: Ratio<i64>,
    /// Cells carrying the cycle, counterclockwise from the southwest corner.
    pub cycle: Vec<Cell>,
}

/// Exhaustive checks against one hierarchy, with a configurable solver.
pub struct Verifier<'h, 'c> {
    hierarchy: &'h Hierarchy<'c>,
    solver: Solver<'c>,
}

impl<'h, 'c> Verifier<'h, 'c> {
    pub fn new(hierarchy: &'h Hierarchy<'c>) -> Self {
        Verifier {
            hierarchy,
            solver: hierarchy.solver().clone(),
        }
    }

    pub fn with_options(mut self, options: SearchOptions) -> Self {
        self.solver = self.solver.with_options(options);
        self
    }

    pub fn solver(&self) -> &Solver<'c> {
        &self.solver
    }

    fn catalog(&self) -> &'c Catalog {
        self.solver.catalog()
    }

    /// Counts completions of the order-`n` gap region for each orientation.
    pub fn unique_fill(&self, n: u32) -> Result<Vec<UniqueFill>, VerifyError> {
        check_order(n, 2, MAX_CHECK_ORDER)?;
        Diagonal::ALL
            .into_iter()
            .map(|o| {
                let spec = CornerSpec::new(n, o);
                let region = self.hierarchy.fill_region(spec)?;
                let count = self.solver.count(&region)?;
                let equals_corner = count == 1 && {
                    let sol = self.solver.first(&region)?;
                    sol.violations_with(self.catalog()).is_empty()
                        && self.hierarchy.corner(spec).is_ok_and(|c| *c == sol)
                };
                Ok(UniqueFill {
                    orientation: o,
                    count,
                    equals_corner,
                })
            })
            .collect()
    }

    /// Window of side `2^(n+1) - 1` with `corner(n, NE)` in its SW quadrant.
    pub fn forcing_region(&self, n: u32) -> Result<Region, VerifyError> {
        check_order(n, 1, MAX_CHECK_ORDER - 1)?;
        let s = side(n + 1);
        let mut r = Region::new(s, s, Boundary::Open)?;
        let fixed = self.hierarchy.corner(CornerSpec::new(n, Diagonal::NE))?;
        r.fix_patch(&fixed)?;
        Ok(r)
    }

    pub fn forcing(&self, n: u32) -> Result<ForcingReport, VerifyError> {
        let region = self.forcing_region(n)?;
        let fixed = self.hierarchy.corner(CornerSpec::new(n, Diagonal::NE))?;
        let sols = self.solver.enumerate(&region, None)?;
        let solver_count = self.solver.count(&region)?;
        // Corners the mutated catalogs cannot build simply classify nothing.
        let bigger: Vec<(Diagonal, Patch)> = Diagonal::ALL
            .into_iter()
            .filter_map(|o| {
                let c = self.hierarchy.corner(CornerSpec::new(n + 1, o)).ok()?;
                Some((o, (*c).clone()))
            })
            .collect();
        let classification = sols
            .iter()
            .map(|s| bigger.iter().find(|(_, c)| c == s).map(|(o, _)| *o))
            .collect();
        let embeds_fixed = sols
            .iter()
            .all(|s| s.subpatch(fixed.bounds()).is_ok_and(|sub| sub == *fixed));
        Ok(ForcingReport {
            order: n,
            window: region.width(),
            solutions: sols.len(),
            solver_count,
            classification,
            embeds_fixed,
        })
    }

    /// Evaluates the step claims on exact per-cell projections of the
    /// forcing region.
    pub fn step_checks(&self, n: u32) -> Result<Vec<StepCheck>, VerifyError> {
        check_order(n, 1, 2)?;
        let region = self.forcing_region(n)?;
        let proj = self.solver.project_all(&region)?;
        let ctx = StepContext {
            n,
            h: side(n) as i64,
            cat: self.catalog(),
            proj: &proj,
            region: &region,
            verifier: self,
        };
        STEP_TABLE
            .iter()
            .map(|row| {
                Ok(StepCheck {
                    label: row.label,
                    claim: row.claim,
                    passed: (row.check)(&ctx)?,
                })
            })
            .collect()
    }

    /// Solution counts on `k × k` tori for `k = 1..=kmax`.
    pub fn torus_counts(&self, kmax: usize) -> Result<Vec<(usize, u64)>, VerifyError> {
        if kmax == 0 {
            return Err(VerifyError::ZeroSize);
        }
        (1..=kmax)
            .map(|k| Ok((k, self.solver.count(&Region::new(k, k, Boundary::Torus)?)?)))
            .collect()
    }
}

struct StepContext<'a, 'h, 'c> {
    n: u32,
    h: i64,
    cat: &'c Catalog,
    proj: &'a DomainState<'c>,
    region: &'a Region,
    verifier: &'a Verifier<'h, 'c>,
}

impl StepContext<'_, '_, '_> {
    fn tiles(&self, c: Cell) -> Vec<OrientedTile> {
        self.proj.domain(c)
    }

    /// Nonempty and every member satisfies `f`.
    fn all(&self, c: Cell, f: impl Fn(OrientedTile) -> bool) -> bool {
        let ts = self.tiles(c);
        !ts.is_empty() && ts.into_iter().all(f)
    }

    fn is_arm(&self, t: OrientedTile) -> bool {
        self.cat.classify(t).family == Family::Arm
    }

    fn heading(&self, t: OrientedTile) -> Orientation {
        self.cat.classify(t).orientation
    }

    fn mid(&self) -> i64 {
        (self.h - 1) / 2
    }
}

type StepFn = fn(&StepContext) -> Result<bool, VerifyError>;

struct StepRow {
    label: char,
    claim: &'static str,
    check: StepFn,
}

/// One row per lettered step of the forcing argument.
const STEP_TABLE: &[StepRow] = &[
    StepRow {
        label: 'a',
        claim: "the fixed corner's cells admit only their own tiles",
        check: |c| Ok(c.region_fixed().iter().all(|&(cell, t)| c.tiles(cell) == [t])),
    },
    StepRow {
        label: 'b',
        claim: "cells along the east side of the fixed corner are arms",
        check: |c| Ok((0..c.h).all(|y| c.all((c.h, y), |t| c.is_arm(t)))),
    },
    StepRow {
        label: 'c',
        claim: "the east-side cell level with the fixed corner's centre has inwards north arrows",
        check: |c| {
            Ok(c.all((c.h, c.mid()), |t| {
                c.cat
                    .edge(t, Side::N)
                    .slots()
                    .iter()
                    .all(|s| s.orientation == ArrowOrientation::Inwards)
            }))
        },
    },
    StepRow {
        label: 'd',
        claim: "east-side arms from that level northwards are S-arms",
        check: |c| Ok((c.mid()..c.h).all(|y| c.all((c.h, y), |t| c.heading(t) == Orientation::S))),
    },
    StepRow {
        label: 'e',
        claim: "north-side cells are arms, W-arms from the centre's level eastwards",
        check: |c| {
            Ok((0..c.h).all(|x| c.all((x, c.h), |t| c.is_arm(t)))
                && (c.mid()..c.h).all(|x| c.all((x, c.h), |t| c.heading(t) == Orientation::W)))
        },
    },
    StepRow {
        label: 'f',
        claim: "the cell diagonally beyond the fixed corner is a dented corner",
        check: |c| Ok(c.all((c.h, c.h), |t| t.kind == BaseTileKind::DentedCorner)),
    },
    StepRow {
        label: 'g',
        claim: "the cells east and north of that corner are arms pointing away from it",
        check: |c| {
            Ok(c.all((c.h + 1, c.h), |t| c.heading(t) == Orientation::E)
                && c.all((c.h, c.h + 1), |t| c.heading(t) == Orientation::N))
        },
    },
    StepRow {
        label: 'h',
        claim: "the three other cells diagonally adjacent to the centre are bumpy corners",
        check: |c| {
            let h = c.h;
            Ok([(h + 1, h + 1), (h + 1, h - 1), (h - 1, h + 1)]
                .into_iter()
                .all(|cell| c.all(cell, |t| t.kind == BaseTileKind::BumpyCorner)))
        },
    },
    StepRow {
        label: 'i',
        claim: "bumpy corners in the other quadrants sit exactly where an order-n corner has them",
        check: |c| c.quadrants_match(|t| t.kind == BaseTileKind::BumpyCorner),
    },
    StepRow {
        label: 'j',
        claim: "the central cross holds arms pointing away from the centre",
        check: |c| {
            let (h, s) = (c.h, 2 * c.h + 1);
            Ok((0..s).filter(|&i| i != h).all(|i| {
                let (west_east, south_north) = if i < h {
                    (Orientation::W, Orientation::S)
                } else {
                    (Orientation::E, Orientation::N)
                };
                c.all((i, h), |t| c.heading(t) == west_east) && c.all((h, i), |t| c.heading(t) == south_north)
            }))
        },
    },
    StepRow {
        label: 'k',
        claim: "the other quadrants' central corners face the centre",
        check: |c| {
            let m = c.mid();
            Ok(other_quadrants().all(|q| {
                let (qx, qy) = quadrant_origin(c.n + 1, q);
                let want = Orientation::from(quadrant_orientation(q));
                c.all((qx + m, qy + m), |t| {
                    c.cat.classify(t).family == Family::Corner && c.heading(t) == want
                })
            }))
        },
    },
    StepRow {
        label: 'l',
        claim: "orienting the central corner leaves exactly one completion",
        check: |c| {
            for o in Diagonal::ALL {
                let dc = c.verifier.hierarchy.corner_tile(BaseTileKind::DentedCorner, o)?;
                let mut r = c.region.clone();
                r.fix((c.h, c.h), dc)?;
                if c.verifier.solver.count(&r)? != 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    },
];

fn other_quadrants() -> impl Iterator<Item = Diagonal> {
    [Diagonal::SE, Diagonal::NE, Diagonal::NW].into_iter()
}

impl StepContext<'_, '_, '_> {
    fn region_fixed(&self) -> Vec<(Cell, OrientedTile)> {
        Rect::new(0, 0, self.h as usize, self.h as usize)
            .cells()
            .filter_map(|cell| self.region.fixed(cell).map(|t| (cell, t)))
            .collect()
    }

    /// In each non-fixed quadrant, cells where `pred` holds for the expected
    /// order-n corner admit only such tiles, and all other cells admit none.
    fn quadrants_match(&self, pred: impl Fn(OrientedTile) -> bool) -> Result<bool, VerifyError> {
        for q in other_quadrants() {
            let want = self
                .verifier
                .hierarchy
                .corner(CornerSpec::new(self.n, quadrant_orientation(q)))?;
            let (qx, qy) = quadrant_origin(self.n + 1, q);
            for ((x, y), t) in want.iter() {
                let got = self.tiles((qx + x, qy + y));
                let ok = if pred(t) {
                    !got.is_empty() && got.iter().all(|&u| pred(u))
                } else {
                    got.iter().all(|&u| !pred(u))
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Scans `limit_window(centered(window))` for each nonzero `v` with
/// `‖v‖∞ <= maxnorm`, vectors in row-major order.
pub fn period_scan(maxnorm: u32, window: usize) -> Result<Vec<PeriodWitness>, VerifyError> {
    if maxnorm == 0 {
        return Err(VerifyError::ZeroNorm);
    }
    let m = maxnorm as usize;
    if window <= m || 2 * (window - m) * (window - m) < window * window {
        return Err(VerifyError::WindowTooSmall { maxnorm, window });
    }
    let patch = limit_window(Rect::centered(window))?;
    let m = maxnorm as i64;
    let mut out = Vec::new();
    for b in -m..=m {
        for a in -m..=m {
            if (a, b) != (0, 0) {
                out.push(period_witness(&patch, (a, b))?);
            }
        }
    }
    Ok(out)
}

/// First cell of `patch` (row-major) whose tile differs from the tile `v`
/// away, among cells whose shift stays inside the patch.
pub fn period_witness(patch: &Patch, v: (i64, i64)) -> Result<PeriodWitness, VerifyError> {
    if v == (0, 0) {
        return Err(VerifyError::ZeroVector);
    }
    let b = patch.bounds();
    let witness = b
        .cells()
        .filter(|&(x, y)| b.contains((x + v.0, y + v.1)))
        .find(|&(x, y)| patch.get((x, y)) != patch.get((x + v.0, y + v.1)));
    Ok(PeriodWitness { vector: v, witness })
}

/// Recomputes a witness from two independent single-cell evaluations.
pub fn recheck_witness(w: &PeriodWitness) -> Result<bool, VerifyError> {
    let Some((x, y)) = w.witness else {
        return Ok(false);
    };
    let here = limit_window(Rect::new(x, y, 1, 1))?.get((x, y));
    let there = limit_window(Rect::new(x + w.vector.0, y + w.vector.1, 1, 1))?.get((x + w.vector.0, y + w.vector.1));
    Ok(here.is_some() && here != there && here == Some(limit_tile(x, y)?))
}

/// Blue squares of a Robinson patch; see [`blue_squares_with`].
pub fn blue_squares(p: &Patch) -> Vec<BlueSquare> {
    blue_squares_with(Catalog::robinson(), p)
}

/// Axis-aligned squares whose sides are unbroken runs of blue decoration,
/// sorted by side descending, then by southwest corner (south first).
///
/// Blue lines sit on quarter-unit offsets, so the search runs on the
/// quarter-unit lattice of the patch's bounding box.
pub fn blue_squares_with(cat: &Catalog, p: &Patch) -> Vec<BlueSquare> {
    let (w, h) = (4 * p.width() + 1, 4 * p.height() + 1);
    let mut east = vec![false; w * h];
    let mut north = vec![false; w * h];
    let at = |x: usize, y: usize| y * w + x;
    let quarter = |r: Position| (r * 4).to_integer() as usize;
    for ((cx, cy), t) in p.iter() {
        let bx = 4 * (cx - p.origin().0) as usize;
        let by = 4 * (cy - p.origin().1) as usize;
        for s in cat.decoration(t).blue() {
            let (x0, y0) = (bx + quarter(s.from.0), by + quarter(s.from.1));
            let (x1, y1) = (bx + quarter(s.to.0), by + quarter(s.to.1));
            if y0 == y1 {
                for x in x0..x1 {
                    east[at(x, y0)] = true;
                }
            } else {
                for y in y0..y1 {
                    north[at(x0, y)] = true;
                }
            }
        }
    }
    // Run lengths of blue eastwards and northwards from each lattice point.
    let mut run_e = vec![0usize; w * h];
    let mut run_n = vec![0usize; w * h];
    for y in (0..h).rev() {
        for x in (0..w).rev() {
            if east[at(x, y)] {
                run_e[at(x, y)] = 1 + if x + 1 < w { run_e[at(x + 1, y)] } else { 0 };
            }
            if north[at(x, y)] {
                run_n[at(x, y)] = 1 + if y + 1 < h { run_n[at(x, y + 1)] } else { 0 };
            }
        }
    }
    let mut found = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let reach = run_e[at(x, y)].min(run_n[at(x, y)]);
            for s in 1..=reach {
                if run_n[at(x + s, y)] >= s && run_e[at(x, y + s)] >= s {
                    found.push((s, x, y));
                }
            }
        }
    }
    found.sort_by_key(|&(s, x, y)| (std::cmp::Reverse(s), y, x));
    let (ox, oy) = p.origin();
    found
        .into_iter()
        .map(|(s, x, y)| {
            let q = |v: usize, o: i64| Ratio::new(v as i64 + 4 * o, 4);
            BlueSquare {
                southwest: (q(x, ox), q(y, oy)),
                side: Ratio::new(s as i64, 4),
                cycle: square_cycle(s, x, y, (ox, oy)),
            }
        })
        .collect()
}

/// Cells under the unit steps of the perimeter, counterclockwise from the
/// southwest corner, consecutive repeats removed.
fn square_cycle(s: usize, x: usize, y: usize, origin: Cell) -> Vec<Cell> {
    let (x, y, s) = (x as i64, y as i64, s as i64);
    // A horizontal step from (qx, qy) lies in the cell containing its
    // midpoint; points on a cell boundary go to the cell north or east of it.
    let cell = |qx2: i64, qy2: i64| (origin.0 + qx2.div_euclid(8), origin.1 + qy2.div_euclid(8));
    let mut steps = Vec::with_capacity(4 * s as usize);
    for i in 0..s {
        steps.push(cell(2 * (x + i) + 1, 2 * y));
    }
    for i in 0..s {
        steps.push(cell(2 * (x + s), 2 * (y + i) + 1));
    }
    for i in (0..s).rev() {
        steps.push(cell(2 * (x + i) + 1, 2 * (y + s)));
    }
    for i in (0..s).rev() {
        steps.push(cell(2 * x, 2 * (y + i) + 1));
    }
    steps.dedup();
    if steps.len() > 1 && steps.first() == steps.last() {
        steps.pop();
    }
    steps
}

/// Largest blue-square side in `corner(n, o)` for `n = 1..=order` (zero when
/// there is none).
pub fn blue_growth(order: u32, o: Diagonal) -> Result<Vec<(u32, Ratio<i64>)>, VerifyError> {
    check_order(order, 1, MAX_CHECK_ORDER)?;
    let h = Hierarchy::robinson();
    (1..=order)
        .map(|n| {
            let c = h.corner(CornerSpec::new(n, o))?;
            let side = blue_squares(&c).first().map_or(Ratio::from_integer(0), |b| b.side);
            Ok((n, side))
        })
        .collect()
}

pub fn unique_fill(n: u32) -> Result<Vec<UniqueFill>, VerifyError> {
    Verifier::new(Hierarchy::robinson()).unique_fill(n)
}

pub fn forcing(n: u32) -> Result<ForcingReport, VerifyError> {
    Verifier::new(Hierarchy::robinson()).forcing(n)
}

pub fn step_checks(n: u32) -> Result<Vec<StepCheck>, VerifyError> {
    Verifier::new(Hierarchy::robinson()).step_checks(n)
}

pub fn torus_empty(kmax: usize) -> Result<Vec<(usize, u64)>, VerifyError> {
    Verifier::new(Hierarchy::robinson()).torus_counts(kmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::corner;

    #[test]
    fn unique_fill_small_orders() {
        for n in [2, 3] {
            for f in unique_fill(n).unwrap() {
                assert_eq!(f.count, 1, "n={n} {f:?}");
                assert!(f.equals_corner);
            }
        }
        assert!(unique_fill(1).is_err());
    }

    #[test]
    fn forcing_order_one() {
        let r = forcing(1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.window, 3);
        assert_eq!(r.solutions, 4);
        let mut seen: Vec<_> = r.classification.iter().flatten().copied().collect();
        seen.sort();
        assert_eq!(seen, Diagonal::ALL.to_vec());
    }

    #[test]
    fn steps_order_one() {
        for c in step_checks(1).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn small_tori_are_empty() {
        assert_eq!(torus_empty(3).unwrap(), vec![(1, 0), (2, 0), (3, 0)]);
    }

    #[test]
    fn zero_vector_rejected() {
        let p = corner(2, Diagonal::NE).unwrap();
        assert_eq!(period_witness(&p, (0, 0)).unwrap_err(), VerifyError::ZeroVector);
        assert!(matches!(period_scan(8, 20), Err(VerifyError::WindowTooSmall { .. })));
    }

    #[test]
    fn unit_shift_has_witness() {
        let w = period_scan(1, 15).unwrap();
        assert_eq!(w.len(), 8);
        for x in &w {
            assert!(x.witness.is_some());
            assert!(recheck_witness(x).unwrap());
        }
    }

    #[test]
    fn no_square_in_single_tile() {
        for o in Diagonal::ALL {
            assert!(blue_squares(&corner(1, o).unwrap()).is_empty());
        }
    }

    #[test]
    fn order_two_square() {
        let sq = blue_squares(&corner(2, Diagonal::NE).unwrap());
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].side, Ratio::new(3, 2));
        assert_eq!(sq[0].southwest, (Ratio::new(3, 4), Ratio::new(3, 4)));
        assert_eq!(
            sq[0].cycle,
            vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
        );
        // Where the centre's blue corner meets the NE quadrant's.
        assert_eq!(sq[1].side, Ratio::new(1, 2));
        assert_eq!(sq[1].southwest, (Ratio::new(7, 4), Ratio::new(7, 4)));
        assert_eq!(sq[1].cycle, vec![(1, 1), (2, 1), (2, 2), (1, 2)]);
    }

    #[test]
    fn squares_translate() {
        let p = corner(3, Diagonal::SW).unwrap();
        let q = p.translate((5, -3));
        let a = blue_squares(&p);
        let b = blue_squares(&q);
        assert_eq!(a.len(), b.len());
        for (s, t) in a.iter().zip(&b) {
            assert_eq!(t.side, s.side);
            assert_eq!(t.southwest, (s.southwest.0 + 5, s.southwest.1 - 3));
            let moved: Vec<_> = s.cycle.iter().map(|&(x, y)| (x + 5, y - 3)).collect();
            assert_eq!(t.cycle, moved);
        }
    }
}
