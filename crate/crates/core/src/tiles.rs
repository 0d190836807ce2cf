//! The six Robinson tiles, their arrows and decorations, the D4 action and the
//! oriented-tile catalog.
//!
//! Every tile is a unit square. Each of its four edges carries exactly one
//! triangular arrow, either a bump (outwards) or a dent (inwards). An arrow that
//! sits on a blue line has type [`ArrowType::Blue`]; blue lines run at offset
//! 1/4 or 3/4 from the edge ends, so a blue arrow sits at that offset. Plain
//! arrows sit at the middle of their edge.
//!
//! Edge positions are read in a fixed absolute direction: west to east on
//! horizontal edges, south to north on vertical ones.
//!
//! Besides the edge arrows, the bumpy corner has bumps at its four tile corners
//! and every other tile is dented there. Around every vertex of a tiling exactly
//! one of the four incident tiles is therefore the bumpy corner. This is not an
//! edge relation; see [`CornerNotch`] and the vertex checks in `grid` and
//! `solver`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact position along an edge or inside the unit square.
pub type Position = Ratio<i32>;

pub fn pos(n: i32, d: i32) -> Position {
    Ratio::new(n, d)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("slot position {0} is not strictly between 0 and 1")]
    PositionOutOfRange(Position),
    #[error("two slots share position {0} on one edge")]
    DuplicatePosition(Position),
    #[error("arm {kind:?} has {count} outwards arrows, expected exactly 1")]
    ArmOutwards { kind: BaseTileKind, count: usize },
    #[error("{kind:?} {side:?}: arrow at {position} is {ty:?} but blue decoration disagrees")]
    DecorationMismatch {
        kind: BaseTileKind,
        side: Side,
        position: Position,
        ty: ArrowType,
    },
    #[error("{kind:?} {side:?}: blue line reaches the edge at {position} without an arrow")]
    BlueWithoutArrow {
        kind: BaseTileKind,
        side: Side,
        position: Position,
    },
    #[error("corner {0:?} has no blue corner decoration")]
    MissingBlueCorner(BaseTileKind),
    #[error("catalog holds {0} tiles, more than the 64 a domain bitset can index")]
    CatalogTooLarge(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileIdError {
    #[error("malformed tile id `{0}` (expected KIND:rN:f|n)")]
    Malformed(String),
    #[error("tile id `{id}` is not canonical; it denotes the same tile as `{canonical}`")]
    NonCanonical { id: String, canonical: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrowType {
    Plain,
    Blue,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrowOrientation {
    /// A dent.
    Inwards,
    /// A bump.
    Outwards,
}

impl ArrowOrientation {
    pub fn opposite(self) -> Self {
        match self {
            ArrowOrientation::Inwards => ArrowOrientation::Outwards,
            ArrowOrientation::Outwards => ArrowOrientation::Inwards,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowSlot {
    pub position: Position,
    pub orientation: ArrowOrientation,
    pub arrow_type: ArrowType,
}

impl ArrowSlot {
    pub fn new(position: Position, orientation: ArrowOrientation, arrow_type: ArrowType) -> Self {
        ArrowSlot {
            position,
            orientation,
            arrow_type,
        }
    }
}

/// The arrows of one tile side, sorted by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSignature {
    slots: Vec<ArrowSlot>,
}

impl EdgeSignature {
    pub fn new(mut slots: Vec<ArrowSlot>) -> Result<Self, TileError> {
        slots.sort();
        for s in &slots {
            if s.position <= pos(0, 1) || s.position >= pos(1, 1) {
                return Err(TileError::PositionOutOfRange(s.position));
            }
        }
        for w in slots.windows(2) {
            if w[0].position == w[1].position {
                return Err(TileError::DuplicatePosition(w[0].position));
            }
        }
        Ok(EdgeSignature { slots })
    }

    fn single(position: Position, orientation: ArrowOrientation, arrow_type: ArrowType) -> Self {
        EdgeSignature {
            slots: vec![ArrowSlot::new(position, orientation, arrow_type)],
        }
    }

    pub fn slots(&self) -> &[ArrowSlot] {
        &self.slots
    }

    pub fn outwards(&self) -> usize {
        self.slots
            .iter()
            .filter(|s| s.orientation == ArrowOrientation::Outwards)
            .count()
    }

    /// The same edge read in the opposite direction (`p -> 1 - p`).
    pub fn reversed(&self) -> Self {
        let mut slots: Vec<_> = self
            .slots
            .iter()
            .map(|s| ArrowSlot {
                position: pos(1, 1) - s.position,
                ..*s
            })
            .collect();
        slots.sort();
        EdgeSignature { slots }
    }
}

impl fmt::Display for EdgeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let o = match s.orientation {
                ArrowOrientation::Inwards => "in",
                ArrowOrientation::Outwards => "out",
            };
            let t = match s.arrow_type {
                ArrowType::Plain => "plain",
                ArrowType::Blue => "blue",
            };
            write!(f, "{} {} {}", s.position, o, t)?;
        }
        f.write_str("]")
    }
}

/// Jigsaw fit of two abutting edges.
///
/// `a` is the east (north) side of the west (south) tile and `b` the west
/// (south) side of the east (north) tile. Every bump must meet a dent of the
/// same type at the same position.
pub fn compatible(a: &EdgeSignature, b: &EdgeSignature) -> bool {
    a.slots.len() == b.slots.len()
        && a.slots
            .iter()
            .zip(&b.slots)
            .all(|(x, y)| x.position == y.position && x.arrow_type == y.arrow_type && x.orientation != y.orientation)
}

/// Same as [`compatible`] but blind to arrow types. Used as a diagnostic
/// mutation of the matching rule.
pub fn compatible_ignoring_types(a: &EdgeSignature, b: &EdgeSignature) -> bool {
    a.slots.len() == b.slots.len()
        && a.slots
            .iter()
            .zip(&b.slots)
            .all(|(x, y)| x.position == y.position && x.orientation != y.orientation)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    N,
    E,
    S,
    W,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::N, Side::E, Side::S, Side::W];

    pub fn opposite(self) -> Side {
        match self {
            Side::N => Side::S,
            Side::E => Side::W,
            Side::S => Side::N,
            Side::W => Side::E,
        }
    }

    pub fn delta(self) -> (i64, i64) {
        match self {
            Side::N => (0, 1),
            Side::E => (1, 0),
            Side::S => (0, -1),
            Side::W => (-1, 0),
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn from_delta(d: (i64, i64)) -> Side {
        match d {
            (0, 1) => Side::N,
            (1, 0) => Side::E,
            (0, -1) => Side::S,
            (-1, 0) => Side::W,
            _ => unreachable!("not a unit axis vector: {d:?}"),
        }
    }
}

/// Diagonal orientation of a corner.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Diagonal {
    NE,
    SE,
    SW,
    NW,
}

impl Diagonal {
    /// Clockwise order starting at NE.
    pub const ALL: [Diagonal; 4] = [Diagonal::NE, Diagonal::SE, Diagonal::SW, Diagonal::NW];

    pub fn clockwise(self) -> Diagonal {
        match self {
            Diagonal::NE => Diagonal::SE,
            Diagonal::SE => Diagonal::SW,
            Diagonal::SW => Diagonal::NW,
            Diagonal::NW => Diagonal::NE,
        }
    }

    pub fn opposite(self) -> Diagonal {
        self.clockwise().clockwise()
    }

    pub fn delta(self) -> (i64, i64) {
        match self {
            Diagonal::NE => (1, 1),
            Diagonal::SE => (1, -1),
            Diagonal::SW => (-1, -1),
            Diagonal::NW => (-1, 1),
        }
    }

    fn from_delta(d: (i64, i64)) -> Diagonal {
        match d {
            (1, 1) => Diagonal::NE,
            (1, -1) => Diagonal::SE,
            (-1, -1) => Diagonal::SW,
            (-1, 1) => Diagonal::NW,
            _ => unreachable!("not a diagonal unit vector: {d:?}"),
        }
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Diagonal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "NE" => Ok(Diagonal::NE),
            "SE" => Ok(Diagonal::SE),
            "SW" => Ok(Diagonal::SW),
            "NW" => Ok(Diagonal::NW),
            _ => Err(format!("unknown diagonal `{s}` (expected NE, SE, SW or NW)")),
        }
    }
}

/// Orientation of an arm (cardinal) or a corner (diagonal).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    N,
    E,
    S,
    W,
    NE,
    SE,
    SW,
    NW,
}

impl From<Side> for Orientation {
    fn from(s: Side) -> Self {
        match s {
            Side::N => Orientation::N,
            Side::E => Orientation::E,
            Side::S => Orientation::S,
            Side::W => Orientation::W,
        }
    }
}

impl From<Diagonal> for Orientation {
    fn from(d: Diagonal) -> Self {
        match d {
            Diagonal::NE => Orientation::NE,
            Diagonal::SE => Orientation::SE,
            Diagonal::SW => Orientation::SW,
            Diagonal::NW => Orientation::NW,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseTileKind {
    BumpyCorner,
    DentedCorner,
    Arm1,
    Arm2,
    Arm3,
    Arm4,
}

impl BaseTileKind {
    pub const ALL: [BaseTileKind; 6] = [
        BaseTileKind::BumpyCorner,
        BaseTileKind::DentedCorner,
        BaseTileKind::Arm1,
        BaseTileKind::Arm2,
        BaseTileKind::Arm3,
        BaseTileKind::Arm4,
    ];

    pub fn code(self) -> &'static str {
        match self {
            BaseTileKind::BumpyCorner => "BC",
            BaseTileKind::DentedCorner => "DC",
            BaseTileKind::Arm1 => "A1",
            BaseTileKind::Arm2 => "A2",
            BaseTileKind::Arm3 => "A3",
            BaseTileKind::Arm4 => "A4",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        BaseTileKind::ALL.into_iter().find(|k| k.code() == code)
    }

    pub fn is_corner(self) -> bool {
        matches!(self, BaseTileKind::BumpyCorner | BaseTileKind::DentedCorner)
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Element of D4: optional mirror across the vertical axis, then `rotation`
/// counterclockwise quarter-turns.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub rotation: u8,
    pub reflected: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        rotation: 0,
        reflected: false,
    };

    /// All eight elements in canonical order.
    pub const ALL: [Symmetry; 8] = [
        Symmetry::new(0, false),
        Symmetry::new(1, false),
        Symmetry::new(2, false),
        Symmetry::new(3, false),
        Symmetry::new(0, true),
        Symmetry::new(1, true),
        Symmetry::new(2, true),
        Symmetry::new(3, true),
    ];

    pub const fn new(rotation: u8, reflected: bool) -> Self {
        Symmetry {
            rotation: rotation % 4,
            reflected,
        }
    }

    pub fn rotation(quarter_turns: u8) -> Self {
        Symmetry::new(quarter_turns, false)
    }

    pub fn reflection() -> Self {
        Symmetry::new(0, true)
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Symmetry) -> Symmetry {
        // R^a F^f R^b F^g = R^(a ± b) F^(f xor g), with F R F = R^-1.
        let b = if next.reflected {
            (4 - self.rotation) % 4
        } else {
            self.rotation
        };
        Symmetry::new(next.rotation + b, self.reflected ^ next.reflected)
    }

    pub fn inverse(self) -> Symmetry {
        if self.reflected {
            self
        } else {
            Symmetry::new(4 - self.rotation, false)
        }
    }

    /// Acts on a direction vector.
    pub fn apply_vec(self, (mut x, mut y): (i64, i64)) -> (i64, i64) {
        if self.reflected {
            x = -x;
        }
        for _ in 0..self.rotation {
            (x, y) = (-y, x);
        }
        (x, y)
    }

    /// Acts on a point of the unit square.
    pub fn apply_point(self, (mut x, mut y): (Position, Position)) -> (Position, Position) {
        let one = pos(1, 1);
        if self.reflected {
            x = one - x;
        }
        for _ in 0..self.rotation {
            (x, y) = (one - y, x);
        }
        (x, y)
    }

    pub fn apply_side(self, side: Side) -> Side {
        Side::from_delta(self.apply_vec(side.delta()))
    }

    pub fn apply_diagonal(self, d: Diagonal) -> Diagonal {
        Diagonal::from_delta(self.apply_vec(d.delta()))
    }

    fn order_key(self) -> (bool, u8) {
        (self.reflected, self.rotation)
    }
}

impl PartialOrd for Symmetry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symmetry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

/// A base tile placed under a symmetry. Ordered by kind, then symmetry.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedTile {
    pub kind: BaseTileKind,
    pub sym: Symmetry,
}

impl OrientedTile {
    pub const fn new(kind: BaseTileKind, sym: Symmetry) -> Self {
        OrientedTile { kind, sym }
    }

    /// The canonical id, e.g. `BC:r0:n`.
    pub fn id(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OrientedTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:r{}:{}",
            self.kind.code(),
            self.sym.rotation,
            if self.sym.reflected { 'f' } else { 'n' }
        )
    }
}

fn parse_id_syntax(id: &str) -> Result<OrientedTile, TileIdError> {
    let bad = || TileIdError::Malformed(id.to_string());
    let mut parts = id.split(':');
    let (Some(k), Some(r), Some(f), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    let kind = BaseTileKind::from_code(k).ok_or_else(bad)?;
    let rotation = match r {
        "r0" => 0,
        "r1" => 1,
        "r2" => 2,
        "r3" => 3,
        _ => return Err(bad()),
    };
    let reflected = match f {
        "f" => true,
        "n" => false,
        _ => return Err(bad()),
    };
    Ok(OrientedTile::new(kind, Symmetry::new(rotation, reflected)))
}

impl FromStr for OrientedTile {
    type Err = TileIdError;

    /// Parses against the Robinson catalog; non-canonical ids are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Catalog::robinson().parse_id(s)
    }
}

/// Bumps or dents at the four tile corners.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CornerNotch {
    Bump,
    Dent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ink {
    Blue,
    Black,
}

/// Straight segment in tile-local unit-square coordinates, endpoints ordered.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub ink: Ink,
    pub from: (Position, Position),
    pub to: (Position, Position),
}

impl Segment {
    pub fn new(ink: Ink, a: (Position, Position), b: (Position, Position)) -> Self {
        let (from, to) = if a <= b { (a, b) } else { (b, a) };
        Segment { ink, from, to }
    }

    fn transformed(&self, sym: Symmetry) -> Segment {
        Segment::new(self.ink, sym.apply_point(self.from), sym.apply_point(self.to))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Decoration {
    segments: Vec<Segment>,
}

impl Decoration {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Decoration { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn blue(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| s.ink == Ink::Blue)
    }

    pub fn transformed(&self, sym: Symmetry) -> Decoration {
        Decoration::new(self.segments.iter().map(|s| s.transformed(sym)).collect())
    }

    /// Positions where blue segments touch the given side.
    fn blue_hits(&self, side: Side) -> Vec<Position> {
        let zero = pos(0, 1);
        let one = pos(1, 1);
        let mut out = Vec::new();
        for s in self.blue() {
            for (x, y) in [s.from, s.to] {
                let hit = match side {
                    Side::N if y == one => Some(x),
                    Side::S if y == zero => Some(x),
                    Side::E if x == one => Some(y),
                    Side::W if x == zero => Some(y),
                    _ => None,
                };
                if let Some(p) = hit {
                    if p > zero && p < one {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Direction of the blue corner's concavity: the sum of the directions of
    /// two blue segments leaving a common interior point.
    fn blue_concavity(&self) -> Option<Diagonal> {
        let blue: Vec<_> = self.blue().collect();
        for (i, a) in blue.iter().enumerate() {
            for b in &blue[i + 1..] {
                for pa in [a.from, a.to] {
                    for pb in [b.from, b.to] {
                        if pa != pb {
                            continue;
                        }
                        let da = direction(pa, if pa == a.from { a.to } else { a.from });
                        let db = direction(pb, if pb == b.from { b.to } else { b.from });
                        let sum = (da.0 + db.0, da.1 + db.1);
                        if sum.0.abs() == 1 && sum.1.abs() == 1 {
                            return Some(Diagonal::from_delta(sum));
                        }
                    }
                }
            }
        }
        None
    }
}

fn direction(from: (Position, Position), to: (Position, Position)) -> (i64, i64) {
    let sx = (to.0 - from.0).numer().signum() as i64;
    let sy = (to.1 - from.1).numer().signum() as i64;
    (sx, sy)
}

/// One row of the base tile table, in its drawn orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTile {
    pub kind: BaseTileKind,
    pub notch: CornerNotch,
    /// Indexed N, E, S, W.
    pub edges: [EdgeSignature; 4],
    pub decoration: Decoration,
}

/// The six base tiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileTable {
    pub tiles: [BaseTile; 6],
}

impl TileTable {
    /// Robinson's six tiles as drawn: both corners oriented NE, all four arms
    /// oriented S.
    ///
    /// ```text
    ///  BC / DC (NE)          A1           A2           A3           A4
    ///  +----^-+        +--v---+     +--v---+     +v-----+     +v-----+
    ///  |    |_>        |  |   |     |  |   |     ||  |   |     ||  |   |
    ///  <    |          >--+---<     =--+---=     |>--+---<     ==--+---=
    ///  |  --+- ^       |  |   |     |  |   |     ||  |   |     ||  |   |
    ///  +--v----+       +--v---+     +--v---+     +v-----+     +v-----+
    /// ```
    ///
    /// * Corners: outward arrows on all sides; the blue L has its corner at
    ///   (3/4, 3/4) and runs north and east, so the N and E arrows are blue and
    ///   sit at 3/4. The bumpy corner has bumps at its tile corners.
    /// * Arms: principal arrow from north (dent) to south (bump), dents east and
    ///   west. A2 carries a blue line across the tail side (y = 3/4), A3 one
    ///   along the principal arrow (x = 1/4), A4 both.
    pub fn robinson() -> Self {
        use ArrowOrientation::{Inwards as In, Outwards as Out};
        use ArrowType::{Blue, Plain};
        let half = pos(1, 2);
        let q1 = pos(1, 4);
        let q3 = pos(3, 4);
        let e = EdgeSignature::single;

        let corner_edges = || {
            [
                e(q3, Out, Blue),
                e(q3, Out, Blue),
                e(half, Out, Plain),
                e(half, Out, Plain),
            ]
        };
        let corner_decoration = || {
            let c = (q3, q3);
            Decoration::new(vec![
                Segment::new(Ink::Blue, c, (q3, pos(1, 1))),
                Segment::new(Ink::Blue, c, (pos(1, 1), q3)),
                Segment::new(Ink::Black, (half, half), (half, pos(1, 1))),
                Segment::new(Ink::Black, (half, half), (pos(1, 1), half)),
                Segment::new(Ink::Black, (half, half), (half, pos(0, 1))),
                Segment::new(Ink::Black, (half, half), (pos(0, 1), half)),
            ])
        };
        let arm_black = || {
            vec![
                Segment::new(Ink::Black, (half, pos(1, 1)), (half, pos(0, 1))),
                Segment::new(Ink::Black, (pos(0, 1), half), (half, half)),
                Segment::new(Ink::Black, (pos(1, 1), half), (half, half)),
            ]
        };
        let across = Segment::new(Ink::Blue, (pos(0, 1), q3), (pos(1, 1), q3));
        let along = Segment::new(Ink::Blue, (q1, pos(0, 1)), (q1, pos(1, 1)));
        let arm = |kind, n: EdgeSignature, ew: EdgeSignature, s: EdgeSignature, blue: Vec<Segment>| {
            let mut segs = arm_black();
            segs.extend(blue);
            BaseTile {
                kind,
                notch: CornerNotch::Dent,
                edges: [n, ew.clone(), s, ew],
                decoration: Decoration::new(segs),
            }
        };

        TileTable {
            tiles: [
                BaseTile {
                    kind: BaseTileKind::BumpyCorner,
                    notch: CornerNotch::Bump,
                    edges: corner_edges(),
                    decoration: corner_decoration(),
                },
                BaseTile {
                    kind: BaseTileKind::DentedCorner,
                    notch: CornerNotch::Dent,
                    edges: corner_edges(),
                    decoration: corner_decoration(),
                },
                arm(
                    BaseTileKind::Arm1,
                    e(half, In, Plain),
                    e(half, In, Plain),
                    e(half, Out, Plain),
                    vec![],
                ),
                arm(
                    BaseTileKind::Arm2,
                    e(half, In, Plain),
                    e(q3, In, Blue),
                    e(half, Out, Plain),
                    vec![across],
                ),
                arm(
                    BaseTileKind::Arm3,
                    e(q1, In, Blue),
                    e(half, In, Plain),
                    e(q1, Out, Blue),
                    vec![along],
                ),
                arm(
                    BaseTileKind::Arm4,
                    e(q1, In, Blue),
                    e(q3, In, Blue),
                    e(q1, Out, Blue),
                    vec![across, along],
                ),
            ],
        }
    }

    pub fn get(&self, kind: BaseTileKind) -> &BaseTile {
        &self.tiles[kind.index()]
    }

    /// Flips the type of one arrow, leaving its position and orientation.
    pub fn with_flipped_type(mut self, kind: BaseTileKind, side: Side) -> Self {
        let edge = &mut self.tiles[kind.index()].edges[side.index()];
        for s in &mut edge.slots {
            s.arrow_type = match s.arrow_type {
                ArrowType::Plain => ArrowType::Blue,
                ArrowType::Blue => ArrowType::Plain,
            };
        }
        self
    }

    fn check(&self, decorations_must_agree: bool) -> Result<(), TileError> {
        for t in &self.tiles {
            if !t.kind.is_corner() {
                let count: usize = t.edges.iter().map(EdgeSignature::outwards).sum();
                if count != 1 {
                    return Err(TileError::ArmOutwards { kind: t.kind, count });
                }
            } else if t.decoration.blue_concavity().is_none() {
                return Err(TileError::MissingBlueCorner(t.kind));
            }
            if !decorations_must_agree {
                continue;
            }
            for side in Side::ALL {
                let hits = t.decoration.blue_hits(side);
                let edge = &t.edges[side.index()];
                for s in edge.slots() {
                    let touched = hits.contains(&s.position);
                    if touched != (s.arrow_type == ArrowType::Blue) {
                        return Err(TileError::DecorationMismatch {
                            kind: t.kind,
                            side,
                            position: s.position,
                            ty: s.arrow_type,
                        });
                    }
                }
                for p in hits {
                    if !edge.slots().iter().any(|s| s.position == p) {
                        return Err(TileError::BlueWithoutArrow {
                            kind: t.kind,
                            side,
                            position: p,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Edges of a base tile after applying `sym`, indexed N, E, S, W.
pub fn transform_edges(edges: &[EdgeSignature; 4], sym: Symmetry) -> [EdgeSignature; 4] {
    let mut cur = edges.clone();
    if sym.reflected {
        let [n, e, s, w] = cur;
        cur = [n.reversed(), w, s.reversed(), e];
    }
    for _ in 0..sym.rotation {
        // Counterclockwise: the old east side faces north, and so on. Sides
        // whose reading direction flips get their positions reversed.
        let [n, e, s, w] = cur;
        cur = [e.reversed(), s, w.reversed(), n];
    }
    cur
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Corner,
    Arm,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub family: Family,
    pub bumpy: bool,
    pub orientation: Orientation,
}

/// All distinct oriented tiles of a tile table, with the data the solver and
/// renderer need.
#[derive(Clone, Debug)]
pub struct Catalog {
    table: TileTable,
    tiles: Vec<OrientedTile>,
    edges: Vec<[EdgeSignature; 4]>,
    decorations: Vec<Decoration>,
    index: HashMap<OrientedTile, usize>,
    canonical: HashMap<OrientedTile, OrientedTile>,
}

impl Catalog {
    /// The shipped Robinson catalog.
    pub fn robinson() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_table(TileTable::robinson()).expect("Robinson tile table is well formed"))
    }

    /// Builds the catalog, checking the table invariants (one outwards arrow
    /// per arm, blue corner on corners, arrow types agreeing with blue lines).
    pub fn from_table(table: TileTable) -> Result<Catalog, TileError> {
        table.check(true)?;
        Ok(Catalog::build(table))
    }

    /// Like [`Catalog::from_table`] but tolerates arrow types that disagree with
    /// the decoration. Mutation tests use this to corrupt a single arrow.
    pub fn from_table_unchecked_types(table: TileTable) -> Result<Catalog, TileError> {
        table.check(false)?;
        Ok(Catalog::build(table))
    }

    fn build(table: TileTable) -> Catalog {
        let mut tiles = Vec::new();
        let mut edges = Vec::new();
        let mut decorations = Vec::new();
        let mut index = HashMap::new();
        let mut canonical = HashMap::new();
        for kind in BaseTileKind::ALL {
            let base = table.get(kind);
            let mut seen: Vec<([EdgeSignature; 4], Decoration, OrientedTile)> = Vec::new();
            for sym in Symmetry::ALL {
                let t = OrientedTile::new(kind, sym);
                let e = transform_edges(&base.edges, sym);
                let d = base.decoration.transformed(sym);
                if let Some((_, _, first)) = seen.iter().find(|(se, sd, _)| *se == e && *sd == d) {
                    canonical.insert(t, *first);
                    continue;
                }
                canonical.insert(t, t);
                index.insert(t, tiles.len());
                tiles.push(t);
                edges.push(e.clone());
                decorations.push(d.clone());
                seen.push((e, d, t));
            }
        }
        Catalog {
            table,
            tiles,
            edges,
            decorations,
            index,
            canonical,
        }
    }

    pub fn table(&self) -> &TileTable {
        &self.table
    }

    pub fn tiles(&self) -> &[OrientedTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn index_of(&self, tile: OrientedTile) -> Option<usize> {
        self.index.get(&tile).copied()
    }

    pub fn contains(&self, tile: OrientedTile) -> bool {
        self.index.contains_key(&tile)
    }

    pub fn tile(&self, idx: usize) -> OrientedTile {
        self.tiles[idx]
    }

    /// The catalog member equal to `kind` placed under `sym`.
    pub fn canonical(&self, kind: BaseTileKind, sym: Symmetry) -> OrientedTile {
        self.canonical[&OrientedTile::new(kind, sym)]
    }

    /// Applies a further symmetry to a placed tile.
    pub fn transform(&self, tile: OrientedTile, sym: Symmetry) -> OrientedTile {
        self.canonical(tile.kind, tile.sym.then(sym))
    }

    fn idx(&self, tile: OrientedTile) -> usize {
        self.index_of(tile)
            .unwrap_or_else(|| panic!("{tile} is not a member of this catalog"))
    }

    pub fn edge(&self, tile: OrientedTile, side: Side) -> &EdgeSignature {
        &self.edges[self.idx(tile)][side.index()]
    }

    pub fn edge_at(&self, idx: usize, side: Side) -> &EdgeSignature {
        &self.edges[idx][side.index()]
    }

    pub fn decoration(&self, tile: OrientedTile) -> &Decoration {
        &self.decorations[self.idx(tile)]
    }

    pub fn notch(&self, tile: OrientedTile) -> CornerNotch {
        self.table.get(tile.kind).notch
    }

    pub fn is_bumpy(&self, tile: OrientedTile) -> bool {
        self.notch(tile) == CornerNotch::Bump
    }

    pub fn classify(&self, tile: OrientedTile) -> Classification {
        let bumpy = tile.kind == BaseTileKind::BumpyCorner;
        if tile.kind.is_corner() {
            let d = self
                .decoration(tile)
                .blue_concavity()
                .expect("corners carry a blue corner");
            Classification {
                family: Family::Corner,
                bumpy,
                orientation: d.into(),
            }
        } else {
            let side = Side::ALL
                .into_iter()
                .find(|&s| self.edge(tile, s).outwards() > 0)
                .expect("arms carry one outwards arrow");
            Classification {
                family: Family::Arm,
                bumpy,
                orientation: side.into(),
            }
        }
    }

    /// Parses a tile id, rejecting ids of non-members.
    pub fn parse_id(&self, id: &str) -> Result<OrientedTile, TileIdError> {
        let t = parse_id_syntax(id)?;
        let c = self.canonical(t.kind, t.sym);
        if c != t {
            return Err(TileIdError::NonCanonical {
                id: id.to_string(),
                canonical: c.to_string(),
            });
        }
        Ok(t)
    }
}

/// The Robinson oriented-tile catalog in canonical order.
pub fn catalog() -> &'static [OrientedTile] {
    Catalog::robinson().tiles()
}

pub fn edge(tile: OrientedTile, side: Side) -> EdgeSignature {
    Catalog::robinson().edge(tile, side).clone()
}

pub fn classify(tile: OrientedTile) -> Classification {
    Catalog::robinson().classify(tile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ArrowOrientation::*;
    use ArrowType::*;

    fn sig(p: (i32, i32), o: ArrowOrientation, t: ArrowType) -> EdgeSignature {
        EdgeSignature::new(vec![ArrowSlot::new(pos(p.0, p.1), o, t)]).unwrap()
    }

    #[test]
    fn compatible_examples() {
        assert!(compatible(&sig((1, 2), Outwards, Plain), &sig((1, 2), Inwards, Plain)));
        assert!(!compatible(&sig((1, 2), Outwards, Blue), &sig((1, 2), Inwards, Plain)));
        assert!(!compatible(
            &sig((1, 2), Outwards, Plain),
            &sig((1, 2), Outwards, Plain)
        ));
        assert!(!compatible(&sig((1, 4), Outwards, Blue), &sig((3, 4), Inwards, Blue)));
        assert!(!compatible(&EdgeSignature::default(), &sig((1, 2), Inwards, Plain)));
    }

    #[test]
    fn edge_signature_rejects_bad_positions() {
        let bad = EdgeSignature::new(vec![ArrowSlot::new(pos(1, 1), Inwards, Plain)]);
        assert_eq!(bad, Err(TileError::PositionOutOfRange(pos(1, 1))));
        let dup = EdgeSignature::new(vec![
            ArrowSlot::new(pos(1, 2), Inwards, Plain),
            ArrowSlot::new(pos(1, 2), Outwards, Plain),
        ]);
        assert_eq!(dup, Err(TileError::DuplicatePosition(pos(1, 2))));
    }

    #[test]
    fn catalog_has_32_members() {
        // Corners and the blue-free/blue-across arms have a mirror axis (4
        // images each); arms with a line along the principal arrow do not (8).
        let cat = Catalog::robinson();
        assert_eq!(cat.len(), 32);
        let per_kind: Vec<usize> = BaseTileKind::ALL
            .iter()
            .map(|&k| cat.tiles().iter().filter(|t| t.kind == k).count())
            .collect();
        assert_eq!(per_kind, vec![4, 4, 4, 4, 8, 8]);
        assert!(cat.contains(OrientedTile::new(BaseTileKind::BumpyCorner, Symmetry::IDENTITY)));
        let mut sorted = cat.tiles().to_vec();
        sorted.sort();
        assert_eq!(sorted, cat.tiles());
    }

    #[test]
    fn identity_bumpy_corner_edges() {
        let bc = OrientedTile::new(BaseTileKind::BumpyCorner, Symmetry::IDENTITY);
        assert_eq!(edge(bc, Side::N), sig((3, 4), Outwards, Blue));
        assert_eq!(edge(bc, Side::E), sig((3, 4), Outwards, Blue));
        assert_eq!(edge(bc, Side::S), sig((1, 2), Outwards, Plain));
        assert_eq!(edge(bc, Side::W), sig((1, 2), Outwards, Plain));
    }

    #[test]
    fn classify_examples() {
        let cat = Catalog::robinson();
        let bc = OrientedTile::new(BaseTileKind::BumpyCorner, Symmetry::IDENTITY);
        assert_eq!(
            classify(bc),
            Classification {
                family: Family::Corner,
                bumpy: true,
                orientation: Orientation::NE
            }
        );
        let a1 = OrientedTile::new(BaseTileKind::Arm1, Symmetry::IDENTITY);
        assert_eq!(
            classify(a1),
            Classification {
                family: Family::Arm,
                bumpy: false,
                orientation: Orientation::S
            }
        );
        let a1r = cat.canonical(BaseTileKind::Arm1, Symmetry::rotation(1));
        assert_eq!(classify(a1r).orientation, Orientation::E);
        for d in Diagonal::ALL {
            let n = Diagonal::ALL.iter().position(|&x| x == d).unwrap() as u8;
            // NE, SE, SW, NW are reached by 0, 3, 2, 1 ccw quarter-turns.
            let t = cat.canonical(BaseTileKind::DentedCorner, Symmetry::rotation((4 - n) % 4));
            assert_eq!(classify(t).orientation, Orientation::from(d));
        }
    }

    #[test]
    fn ids_round_trip_and_reject_non_canonical() {
        for &t in catalog() {
            assert_eq!(t.id().parse::<OrientedTile>().unwrap(), t);
        }
        assert_eq!(
            "BC:r0:f".parse::<OrientedTile>(),
            Err(TileIdError::NonCanonical {
                id: "BC:r0:f".into(),
                canonical: "BC:r1:n".into()
            })
        );
        for bad in ["", "BC", "XX:r0:n", "BC:r4:n", "BC:r0:x", "BC:r0:n:1"] {
            assert!(matches!(bad.parse::<OrientedTile>(), Err(TileIdError::Malformed(_))));
        }
    }

    #[test]
    fn half_turn_and_reflection_laws() {
        let cat = Catalog::robinson();
        for &t in cat.tiles() {
            let h = cat.transform(t, Symmetry::rotation(2));
            assert_eq!(*cat.edge(h, Side::N), cat.edge(t, Side::S).reversed());
            let r = cat.transform(t, Symmetry::reflection());
            assert_eq!(cat.edge(r, Side::E), cat.edge(t, Side::W));
        }
    }

    #[test]
    fn symmetry_group_laws() {
        for a in Symmetry::ALL {
            assert_eq!(a.then(a.inverse()), Symmetry::IDENTITY);
            for b in Symmetry::ALL {
                for v in [(1, 0), (0, 1), (1, 1), (2, -1)] {
                    assert_eq!(a.then(b).apply_vec(v), b.apply_vec(a.apply_vec(v)));
                }
            }
        }
        let r = Symmetry::rotation(1);
        assert_eq!(r.then(r).then(r).then(r), Symmetry::IDENTITY);
        let f = Symmetry::reflection();
        assert_eq!(f.then(f), Symmetry::IDENTITY);
    }

    #[test]
    fn edges_commute_with_composition() {
        let cat = Catalog::robinson();
        for &t in cat.tiles() {
            for s in Symmetry::ALL {
                for u in Symmetry::ALL {
                    let stepwise = cat.transform(cat.transform(t, s), u);
                    let composed = cat.transform(t, s.then(u));
                    for side in Side::ALL {
                        assert_eq!(cat.edge(stepwise, side), cat.edge(composed, side));
                    }
                }
            }
            let mut cur = t;
            for _ in 0..4 {
                cur = cat.transform(cur, Symmetry::rotation(1));
            }
            assert_eq!(cur, t);
        }
    }

    #[test]
    fn every_arm_has_one_outwards_arrow() {
        let cat = Catalog::robinson();
        for &t in cat.tiles() {
            let outs: usize = Side::ALL.iter().map(|&s| cat.edge(t, s).outwards()).sum();
            if t.kind.is_corner() {
                assert_eq!(outs, 4);
            } else {
                assert_eq!(outs, 1, "{t}");
            }
        }
    }

    #[test]
    fn decorations_agree_with_types_on_every_member() {
        let cat = Catalog::robinson();
        for &t in cat.tiles() {
            let d = cat.decoration(t);
            for side in Side::ALL {
                let hits = d.blue_hits(side);
                for s in cat.edge(t, side).slots() {
                    assert_eq!(hits.contains(&s.position), s.arrow_type == Blue, "{t} {side:?}");
                }
            }
        }
    }

    #[test]
    fn compatibility_is_symmetric() {
        let cat = Catalog::robinson();
        for &a in cat.tiles() {
            for &b in cat.tiles() {
                for side in Side::ALL {
                    let x = cat.edge(a, side);
                    let y = cat.edge(b, side.opposite());
                    assert_eq!(compatible(x, y), compatible(y, x));
                }
            }
        }
    }

    #[test]
    fn flipped_type_breaks_decoration_check() {
        let t = TileTable::robinson().with_flipped_type(BaseTileKind::Arm2, Side::E);
        assert!(matches!(
            Catalog::from_table(t.clone()),
            Err(TileError::DecorationMismatch { .. })
        ));
        assert!(Catalog::from_table_unchecked_types(t).is_ok());
    }
}
