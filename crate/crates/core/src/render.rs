//! SVG output for patches and partially determined domain states.
//!
//! Every cell becomes one `<g class="cell">` carrying its coordinates and
//! tile id as data attributes, so figures can be checked by machine. Arrows
//! are triangles on the edge, filled when outwards and outlined when
//! inwards, blue when their type is blue. Bumpy tiles get solid corner
//! marks. In a domain state, cells with several candidates are shaded; an
//! edge whose candidates agree on the arrow orientation but not its type is
//! drawn as a half-disk (filled for outwards, outlined for inwards).

use std::fmt::Write as _;

use thiserror::Error;

use crate::grid::{Cell, Patch};
use crate::solver::{tiles_of, DomainState};
use crate::tiles::{ArrowOrientation, ArrowSlot, ArrowType, Catalog, Ink, OrientedTile, Position, Segment, Side};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("render style needs positive sizes, got {0}")]
    BadStyle(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    pub background: String,
    pub grid: String,
    pub blue: String,
    pub black: String,
    pub bump: String,
    pub shade: String,
    pub empty: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            background: "#ffffff".into(),
            grid: "#8c8c8c".into(),
            blue: "#1f5fd6".into(),
            black: "#000000".into(),
            bump: "#333333".into(),
            shade: "#e3e3e3".into(),
            empty: "#f6d5d5".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    /// Cell side in pixels.
    pub cell: f64,
    pub stroke: f64,
    pub blue_width: f64,
    pub palette: Palette,
    pub draw_arrows: bool,
    pub draw_blue: bool,
    pub shade_undetermined: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            cell: 40.0,
            stroke: 1.0,
            blue_width: 3.0,
            palette: Palette::default(),
            draw_arrows: true,
            draw_blue: true,
            shade_undetermined: true,
        }
    }
}

impl RenderStyle {
    pub fn check(&self) -> Result<(), RenderError> {
        for (name, v) in [
            ("cell", self.cell),
            ("stroke", self.stroke),
            ("blue_width", self.blue_width),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RenderError::BadStyle(format!("{name} = {v}")));
            }
        }
        Ok(())
    }
}

/// Number formatting that is stable across platforms.
fn num(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

fn fr(p: Position) -> f64 {
    *p.numer() as f64 / *p.denom() as f64
}

struct Canvas<'s> {
    style: &'s RenderStyle,
    out: String,
}

impl<'s> Canvas<'s> {
    fn new(style: &'s RenderStyle, width: usize, height: usize) -> Self {
        let (w, h) = (width as f64 * style.cell, height as f64 * style.cell);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = num(w),
            h = num(h)
        );
        let _ = writeln!(
            out,
            r#"<rect width="{}" height="{}" fill="{}"/>"#,
            num(w),
            num(h),
            style.palette.background
        );
        Canvas { style, out }
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }

    /// Tile-local unit-square point to pixels inside the cell group.
    fn px(&self, (u, v): (f64, f64)) -> (f64, f64) {
        (u * self.style.cell, (1.0 - v) * self.style.cell)
    }

    fn open_cell(&mut self, cell: Cell, offset: (usize, usize), attrs: &str) {
        let c = self.style.cell;
        let _ = writeln!(
            self.out,
            r#"<g class="cell" data-x="{}" data-y="{}"{attrs} transform="translate({} {})">"#,
            cell.0,
            cell.1,
            num(offset.0 as f64 * c),
            num(offset.1 as f64 * c)
        );
    }

    fn close_cell(&mut self) {
        self.out.push_str("</g>\n");
    }

    fn square(&mut self, fill: &str) {
        let c = num(self.style.cell);
        let _ = writeln!(
            self.out,
            r#"<rect width="{c}" height="{c}" fill="{fill}" stroke="{}" stroke-width="{}"/>"#,
            self.style.palette.grid,
            num(self.style.stroke)
        );
    }

    fn segment(&mut self, s: &Segment) {
        let (color, width) = match s.ink {
            Ink::Blue if self.style.draw_blue => (&self.style.palette.blue, self.style.blue_width),
            Ink::Black => (&self.style.palette.black, self.style.stroke),
            Ink::Blue => return,
        };
        let a = self.px((fr(s.from.0), fr(s.from.1)));
        let b = self.px((fr(s.to.0), fr(s.to.1)));
        let _ = writeln!(
            self.out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}" stroke-linecap="square"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1),
            num(width)
        );
    }

    /// Edge point, unit tangent (increasing position) and inward normal, in
    /// pixel space.
    fn frame(&self, side: Side, p: f64) -> ((f64, f64), (f64, f64), (f64, f64)) {
        match side {
            Side::N => (self.px((p, 1.0)), (1.0, 0.0), (0.0, 1.0)),
            Side::S => (self.px((p, 0.0)), (1.0, 0.0), (0.0, -1.0)),
            Side::E => (self.px((1.0, p)), (0.0, -1.0), (-1.0, 0.0)),
            Side::W => (self.px((0.0, p)), (0.0, -1.0), (1.0, 0.0)),
        }
    }

    fn paint(&self, ty: Option<ArrowType>, o: ArrowOrientation) -> String {
        let color = match ty {
            Some(ArrowType::Blue) => &self.style.palette.blue,
            _ => &self.style.palette.black,
        };
        match o {
            ArrowOrientation::Outwards => format!(r#"fill="{color}" stroke="{color}""#),
            ArrowOrientation::Inwards => format!(r#"fill="none" stroke="{color}""#),
        }
    }

    fn arrow(&mut self, side: Side, slot: &ArrowSlot) {
        let c = self.style.cell;
        let (half, depth) = (0.1 * c, 0.14 * c);
        let (e, t, n) = self.frame(side, fr(slot.position));
        let a = (e.0 - half * t.0, e.1 - half * t.1);
        let b = (e.0 + half * t.0, e.1 + half * t.1);
        let apex = (e.0 + depth * n.0, e.1 + depth * n.1);
        let paint = self.paint(Some(slot.arrow_type), slot.orientation);
        let _ = writeln!(
            self.out,
            r#"<polygon points="{},{} {},{} {},{}" {paint} stroke-width="{}"/>"#,
            num(a.0),
            num(a.1),
            num(apex.0),
            num(apex.1),
            num(b.0),
            num(b.1),
            num(self.style.stroke)
        );
    }

    fn half_disk(&mut self, side: Side, p: f64, o: ArrowOrientation) {
        let r = 0.1 * self.style.cell;
        let (e, t, n) = self.frame(side, p);
        let a = (e.0 - r * t.0, e.1 - r * t.1);
        let b = (e.0 + r * t.0, e.1 + r * t.1);
        // With y pointing down, the positive sweep from `a` bulges towards
        // (t.y, -t.x).
        let sweep = u8::from((t.1, -t.0) == n);
        let paint = self.paint(None, o);
        let _ = writeln!(
            self.out,
            r#"<path d="M {} {} A {r} {r} 0 0 {sweep} {} {} Z" {paint} stroke-width="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1),
            num(self.style.stroke),
            r = num(r)
        );
    }

    fn bump_marks(&mut self) {
        let c = self.style.cell;
        let m = 0.08 * c;
        for (x, y) in [(0.0, 0.0), (c - m, 0.0), (0.0, c - m), (c - m, c - m)] {
            let _ = writeln!(
                self.out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                num(x),
                num(y),
                num(m),
                num(m),
                self.style.palette.bump
            );
        }
    }

    fn tile(&mut self, cat: &Catalog, t: OrientedTile) {
        for s in cat.decoration(t).segments() {
            self.segment(s);
        }
        if self.style.draw_arrows {
            for side in Side::ALL {
                for slot in cat.edge(t, side).slots() {
                    self.arrow(side, slot);
                }
            }
        }
        if cat.is_bumpy(t) {
            self.bump_marks();
        }
    }
}

/// Renders a patch of the Robinson catalog.
pub fn render_patch(p: &Patch, style: &RenderStyle) -> Result<String, RenderError> {
    render_patch_with(Catalog::robinson(), p, style)
}

pub fn render_patch_with(cat: &Catalog, p: &Patch, style: &RenderStyle) -> Result<String, RenderError> {
    style.check()?;
    let mut cv = Canvas::new(style, p.width(), p.height());
    let (ox, oy) = p.origin();
    let top = oy + p.height() as i64 - 1;
    for cell in p.bounds().cells() {
        let offset = ((cell.0 - ox) as usize, (top - cell.1) as usize);
        match p.get(cell) {
            Some(t) => {
                cv.open_cell(cell, offset, &format!(r#" data-tile="{t}""#));
                cv.square(&style.palette.background);
                cv.tile(cat, t);
            }
            None => {
                cv.open_cell(cell, offset, r#" data-tile="""#);
                cv.square(&style.palette.shade);
            }
        }
        cv.close_cell();
    }
    Ok(cv.finish())
}

/// Renders per-cell candidate sets. Determined cells look like patch cells;
/// the others show only what all their candidates agree on.
pub fn render_domains(d: &DomainState, style: &RenderStyle) -> Result<String, RenderError> {
    style.check()?;
    let cat = d.catalog();
    let mut cv = Canvas::new(style, d.width(), d.height());
    let (ox, oy) = d.origin();
    let top = oy + d.height() as i64 - 1;
    let bounds = crate::grid::Rect::new(ox, oy, d.width(), d.height());
    for cell in bounds.cells() {
        let offset = ((cell.0 - ox) as usize, (top - cell.1) as usize);
        let tiles = tiles_of(cat, d.mask(cell));
        let ids: Vec<String> = tiles.iter().map(|t| t.id()).collect();
        let tile_attr = match tiles.as_slice() {
            [t] => format!(r#" data-tile="{t}""#),
            _ => r#" data-tile="""#.to_string(),
        };
        cv.open_cell(cell, offset, &format!(r#"{tile_attr} data-domain="{}""#, ids.join(" ")));
        match tiles.as_slice() {
            [] => cv.square(&style.palette.empty),
            [t] => {
                cv.square(&style.palette.background);
                cv.tile(cat, *t);
            }
            many => {
                let fill = if style.shade_undetermined {
                    &style.palette.shade
                } else {
                    &style.palette.background
                };
                cv.square(fill);
                common_marks(&mut cv, cat, many);
            }
        }
        cv.close_cell();
    }
    Ok(cv.finish())
}

fn common_marks(cv: &mut Canvas, cat: &Catalog, tiles: &[OrientedTile]) {
    let first = cat.decoration(tiles[0]);
    let shared: Vec<Segment> = first
        .segments()
        .iter()
        .filter(|s| tiles[1..].iter().all(|&t| cat.decoration(t).segments().contains(s)))
        .copied()
        .collect();
    for s in &shared {
        cv.segment(s);
    }
    if !cv.style.draw_arrows {
        return;
    }
    for side in Side::ALL {
        let edges: Vec<_> = tiles.iter().map(|&t| cat.edge(t, side)).collect();
        if edges.iter().all(|e| *e == edges[0]) {
            for slot in edges[0].slots() {
                cv.arrow(side, slot);
            }
            continue;
        }
        // Same single orientation everywhere, type or position unknown.
        let orient = |e: &&crate::tiles::EdgeSignature| match e.slots() {
            [s] => Some(s.orientation),
            _ => None,
        };
        if let Some(o) = orient(&edges[0]) {
            if edges.iter().all(|e| orient(e) == Some(o)) {
                cv.half_disk(side, 0.5, o);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::corner;
    use crate::solver::{Boundary, Region, Solver};
    use crate::tiles::Diagonal;

    fn groups(svg: &str) -> usize {
        svg.matches(r#"<g class="cell""#).count()
    }

    #[test]
    fn one_group_per_cell() {
        let s = RenderStyle::default();
        assert_eq!(groups(&render_patch(&corner(1, Diagonal::NE).unwrap(), &s).unwrap()), 1);
        assert_eq!(
            groups(&render_patch(&corner(4, Diagonal::NW).unwrap(), &s).unwrap()),
            225
        );
    }

    #[test]
    fn output_is_stable() {
        let p = corner(3, Diagonal::SE).unwrap();
        let s = RenderStyle::default();
        assert_eq!(render_patch(&p, &s).unwrap(), render_patch(&p, &s).unwrap());
    }

    #[test]
    fn distinct_patches_distinct_bytes() {
        let s = RenderStyle::default();
        let a = render_patch(&corner(2, Diagonal::NE).unwrap(), &s).unwrap();
        let b = render_patch(&corner(2, Diagonal::SE).unwrap(), &s).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn bad_style_rejected() {
        let s = RenderStyle {
            cell: 0.0,
            ..RenderStyle::default()
        };
        assert!(render_patch(&corner(1, Diagonal::NE).unwrap(), &s).is_err());
    }

    #[test]
    fn domains_shade_and_annotate() {
        let solver = Solver::new(Catalog::robinson()).unwrap();
        let mut r = Region::new(3, 1, Boundary::Open).unwrap();
        r.fix_patch(&corner(1, Diagonal::NE).unwrap()).unwrap();
        let d = solver.propagate(&r).unwrap().unwrap();
        let svg = render_domains(&d, &RenderStyle::default()).unwrap();
        assert_eq!(groups(&svg), 3);
        assert!(svg.contains(r#"data-tile="BC:r0:n" data-domain="BC:r0:n""#));
        assert!(svg.contains(r##"fill="#e3e3e3""##));
    }
}
