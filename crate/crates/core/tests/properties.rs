use proptest::prelude::*;

use robinson::grid::{validate, Cell, Patch, Rect, Violation};
use robinson::hierarchy::{limit_tile, limit_window};
use robinson::tiles::catalog;
use robinson::verify::blue_squares;

fn arb_patch() -> impl Strategy<Value = Patch> {
    (-20i64..20, -20i64..20, 1usize..6, 1usize..6).prop_flat_map(|(x, y, w, h)| {
        proptest::collection::vec(proptest::option::weighted(0.8, 0..catalog().len()), w * h).prop_map(move |cells| {
            let cells = cells.into_iter().map(|c| c.map(|i| catalog()[i])).collect();
            Patch::from_cells((x, y), w, h, cells).unwrap()
        })
    })
}

/// A piece of the limit tiling with a few cells replaced or removed.
fn arb_damaged_window() -> impl Strategy<Value = Patch> {
    (
        -40i64..40,
        -40i64..40,
        2usize..8,
        2usize..8,
        proptest::collection::vec((0usize..64, proptest::option::of(0..catalog().len())), 0..3),
    )
        .prop_map(|(x, y, w, h, edits)| {
            let mut p = limit_window(Rect::new(x, y, w, h)).unwrap();
            let cells: Vec<Cell> = p.bounds().cells().collect();
            for (i, t) in edits {
                p.set(cells[i % cells.len()], t.map(|t| catalog()[t]));
            }
            p
        })
}

fn key(v: &Violation) -> (Cell, Option<robinson::tiles::Side>) {
    match v {
        Violation::Edge { at, side, .. } => (*at, Some(*side)),
        Violation::Vertex { at, .. } => (*at, None),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(p in arb_patch()) {
        prop_assert_eq!(Patch::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn translation_preserves_verdicts(p in arb_damaged_window(), dx in -50i64..50, dy in -50i64..50) {
        let moved: Vec<_> = validate(&p.translate((dx, dy))).iter().map(key).collect();
        let want: Vec<_> = validate(&p)
            .iter()
            .map(key)
            .map(|((x, y), s)| ((x + dx, y + dy), s))
            .collect();
        prop_assert_eq!(moved, want);
    }

    #[test]
    fn validity_is_hereditary(p in arb_damaged_window(), a in 0usize..8, b in 0usize..8, c in 1usize..8, d in 1usize..8) {
        let (x0, y0) = (a % p.width(), b % p.height());
        let rect = Rect::new(
            p.origin().0 + x0 as i64,
            p.origin().1 + y0 as i64,
            c.min(p.width() - x0),
            d.min(p.height() - y0),
        );
        let whole: Vec<_> = validate(&p).iter().map(key).collect();
        for v in validate(&p.subpatch(rect).unwrap()) {
            prop_assert!(whole.contains(&key(&v)), "{v:?} not in {whole:?}");
        }
    }

    #[test]
    fn window_is_pointwise(x in -300i64..300, y in -300i64..300, w in 1usize..5, h in 1usize..5) {
        let p = limit_window(Rect::new(x, y, w, h)).unwrap();
        for (c, t) in p.iter() {
            prop_assert_eq!(limit_tile(c.0, c.1).unwrap(), t);
        }
        prop_assert!(validate(&p).is_empty());
    }

    #[test]
    fn patch_algebra(p in arb_patch()) {
        prop_assert_eq!(p.translate((0, 0)), p.clone());
        prop_assert_eq!(p.overlay(&p).unwrap(), p.clone());
        prop_assert_ne!(p.translate((1, 0)), p);
    }

    #[test]
    fn blue_squares_move_with_the_patch(x in -60i64..60, y in -60i64..60, dx in -9i64..9, dy in -9i64..9) {
        let p = limit_window(Rect::new(x, y, 9, 9)).unwrap();
        let a = blue_squares(&p);
        let b = blue_squares(&p.translate((dx, dy)));
        prop_assert_eq!(a.len(), b.len());
        for (s, t) in a.iter().zip(&b) {
            prop_assert_eq!(t.side, s.side);
            prop_assert_eq!(t.southwest, (s.southwest.0 + dx, s.southwest.1 + dy));
        }
    }
}
