//! The checks must notice a corrupted tile set.

use robinson::hierarchy::Hierarchy;
use robinson::solver::{Boundary, MatchRule, Region, Solver};
use robinson::tiles::{BaseTileKind, Catalog, Side, TileError, TileTable};
use robinson::verify::Verifier;

fn flipped() -> Catalog {
    let table = TileTable::robinson().with_flipped_type(BaseTileKind::Arm2, Side::E);
    Catalog::from_table_unchecked_types(table).unwrap()
}

#[test]
fn flipped_type_is_rejected_by_checked_constructor() {
    let table = TileTable::robinson().with_flipped_type(BaseTileKind::Arm2, Side::E);
    assert!(matches!(
        Catalog::from_table(table),
        Err(TileError::DecorationMismatch { .. })
    ));
}

#[test]
fn flipped_type_breaks_uniqueness_and_forcing() {
    let cat = flipped();
    let h = Hierarchy::new(&cat).unwrap();
    let v = Verifier::new(&h);
    let fills = v.unique_fill(2).unwrap();
    assert!(fills.iter().all(|f| f.count == 0), "{fills:?}");
    assert!(!v.forcing(1).unwrap().passed());
}

#[test]
fn every_corner_flip_is_caught() {
    for kind in [BaseTileKind::BumpyCorner, BaseTileKind::DentedCorner] {
        for side in [Side::N, Side::E] {
            let table = TileTable::robinson().with_flipped_type(kind, side);
            let cat = Catalog::from_table_unchecked_types(table).unwrap();
            let h = Hierarchy::new(&cat).unwrap();
            let v = Verifier::new(&h);
            let uf_ok = v
                .unique_fill(2)
                .is_ok_and(|f| f.iter().all(|x| x.count == 1 && x.equals_corner));
            let forcing_ok = v.forcing(1).is_ok_and(|r| r.passed());
            assert!(!(uf_ok && forcing_ok), "{kind:?} {side:?}");
        }
    }
}

/// Diagnostic, not a gate: a blue arrow always sits off the edge midpoint
/// and a plain one on it, so positions already carry the type and dropping
/// type matching changes nothing.
#[test]
fn ignoring_types_leaves_small_tori_empty() {
    let s = Solver::with_rule(Catalog::robinson(), MatchRule::IgnoreTypes).unwrap();
    for k in 1..=4 {
        assert_eq!(s.count(&Region::new(k, k, Boundary::Torus).unwrap()).unwrap(), 0);
    }
    let strict = Solver::new(Catalog::robinson()).unwrap();
    let r = Region::new(2, 2, Boundary::Open).unwrap();
    assert_eq!(s.count(&r).unwrap(), strict.count(&r).unwrap());
}
