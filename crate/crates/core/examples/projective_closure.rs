//! Closing every affine plane into a projective plane of order q. Over T(q)
//! every closure adds the same q + 1 points at infinity, although the
//! submodule chosen as the line through them varies with the plane.

use std::collections::BTreeSet;

use trimat_geom::planes::{
    all_affine_planes, check_projective_axioms, describe, projective_closure,
};
use trimat_geom::{FieldTable, LineCensus, RingContext, SubmoduleId};

fn main() -> trimat_geom::Result<()> {
    let q = 4;
    let census = LineCensus::enumerate(RingContext::new(2, FieldTable::new(q)?)?, 0)?;
    let mut at_infinity = BTreeSet::new();
    let mut lines_at_infinity = BTreeSet::new();
    for plane in all_affine_planes(&census)? {
        let c = projective_closure(&plane.structure, &census)?;
        let r = check_projective_axioms(&c.structure);
        println!(
            "{}: {} points, {} lines, projective {}, checks {}",
            plane.key,
            c.structure.points.len(),
            c.structure.lines.len(),
            r.projective_ok(),
            c.checks.all_hold()
        );
        at_infinity.insert(c.points_at_infinity);
        lines_at_infinity.insert(c.line_at_infinity);
    }
    println!("distinct sets of points at infinity: {}", at_infinity.len());
    for id in at_infinity.into_iter().flatten() {
        println!("point at infinity: {}", describe(&census, SubmoduleId(id)));
    }
    for id in lines_at_infinity {
        println!("line at infinity: {}", describe(&census, SubmoduleId(id)));
    }
    Ok(())
}
