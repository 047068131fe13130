//! Explicit isomorphisms onto AG(2,q) and PG(2,q).

use trimat_geom::planes::{
    all_affine_planes, isomorphism_to_classical, projective_closure, IsoOutcome,
};
use trimat_geom::{FieldTable, LineCensus, RingContext};

fn main() -> trimat_geom::Result<()> {
    let q = 3;
    let census = LineCensus::enumerate(RingContext::new(2, FieldTable::new(q)?)?, 0)?;
    let plane = all_affine_planes(&census)?.remove(0);
    let closure = projective_closure(&plane.structure, &census)?;
    for (name, s) in [
        ("affine", &plane.structure),
        ("closure", &closure.structure),
    ] {
        match isomorphism_to_classical(s, q)? {
            IsoOutcome::Found { target, point_map } => {
                println!("{name} {} is {target:?}:", plane.key);
                for (id, coords) in point_map {
                    println!("  {id:>6} -> {coords:?}");
                }
            }
            IsoOutcome::Absent { reason, .. } => println!("{name}: none ({reason})"),
        }
    }
    Ok(())
}
