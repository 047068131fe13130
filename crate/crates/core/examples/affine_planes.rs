//! Affine planes of order q built from shielded submodules.

use trimat_geom::planes::{all_affine_planes, check_affine_axioms};
use trimat_geom::{FieldTable, LineCensus, RingContext};

fn main() -> trimat_geom::Result<()> {
    let census = LineCensus::enumerate(RingContext::new(2, FieldTable::new(3)?)?, 0)?;
    for plane in all_affine_planes(&census)? {
        let r = check_affine_axioms(&plane.structure);
        println!(
            "{}: {} points, {} lines, {} parallel classes, axioms {}",
            plane.key,
            plane.structure.points.len(),
            plane.structure.lines.len(),
            r.parallel_classes.len(),
            if r.affine_ok() { "hold" } else { "fail" }
        );
        for class in &r.parallel_classes {
            println!("    class {class:?}");
        }
    }
    Ok(())
}
