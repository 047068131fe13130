//! 2-affine planes over T_3(q): points are whole affine planes, lines are
//! parallel classes.

use trimat_geom::planes::{build_2affine_plane, check_affine_axioms, subsets, Reading};
use trimat_geom::{FieldTable, LineCensus, RingContext};

fn main() -> trimat_geom::Result<()> {
    let census = LineCensus::enumerate(RingContext::new(3, FieldTable::new(2)?)?, 0)?;
    let subs = subsets(&census)?;
    println!("{} subsets", subs.len());
    for s in subs {
        let t = build_2affine_plane(&census, s, Reading::Every)?;
        let r = check_affine_axioms(&t.structure);
        println!(
            "{s}: {} points, {} lines, order {:?}, affine {}",
            t.structure.points.len(),
            t.structure.lines.len(),
            r.order,
            r.affine_ok()
        );
    }
    Ok(())
}
