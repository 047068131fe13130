//! Cyclic submodules T_n(q)(X, Y) and freeness.

use trimat_geom::modspace::{cyclic_submodule, is_free, submodule_contains};
use trimat_geom::{FieldTable, ModPair, RingContext, TriMatrix};

fn main() -> trimat_geom::Result<()> {
    let ctx = RingContext::new(2, FieldTable::new(2)?)?;
    let e21 = TriMatrix::from_rows(&[&[0], &[1, 0]]);
    let e22 = TriMatrix::from_rows(&[&[0], &[0, 1]]);
    let examples = [
        ("(I, 0)", ModPair::new(ctx.identity(), TriMatrix::zero(2))),
        ("(E22, E21)", ModPair::new(e22, e21)),
        ("(E21, 0)", ModPair::new(e21, TriMatrix::zero(2))),
    ];
    let subs = examples
        .iter()
        .map(|(_, g)| cyclic_submodule(&ctx, g))
        .collect::<trimat_geom::Result<Vec<_>>>()?;
    for ((name, g), s) in examples.iter().zip(&subs) {
        println!(
            "{name}: order {}, free {}, unimodular {}",
            s.order(),
            is_free(&ctx, g),
            g.is_unimodular()
        );
    }
    // (E21, 0) = E21 (I, 0) lies inside the point generated by (I, 0)
    println!(
        "(E21, 0) inside (I, 0): {}",
        submodule_contains(&subs[0], &subs[2])?
    );
    Ok(())
}
