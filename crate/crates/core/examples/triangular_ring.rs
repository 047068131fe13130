//! The ring T_n(q) of lower triangular matrices: size, units, radical.

use trimat_geom::{FieldTable, RingContext, TriMatrix};

fn main() -> trimat_geom::Result<()> {
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let ctx = RingContext::new(n, FieldTable::new(q)?)?;
        println!(
            "T_{n}({q}): {} elements, {} units, radical of size {}",
            ctx.size(),
            ctx.units().len(),
            ctx.radical().len()
        );
    }

    let ctx = RingContext::new(2, FieldTable::new(3)?)?;
    let a = TriMatrix::from_rows(&[&[1], &[2, 2]]);
    let b = TriMatrix::from_rows(&[&[2], &[1, 0]]);
    println!(
        "{:?} * {:?} = {:?}",
        a.to_square(),
        b.to_square(),
        ctx.mul(&a, &b)?.to_square()
    );
    println!(
        "a is a unit: {}, b is a unit: {}",
        ctx.is_unit(&a),
        ctx.is_unit(&b)
    );
    Ok(())
}
