//! Arithmetic tables for GF(q), including the non-prime fields.

use trimat_geom::FieldTable;

fn main() -> trimat_geom::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(4, |s| s.parse().expect("q"));
    let f = FieldTable::new(q)?;
    println!(
        "GF({q}) = GF({})^{}, modulus coefficients {:?}",
        f.characteristic(),
        f.degree(),
        f.modulus()
    );
    println!("multiplication:");
    for a in f.elements() {
        let row: Vec<String> = f.elements().map(|b| f.mul(a, b).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    for a in f.nonzero() {
        println!("  {a}^-1 = {}", f.inv(a).unwrap());
    }
    Ok(())
}
