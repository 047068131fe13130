//! Exhaustive census of ²T_n(q) compared against the closed forms.
//!
//! cargo run --release --example census -- 3 3

use std::time::Instant;

use trimat_geom::projline::formulas;
use trimat_geom::{FieldTable, LineCensus, RingContext};

fn main() -> trimat_geom::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<u32>().expect("integer"));
    let n = args.next().unwrap_or(2) as usize;
    let q = args.next().unwrap_or(3);
    let start = Instant::now();
    let census = LineCensus::enumerate(RingContext::new(n, FieldTable::new(q)?)?, 0)?;
    println!("²T_{n}({q}) enumerated in {:.2?}", start.elapsed());
    let q64 = q as u64;
    for (name, got, want) in [
        ("points", census.points().len(), formulas::points(n, q64)),
        (
            "nonuni_fcs",
            census.nonuni_fcs().len(),
            formulas::nonuni_fcs(n, q64),
        ),
        (
            "shielded",
            census.shielded().len(),
            formulas::shielded(n, q64),
        ),
    ] {
        println!("{name:>12}: {got:>6}  closed form {want:?}");
    }
    println!("{:>12}: {:>6}", "nonfree", census.nonfree().len());
    println!(
        "{:>12}: {:>6}",
        "outliers",
        census.outlier_generator_count()
    );
    Ok(())
}
