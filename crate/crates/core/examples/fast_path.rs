//! Closed-form freeness tests for non-unimodular pairs against brute force,
//! as a JSON diff.

use trimat_geom::projline::{
    fast_free_nonuni_n2, fast_path_report, n3_fast_path_report, N3Reading,
};
use trimat_geom::{FieldTable, RingContext};

fn main() -> trimat_geom::Result<()> {
    let n2 = RingContext::new(2, FieldTable::new(4)?)?;
    let r = fast_path_report(&n2, "n = 2 criterion", fast_free_nonuni_n2);
    println!(
        "{}: {}/{} agree",
        r.criterion, r.agreements, r.pairs_checked
    );

    let n3 = RingContext::new(3, FieldTable::new(2)?)?;
    for reading in [N3Reading::Literal, N3Reading::Amended] {
        let mut r = n3_fast_path_report(&n3, reading);
        println!(
            "{}: {}/{} agree, by clause {:?}",
            r.criterion, r.agreements, r.pairs_checked, r.by_clause
        );
        r.disagreements.truncate(3);
        println!("{}", serde_json::to_string_pretty(&r.disagreements)?);
    }
    Ok(())
}
