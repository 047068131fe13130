//! Writes the T(2) picture (three affine planes and their common closure
//! line) as Graphviz DOT, labelled with the integer codes 0-7.
//!
//! cargo run --example figure1_dot > fig.dot && dot -Tsvg fig.dot > fig.svg

use trimat_geom::cli::document::planes_document;
use trimat_geom::cli::render::document_dot;
use trimat_geom::planes::all_affine_planes;
use trimat_geom::{FieldTable, LineCensus, RingContext};

fn main() -> trimat_geom::Result<()> {
    let census = LineCensus::enumerate(RingContext::new(2, FieldTable::new(2)?)?, 1)?;
    let planes = all_affine_planes(&census)?;
    let doc = planes_document(&census, &planes, planes.len() as u64)?;
    print!("{}", document_dot(&doc));
    Ok(())
}
