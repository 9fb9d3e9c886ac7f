//! Builds the Ginzburg dg algebra of the cylinder QP, checks `d² = 0`, and
//! compares the skew of its Ginzburg data with the Ginzburg data of the
//! skew QP generator by generator.
//!
//! Run with `cargo run --example ginzburg_check`.

use qpskew::ginzburg::{ginzburg, skew_ginzburg_compare};
use qpskew::involution::find_admissible;
use qpskew::io::parse_tri;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cylinder.tri"))?;
    let adj = parse_tri(&text)?.adjacency_qp()?;
    println!("S = {}", adj.qp.potential);

    let gz = ginzburg(&adj.qp)?;
    let defects = gz.square_defects();
    println!("generators with d² ≠ 0: {}", defects.len());

    let choice = find_admissible(&adj.qp.quiver, &adj.sigma)?.expect("admissible choice");
    let report = skew_ginzburg_compare(&adj.qp, &adj.sigma, &choice)?;
    println!("{report}");
    Ok(())
}
