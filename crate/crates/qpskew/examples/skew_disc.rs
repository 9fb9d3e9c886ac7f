//! Skews the adjacency QP of a twice-punctured disc by the involution that
//! swaps each radius with its loop, then checks that skewing again by the
//! dual action gives back the original quiver.
//!
//! Run with `cargo run --example skew_disc`.

use qpskew::involution::find_admissible;
use qpskew::io::{parse_tri, write_qp};
use qpskew::skew::{double_skew_check, skew_qp};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/disc.tri"))?;
    let adj = parse_tri(&text)?.adjacency_qp()?;
    println!("Q(tau):\n{}\n", write_qp(&adj.qp, Some(&adj.sigma)));

    let choice = find_admissible(&adj.qp.quiver, &adj.sigma)?.expect("the disc action admits a choice");
    let ctx = skew_qp(&adj.qp, &adj.sigma, &choice)?;
    let skewed = ctx.qp_g().expect("skewing a QP keeps a potential");
    println!("Q_G:\n{}\n", write_qp(&skewed, None));

    let report = double_skew_check(&adj.qp.quiver, &adj.sigma, &choice, 3)?;
    println!("{report}");
    Ok(())
}
