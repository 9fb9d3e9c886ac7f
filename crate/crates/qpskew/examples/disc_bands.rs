//! Band modules on the annulus covering a twice-punctured disc, carried down
//! to the disc. The image stays indecomposable except at λ = ±1, where it
//! splits in two.
//!
//! Run with `cargo run --example disc_bands`.

use qpskew::io::parse_tri;
use qpskew::linalg::{fmt_q, q};
use qpskew::reps::{band_module, decompose, parse_word, CoverFunctors};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/disc.tri"))?;
    let cf = CoverFunctors::new(&parse_tri(&text)?)?;
    let word = parse_word("pP 2+ pQ 2-");

    for l in [q(2), q(1), q(-1)] {
        let band = band_module(cf.cover_qp(), &word, &l, 1)?;
        let down = cf.to_base(&band)?;
        let parts = decompose(&down)?;
        println!("λ = {}: {} summand(s)", fmt_q(&l), parts.len());
        for p in &parts {
            print!("{p}");
        }
        println!();
    }

    // induction back up gives the band and its σ-twist, which has parameter λ⁻¹
    let band = band_module(cf.cover_qp(), &word, &q(3), 1)?;
    let up = cf.to_cover(&cf.to_base(&band)?)?;
    println!("up and down again: {} summands", decompose(&up)?.len());
    Ok(())
}
