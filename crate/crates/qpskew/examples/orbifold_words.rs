//! Words in the orbifold fundamental groupoid of a punctured surface:
//! reduction, lifting to the double cover, and the classes that index
//! string and band modules.
//!
//! Run with `cargo run --example orbifold_words`.

use qpskew::groupoid::{band_to_tagged, classify_bands, classify_strings, report_bands, Covering, Lift};
use qpskew::io::parse_tri;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/disc.tri"))?;
    let cov = Covering::new(&parse_tri(&text)?)?;
    let g = &cov.base;

    let w = g.word("L", "2 2' 1' eP eP^-1 eP 1''")?;
    println!("reduced: {}", g.show(&w));
    match cov.lift(&w, true) {
        Lift::Word(up) => println!("lift: {}", cov.cover.show(&up)),
        Lift::NoLift => println!("no lift: the loop goes around P an odd number of times"),
    }

    let loop_pq = g.word("L", "1' eP 1'' 2 3' eQ 3'' 2'")?;
    if let Lift::Word(up) = cov.lift(&loop_pq, true) {
        println!("lift of a loop around P and Q: {}", cov.cover.show(&up));
    }

    let strings = classify_strings(&cov, 3);
    println!("\nstrings up to length 3: {} pairs, {} fixed by inversion", strings.pairs.len(), strings.involutions.len());

    let bands = classify_bands(&cov, 4);
    print!("bands up to length 4:\n{}", report_bands(&cov, &bands));

    let c = g.cyclic_normal_form(&loop_pq)?;
    for (e1, e2) in [(false, false), (true, false), (false, true), (true, true)] {
        println!("tagged arc ({e1}, {e2}): {}", g.show(&band_to_tagged(g, &c, e1, e2)?));
    }
    Ok(())
}
