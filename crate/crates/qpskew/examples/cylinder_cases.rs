//! The five families of modules over the cover of a once-punctured cylinder
//! and their images on the cylinder: dimension vectors and number of
//! indecomposable summands.
//!
//! Run with `cargo run --example cylinder_cases`.

use qpskew::io::parse_tri;
use qpskew::linalg::{fmt_q, q, Q};
use qpskew::reps::{band_module, decompose, parse_word, string_module, CoverFunctors, RepError, Representation};

fn report(label: &str, cf: &CoverFunctors, m: &Representation) -> Result<(), RepError> {
    let down = cf.to_base(m)?;
    let dims: Vec<String> = down.dims().iter().map(|(v, d)| format!("{v}:{d}")).collect();
    match decompose(&down) {
        Ok(parts) => println!("{label}: {}  -> {} summand(s)", dims.join(" "), parts.len()),
        Err(RepError::FieldObstruction(p)) => println!("{label}: {}  -> needs a root of {p}", dims.join(" ")),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cylinder.tri"))?;
    let cf = CoverFunctors::new(&parse_tri(&text)?)?;
    let qp = cf.cover_qp();

    report("case 1, string pP 2-", &cf, &string_module(qp, &parse_word("pP 2-"))?)?;
    report("case 2, string 2+ pP 2-", &cf, &string_module(qp, &parse_word("2+ pP 2-"))?)?;
    report("case 3, band λ=3", &cf, &band_module(qp, &parse_word("1- 5- 4- 2-"), &q(3), 1)?)?;
    let four = parse_word("1+ 5+ 4+ pP 2- 1- 5- 4- pP 2+");
    for l in [q(4), q(2)] {
        report(&format!("case 4, band λ={}", fmt_q(&l)), &cf, &band_module(qp, &four, &l, 1)?)?;
    }
    let five = parse_word("4- pP 4+ 5+ 1+ 2+ pP 2- 1- 5-");
    for l in [q(2), q(1), Q::from_integer((-1).into())] {
        report(&format!("case 5, band λ={}", fmt_q(&l)), &cf, &band_module(qp, &five, &l, 1)?)?;
    }
    Ok(())
}
