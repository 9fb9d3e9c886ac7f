//! Double covers of punctured surfaces: the arc count, the topology of the
//! cover, and the cover's QP with the rescaling that matches it to the skew
//! QP of the base.
//!
//! Run with `cargo run --example double_cover`.

use qpskew::io::parse_tri;
use qpskew::surface::double_cover;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["disc", "cylinder", "cylinder_same_side", "cylinder_both_sides"] {
        let path = format!("{}/data/{name}.tri", env!("CARGO_MANIFEST_DIR"));
        let t = parse_tri(&std::fs::read_to_string(path)?)?;
        let base = t.validate()?;
        let dc = double_cover(&t)?;
        let cover = dc.triangulation.validate()?;
        println!(
            "{name}: arcs {} -> {} (2·{} − 3·{}), cover genus {} with {} boundary components",
            base.arcs, cover.arcs, base.arcs, base.punctures, cover.genus, cover.boundary_components
        );
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cylinder.tri");
    let dc = double_cover(&parse_tri(&std::fs::read_to_string(path)?)?)?;
    println!("\ncylinder cover potential: {}", dc.qp.potential);
    print!("{dc}");
    Ok(())
}
