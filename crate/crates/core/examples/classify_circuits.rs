//! Classifies a few circuits and prints the cobordism each one describes.
//!
//! cargo run --example classify_circuits

use circuitcat::Circuit;

fn main() -> circuitcat::Result<()> {
    for text in [
        "a=2,3,-5",
        "a=1,1,-1,-1",
        "a=2,1,-1,-1,-1",
        "a=1,2,3,-1,-5;nu=1,0,0,0,-1",
    ] {
        let c: Circuit = text.parse()?;
        let k = c.classify();
        println!("{c}");
        println!("  signature {:?}, Vol {}", c.signature(), c.volume());
        println!(
            "  {:?}: X+ = {}, X- = {}, mu = {}",
            k.kind, k.x_plus, k.x_minus, k.mu
        );
        println!("  negated: {}", c.negate());
        if let Ok((b, cc)) = c.decompose() {
            println!("  splits as {b} and {cc}");
        }
    }
    Ok(())
}
