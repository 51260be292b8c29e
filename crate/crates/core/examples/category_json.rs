//! Dumps a small B-side category as JSON and checks associativity.
//!
//! cargo run --example category_json

use circuitcat::balgebra::build_bcategory;
use circuitcat::Circuit;

fn main() -> circuitcat::Result<()> {
    let c: Circuit = "a=1,1,-2".parse()?;
    let cat = build_bcategory(&c, 2)?;
    match cat.category().check_associativity() {
        Ok(triples) => eprintln!("{triples} composable triples associate"),
        Err(w) => eprintln!("associativity fails: {w:?}"),
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&cat.to_json()).expect("json")
    );
    Ok(())
}
