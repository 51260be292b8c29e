//! The quiver of the exceptional collection O(0), ..., O(n-1) on a weighted
//! projective stack, with a DOT rendering.
//!
//! cargo run --example beilinson_quiver -- 2,3,-5 5

use circuitcat::balgebra::{build_bcategory, quiver};
use circuitcat::cli::emit_dot;
use circuitcat::validate_circuit;

fn main() -> circuitcat::Result<()> {
    let mut args = std::env::args().skip(1);
    let a: Vec<i64> = args
        .next()
        .unwrap_or_else(|| "1,2,3,-1,-5".into())
        .split(',')
        .map(|x| x.trim().parse().expect("integer entry"))
        .collect();
    let n: usize = args.next().map(|x| x.parse().expect("n")).unwrap_or(5);
    let c = validate_circuit(&a, &vec![0; a.len()])?;

    let cat = build_bcategory(&c, n)?;
    for k in 0..n {
        let basis = cat.hom(0, k)?;
        let names: Vec<String> = basis.iter().map(|g| g.value.name('v')).collect();
        println!("Hom(R0, R{k}) = <{}>", names.join(", "));
    }
    print!("{}", emit_dot(n, &quiver(&c, n)?));
    Ok(())
}
