//! Gram matrix of the collection, its half twist, and the collection of the
//! negated circuit.
//!
//! cargo run --example koszul_duality

use circuitcat::mutation::{
    format_poincare, koszul_duality_report, mutate_left, poincare_of_collection,
};
use circuitcat::Circuit;

fn main() -> circuitcat::Result<()> {
    let c: Circuit = "a=1,1,1,-3".parse()?;
    let n = 3;
    let r = koszul_duality_report(&c, n)?;
    println!("chi(E_j, E_k) = {:?}", r.gram.rows());
    println!("after L1 = {:?}", mutate_left(&r.gram, 1)?.rows());
    println!("half twist = {:?}", r.twisted.rows());
    println!("dual = {:?}", r.dual.rows());
    println!("equal up to signs: {}", r.holds);
    for row in poincare_of_collection(&c, n)? {
        let cells: Vec<String> = row.iter().map(format_poincare).collect();
        println!("  {}", cells.join(" | "));
    }
    Ok(())
}
