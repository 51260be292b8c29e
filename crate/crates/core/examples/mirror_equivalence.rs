//! Builds both sides of the mirror equivalence for one circuit and checks
//! that the transported bases and products agree.
//!
//! cargo run --example mirror_equivalence

use circuitcat::amodelrec::{build_acategory, hom_decomposition, verify_iso};
use circuitcat::Circuit;

fn main() -> circuitcat::Result<()> {
    let c: Circuit = "a=1,2,3,-1,-5;nu=1,0,0,0,-1".parse()?;
    let n = 4;
    let a = build_acategory(&c, n)?;
    println!("{c}, levels: {}", a.level().kind_name());
    for k in 1..n {
        for s in hom_decomposition(&c, n, 0, k)?
            .iter()
            .filter(|s| !s.basis.is_empty())
        {
            let names: Vec<String> = s.basis.iter().map(|x| x.name()).collect();
            println!(
                "  Hom(L0, L{k}) at z^{}, weight shift {}, degree shift {}: {}",
                s.m,
                s.shift.sigma_w,
                s.shift.sigma_d,
                names.join(", ")
            );
        }
    }
    let report = verify_iso(&c, n)?;
    println!(
        "iso: {} ({} pairs, {} compositions, dual leaves {:?})",
        if report.passed() { "ok" } else { "MISMATCH" },
        report.pairs_checked,
        report.compositions_checked,
        report.dual_leaves
    );
    Ok(())
}
