//! Intersection points of lifted paths in the one-dimensional model, compared
//! with an exact segment-intersection scan.
//!
//! cargo run --example thimble_intersections

use circuitcat::amodel1d::{geometric_oracle, intersection_points, triangle_product};

fn main() -> circuitcat::Result<()> {
    let (a0, a1) = (2, 3);
    for k in 0..=6 {
        let points = intersection_points(a0, a1, 0, k)?;
        let geometry = geometric_oracle(a0, a1, 0, k)?;
        let idx: Vec<i64> = points.iter().map(|p| p.m).collect();
        println!("L0 -> L{k}: {idx:?} (geometry {geometry:?})");
    }
    let (m, region) = triangle_product(a0, a1, 0, 3, 6, 1, 1)?;
    println!("p_1 * p_1 on (L0, L3, L6) = index {m}, {region:?}");
    Ok(())
}
