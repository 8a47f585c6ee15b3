//! Brute-force vertex enumeration and the label/lattice cross-check.

use mac_polytope::oracle::{cross_validate, enumerate_vertices, FEASIBILITY_TOL};
use mac_polytope::{build_hrep, ChannelSpec};

fn main() -> mac_polytope::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/adder3_biased.json");
    let spec = ChannelSpec::from_path(path)?;
    let vertices = enumerate_vertices(&build_hrep(&spec)?, FEASIBILITY_TOL)?;
    println!("{} vertices", vertices.len());
    for v in vertices.vertices.iter().take(4) {
        println!("  {v:.4?}");
    }

    let report = cross_validate(&spec)?;
    println!("faces per dimension: {:?}", report.oracle_counts);
    println!("label pairs checked: {}", report.pairs_checked);
    println!("mismatches: {}", report.mismatches.len());
    Ok(())
}
