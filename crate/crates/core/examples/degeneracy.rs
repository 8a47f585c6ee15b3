//! Non-degeneracy reports for the shipped fixtures.

use mac_polytope::region::DEFAULT_MARGIN;
use mac_polytope::{check_degeneracy, ChannelSpec};

fn main() -> mac_polytope::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["xor2", "parallel2", "adder2", "adder3_biased"] {
        let spec = ChannelSpec::from_path(format!("{dir}/{name}.json"))?;
        let report = check_degeneracy(&spec, DEFAULT_MARGIN)?;
        println!("{name}: {}", report.summary());
    }
    Ok(())
}
