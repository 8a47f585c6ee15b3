//! Writes the Hasse diagram of the three-user face lattice as DOT.
//!
//! `cargo run --example lattice_dot > lattice.dot && dot -Tsvg lattice.dot`

use mac_polytope::hasse::lattice_dot;

fn main() -> mac_polytope::Result<()> {
    print!("{}", lattice_dot(3)?);
    Ok(())
}
