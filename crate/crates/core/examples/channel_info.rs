//! Mutual-information bounds of the two-user binary adder `Y = X1 + X2`.

use mac_polytope::channel::mi_notation;
use mac_polytope::{build_hrep, ChannelSpec, UserSet};

fn main() -> mac_polytope::Result<()> {
    let spec = ChannelSpec {
        users: 2,
        input_sizes: vec![2, 2],
        output_size: 3,
        input_pmfs: vec![vec![0.5, 0.5], vec![0.5, 0.5]],
        transition: vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ],
    };
    let hrep = build_hrep(&spec)?;
    for s in UserSet::all(2).skip(1) {
        let given = s.complement(2);
        println!("{} = {:.6}", mi_notation(s, given), hrep.bound(s));
    }
    println!("constraints:");
    for c in hrep.constraints() {
        println!("  {c}");
    }
    Ok(())
}
