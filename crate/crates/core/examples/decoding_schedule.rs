//! Group successive decoding schedules for rate tuples of a biased
//! three-user adder, and the corner points reached by single-user orders.

use mac_polytope::{dominant_vertex, locate_minimal_face, ChannelSpec, Location, Region, UserSet};

fn main() -> mac_polytope::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/adder3_biased.json");
    let region = Region::new(&ChannelSpec::from_path(path)?)?;

    for order in [[1, 2, 3], [3, 1, 2]] {
        let rate = dominant_vertex(&region, &order)?;
        println!("order {order:?} reaches {rate:.6?}");
    }

    let a = dominant_vertex(&region, &[1, 2, 3])?;
    let b = dominant_vertex(&region, &[2, 1, 3])?;
    let midpoint: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect();
    let inner: Vec<f64> = midpoint.iter().map(|x| x * 0.9).collect();
    let outside = vec![region.bound(UserSet::full(3)), 0.1, 0.1];

    for rate in [midpoint, inner, outside] {
        match locate_minimal_face(&region, &rate, 1e-9)? {
            Location::Face { label } => {
                println!("{rate:.6?} lies on {label}, decode {}", label.decoding_order()?)
            }
            Location::NotAchievable { constraint, excess, .. } => {
                println!("{rate:.6?} violates {constraint} by {excess:.6}")
            }
        }
    }
    Ok(())
}
