//! Face labels of a three-user region, their dimensions and intersections.

use mac_polytope::{enumerate_faces, merge_labels, FaceLabel};

fn main() -> mac_polytope::Result<()> {
    for d in 0..=3 {
        let labels = enumerate_faces(3, Some(d))?;
        let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        println!("dim {d} ({}): {}", labels.len(), names.join(" "));
    }

    let dominant = FaceLabel::parse("F({1,2,3}|)", 3)?;
    let pair = FaceLabel::parse("F({1,3}|)", 3)?;
    let single = FaceLabel::parse("F({2}|)", 3)?;
    for (a, b) in [(&dominant, &pair), (&pair, &single)] {
        match merge_labels(a, b) {
            Some(m) => println!("{a} meets {b} in {m} (dim {})", m.dim()?),
            None => println!("{a} and {b} are disjoint"),
        }
    }
    Ok(())
}
