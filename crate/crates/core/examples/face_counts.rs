//! Face counts from the closed forms, and the CSV table for plotting.

use mac_polytope::counting::{count_table, count_vertices, facet_counts, write_csv};
use mac_polytope::FaceCounts;

fn main() -> mac_polytope::Result<()> {
    for m in 1..=6 {
        let (facets, dominant_facets) = facet_counts(m);
        println!(
            "M={m}: {}  vertices={} facets={facets} dominant-facet facets={dominant_facets}",
            FaceCounts::new(m)?.summary(),
            count_vertices(m)
        );
    }
    println!();
    write_csv(&count_table(5)?, std::io::stdout())?;
    Ok(())
}
