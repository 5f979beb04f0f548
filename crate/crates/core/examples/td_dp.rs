//! The three dynamic programs run directly on a nice tree decomposition.

use outbranch::dp::{dp_longest_path, dp_max_internal_outtree, dp_max_leaves};
use outbranch::harness::{generate, GeneratorSpec};
use outbranch::treewidth::nice_decomposition;

fn main() -> outbranch::Result<()> {
    let d = generate(&GeneratorSpec::grid(3, 4, 2, 1.0))?;
    let nice = nice_decomposition(&d.underlying_graph());
    println!("width {}", nice.width());

    if let Some(best) = dp_max_leaves(&d, 0, &nice)? {
        println!(
            "max leaves {} (states peak {})",
            best.leaves, best.stats.max_states
        );
    }
    let it = dp_max_internal_outtree(&d, 0, &nice, 5)?;
    println!(
        "out-tree on <=5 vertices: {} internal, {} vertices",
        it.internal, it.size
    );
    let lp = dp_longest_path(&d, &nice)?;
    println!("longest path {} arcs: {:?}", lp.length, lp.path);
    Ok(())
}
