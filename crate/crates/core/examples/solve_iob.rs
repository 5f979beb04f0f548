//! Decide k-Internal Out-Branching and show which sub-instance produced the tree.

use outbranch::iob::{solve_iob, IobOptions, Passthrough};
use outbranch::Digraph;

fn main() -> outbranch::Result<()> {
    // a directed 10-cycle with two chords
    let mut arcs: Vec<(usize, usize)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    arcs.extend([(0, 5), (3, 8)]);
    let d = Digraph::from_arcs(10, arcs)?;
    for k in [4, 9, 10] {
        let sol = solve_iob(&d, k, Some(0), &Passthrough, &IobOptions::default())?;
        println!(
            "k={k}: {} (sub-instances {} of {}, provenance {:?})",
            sol.answer, sol.stats.instances_solved, sol.stats.collection_size, sol.provenance
        );
        if let Some(w) = sol.witness {
            println!("  internal {:?}", w.internal());
        }
    }
    Ok(())
}
