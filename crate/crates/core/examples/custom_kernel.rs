//! Plugging a vertex-deleting kernel into the internal-vertex solver.

use outbranch::iob::{kernel_stage, solve_iob, IobOptions, Kernel};
use outbranch::{Digraph, Result};

/// Keeps only vertices reachable from vertex 0. Not a real kernel for
/// arbitrary roots; here every instance is rooted at 0.
struct ReachableFromZero;

impl Kernel for ReachableFromZero {
    fn name(&self) -> &str {
        "reachable-from-0"
    }

    fn reduce(&self, d: &Digraph, k: usize) -> Result<(Vec<usize>, usize)> {
        let seen = d.reachable_from(0);
        Ok(((0..d.n()).filter(|&v| seen[v]).collect(), k))
    }
}

fn main() -> Result<()> {
    let d = Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5)])?;
    let out = kernel_stage(&ReachableFromZero, &d, 2)?;
    println!("kernel kept {} of {} vertices", out.digraph.n(), d.n());
    let sol = solve_iob(&d, 3, Some(0), &ReachableFromZero, &IobOptions::default())?;
    println!(
        "k=3: {} with {:?}",
        sol.answer,
        sol.witness.map(|w| w.internal())
    );
    match kernel_stage(
        &ReachableFromZero,
        &Digraph::from_arcs(20, (0..19).map(|i| (i, i + 1)))?,
        1,
    ) {
        Err(e) => println!("contract check: {e}"),
        Ok(_) => println!("within bound"),
    }
    Ok(())
}
