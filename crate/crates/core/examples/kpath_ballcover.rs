//! Ball-cover search for a long directed path, for several ball counts.

use outbranch::harness::{generate, GeneratorSpec};
use outbranch::kpath::{solve_kpath_ballcover, KpathOptions};

fn main() -> outbranch::Result<()> {
    let d = generate(&GeneratorSpec::random_sparse(14, 22, 5, 0.3))?;
    let k = 6;
    for b in 1..=3 {
        let sol = solve_kpath_ballcover(&d, k, b, &KpathOptions::default())?;
        println!(
            "b={b} radius={} subsets={} examined={}: {:?}",
            sol.stats.radius, sol.stats.subsets, sol.stats.subsets_examined, sol.path
        );
    }
    Ok(())
}
