//! BFS layers, the spaced parts and the lazily generated sub-instances.

use outbranch::iob::{build_partitions, generate_collection, Partitioning};
use outbranch::Digraph;

fn main() -> outbranch::Result<()> {
    let d = Digraph::from_arcs(9, (0..8).map(|i| (i, i + 1)))?;
    let k = 4;
    match build_partitions(&d.underlying_graph(), 0, k)? {
        Partitioning::SingleInstance => println!("shallow: one instance"),
        Partitioning::Layered(p) => {
            println!("spacing {}", p.spacing);
            for (q, part) in p.parts.iter().enumerate() {
                println!("P_{q} = {part:?}");
            }
        }
    }
    let coll = generate_collection(&d, k, 0, 10_000)?;
    println!("|Z| <= {}, {} sub-instances", coll.subset_bound, coll.count);
    for sub in coll.iter().take(5) {
        println!("{:?} keeps {:?}", sub.provenance, sub.vertices);
    }
    Ok(())
}
