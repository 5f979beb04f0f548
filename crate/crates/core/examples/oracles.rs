//! Brute-force references: arborescence enumeration against the matrix-tree count.

use outbranch::oracle::{
    brute_longest_path, brute_max_internal, brute_max_leaves, count_arborescences_matrix_tree,
    enum_arborescences, DEFAULT_ENUM_LIMIT,
};
use outbranch::Digraph;

fn main() -> outbranch::Result<()> {
    let d = Digraph::from_arcs(
        5,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (2, 1),
            (1, 3),
            (2, 3),
            (3, 4),
            (2, 4),
        ],
    )?;
    let all = enum_arborescences(&d, 0, DEFAULT_ENUM_LIMIT)?;
    println!(
        "enumerated {}, matrix-tree {}",
        all.len(),
        count_arborescences_matrix_tree(&d, 0)?
    );
    println!("max leaves {:?}", brute_max_leaves(&d, 0)?.map(|x| x.0));
    println!("max internal {:?}", brute_max_internal(&d, 0)?.map(|x| x.0));
    println!("longest path {:?}", brute_longest_path(&d)?);
    Ok(())
}
