//! Greedy and exact tree decompositions, validation and nice form.

use outbranch::treewidth::{
    exact_treewidth_small, greedy_decomposition, make_nice, NiceKind, Strategy,
};
use outbranch::UndirectedGraph;

fn main() -> outbranch::Result<()> {
    // 3x3 grid
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if j < 2 {
                edges.push((3 * i + j, 3 * i + j + 1));
            }
            if i < 2 {
                edges.push((3 * i + j, 3 * i + j + 3));
            }
        }
    }
    let g = UndirectedGraph::from_edges(9, edges)?;

    for s in [Strategy::MinDegree, Strategy::MinFill] {
        let td = greedy_decomposition(&g, s);
        println!(
            "{s:?}: width {} valid {:?}",
            td.width(),
            td.validate(&g).is_ok()
        );
    }
    let (tw, td) = exact_treewidth_small(&g)?;
    println!("exact treewidth {tw}");
    print!("{}", td.to_text());

    let nice = make_nice(&td, &g)?;
    let joins = nice
        .nodes
        .iter()
        .filter(|n| matches!(n.kind, NiceKind::Join))
        .count();
    println!("nice form: {} nodes, {joins} joins", nice.nodes.len());
    Ok(())
}
