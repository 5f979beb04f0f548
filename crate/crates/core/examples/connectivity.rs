//! Rooted cut vertices, cut-neighbourhoods and the vertex classes used by the reduction.

use outbranch::connectivity::{
    arcs_disconnecting_two, cut_profile, high_indegree_vertices, is_rooted_2connected,
    nice_vertices,
};
use outbranch::Digraph;

fn main() -> outbranch::Result<()> {
    let d = Digraph::from_arcs(
        6,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (2, 3),
            (2, 4),
            (4, 3),
            (3, 5),
            (5, 3),
        ],
    )?;
    println!("rooted 2-connected: {}", is_rooted_2connected(&d, 0)?);
    let p = cut_profile(&d, 0)?;
    for (x, c) in &p.cut_neighborhoods {
        println!("C({x}) = {c:?}");
    }
    println!(
        "arcs stranding >=2 vertices: {:?}",
        arcs_disconnecting_two(&d, 0)?
    );
    println!(
        "nice {:?}, in-degree>=3 {:?}",
        nice_vertices(&d),
        high_indegree_vertices(&d, 3)
    );
    Ok(())
}
