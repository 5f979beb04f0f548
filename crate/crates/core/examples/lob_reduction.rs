//! Walk through the leaf reduction step by step on a small digraph.

use outbranch::connectivity::cut_profile;
use outbranch::lob::{
    build_dup, contract_pendant_matching, exhaust_case2a, reduce_lob, ReductionOutcome,
};
use outbranch::Digraph;

fn main() -> outbranch::Result<()> {
    // 0 -> 1 -> 2 -> {3, 4}, 4 -> 3, 3 -> 5, 0 -> 2
    let d = Digraph::from_arcs(6, [(0, 1), (1, 2), (0, 2), (2, 3), (2, 4), (4, 3), (3, 5)])?;

    let c = exhaust_case2a(&d, 0)?;
    println!("contractions: {}", c.steps.len());

    let p = cut_profile(&c.digraph, c.root)?;
    println!("cut vertices {:?}", p.cut_vertices);
    println!("S>=2 {:?}  S=1 {:?}", p.s_geq2, p.s_eq1);
    println!("A_c {:?}  A_p {:?}", p.a_c(), p.a_p());

    let dup = build_dup(&c.digraph, &p.s_geq2)?;
    let pc = contract_pendant_matching(&dup.digraph, &p.a_p())?;
    println!(
        "D^dup has {} vertices, after pendant contraction {}",
        dup.digraph.n(),
        pc.digraph.n()
    );

    for k in 1..=3 {
        match reduce_lob(&d, 0, k)?.outcome {
            ReductionOutcome::GuaranteedYes(r) => println!("k={k}: yes by {:?}", r.guarantee),
            ReductionOutcome::Reduced { s, report } => {
                println!("k={k}: S={s:?} alpha={} beta={}", report.alpha, report.beta)
            }
        }
    }
    Ok(())
}
