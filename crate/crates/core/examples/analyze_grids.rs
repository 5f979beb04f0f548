//! Separator size and treewidth on bidirected grids of growing side.

use outbranch::harness::{analyze, generate, GeneratorSpec};

fn main() -> outbranch::Result<()> {
    println!("side  k  |S|  tw(D')  tw(D'-S)  ratio");
    for side in 4..=8 {
        let d = generate(&GeneratorSpec::grid(side, side, 0, 1.0))?;
        let k = (side * side) / 6 + 1;
        let r = analyze(&d, 0, k)?;
        println!(
            "{side:>4} {k:>2} {:>4} {:>7} {:>9}  {:.3}",
            r.s_size.unwrap_or(0),
            r.tw_reduced,
            r.tw_after_removal.map_or("-".into(), |t| t.to_string()),
            r.ratio.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
