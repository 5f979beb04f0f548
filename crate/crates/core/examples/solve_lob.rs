//! Decide k-Leaf Out-Branching on a generated grid and print the witness.

use outbranch::harness::{generate, GeneratorSpec};
use outbranch::lob::{solve_lob, LobOptions};

fn main() -> outbranch::Result<()> {
    let d = generate(&GeneratorSpec::grid(4, 4, 11, 0.6))?;
    for k in [3, 6, 9] {
        let sol = solve_lob(&d, k, None, &LobOptions::default())?;
        print!("k={k}: answer={}", sol.answer);
        if let Some(w) = &sol.witness {
            print!(" root={} leaves={:?}", w.root, w.leaves());
        }
        if let Some(c) = sol.certificate {
            print!(" via {c:?}");
        }
        println!();
    }
    Ok(())
}
