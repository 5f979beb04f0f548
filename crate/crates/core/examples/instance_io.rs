//! Parse the text instance format, round-trip it, and report parse errors.

use outbranch::digraph::{parse_instance, serialize_instance};

fn main() -> outbranch::Result<()> {
    let text = "# a diamond\n4 4\n0 1\n0 2\n1 3\n2 3\nroot 0\n";
    let inst = parse_instance(text)?;
    println!(
        "n={} m={} root={:?}",
        inst.digraph.n(),
        inst.digraph.m(),
        inst.root
    );
    let again = serialize_instance(&inst.digraph, inst.root);
    assert_eq!(parse_instance(&again)?, inst);
    print!("{again}");
    match parse_instance("2 1\n0 0\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
