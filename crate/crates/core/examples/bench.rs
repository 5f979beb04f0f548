//! A tiny benchmark suite written as CSV to stdout.

use outbranch::harness::{bench, bench_csv, BenchCase, GeneratorSpec, Problem};

fn main() -> outbranch::Result<()> {
    let suite: Vec<BenchCase> = (0..3)
        .map(|seed| BenchCase {
            generator: GeneratorSpec::random_sparse(12, 18, seed, 0.4),
            problems: vec![Problem::Lob, Problem::Iob, Problem::Kpath],
            k: 4,
            b: 2,
            root: None,
        })
        .collect();
    print!("{}", bench_csv(&bench(&suite, false)?)?);
    Ok(())
}
