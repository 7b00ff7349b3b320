//! Writes the bundled random instances used by the CLI tests.
//!
//!     cargo run -p exroute --example gen_instances -- tests/data/random 100

use std::path::PathBuf;

use exroute::random::{random_instance, InstanceParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "tests/data/random".into()));
    let count: u64 = args
        .next()
        .map(|c| c.parse().expect("count"))
        .unwrap_or(100);
    std::fs::create_dir_all(&dir)?;
    let mut seed = 5000;
    let mut i = 0;
    while i < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        seed += 1;
        let n = rng.gen_range(3..=10usize);
        let max_m = 30.min(n * (n - 1));
        let params = InstanceParams {
            vertices: n,
            edges: rng.gen_range(n..=max_m),
            ..InstanceParams::small()
        };
        let inst = random_instance(&mut rng, &params);
        // the file format only names vertices that have an edge
        if inst
            .graph
            .vertices()
            .any(|v| inst.graph.in_degree(v) + inst.graph.out_degree(v) == 0)
        {
            continue;
        }
        let (graph, exceptions) = inst.to_text();
        std::fs::write(dir.join(format!("{i:03}.graph")), graph)?;
        std::fs::write(dir.join(format!("{i:03}.exc")), exceptions)?;
        i += 1;
    }
    Ok(())
}
