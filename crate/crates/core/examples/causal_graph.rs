//! Builds a random causal DAG, dumps its edge list, and pushes two sine roots
//! through it.
//!
//! ```bash
//! cargo run --release -p cauker --example causal_graph -- 3 6
//! ```

use cauker::causal::{build_dag, propagate};
use cauker::rng::{derive_stream, MasterSeed};

fn main() -> cauker::Result<()> {
    let mut args = std::env::args().skip(1);
    let roots: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let edges: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);

    let mut s = derive_stream(MasterSeed(7), 0);
    let dag = build_dag(&mut s, roots, edges)?;
    print!("{}", dag.to_edge_list());

    let length = 32;
    let inputs: Vec<Vec<f64>> = (0..roots)
        .map(|r| {
            (0..length)
                .map(|t| ((r + 1) as f64 * t as f64 / length as f64 * std::f64::consts::TAU).sin())
                .collect()
        })
        .collect();
    let nodes = propagate(&dag, &inputs, true)?;
    for (v, series) in nodes.iter().enumerate() {
        let kind = if v < dag.root_count() { "root" } else { "node" };
        let mean = series.iter().sum::<f64>() / series.len() as f64;
        println!(
            "{kind} {v}: in-degree {}, mean {mean:+.3}, x[0..4] = {:.3?}",
            dag.in_degree(v),
            &series[..4]
        );
    }
    Ok(())
}
