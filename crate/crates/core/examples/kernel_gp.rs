//! Draws composed kernels from the default bank and samples one GP path for
//! each, printing the expression, the jitter Cholesky needed and a few values.
//!
//! ```bash
//! cargo run --release -p cauker --example kernel_gp -- 5 128
//! ```

use cauker::gp::{cholesky_with_jitter, sample_gp, GpPrior};
use cauker::kernel::{gram_matrix, sample_kernel_expr, KernelBank, DEFAULT_K_MAX};
use cauker::mean::sample_mean;
use cauker::rng::{derive_stream, MasterSeed};

fn main() -> cauker::Result<()> {
    let mut args = std::env::args().skip(1);
    let draws: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let length: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(128);

    let bank = KernelBank::default_bank();
    println!(
        "bank holds {} kernels, e.g. {}",
        bank.len(),
        bank.kernels()[0]
    );

    for i in 0..draws {
        let mut s = derive_stream(MasterSeed(42), i);
        let kernel = sample_kernel_expr(&mut s, &bank, DEFAULT_K_MAX);
        let mean = sample_mean(&mut s, length)?;
        let prior = GpPrior::new(mean, kernel, length)?;

        let gram = gram_matrix(&prior.kernel, &prior.grid())?;
        let factor = cholesky_with_jitter(&gram)?;
        let path = sample_gp(&mut s, &prior)?;

        let head: Vec<String> = path.iter().take(5).map(|v| format!("{v:.3}")).collect();
        println!("[{i}] {}", prior.kernel);
        println!(
            "    {} leaves, trace {:.3}, jitter {:e}, first values [{}]",
            prior.kernel.leaf_count(),
            gram.trace(),
            factor.jitter(),
            head.join(", ")
        );
    }
    Ok(())
}
