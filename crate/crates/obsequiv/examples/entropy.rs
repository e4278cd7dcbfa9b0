//! Kolmogorov–Sinai entropy of Bernoulli shifts and entropy rates of
//! Markov chains.
//!
//! Two Bernoulli shifts are isomorphic exactly when their entropies
//! Σ −pᵢ log₂ pᵢ agree, which makes the number a complete invariant; the
//! left/right baker observation realizes the full 1 bit/step of the fair
//! coin.
//!
//! Run with: cargo run --example entropy

use obsequiv::equivalence::{baker_dyadic_chain, baker_left_right_chain, rotation_halves_chain};
use obsequiv::partitions::{coarse_grain_random, left_right_partition};
use obsequiv::shift_space::{empirical_entropy_rate, entropy_rate_markov, ks_entropy_bernoulli};
use obsequiv::{System, GOLDEN_ROTATION};

fn main() -> obsequiv::Result<()> {
    println!("Kolmogorov–Sinai entropy of Bernoulli shifts (bits):");
    for probs in [
        vec![0.5, 0.5],
        vec![1.0, 0.0],
        vec![1.0 / 3.0, 2.0 / 3.0],
        vec![0.25; 4],
    ] {
        println!("  p = {probs:?}: {:.6}", ks_entropy_bernoulli(&probs)?);
    }

    println!("\nentropy rates of observation chains (bits/step):");
    println!(
        "  left/right baker chain : {:.6}",
        entropy_rate_markov(&baker_left_right_chain())
    );
    for n in 1..=3 {
        let h = entropy_rate_markov(&baker_dyadic_chain(n)?);
        println!("  dyadic n={n} baker chain: {h:.6}");
    }
    let rot = rotation_halves_chain(GOLDEN_ROTATION)?;
    println!(
        "  rotation halves chain  : {:.6}",
        entropy_rate_markov(&rot)
    );

    let seq = coarse_grain_random(&System::baker(), &left_right_partition(), 1_000_000, 9)?;
    println!(
        "\nempirical rate of the observed fair coin: {:.6}",
        empirical_entropy_rate(&seq)?
    );
    Ok(())
}
