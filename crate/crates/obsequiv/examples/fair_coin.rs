//! The left/right observation of the baker system is a fair coin.
//!
//! Watching only whether the orbit is in the left or right half of the
//! square produces a process indistinguishable from i.i.d. fair coin
//! flips: the transition matrix is [[1/2,1/2],[1/2,1/2]] and every
//! finite-window cylinder frequency matches a genuine Bernoulli sample.
//!
//! Run with: cargo run --example fair_coin

use obsequiv::partitions::{coarse_grain_random, left_right_partition};
use obsequiv::processes::{bernoulli_sample, empirical_transition_matrix};
use obsequiv::shift_space::{empirical_entropy_rate, finite_window_equivalence};
use obsequiv::System;

fn main() -> obsequiv::Result<()> {
    let len = 1_000_000;
    let observed = coarse_grain_random(&System::baker(), &left_right_partition(), len, 42)?;
    let est = empirical_transition_matrix(&observed)?;

    println!("empirical transition matrix of the left/right observation ({len} steps):");
    for row in &est.matrix {
        println!("  [{:.4}, {:.4}]", row[0], row[1]);
    }

    let coin = bernoulli_sample(&[0.5, 0.5], len, 43)?;
    let window = finite_window_equivalence(&observed, &coin, 3, 0.01)?;
    println!("\nword frequencies at window 3 (each has measure 1/8 = 0.125):");
    for w in &window.words {
        println!(
            "  {:?}  observed {:.5}  coin {:.5}",
            w.word, w.freq_a, w.freq_b
        );
    }
    println!(
        "max deviation {:.5} <= {} -> {}",
        window.max_deviation,
        window.tolerance,
        if window.pass {
            "equivalent at this window"
        } else {
            "distinguishable"
        }
    );

    let rate = empirical_entropy_rate(&observed)?;
    println!("\nempirical entropy rate: {rate:.5} bits/step (fair coin: 1.0)");
    Ok(())
}
