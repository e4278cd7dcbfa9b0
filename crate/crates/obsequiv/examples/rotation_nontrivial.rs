//! Even a non-chaotic system looks stochastic through a finite observation.
//!
//! The irrational rotation is as tame as dynamics gets (all orbits are
//! stable), yet observing only which half of the circle the point is in
//! yields a process where no outcome determines its successor: every
//! transition probability stays strictly below 1.
//!
//! Run with: cargo run --example rotation_nontrivial

use obsequiv::equivalence::{nontriviality_verdict, rotation_halves_chain};
use obsequiv::partitions::{coarse_grain_random, halves_partition};
use obsequiv::processes::{empirical_transition_matrix, stationarity_check};
use obsequiv::{System, GOLDEN_ROTATION};

fn main() -> obsequiv::Result<()> {
    let alpha = GOLDEN_ROTATION;
    let analytic = rotation_halves_chain(alpha)?;
    println!("analytic halves chain at α = {alpha:.6}:");
    for (label, row) in ["L", "R"].iter().zip(analytic.transition()) {
        println!("  from {label}: [{:.6}, {:.6}]", row[0], row[1]);
    }

    let sys = System::rotation(alpha)?;
    let seq = coarse_grain_random(&sys, &halves_partition(), 1_000_000, 31)?;
    let est = empirical_transition_matrix(&seq)?;
    println!("\nempirical chain from a 10^6-step orbit:");
    for (label, row) in ["L", "R"].iter().zip(&est.matrix) {
        println!("  from {label}: [{:.6}, {:.6}]", row[0], row[1]);
    }

    let verdict = nontriviality_verdict(&analytic);
    println!(
        "\nnontrivial: {} (worst row max {:.4} < 1: no outcome forces its successor)",
        verdict.nontrivial, verdict.row_max
    );

    let stat = stationarity_check(&seq, 10)?;
    println!(
        "stationarity across 10 blocks: {} (symbol p = {:.3}, bigram p = {:.3})",
        if stat.pass { "pass" } else { "FAIL" },
        stat.symbol_p_value,
        stat.bigram_p_value
    );
    Ok(())
}
