//! Fine observations of the baker system are Markov but not Bernoulli.
//!
//! Under the 4-cell grid each cell can only move to 2 of the 4 cells: the
//! structural zeros witness that consecutive outcomes are dependent, so no
//! i.i.d. process reproduces the statistics. A genuine uniform 4-symbol
//! Bernoulli control passes the same test.
//!
//! Run with: cargo run --example bernoulli_witness

use obsequiv::equivalence::{bernoulli_rejection_witness, markov_property_test};
use obsequiv::partitions::{coarse_grain_random, dyadic_partition};
use obsequiv::processes::{bernoulli_sample, empirical_transition_matrix};
use obsequiv::System;

fn main() -> obsequiv::Result<()> {
    let len = 1_000_000;
    let part = dyadic_partition(1)?;
    let seq = coarse_grain_random(&System::baker(), &part, len, 5)?;

    println!("empirical transition matrix of the 4-cell observation:");
    let est = empirical_transition_matrix(&seq)?;
    for (i, row) in est.matrix.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|p| format!("{p:.3}")).collect();
        println!("  from {}: [{}]", part.label(i), cells.join(", "));
    }

    let witness = bernoulli_rejection_witness(&seq)?;
    println!(
        "\nindependence of consecutive symbols: {} (p = {:.3e})",
        if witness.reject {
            "REJECTED"
        } else {
            "not rejected"
        },
        witness.p_value
    );
    println!(
        "witness pair {:?}: P(next|prev) = {:.4} vs marginal P(next) = {:.4}",
        witness.witness, witness.conditional, witness.marginal
    );

    let markov = markov_property_test(&seq)?;
    println!(
        "order-1 Markov property: {} (p = {:.3})",
        if markov.pass {
            "consistent"
        } else {
            "rejected"
        },
        markov.p_value
    );
    println!("=> the observed process is Markov but not Bernoulli");

    let control = bernoulli_sample(&[0.25; 4], len, 6)?;
    let control_witness = bernoulli_rejection_witness(&control)?;
    println!(
        "\nuniform 4-symbol Bernoulli control: {} (p = {:.3})",
        if control_witness.reject {
            "REJECTED"
        } else {
            "not rejected"
        },
        control_witness.p_value
    );
    Ok(())
}
