//! Sampling stochastic processes and recovering their structure.
//!
//! Draws a stationary path from a Markov chain, re-estimates the
//! transition matrix from the sample, and reads off the structural facts:
//! stationary distribution, irreducibility, periods, aperiodicity.
//!
//! Run with: cargo run --example chain_analysis

use obsequiv::processes::{
    bernoulli_sample, empirical_transition_matrix, is_aperiodic, is_irreducible, markov_sample,
    period_of, stationarity_check, MarkovModel,
};

fn main() -> obsequiv::Result<()> {
    let model = MarkovModel::new(vec![
        vec![0.2, 0.5, 0.3],
        vec![0.4, 0.1, 0.5],
        vec![0.25, 0.25, 0.5],
    ])?;
    println!(
        "true stationary distribution: {:?}",
        rounded(model.stationary())
    );

    let path = markov_sample(&model, 1_000_000, 7)?;
    let est = empirical_transition_matrix(&path)?;
    println!("re-estimated transition matrix from 10^6 steps:");
    for row in &est.matrix {
        println!("  {:?}", rounded(row));
    }
    println!(
        "estimated stationary: {:?}",
        rounded(est.stationary.as_ref().unwrap())
    );

    println!("\nstructure:");
    println!("  irreducible: {}", is_irreducible(&model));
    println!("  aperiodic:   {}", is_aperiodic(&model));
    for i in 0..3 {
        println!("  period of state {i}: {}", period_of(&model, i)?);
    }

    // A periodic contrast: the deterministic 3-cycle.
    let cycle = MarkovModel::new(vec![
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
    ])?;
    println!(
        "\n3-cycle: irreducible = {}, aperiodic = {}, period of state 0 = {}",
        is_irreducible(&cycle),
        is_aperiodic(&cycle),
        period_of(&cycle, 0)?
    );

    let iid = bernoulli_sample(&[0.2, 0.3, 0.5], 100_000, 8)?;
    let stat = stationarity_check(&iid, 10)?;
    println!(
        "\ni.i.d. sample stationarity across 10 blocks: {} (symbol p = {:.3})",
        if stat.pass { "pass" } else { "FAIL" },
        stat.symbol_p_value
    );
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e4).round() / 1e4).collect()
}
