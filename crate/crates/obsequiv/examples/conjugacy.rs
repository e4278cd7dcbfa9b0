//! The baker map is the left shift on binary expansions.
//!
//! Writing x = 0.ω₀ω₁… and y = 0.ω₋₁ω₋₂… assigns each point of the square
//! a bi-infinite bit sequence; one baker step moves every index down by
//! one. This program shows the coding on (1/3, 2/3), verifies the
//! commutation step by step, and batch-checks random points.
//!
//! Run with: cargo run --example conjugacy

use obsequiv::dynamics::{BitFraction, ExactPair, PhasePoint, System};
use obsequiv::shift_space::{baker_to_shift, conjugacy_sample, shift_to_baker};

fn main() -> obsequiv::Result<()> {
    // 1/3 = 0.010101…, 2/3 = 0.101010… in binary.
    let x = BitFraction::from_bits((0..64).map(|i| i % 2 == 1));
    let y = BitFraction::from_bits((0..64).map(|i| i % 2 == 0));
    let p = PhasePoint::from_exact(ExactPair::new(x, y));
    println!("point ({:.6}, {:.6})", p.x(), p.y());

    let w = baker_to_shift(&p, 6, 7)?;
    let left: Vec<u32> = (1..=6).map(|i| w.get(-i).unwrap()).collect();
    let right: Vec<u32> = (0..6).map(|t| w.get(t).unwrap()).collect();
    println!("window ω₋₆..ω₋₁ = {left:?} (y bits), ω₀..ω₅ = {right:?} (x bits)");

    let sys = System::baker();
    let mut cur = p.clone();
    let mut window = w;
    println!("\nstep vs shift, reading ω₀ after each:");
    for k in 1..=6 {
        cur = sys.step(&cur)?;
        window = window.shift_left()?;
        let from_orbit = baker_to_shift(&cur, 1, 1)?.get(0).unwrap();
        let from_shift = window.get(0).unwrap();
        println!("  k={k}: orbit coding reads {from_orbit}, shifted window reads {from_shift}");
        assert_eq!(from_orbit, from_shift);
    }

    let back = shift_to_baker(&baker_to_shift(&p, 52, 52)?)?;
    println!(
        "\ndecoding the window reproduces the point: ({:.12}, {:.12})",
        back.x(),
        back.y()
    );

    let sample = conjugacy_sample(10_000, 50, 64, 1)?;
    println!(
        "\nbatch check: {} random exact points, {} steps each -> {} failures \
         ({} boundary points resampled)",
        sample.points, sample.steps, sample.failures, sample.resampled
    );
    Ok(())
}
