//! Mixing versus mere ergodicity, measured by correlation decay.
//!
//! For the baker system the correlation μ(Tⁿ(A)∩B) − μ(A)μ(B) on dyadic
//! rectangles dies out exactly once the lag clears the rectangles' bit
//! resolution. The rotation never mixes: its correlation keeps swinging
//! with the lag, yet the running (Cesàro) average still settles at zero,
//! the signature of ergodicity without mixing.
//!
//! Run with: cargo run --release --example mixing_vs_ergodicity

use obsequiv::equivalence::mixing_sweep;
use obsequiv::partitions::Cell;
use obsequiv::System;

fn main() -> obsequiv::Result<()> {
    let samples = 200_000;

    let baker = System::baker();
    let a = Cell::new(vec![0.0, 0.0], vec![0.5, 0.5])?;
    println!("baker, A = B = [0,1/2)², correlation by lag (exactly 0 from lag 3):");
    let corrs = mixing_sweep(&baker, &a, &a, 8, samples, 1)?;
    for (lag, c) in corrs.iter().enumerate() {
        println!("  lag {lag}: {c:+.5}");
    }

    let rotation = System::golden_rotation();
    let arc = Cell::new(vec![0.0], vec![0.5])?;
    println!("\ngolden rotation, A = B = [0,1/2), correlation by lag (no decay):");
    let corrs = mixing_sweep(&rotation, &arc, &arc, 12, samples, 2)?;
    for (lag, c) in corrs.iter().enumerate() {
        println!("  lag {lag}: {c:+.5}");
    }

    let long = mixing_sweep(&rotation, &arc, &arc, 10_000, 20_000, 3)?;
    let cesaro = long[1..].iter().sum::<f64>() / (long.len() - 1) as f64;
    let peak = long[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    println!("\nover 10^4 lags: largest |correlation| {peak:.4}, Cesàro mean {cesaro:+.5}");
    println!("ergodic (mean -> 0) but not mixing (no decay)");
    Ok(())
}
