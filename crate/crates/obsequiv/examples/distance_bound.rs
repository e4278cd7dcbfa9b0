//! The dyadic-grid observation tracks the true state to within √2/2ⁿ.
//!
//! Each cell's representative sits at offset (√2/2ⁿ⁺¹, √2/2ⁿ⁺¹) from the
//! cell's lower-left corner, so no point of the square is ever further
//! than √2/2ⁿ from the value reported for it. Given a precision target ε
//! one picks the smallest n with √2/2ⁿ < ε.
//!
//! Run with: cargo run --example distance_bound

use obsequiv::equivalence::{epsilon_congruence_bound_check, resolution_for_epsilon};
use obsequiv::partitions::dyadic_partition;

fn main() -> obsequiv::Result<()> {
    println!("  n  cells      max distance   bound √2/2ⁿ");
    for n in 1..=8 {
        let r = epsilon_congruence_bound_check(n)?;
        let cells = dyadic_partition(n)?.len();
        println!(
            "  {n}  {cells:>6}     {:>10.6}     {:>10.6}  {}",
            r.max_distance,
            r.bound,
            if r.pass { "ok" } else { "VIOLATED" }
        );
    }

    for eps in [0.3, 0.05, 0.01] {
        let n = resolution_for_epsilon(eps)?;
        let r = epsilon_congruence_bound_check(n)?;
        println!(
            "\nε = {eps}: resolution n = {n} gives bound {:.6} < {eps}",
            r.bound
        );
    }
    Ok(())
}
