//! Generate orbits of the two deterministic systems.
//!
//! The baker transformation stretches the unit square to twice its length
//! and half its width, then stacks the right half on top of the left; the
//! rotation advances every point by a fixed irrational angle. Both
//! preserve Lebesgue measure.
//!
//! Run with: cargo run --example orbit

use obsequiv::dynamics::{PhasePoint, System};

fn main() -> obsequiv::Result<()> {
    let baker = System::baker();
    let start = PhasePoint::two(0.3, 0.3)?;
    println!("baker orbit from (0.3, 0.3):");
    for (t, p) in baker.orbit(&start, 6)?.iter().enumerate() {
        println!("  t={t}  ({:.6}, {:.6})", p.x(), p.y());
    }

    // A long baker orbit needs the exact representation: every step
    // consumes one leading bit of x, and plain f64 would run out of
    // mantissa after ~53 steps.
    let mut rng = obsequiv::rng::seeded(7);
    let exact = PhasePoint::random_exact(256, &mut rng);
    let long = baker.orbit(&exact, 200)?;
    println!("\nexact baker orbit: 200 steps, x still equidistributed:");
    let left = long.iter().filter(|p| p.x() < 0.5).count();
    println!("  {left}/200 points in the left half");

    let rotation = System::golden_rotation();
    let start = PhasePoint::one(0.0)?;
    println!("\ngolden rotation orbit from 0:");
    for (t, p) in rotation.orbit(&start, 6)?.iter().enumerate() {
        println!("  t={t}  {:.6}", p.x());
    }

    // One-step invertibility.
    let p = PhasePoint::two(0.75, 0.5)?;
    let q = baker.step(&p)?;
    let back = baker.step_inverse(&q)?;
    println!(
        "\nT(0.75, 0.5) = ({}, {}), T⁻¹ returns ({}, {})",
        q.x(),
        q.y(),
        back.x(),
        back.y()
    );
    Ok(())
}
