//! Cylinder sets: the measurable bricks of a shift space.
//!
//! A cylinder pins finitely many coordinates of a bi-infinite symbol
//! sequence to allowed sets. Under an i.i.d. measure its probability is a
//! plain product; under a stationary Markov measure consecutive pins are
//! chained through the transition matrix and gaps through matrix powers.
//!
//! Run with: cargo run --example cylinders

use std::collections::BTreeSet;

use obsequiv::processes::MarkovModel;
use obsequiv::shift_space::{
    cylinder_measure_bernoulli, cylinder_measure_markov, Constraint, CylinderSpec,
};

fn main() -> obsequiv::Result<()> {
    let fair = [0.5, 0.5];
    let heads3 = CylinderSpec::word(2, 0, &[0, 0, 0])?;
    println!(
        "P(three heads at t = 0,1,2) under the fair coin: {}",
        cylinder_measure_bernoulli(&heads3, &fair)?
    );

    let flip = MarkovModel::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]])?;
    let repeat = CylinderSpec::word(2, 0, &[0, 0])?;
    let alternate = CylinderSpec::word(2, 0, &[0, 1])?;
    println!(
        "under the alternating chain: P(0 then 0) = {}, P(0 then 1) = {}",
        cylinder_measure_markov(&repeat, &flip)?,
        cylinder_measure_markov(&alternate, &flip)?
    );

    // A gap of 4 steps bridged by the 4-step transition matrix.
    let gap = CylinderSpec::new(
        2,
        vec![
            Constraint {
                t: 0,
                allowed: BTreeSet::from([0]),
            },
            Constraint {
                t: 4,
                allowed: BTreeSet::from([0]),
            },
        ],
    )?;
    println!(
        "P(0 at t=0 and 0 at t=4) under the alternating chain: {}",
        cylinder_measure_markov(&gap, &flip)?
    );

    // Consistency: refining by a full-alphabet coordinate changes nothing,
    // and shifting all indices changes nothing (stationarity).
    let model = MarkovModel::new(vec![vec![0.7, 0.3], vec![0.4, 0.6]])?;
    let base = CylinderSpec::word(2, 0, &[0, 1])?;
    let m = cylinder_measure_markov(&base, &model)?;
    let split: f64 = (0..2)
        .map(|s| {
            let mut cons = base.constraints().to_vec();
            cons.push(Constraint {
                t: 3,
                allowed: BTreeSet::from([s]),
            });
            cylinder_measure_markov(&CylinderSpec::new(2, cons).unwrap(), &model).unwrap()
        })
        .sum();
    println!("\nconsistency: measure {m:.6} vs sum of refinements {split:.6}");
    let shifted = cylinder_measure_markov(&base.shifted(17), &model)?;
    println!("stationarity: measure {m:.6} vs shifted-by-17 measure {shifted:.6}");

    let json = serde_json::to_string_pretty(&gap).expect("cylinders serialize");
    println!("\ncylinder spec as JSON:\n{json}");
    Ok(())
}
