//! The headline checks: nontriviality of coarse-grained processes, mixing
//! and ergodicity correlations, the dyadic-partition distance bound, and
//! the statistical certificates that a fine coarse-graining of the baker
//! system is Markov but not Bernoulli.

use serde::Serialize;

use crate::dynamics::{ExactPair, System, SystemKind};
use crate::error::{Error, Result};
use crate::partitions::{coarse_grain_random, dyadic_partition, Cell};
use crate::processes::{
    empirical_transition_matrix, is_aperiodic, is_irreducible, MarkovModel, SymbolSequence,
    TransitionEstimate,
};
use crate::rng::{self, derive_seed};
use crate::stats::{self, SIGNIFICANCE};

/// Monte Carlo shard size; estimates merge by count addition, so sharding
/// does not change the result.
const MC_SHARD: usize = 1 << 16;

/// Analytic chains finer than this are refused (4^n × 4^n dense matrices).
const CHAIN_CAP: usize = 5;

// ---------------------------------------------------------------------------
// Analytic reference chains
// ---------------------------------------------------------------------------

/// The transition structure of the baker system observed through the
/// dyadic grid of resolution `n`: from cell (X, Y) the orbit moves to
/// ((2X + b) mod 2^n, msb(X)·2^(n-1) + ⌊Y/2⌋) with a fresh fair bit b, so
/// every row has exactly two entries of 1/2 and the chain is doubly
/// stochastic with uniform stationary distribution 4^-n.
pub fn baker_dyadic_chain(n: usize) -> Result<MarkovModel> {
    if n < 1 {
        return Err(Error::InvalidInput("chain needs n >= 1".into()));
    }
    if n > CHAIN_CAP {
        return Err(Error::ResourceLimit(format!(
            "analytic chain n={n} exceeds cap {CHAIN_CAP}"
        )));
    }
    let k = 1usize << n; // cells per axis
    let states = k * k;
    let mask = k - 1;
    let mut rows = vec![vec![0.0; states]; states];
    for x_idx in 0..k {
        for y_idx in 0..k {
            let state = x_idx * k + y_idx;
            let msb = x_idx >> (n - 1);
            let y_next = (msb << (n - 1)) | (y_idx >> 1);
            for bit in 0..2 {
                let x_next = ((x_idx << 1) | bit) & mask;
                rows[state][x_next * k + y_next] += 0.5;
            }
        }
    }
    MarkovModel::new(rows)
}

/// The fair two-state chain induced by the left/right observation of the
/// baker system: each half maps uniformly over the whole square in x.
pub fn baker_left_right_chain() -> MarkovModel {
    MarkovModel::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).expect("static chain is valid")
}

/// The two-state chain induced by observing the rotation through the
/// halves partition: an arc of length min(α, 1−α) of each half crosses
/// to the other half per step.
pub fn rotation_halves_chain(alpha: f64) -> Result<MarkovModel> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!(
            "rotation angle {alpha} outside (0,1)"
        )));
    }
    let cross = 2.0 * alpha.min(1.0 - alpha);
    MarkovModel::new(vec![vec![1.0 - cross, cross], vec![cross, 1.0 - cross]])
}

// ---------------------------------------------------------------------------
// Nontriviality
// ---------------------------------------------------------------------------

/// Verdict that some observed value leads to every successor with
/// probability < 1 (the coarse-grained process is genuinely stochastic).
#[derive(Clone, Debug, Serialize)]
pub struct NontrivialityVerdict {
    pub nontrivial: bool,
    /// Row with the smallest maximum entry (the strongest witness).
    pub witness_row: usize,
    pub row_max: f64,
}

/// Searches the transition matrix for a row whose maximum entry is < 1.
pub fn nontriviality_verdict(model: &MarkovModel) -> NontrivialityVerdict {
    verdict_over_rows(model.transition(), None)
}

/// Like [`nontriviality_verdict`] but on an empirical estimate, skipping
/// unobserved rows. Errs when no row was observed.
pub fn nontriviality_verdict_empirical(est: &TransitionEstimate) -> Result<NontrivialityVerdict> {
    if !est.row_observed.iter().any(|&o| o) {
        return Err(Error::InvalidInput("estimate has no observed row".into()));
    }
    Ok(verdict_over_rows(&est.matrix, Some(&est.row_observed)))
}

fn verdict_over_rows(rows: &[Vec<f64>], observed: Option<&[bool]>) -> NontrivialityVerdict {
    let mut witness_row = 0;
    let mut row_max = f64::INFINITY;
    for (i, row) in rows.iter().enumerate() {
        if observed.is_some_and(|o| !o[i]) {
            continue;
        }
        let m = row.iter().cloned().fold(0.0, f64::max);
        if m < row_max {
            row_max = m;
            witness_row = i;
        }
    }
    NontrivialityVerdict {
        nontrivial: row_max < 1.0,
        witness_row,
        row_max,
    }
}

// ---------------------------------------------------------------------------
// Mixing / ergodicity correlations
// ---------------------------------------------------------------------------

fn check_mc_inputs(sys: &System, a: &Cell, b: &Cell, samples: usize) -> Result<()> {
    if samples < 1 {
        return Err(Error::InvalidInput("need samples >= 1".into()));
    }
    let d = sys.dimension();
    if a.dim() != d || b.dim() != d {
        return Err(Error::InvalidInput(
            "rectangle dimension does not match system".into(),
        ));
    }
    Ok(())
}

/// Advances the expansion pair by `k` baker steps without boundary gating;
/// the boundary set has measure zero and cannot bias a Monte Carlo count.
fn shift_bits(e: &mut ExactPair, k: usize) {
    for _ in 0..k {
        let b = e.x.pop_front().expect("reservoir sized for the lag");
        e.y.push_front(b);
    }
}

/// Monte Carlo estimate of μ(Tⁿ(A) ∩ B) − μ(A)μ(B): sample p uniform, test
/// p ∈ A and Tⁿ(p) ∈ B. Sharded into sub-streams of the seed; the baker
/// system is iterated on exact bit reservoirs so arbitrary lags stay sound.
pub fn mixing_correlation(
    sys: &System,
    a: &Cell,
    b: &Cell,
    lag: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    check_mc_inputs(sys, a, b, samples)?;
    let mut hits = 0u64;
    let mut done = 0usize;
    let mut shard = 0u64;
    while done < samples {
        let count = MC_SHARD.min(samples - done);
        let mut rng = rng::substream(seed, shard);
        match sys.kind() {
            SystemKind::Baker => {
                for _ in 0..count {
                    let mut e = ExactPair::random(lag + 64, 64, &mut rng);
                    let in_a = a.contains(&[e.x.value(), e.y.value()]);
                    if in_a {
                        shift_bits(&mut e, lag);
                        if b.contains(&[e.x.value(), e.y.value()]) {
                            hits += 1;
                        }
                    }
                }
            }
            SystemKind::Rotation { alpha } => {
                use rand::RngExt;
                for _ in 0..count {
                    let m: f64 = rng.random();
                    if a.contains(&[m]) {
                        // fmod is exact, so the result stays in [0,1).
                        let shifted = (m + lag as f64 * alpha) % 1.0;
                        if b.contains(&[shifted]) {
                            hits += 1;
                        }
                    }
                }
            }
        }
        done += count;
        shard += 1;
    }
    Ok(hits as f64 / samples as f64 - a.measure() * b.measure())
}

/// Correlation estimates for every lag `0..=max_lag`, reusing one point
/// ensemble and advancing it incrementally.
pub fn mixing_sweep(
    sys: &System,
    a: &Cell,
    b: &Cell,
    max_lag: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    check_mc_inputs(sys, a, b, samples)?;
    let product = a.measure() * b.measure();
    let mut rng = rng::seeded(seed);
    let mut corrs = vec![0u64; max_lag + 1];
    match sys.kind() {
        SystemKind::Baker => {
            let mut ensemble: Vec<ExactPair> = (0..samples)
                .map(|_| ExactPair::random(max_lag + 64, 64, &mut rng))
                .collect();
            let in_a: Vec<bool> = ensemble
                .iter()
                .map(|e| a.contains(&[e.x.value(), e.y.value()]))
                .collect();
            for (lag, slot) in corrs.iter_mut().enumerate() {
                let mut hits = 0u64;
                for (e, &flag) in ensemble.iter_mut().zip(&in_a) {
                    if lag > 0 {
                        shift_bits(e, 1);
                    }
                    if flag && b.contains(&[e.x.value(), e.y.value()]) {
                        hits += 1;
                    }
                }
                *slot = hits;
            }
        }
        SystemKind::Rotation { alpha } => {
            use rand::RngExt;
            let alpha = *alpha;
            let points: Vec<f64> = (0..samples).map(|_| rng.random()).collect();
            let in_a: Vec<bool> = points.iter().map(|&m| a.contains(&[m])).collect();
            let mut current = points;
            for (lag, slot) in corrs.iter_mut().enumerate() {
                if lag > 0 {
                    for m in &mut current {
                        *m += alpha;
                        if *m >= 1.0 {
                            *m -= 1.0;
                        }
                    }
                }
                let mut hits = 0u64;
                for (&m, &flag) in current.iter().zip(&in_a) {
                    if flag && b.contains(&[m]) {
                        hits += 1;
                    }
                }
                *slot = hits;
            }
        }
    }
    Ok(corrs
        .into_iter()
        .map(|h| h as f64 / samples as f64 - product)
        .collect())
}

// ---------------------------------------------------------------------------
// Distance bound of the dyadic construction
// ---------------------------------------------------------------------------

/// Result of the exact distance-bound check for the dyadic grid of
/// resolution `n`.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceBoundReport {
    pub n: usize,
    /// Exact maximum over cells of the distance from the worst corner to
    /// the cell representative.
    pub max_distance: f64,
    /// The bound √2/2ⁿ the construction promises for every point.
    pub bound: f64,
    pub pass: bool,
}

/// Verifies, by exact corner arithmetic, that every point of every cell of
/// the resolution-`n` grid lies within √2/2ⁿ of its cell representative.
pub fn epsilon_congruence_bound_check(n: usize) -> Result<CongruenceBoundReport> {
    let part = dyadic_partition(n)?;
    let mut max_distance = 0.0f64;
    for i in 0..part.len() {
        let rep = part.representative(i);
        for corner in part.cell(i).corners() {
            let d = (corner[0] - rep[0]).hypot(corner[1] - rep[1]);
            max_distance = max_distance.max(d);
        }
    }
    let bound = std::f64::consts::SQRT_2 / 2.0f64.powi(n as i32);
    Ok(CongruenceBoundReport {
        n,
        max_distance,
        bound,
        pass: max_distance <= bound,
    })
}

/// Smallest grid resolution n with √2/2ⁿ < ε.
pub fn resolution_for_epsilon(epsilon: f64) -> Result<usize> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let mut n = 1usize;
    while std::f64::consts::SQRT_2 / 2.0f64.powi(n as i32) >= epsilon {
        n += 1;
        if n > 64 {
            return Err(Error::ResourceLimit(format!(
                "epsilon {epsilon} needs n > 64"
            )));
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// Markov property test
// ---------------------------------------------------------------------------

/// Outcome of the order-1 Markov property test.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovPropertyReport {
    pub pass: bool,
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    pub significance: f64,
    /// Number of middle-symbol strata that contributed degrees of freedom.
    pub strata: usize,
}

/// Tests P(next | last) = P(next | last two): for each middle symbol the
/// (previous, next) contingency table must be independent. Statistics are
/// pooled over contexts. Requires every observed bigram to occur at least
/// 50 times.
pub fn markov_property_test(seq: &SymbolSequence) -> Result<MarkovPropertyReport> {
    if seq.len() < 3 {
        return Err(Error::TooShort("order test needs length >= 3".into()));
    }
    let n = seq.alphabet();
    let mut bigrams = std::collections::HashMap::<(u32, u32), u64>::new();
    for w in seq.symbols().windows(2) {
        *bigrams.entry((w[0], w[1])).or_default() += 1;
    }
    if let Some((&(i, j), &c)) = bigrams.iter().find(|(_, &c)| c < 50) {
        return Err(Error::TooShort(format!(
            "observed bigram ({i},{j}) occurs only {c} times; need >= 50"
        )));
    }
    let mut trigrams = std::collections::HashMap::<(u32, u32, u32), u64>::new();
    for w in seq.symbols().windows(3) {
        *trigrams.entry((w[0], w[1], w[2])).or_default() += 1;
    }

    let mut statistic = 0.0;
    let mut df = 0;
    let mut strata = 0;
    for middle in 0..n as u32 {
        let mut prevs: Vec<u32> = Vec::new();
        let mut nexts: Vec<u32> = Vec::new();
        for (&(i, _, k), _) in trigrams.iter().filter(|(&(_, j, _), _)| j == middle) {
            if !prevs.contains(&i) {
                prevs.push(i);
            }
            if !nexts.contains(&k) {
                nexts.push(k);
            }
        }
        if prevs.len() < 2 || nexts.len() < 2 {
            continue;
        }
        prevs.sort_unstable();
        nexts.sort_unstable();
        let table: Vec<Vec<u64>> = prevs
            .iter()
            .map(|&i| {
                nexts
                    .iter()
                    .map(|&k| trigrams.get(&(i, middle, k)).copied().unwrap_or(0))
                    .collect()
            })
            .collect();
        let out = stats::independence_test(&table);
        if out.df > 0 {
            statistic += out.statistic;
            df += out.df;
            strata += 1;
        }
    }
    let p_value = stats::chi_square_p_value(statistic, df);
    Ok(MarkovPropertyReport {
        pass: p_value >= SIGNIFICANCE,
        statistic,
        df,
        p_value,
        significance: SIGNIFICANCE,
        strata,
    })
}

// ---------------------------------------------------------------------------
// Bernoulli rejection witness
// ---------------------------------------------------------------------------

/// Outcome of the independence test of consecutive symbols.
#[derive(Clone, Debug, Serialize)]
pub struct BernoulliWitnessReport {
    /// True iff independence is rejected: the process cannot be Bernoulli.
    pub reject: bool,
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    pub significance: f64,
    /// The most deviant (previous, next) pair.
    pub witness: (usize, usize),
    /// Empirical P(next | previous) at the witness pair.
    pub conditional: f64,
    /// Empirical marginal P(next) at the witness pair.
    pub marginal: f64,
}

/// Chi-square independence test of consecutive symbols. Rejection witnesses
/// that the sequence is not a Bernoulli sample; the returned pair is the
/// cell with the largest Pearson residual.
pub fn bernoulli_rejection_witness(seq: &SymbolSequence) -> Result<BernoulliWitnessReport> {
    if seq.len() < 2 {
        return Err(Error::TooShort(
            "independence test needs length >= 2".into(),
        ));
    }
    let n = seq.alphabet();
    if n > 4096 {
        return Err(Error::ResourceLimit(format!(
            "alphabet {n} too large for a dense table"
        )));
    }
    let mut counts = vec![vec![0u64; n]; n];
    for w in seq.symbols().windows(2) {
        counts[w[0] as usize][w[1] as usize] += 1;
    }
    let out = stats::independence_test(&counts);
    let witness = out.max_residual_cell.unwrap_or((0, 0));
    let (wi, wj) = witness;
    let row_total: u64 = counts[wi].iter().sum();
    let col_total: u64 = counts.iter().map(|r| r[wj]).sum();
    let total: u64 = counts.iter().flatten().sum();
    Ok(BernoulliWitnessReport {
        reject: !out.passes(SIGNIFICANCE),
        statistic: out.statistic,
        df: out.df,
        p_value: out.p_value,
        significance: SIGNIFICANCE,
        witness,
        conditional: if row_total > 0 {
            counts[wi][wj] as f64 / row_total as f64
        } else {
            0.0
        },
        marginal: col_total as f64 / total as f64,
    })
}

// ---------------------------------------------------------------------------
// The replacement certificate
// ---------------------------------------------------------------------------

/// Reproducibility manifest and sub-verdicts of the Markov replacement
/// certificate for the resolution-`n` dyadic observation of the baker
/// system.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovCertificate {
    pub n: usize,
    pub len: usize,
    pub seed: u64,
    pub alphabet: usize,
    pub markov: MarkovPropertyReport,
    pub irreducible: bool,
    pub aperiodic: bool,
    pub bound: CongruenceBoundReport,
    /// L∞ distance of the estimated stationary vector from uniform.
    pub stationary_max_deviation: f64,
    pub stationary_tolerance: f64,
    pub stationary_uniform: bool,
    pub all_rows_observed: bool,
    pub pass: bool,
}

/// Coarse-grains a seeded baker orbit by the resolution-`n` grid and
/// certifies, in one report: the process passes the Markov-property test,
/// its support chain is irreducible and aperiodic, the distance bound
/// holds exactly, and the stationary distribution is uniform within
/// `0.01`. Needs `len >= 100 · 4^n`.
pub fn markov_replacement_certificate(
    n: usize,
    len: usize,
    seed: u64,
) -> Result<MarkovCertificate> {
    let part = dyadic_partition(n)?;
    let states = part.len();
    if len < 100 * states {
        return Err(Error::TooShort(format!(
            "len {len} < 100 x {states} states for resolution n={n}"
        )));
    }
    let seq = coarse_grain_random(&System::baker(), &part, len, derive_seed(seed, 0))?;
    let markov = markov_property_test(&seq)?;
    let est = empirical_transition_matrix(&seq)?;
    let all_rows_observed = est.row_observed.iter().all(|&o| o);
    let (irreducible, aperiodic) = match est.to_model() {
        Ok(model) => (is_irreducible(&model), is_aperiodic(&model)),
        Err(_) => (false, false),
    };
    let bound = epsilon_congruence_bound_check(n)?;
    let uniform = 1.0 / states as f64;
    let stationary_tolerance = 0.01;
    let stationary_max_deviation = est
        .stationary
        .as_ref()
        .map(|pi| pi.iter().map(|p| (p - uniform).abs()).fold(0.0, f64::max))
        .unwrap_or(f64::INFINITY);
    let stationary_uniform = stationary_max_deviation <= stationary_tolerance;
    let pass = markov.pass && irreducible && aperiodic && bound.pass && stationary_uniform;
    Ok(MarkovCertificate {
        n,
        len,
        seed,
        alphabet: states,
        markov,
        irreducible,
        aperiodic,
        bound,
        stationary_max_deviation,
        stationary_tolerance,
        stationary_uniform,
        all_rows_observed,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Congruence report
// ---------------------------------------------------------------------------

/// Three-part surrogate for the congruence of the baker system with the
/// resolution-`n` Markov observation. A full measure-theoretic isomorphism
/// cannot be certified from finite data, so the report lists its three
/// checkable parts side by side: the exact distance bound, the coding
/// conjugacy on sampled points, and finite-window agreement between the
/// coarse-grained orbit and a sample of the analytic chain.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub n: usize,
    pub len: usize,
    pub seed: u64,
    pub bound: CongruenceBoundReport,
    pub conjugacy: crate::shift_space::ConjugacySample,
    pub window_equivalence: crate::shift_space::WindowEquivalenceReport,
    pub pass: bool,
}

/// Assembles the three-part congruence report at resolution `n`.
#[allow(clippy::too_many_arguments)]
pub fn congruence_report(
    n: usize,
    len: usize,
    seed: u64,
    points: usize,
    steps: usize,
    width: usize,
    window: usize,
    tolerance: f64,
) -> Result<CongruenceReport> {
    let bound = epsilon_congruence_bound_check(n)?;
    let conjugacy =
        crate::shift_space::conjugacy_sample(points, steps, width, derive_seed(seed, 1))?;
    let part = dyadic_partition(n)?;
    let observed = coarse_grain_random(&System::baker(), &part, len, derive_seed(seed, 2))?;
    let reference =
        crate::processes::markov_sample(&baker_dyadic_chain(n)?, len, derive_seed(seed, 3))?;
    let window_equivalence =
        crate::shift_space::finite_window_equivalence(&observed, &reference, window, tolerance)?;
    let pass = bound.pass && conjugacy.pass && window_equivalence.pass;
    Ok(CongruenceReport {
        n,
        len,
        seed,
        bound,
        conjugacy,
        window_equivalence,
        pass,
    })
}
