//! Finite-alphabet stochastic processes: Bernoulli and Markov samplers,
//! empirical estimation from symbol sequences, and structural chain
//! analysis (stationary distribution, irreducibility, period).

use rand::RngExt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng;
use crate::stats::{self, SIGNIFICANCE};

/// Power-iteration budget for stationary vectors.
const MAX_POWER_ITERS: usize = 100_000;
/// L1 convergence threshold for power iteration.
const POWER_TOL: f64 = 1e-12;
/// Residual tolerance for `stationary · P = stationary`.
const STATIONARY_TOL: f64 = 1e-10;
/// Row-sum tolerance for transition matrices.
const ROW_SUM_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Symbol sequences
// ---------------------------------------------------------------------------

/// Where a sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Drawn from a stochastic process sampler.
    Sampled,
    /// Read off a deterministic orbit through an observation partition.
    CoarseGrained,
}

/// A finite window of a realisation over a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSequence {
    alphabet: usize,
    data: Vec<u32>,
    origin: Origin,
}

impl SymbolSequence {
    pub fn new(alphabet: usize, data: Vec<u32>, origin: Origin) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidInput("alphabet must be nonempty".into()));
        }
        if let Some(&bad) = data.iter().find(|&&s| s as usize >= alphabet) {
            return Err(Error::InvalidInput(format!(
                "symbol {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Self {
            alphabet,
            data,
            origin,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn symbols(&self) -> &[u32] {
        &self.data
    }

    /// Empirical frequency of each symbol.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut counts = vec![0u64; self.alphabet];
        for &s in &self.data {
            counts[s as usize] += 1;
        }
        let n = self.data.len().max(1) as f64;
        counts.into_iter().map(|c| c as f64 / n).collect()
    }
}

// ---------------------------------------------------------------------------
// Markov models
// ---------------------------------------------------------------------------

/// A finite-state Markov process: row-stochastic transition matrix plus its
/// stationary distribution.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovModel {
    alphabet: usize,
    transition: Vec<Vec<f64>>,
    stationary: Vec<f64>,
}

impl MarkovModel {
    /// Validates row stochasticity and computes the stationary vector.
    pub fn new(transition: Vec<Vec<f64>>) -> Result<Self> {
        let n = transition.len();
        if n == 0 || transition.iter().any(|r| r.len() != n) {
            return Err(Error::BadDistribution(
                "transition matrix must be square".into(),
            ));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.iter().any(|&p| p < 0.0 || !p.is_finite()) {
                return Err(Error::BadDistribution(format!(
                    "row {i} has a negative entry"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::BadDistribution(format!(
                    "row {i} sums to {sum}, expected 1"
                )));
            }
        }
        let stationary = stationary_distribution(&transition)
            .ok_or_else(|| Error::NotStationary("power iteration did not converge".into()))?;
        Ok(Self {
            alphabet: n,
            transition,
            stationary,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.transition[i]
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// `P^k` by repeated squaring.
    pub fn transition_power(&self, k: usize) -> Vec<Vec<f64>> {
        let n = self.alphabet;
        let mut result: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
            .collect();
        let mut base = self.transition.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = mat_mul(&result, &base);
            }
            base = mat_mul(&base, &base);
            k >>= 1;
        }
        result
    }
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik != 0.0 {
                for j in 0..n {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

fn row_mul(v: &[f64], rows: &[Vec<f64>]) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let vi = v[i];
        if vi != 0.0 {
            for j in 0..n {
                out[j] += vi * rows[i][j];
            }
        }
    }
    out
}

fn l1_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Stationary vector of a (sub)stochastic matrix. Plain power iteration
/// first; if it oscillates (periodic chain) the Cesàro limit is evaluated
/// through the half-lazy kernel (I+P)/2, which has the same stationary
/// vector and always converges. Rows that sum to zero are tolerated (the
/// iterate is renormalized), supporting empirical estimates with
/// unobserved rows.
pub(crate) fn stationary_distribution(rows: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = rows.len();
    let uniform = vec![1.0 / n as f64; n];

    let iterate = |lazy: bool| -> Option<Vec<f64>> {
        let mut pi = uniform.clone();
        let mut prev = pi.clone();
        for iter in 0..MAX_POWER_ITERS {
            let mut next = row_mul(&pi, rows);
            if lazy {
                for (nx, old) in next.iter_mut().zip(&pi) {
                    *nx = 0.5 * (*nx + old);
                }
            }
            let total: f64 = next.iter().sum();
            if total <= 0.0 {
                return None;
            }
            for x in &mut next {
                *x /= total;
            }
            let change = l1_diff(&next, &pi);
            // A period-2 cycle shows up as next == prev while the per-step
            // change stays large; bail out instead of burning the budget.
            if !lazy && iter > 0 && change >= POWER_TOL && l1_diff(&next, &prev) < POWER_TOL {
                return None;
            }
            prev = pi;
            pi = next;
            if change < POWER_TOL {
                return Some(pi);
            }
        }
        None
    };

    let candidate = iterate(false).or_else(|| iterate(true))?;
    // Validate against the original kernel (renormalized for substochastic input).
    let mut image = row_mul(&candidate, rows);
    let total: f64 = image.iter().sum();
    if total <= 0.0 {
        return None;
    }
    for x in &mut image {
        *x /= total;
    }
    (l1_diff(&image, &candidate) < STATIONARY_TOL).then_some(candidate)
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

pub(crate) fn validate_probs(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::BadDistribution("empty probability vector".into()));
    }
    if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
        return Err(Error::BadDistribution("negative probability entry".into()));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::BadDistribution(format!(
            "probabilities sum to {sum}, expected 1"
        )));
    }
    Ok(())
}

fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

fn draw(cum: &[f64], u: f64) -> u32 {
    let idx = cum.partition_point(|&c| c <= u);
    idx.min(cum.len() - 1) as u32
}

/// I.i.d. draws with `P{Z_t = k} = probs[k]`, reproducible from the seed.
pub fn bernoulli_sample(probs: &[f64], len: usize, seed: u64) -> Result<SymbolSequence> {
    validate_probs(probs)?;
    if len < 1 {
        return Err(Error::InvalidInput("sample length must be >= 1".into()));
    }
    let cum = cumulative(probs);
    let mut rng = rng::seeded(seed);
    let data = (0..len).map(|_| draw(&cum, rng.random())).collect();
    SymbolSequence::new(probs.len(), data, Origin::Sampled)
}

/// A stationary sample path: the initial symbol is drawn from the model's
/// stationary vector, successive symbols from the transition rows.
pub fn markov_sample(model: &MarkovModel, len: usize, seed: u64) -> Result<SymbolSequence> {
    if len < 1 {
        return Err(Error::InvalidInput("sample length must be >= 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let row_cums: Vec<Vec<f64>> = model.transition.iter().map(|r| cumulative(r)).collect();
    let init_cum = cumulative(&model.stationary);
    let mut data = Vec::with_capacity(len);
    let mut state = draw(&init_cum, rng.random());
    data.push(state);
    for _ in 1..len {
        state = draw(&row_cums[state as usize], rng.random());
        data.push(state);
    }
    SymbolSequence::new(model.alphabet, data, Origin::Sampled)
}

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

/// Empirical transition estimate. Rows whose state was never visited are
/// flagged, never imputed: imputing them uniformly would silently create
/// irreducibility.
#[derive(Clone, Debug, Serialize)]
pub struct TransitionEstimate {
    pub alphabet: usize,
    pub counts: Vec<Vec<u64>>,
    pub matrix: Vec<Vec<f64>>,
    pub row_observed: Vec<bool>,
    pub stationary: Option<Vec<f64>>,
    /// Fewer than two distinct symbols occurred.
    pub degenerate: bool,
}

impl TransitionEstimate {
    /// Converts to a validated model; fails while any row is unobserved.
    pub fn to_model(&self) -> Result<MarkovModel> {
        if let Some(i) = self.row_observed.iter().position(|&o| !o) {
            return Err(Error::BadDistribution(format!(
                "row {i} was never observed; cannot form a full model"
            )));
        }
        MarkovModel::new(self.matrix.clone())
    }
}

/// Row-normalized transition counts from consecutive pairs of `seq`, with
/// a power-iteration stationary vector of the estimate.
pub fn empirical_transition_matrix(seq: &SymbolSequence) -> Result<TransitionEstimate> {
    if seq.len() < 2 {
        return Err(Error::TooShort(
            "transition estimation needs length >= 2".into(),
        ));
    }
    let n = seq.alphabet();
    let mut counts = vec![vec![0u64; n]; n];
    for w in seq.symbols().windows(2) {
        counts[w[0] as usize][w[1] as usize] += 1;
    }
    let mut matrix = vec![vec![0.0; n]; n];
    let mut row_observed = vec![false; n];
    for i in 0..n {
        let total: u64 = counts[i].iter().sum();
        if total > 0 {
            row_observed[i] = true;
            for j in 0..n {
                matrix[i][j] = counts[i][j] as f64 / total as f64;
            }
        }
    }
    let distinct = {
        let mut seen = vec![false; n];
        for &s in seq.symbols() {
            seen[s as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    };
    let stationary = stationary_distribution(&matrix);
    Ok(TransitionEstimate {
        alphabet: n,
        counts,
        matrix,
        row_observed,
        stationary,
        degenerate: distinct < 2,
    })
}

// ---------------------------------------------------------------------------
// Structural chain analysis
// ---------------------------------------------------------------------------

fn support_adjacency(rows: &[Vec<f64>]) -> Vec<Vec<usize>> {
    // A transition exists iff its probability is > 0 exactly; estimates put
    // mass exactly on observed counts, so no epsilon thresholding happens.
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &p)| p > 0.0)
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

fn reverse_adjacency(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            rev[v].push(u);
        }
    }
    rev
}

/// True iff the support digraph of the model is strongly connected: every
/// outcome can be reached from every other outcome.
pub fn is_irreducible(model: &MarkovModel) -> bool {
    let adj = support_adjacency(&model.transition);
    let fwd = reachable(&adj, 0);
    if !fwd.iter().all(|&r| r) {
        return false;
    }
    reachable(&reverse_adjacency(&adj), 0).iter().all(|&r| r)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn period_on_support(adj: &[Vec<usize>], state: usize) -> Result<usize> {
    // Strongly connected component of `state`.
    let fwd = reachable(adj, state);
    let bwd = reachable(&reverse_adjacency(adj), state);
    let in_scc: Vec<bool> = fwd.iter().zip(&bwd).map(|(&f, &b)| f && b).collect();

    // BFS levels from `state` within the component.
    let mut dist = vec![usize::MAX; adj.len()];
    dist[state] = 0;
    let mut queue = std::collections::VecDeque::from([state]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if in_scc[v] && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }

    // gcd of (dist[u] + 1 - dist[v]) over edges inside the component
    // equals the gcd of all return-cycle lengths through `state`.
    let mut g = 0usize;
    for (u, outs) in adj.iter().enumerate() {
        if !in_scc[u] {
            continue;
        }
        for &v in outs {
            if in_scc[v] {
                g = gcd(g, dist[u] + 1 - dist[v]);
            }
        }
    }
    if g == 0 {
        Err(Error::NoReturn(state))
    } else {
        Ok(g)
    }
}

/// Period of a state: gcd of the lengths of all return paths on the support
/// digraph. Errs with [`Error::NoReturn`] when the state never returns.
pub fn period_of(model: &MarkovModel, state: usize) -> Result<usize> {
    if state >= model.alphabet {
        return Err(Error::InvalidInput(format!("state {state} out of range")));
    }
    period_on_support(&support_adjacency(&model.transition), state)
}

/// True iff every state has period 1. For irreducible chains the period is
/// computed once and propagated (all outcomes of an irreducible chain have
/// the same periodicity); states that never return count as not aperiodic.
pub fn is_aperiodic(model: &MarkovModel) -> bool {
    let adj = support_adjacency(&model.transition);
    if is_irreducible(model) {
        return matches!(period_on_support(&adj, 0), Ok(1));
    }
    (0..model.alphabet).all(|i| matches!(period_on_support(&adj, i), Ok(1)))
}

// ---------------------------------------------------------------------------
// Stationarity check
// ---------------------------------------------------------------------------

/// Outcome of the block-homogeneity stationarity check.
#[derive(Clone, Debug, Serialize)]
pub struct StationarityReport {
    pub pass: bool,
    pub blocks: usize,
    pub symbol_statistic: f64,
    pub symbol_p_value: f64,
    pub bigram_statistic: f64,
    pub bigram_p_value: f64,
    pub significance: f64,
    /// Per-block symbol frequencies.
    pub block_frequencies: Vec<Vec<f64>>,
}

/// Splits the sequence into equal blocks and tests homogeneity of symbol
/// and bigram frequencies across blocks (chi-square, significance 0.01).
/// A stationary process passes with probability ~0.98.
pub fn stationarity_check(seq: &SymbolSequence, blocks: usize) -> Result<StationarityReport> {
    if blocks < 2 {
        return Err(Error::InvalidInput("need at least 2 blocks".into()));
    }
    if seq.len() < blocks * 100 {
        return Err(Error::TooShort(format!(
            "length {} < blocks x 100 = {}",
            seq.len(),
            blocks * 100
        )));
    }
    let n = seq.alphabet();
    let block_len = seq.len() / blocks;
    let mut symbol_counts = vec![vec![0u64; n]; blocks];
    let mut bigram_counts = vec![vec![0u64; n * n]; blocks];
    for b in 0..blocks {
        let chunk = &seq.symbols()[b * block_len..(b + 1) * block_len];
        for &s in chunk {
            symbol_counts[b][s as usize] += 1;
        }
        for w in chunk.windows(2) {
            bigram_counts[b][w[0] as usize * n + w[1] as usize] += 1;
        }
    }
    let symbol = stats::independence_test(&symbol_counts);
    let bigram = stats::independence_test(&bigram_counts);
    let block_frequencies = symbol_counts
        .iter()
        .map(|row| row.iter().map(|&c| c as f64 / block_len as f64).collect())
        .collect();
    Ok(StationarityReport {
        pass: symbol.passes(SIGNIFICANCE) && bigram.passes(SIGNIFICANCE),
        blocks,
        symbol_statistic: symbol.statistic,
        symbol_p_value: symbol.p_value,
        bigram_statistic: bigram.statistic,
        bigram_p_value: bigram.p_value,
        significance: SIGNIFICANCE,
        block_frequencies,
    })
}
