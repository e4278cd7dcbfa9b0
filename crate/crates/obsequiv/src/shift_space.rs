//! Shift spaces over bi-infinite symbol sequences: cylinder sets and their
//! measures, finite shift windows, the binary-expansion coding between the
//! baker transformation and the fair-coin shift, and entropy.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dynamics::{BitFraction, ExactPair, PhasePoint, System};
use crate::error::{Error, Result};
use crate::processes::{empirical_transition_matrix, validate_probs, MarkovModel, SymbolSequence};

// ---------------------------------------------------------------------------
// Cylinder sets
// ---------------------------------------------------------------------------

/// One coordinate constraint of a cylinder set: at time `t` the symbol lies
/// in `allowed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub t: i64,
    pub allowed: BTreeSet<u32>,
}

/// A cylinder set: finitely many coordinates restricted to symbol sets,
/// indices strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderSpec {
    alphabet: usize,
    constraints: Vec<Constraint>,
}

impl CylinderSpec {
    pub fn new(alphabet: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidInput("alphabet must be nonempty".into()));
        }
        for w in constraints.windows(2) {
            if w[0].t >= w[1].t {
                return Err(Error::InvalidInput(
                    "constraint indices must be strictly increasing".into(),
                ));
            }
        }
        for c in &constraints {
            if c.allowed.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "empty symbol set at t={}",
                    c.t
                )));
            }
            if let Some(&bad) = c.allowed.iter().find(|&&s| s as usize >= alphabet) {
                return Err(Error::InvalidInput(format!(
                    "symbol {bad} outside alphabet of size {alphabet}"
                )));
            }
        }
        Ok(Self {
            alphabet,
            constraints,
        })
    }

    /// Fixes single symbols at consecutive times `start, start+1, …`.
    pub fn word(alphabet: usize, start: i64, symbols: &[u32]) -> Result<Self> {
        let constraints = symbols
            .iter()
            .enumerate()
            .map(|(k, &s)| Constraint {
                t: start + k as i64,
                allowed: BTreeSet::from([s]),
            })
            .collect();
        Self::new(alphabet, constraints)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// The same cylinder translated by `h` time steps.
    pub fn shifted(&self, h: i64) -> Self {
        Self {
            alphabet: self.alphabet,
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint {
                    t: c.t + h,
                    allowed: c.allowed.clone(),
                })
                .collect(),
        }
    }
}

/// Probability of a cylinder under the i.i.d. product measure: the product
/// over constraints of the mass of each allowed set.
pub fn cylinder_measure_bernoulli(c: &CylinderSpec, probs: &[f64]) -> Result<f64> {
    validate_probs(probs)?;
    if probs.len() != c.alphabet {
        return Err(Error::InvalidInput(
            "probability vector does not match alphabet".into(),
        ));
    }
    Ok(c.constraints
        .iter()
        .map(|con| con.allowed.iter().map(|&s| probs[s as usize]).sum::<f64>())
        .product())
}

/// Probability of a cylinder under the stationary Markov measure: sum over
/// consistent symbol assignments of π(first) times the transition chain,
/// with index gaps bridged by matrix powers.
pub fn cylinder_measure_markov(c: &CylinderSpec, model: &MarkovModel) -> Result<f64> {
    if model.alphabet() != c.alphabet {
        return Err(Error::InvalidInput(
            "model does not match cylinder alphabet".into(),
        ));
    }
    let Some(first) = c.constraints.first() else {
        return Ok(1.0);
    };
    let n = c.alphabet;
    let mask = |v: &mut Vec<f64>, allowed: &BTreeSet<u32>| {
        for (j, x) in v.iter_mut().enumerate() {
            if !allowed.contains(&(j as u32)) {
                *x = 0.0;
            }
        }
    };
    let mut v: Vec<f64> = model.stationary().to_vec();
    mask(&mut v, &first.allowed);
    let mut prev_t = first.t;
    for con in &c.constraints[1..] {
        let gap = (con.t - prev_t) as usize;
        let power = model.transition_power(gap);
        let mut next = vec![0.0; n];
        for i in 0..n {
            if v[i] != 0.0 {
                for j in 0..n {
                    next[j] += v[i] * power[i][j];
                }
            }
        }
        mask(&mut next, &con.allowed);
        v = next;
        prev_t = con.t;
    }
    Ok(v.iter().sum())
}

// ---------------------------------------------------------------------------
// Shift windows
// ---------------------------------------------------------------------------

/// A finite window `ω_{-L} … ω_{R}` of a bi-infinite sequence. Shifting
/// left re-indexes in place: the stored symbols are unchanged, the origin
/// moves, so L grows and R shrinks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftWindow {
    symbols: Vec<u32>,
    origin: usize,
    alphabet: usize,
}

impl ShiftWindow {
    /// Builds from `left = [ω_{-1}, ω_{-2}, …]` and `right = [ω_0, ω_1, …]`.
    pub fn new(alphabet: usize, left: &[u32], right: &[u32]) -> Result<Self> {
        if right.is_empty() {
            return Err(Error::InvalidInput(
                "window needs a coordinate at the origin".into(),
            ));
        }
        let mut symbols: Vec<u32> = left.iter().rev().copied().collect();
        let origin = symbols.len();
        symbols.extend_from_slice(right);
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet) {
            return Err(Error::InvalidInput(format!(
                "symbol {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Self {
            symbols,
            origin,
            alphabet,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Leftmost covered index −L.
    pub fn min_index(&self) -> i64 {
        -(self.origin as i64)
    }

    /// Rightmost covered index R.
    pub fn max_index(&self) -> i64 {
        (self.symbols.len() - 1 - self.origin) as i64
    }

    /// Coordinate ω_t, if the window covers t.
    pub fn get(&self, t: i64) -> Option<u32> {
        let idx = self.origin as i64 + t;
        if idx < 0 {
            None
        } else {
            self.symbols.get(idx as usize).copied()
        }
    }

    /// The left shift: the coordinate previously at +1 becomes the origin.
    /// Fails with [`Error::WindowExhausted`] when no coordinate exists to
    /// the right of the origin.
    pub fn shift_left(&self) -> Result<Self> {
        if self.max_index() < 1 {
            return Err(Error::WindowExhausted);
        }
        Ok(Self {
            symbols: self.symbols.clone(),
            origin: self.origin + 1,
            alphabet: self.alphabet,
        })
    }
}

// ---------------------------------------------------------------------------
// The binary-expansion coding
// ---------------------------------------------------------------------------

/// Reads the expansion window of an exact point: coordinates ω_0…ω_{r−1}
/// are the first `r` bits of x, ω_{-1}…ω_{-l} the first `l` bits of y.
///
/// Fails with [`Error::ExcludedSet`] when either expansion carries a
/// finitely detectable dyadic tail (a constant run covering half the
/// window); truly infinite tails cannot be detected from finite data.
pub fn baker_to_shift(p: &PhasePoint, l: usize, r: usize) -> Result<ShiftWindow> {
    let e = p
        .exact()
        .ok_or_else(|| Error::InvalidInput("coding requires an exact point".into()))?;
    if r < 1 {
        return Err(Error::InvalidInput(
            "need at least one coordinate right of origin".into(),
        ));
    }
    if e.x.len() < r || e.y.len() < l {
        return Err(Error::WidthExceeded(format!(
            "requested window ({l},{r}) exceeds expansions of widths ({}, {})",
            e.y.len(),
            e.x.len()
        )));
    }
    if e.x.has_dyadic_tail() || e.y.has_dyadic_tail() {
        return Err(Error::ExcludedSet);
    }
    window_of_exact(e, l, r)
}

fn window_of_exact(e: &ExactPair, l: usize, r: usize) -> Result<ShiftWindow> {
    let left: Vec<u32> = (0..l)
        .map(|i| u32::from(e.y.bit(i).expect("checked width")))
        .collect();
    let right: Vec<u32> = (0..r)
        .map(|i| u32::from(e.x.bit(i).expect("checked width")))
        .collect();
    ShiftWindow::new(2, &left, &right)
}

/// Rebuilds a point of the square from a window over the binary alphabet:
/// x from the coordinates at the origin and to its right, y from those to
/// the left. Accurate to 2^-min(L, R+1).
pub fn shift_to_baker(w: &ShiftWindow) -> Result<PhasePoint> {
    if w.alphabet() != 2 {
        return Err(Error::InvalidInput(
            "coding is over the binary alphabet".into(),
        ));
    }
    if w.min_index() >= 0 || w.max_index() < 0 {
        return Err(Error::InvalidInput(
            "window must be nonempty on both sides".into(),
        ));
    }
    let x_bits: Vec<bool> = (0..=w.max_index()).map(|t| w.get(t) == Some(1)).collect();
    let y_bits: Vec<bool> = (1..=-w.min_index()).map(|i| w.get(-i) == Some(1)).collect();
    Ok(PhasePoint::from_exact(ExactPair::new(
        BitFraction::from_bits(x_bits),
        BitFraction::from_bits(y_bits),
    )))
}

/// Verifies that stepping the point and shifting its coding window commute:
/// for every k ≤ steps the expansion of T^k(p) must equal the k-fold left
/// shift of the expansion of p on the overlapping window.
pub fn conjugacy_check(p: &PhasePoint, steps: usize) -> Result<bool> {
    let e = p
        .exact()
        .ok_or_else(|| Error::InvalidInput("conjugacy check requires an exact point".into()))?;
    if steps + 1 > e.x.len() {
        return Err(Error::WidthExceeded(format!(
            "{steps} steps exceed x expansion of width {}",
            e.x.len()
        )));
    }
    let mut window = baker_to_shift(p, e.y.len(), e.x.len())?;
    let sys = System::baker();
    let mut cur = p.clone();
    for _ in 1..=steps {
        sys.step_in_place(&mut cur)?;
        window = window.shift_left()?;
        let e = cur.exact().expect("exact form is preserved by stepping");
        let fresh = window_of_exact(e, e.y.len(), e.x.len())?;
        // Compare on the overlap, which covers the full fresh window.
        for t in fresh.min_index()..=fresh.max_index() {
            if window.get(t) != fresh.get(t) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Batch conjugacy verification over random exact points.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacySample {
    pub points: usize,
    pub steps: usize,
    pub width: usize,
    pub seed: u64,
    /// Points where stepping and shifting disagreed.
    pub failures: usize,
    /// Points resampled after landing on the excluded boundary set.
    pub resampled: usize,
    pub pass: bool,
}

/// Runs [`conjugacy_check`] on `points` random exact points of the given
/// width, drawing each from its own sub-stream. Points that hit the
/// excluded boundary set are resampled (they form a measure-zero set).
pub fn conjugacy_sample(
    points: usize,
    steps: usize,
    width: usize,
    seed: u64,
) -> Result<ConjugacySample> {
    if points < 1 {
        return Err(Error::InvalidInput("need points >= 1".into()));
    }
    let mut failures = 0;
    let mut resampled = 0;
    let mut done = 0;
    let mut stream = 0u64;
    while done < points {
        let mut rng = crate::rng::substream(seed, stream);
        stream += 1;
        let p = PhasePoint::random_exact(width, &mut rng);
        match conjugacy_check(&p, steps) {
            Ok(true) => done += 1,
            Ok(false) => {
                failures += 1;
                done += 1;
            }
            Err(Error::ExcludedSet) => {
                resampled += 1;
                if resampled > points {
                    return Err(Error::InvalidInput(
                        "excluded-set resampling dominates; width too small".into(),
                    ));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ConjugacySample {
        points,
        steps,
        width,
        seed,
        failures,
        resampled,
        pass: failures == 0,
    })
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

/// Kolmogorov–Sinai entropy of the Bernoulli shift with the given outcome
/// probabilities: Σ −pᵢ log₂ pᵢ (zero entries contribute zero).
///
/// Two Bernoulli shifts are isomorphic exactly when this number agrees.
///
/// ```
/// use obsequiv::shift_space::ks_entropy_bernoulli;
///
/// assert_eq!(ks_entropy_bernoulli(&[0.5, 0.5]).unwrap(), 1.0);
/// assert_eq!(ks_entropy_bernoulli(&[1.0, 0.0]).unwrap(), 0.0);
/// ```
pub fn ks_entropy_bernoulli(probs: &[f64]) -> Result<f64> {
    validate_probs(probs)?;
    // + 0.0 normalizes the -0.0 a degenerate distribution produces.
    Ok(probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        + 0.0)
}

/// Entropy rate of a Markov model in bits per step:
/// −Σᵢ πᵢ Σⱼ Pᵢⱼ log₂ Pᵢⱼ.
pub fn entropy_rate_markov(model: &MarkovModel) -> f64 {
    model
        .stationary()
        .iter()
        .zip(model.transition())
        .map(|(&pi, row)| {
            pi * row
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| -p * p.log2())
                .sum::<f64>()
        })
        .sum::<f64>()
        + 0.0
}

/// Plug-in entropy-rate estimate from the empirical transition matrix,
/// weighting rows by empirical symbol frequencies.
pub fn empirical_entropy_rate(seq: &SymbolSequence) -> Result<f64> {
    let est = empirical_transition_matrix(seq)?;
    let freqs = seq.frequencies();
    Ok(freqs
        .iter()
        .zip(&est.matrix)
        .map(|(&pi, row)| {
            pi * row
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| -p * p.log2())
                .sum::<f64>()
        })
        .sum())
}

// ---------------------------------------------------------------------------
// Finite-window equivalence
// ---------------------------------------------------------------------------

/// Per-word empirical statistics in a window-equivalence comparison.
#[derive(Clone, Debug, Serialize)]
pub struct WordStat {
    pub word: Vec<u32>,
    pub freq_a: f64,
    pub freq_b: f64,
    /// Binomial standard errors of the two frequencies.
    pub se_a: f64,
    pub se_b: f64,
}

/// Verdict of a finite-window cylinder-distribution comparison.
#[derive(Clone, Debug, Serialize)]
pub struct WindowEquivalenceReport {
    pub pass: bool,
    pub window: usize,
    pub tolerance: f64,
    /// L∞ distance between the word-frequency vectors.
    pub max_deviation: f64,
    pub worst_word: Vec<u32>,
    pub words: Vec<WordStat>,
}

/// Compares the empirical distributions of all length-`window` words of two
/// sequences over the same alphabet; passes iff the L∞ distance is within
/// `tolerance`.
pub fn finite_window_equivalence(
    a: &SymbolSequence,
    b: &SymbolSequence,
    window: usize,
    tolerance: f64,
) -> Result<WindowEquivalenceReport> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::InvalidInput(
            "sequences have different alphabets".into(),
        ));
    }
    if window < 1 {
        return Err(Error::InvalidInput("window must be >= 1".into()));
    }
    let n = a.alphabet();
    let n_words = n
        .checked_pow(window as u32)
        .filter(|&w| w <= 1 << 26)
        .ok_or_else(|| Error::ResourceLimit(format!("alphabet^{window} words is too many")))?;
    let need = n_words.saturating_mul(100);
    if a.len() < need || b.len() < need {
        return Err(Error::TooShort(format!(
            "need length >= 100 x {n_words} words; got {} and {}",
            a.len(),
            b.len()
        )));
    }

    let count = |seq: &SymbolSequence| -> Vec<u64> {
        let mut counts = vec![0u64; n_words];
        for w in seq.symbols().windows(window) {
            let mut idx = 0usize;
            for &s in w {
                idx = idx * n + s as usize;
            }
            counts[idx] += 1;
        }
        counts
    };
    let ca = count(a);
    let cb = count(b);
    let ta = (a.len() - window + 1) as f64;
    let tb = (b.len() - window + 1) as f64;

    let decode = |mut idx: usize| -> Vec<u32> {
        let mut word = vec![0u32; window];
        for slot in word.iter_mut().rev() {
            *slot = (idx % n) as u32;
            idx /= n;
        }
        word
    };

    let mut max_deviation = 0.0;
    let mut worst = 0usize;
    let mut words = Vec::with_capacity(n_words);
    for i in 0..n_words {
        let fa = ca[i] as f64 / ta;
        let fb = cb[i] as f64 / tb;
        let dev = (fa - fb).abs();
        if dev > max_deviation {
            max_deviation = dev;
            worst = i;
        }
        words.push(WordStat {
            word: decode(i),
            freq_a: fa,
            freq_b: fb,
            se_a: (fa * (1.0 - fa) / ta).sqrt(),
            se_b: (fb * (1.0 - fb) / tb).sqrt(),
        });
    }
    Ok(WindowEquivalenceReport {
        pass: max_deviation <= tolerance,
        window,
        tolerance,
        max_deviation,
        worst_word: decode(worst),
        words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::{bernoulli_sample, Origin};
    use crate::rng;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn fixed(alphabet: usize, assignments: &[(i64, u32)]) -> CylinderSpec {
        let constraints = assignments
            .iter()
            .map(|&(t, s)| Constraint {
                t,
                allowed: BTreeSet::from([s]),
            })
            .collect();
        CylinderSpec::new(alphabet, constraints).unwrap()
    }

    #[test]
    fn bernoulli_cylinder_examples() {
        let fair = [0.5, 0.5];
        let c = fixed(2, &[(0, 0), (1, 0), (2, 0)]);
        assert_abs_diff_eq!(cylinder_measure_bernoulli(&c, &fair).unwrap(), 0.125);

        let whole = CylinderSpec::new(2, vec![]).unwrap();
        assert_eq!(cylinder_measure_bernoulli(&whole, &fair).unwrap(), 1.0);

        let full = CylinderSpec::new(
            2,
            vec![Constraint {
                t: 0,
                allowed: BTreeSet::from([0, 1]),
            }],
        )
        .unwrap();
        assert_eq!(
            cylinder_measure_bernoulli(&full, &[1.0 / 3.0, 2.0 / 3.0]).unwrap(),
            1.0
        );
    }

    #[test]
    fn markov_cylinder_examples() {
        let fair = MarkovModel::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_abs_diff_eq!(
            cylinder_measure_markov(&fixed(2, &[(0, 0)]), &fair).unwrap(),
            0.5
        );

        let flip = MarkovModel::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(
            cylinder_measure_markov(&fixed(2, &[(0, 0), (1, 1)]), &flip).unwrap(),
            0.5
        );
        assert_eq!(
            cylinder_measure_markov(&fixed(2, &[(0, 0), (1, 0)]), &flip).unwrap(),
            0.0
        );
    }

    #[test]
    fn markov_cylinder_bridges_gaps() {
        // Fair chain: coordinates are independent, so a gap changes nothing.
        let fair = MarkovModel::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let gap = fixed(2, &[(0, 0), (5, 1)]);
        assert_abs_diff_eq!(cylinder_measure_markov(&gap, &fair).unwrap(), 0.25);
        // Flip chain: after an even gap the symbol must repeat.
        let flip = MarkovModel::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(
            cylinder_measure_markov(&fixed(2, &[(0, 0), (4, 0)]), &flip).unwrap(),
            0.5
        );
        assert_eq!(
            cylinder_measure_markov(&fixed(2, &[(0, 0), (4, 1)]), &flip).unwrap(),
            0.0
        );
    }

    #[test]
    fn window_shift_relabels() {
        // ω_{-1}..ω_{+1} = (a, b, c); after the shift the origin reads c.
        let w = ShiftWindow::new(3, &[0], &[1, 2]).unwrap();
        assert_eq!((w.min_index(), w.max_index()), (-1, 1));
        let s = w.shift_left().unwrap();
        assert_eq!((s.min_index(), s.max_index()), (-2, 0));
        assert_eq!(s.get(0), Some(2));
        assert_eq!(s.get(-1), Some(1));
        assert_eq!(s.get(-2), Some(0));
        // Φ₀(shift(w)) = original ω₁.
        assert_eq!(s.get(0), w.get(1));
        // Shifting R times reads the original coordinate R at the origin.
        let w = ShiftWindow::new(2, &[1], &[0, 1, 1, 0]).unwrap();
        let r = w.max_index();
        let mut s = w.clone();
        for _ in 0..r {
            s = s.shift_left().unwrap();
        }
        assert_eq!(s.get(0), w.get(r));
        assert!(matches!(s.shift_left(), Err(Error::WindowExhausted)));
    }

    fn thirds_point(width: usize) -> PhasePoint {
        // x = 1/3 = 0.010101…, y = 2/3 = 0.101010…
        let x = BitFraction::from_bits((0..width).map(|i| i % 2 == 1));
        let y = BitFraction::from_bits((0..width).map(|i| i % 2 == 0));
        PhasePoint::from_exact(ExactPair::new(x, y))
    }

    #[test]
    fn coding_of_one_third_two_thirds() {
        let p = thirds_point(16);
        assert_abs_diff_eq!(p.x(), 1.0 / 3.0, epsilon = 1e-4);
        assert_abs_diff_eq!(p.y(), 2.0 / 3.0, epsilon = 1e-4);
        let w = baker_to_shift(&p, 4, 4).unwrap();
        let right: Vec<u32> = (0..4).map(|t| w.get(t).unwrap()).collect();
        let left: Vec<u32> = (1..=4).map(|i| w.get(-i).unwrap()).collect();
        assert_eq!(right, vec![0, 1, 0, 1]);
        assert_eq!(left, vec![1, 0, 1, 0]);
    }

    #[test]
    fn coding_rejects_dyadic_boundary() {
        let p = PhasePoint::two(0.5, 0.5)
            .unwrap()
            .with_exact_from_floats(32)
            .unwrap();
        assert!(matches!(baker_to_shift(&p, 8, 8), Err(Error::ExcludedSet)));
    }

    #[test]
    fn coding_round_trip() {
        let mut r = rng::seeded(41);
        for _ in 0..100 {
            let p = PhasePoint::random_exact(64, &mut r);
            let w = baker_to_shift(&p, 52, 52).unwrap();
            let q = shift_to_baker(&w).unwrap();
            assert!((p.x() - q.x()).abs() <= 2.0f64.powi(-52));
            assert!((p.y() - q.y()).abs() <= 2.0f64.powi(-52));
        }
    }

    #[test]
    fn decoding_single_bits() {
        let w = ShiftWindow::new(2, &[0], &[1]).unwrap();
        assert_eq!(shift_to_baker(&w).unwrap().x(), 0.5);
        let w = ShiftWindow::new(2, &[1], &[0]).unwrap();
        assert_eq!(shift_to_baker(&w).unwrap().y(), 0.5);
        // Alternating window decodes to (1/3, 2/3) within 2^-L.
        let p = thirds_point(20);
        let w = baker_to_shift(&p, 20, 20).unwrap();
        let q = shift_to_baker(&w).unwrap();
        assert!((q.x() - 1.0 / 3.0).abs() < 2.0f64.powi(-20));
        assert!((q.y() - 2.0 / 3.0).abs() < 2.0f64.powi(-20));
    }

    #[test]
    fn conjugacy_holds_on_expansions() {
        assert!(conjugacy_check(&thirds_point(64), 10).unwrap());
        let mut r = rng::seeded(43);
        for _ in 0..50 {
            let p = PhasePoint::random_exact(64, &mut r);
            assert!(conjugacy_check(&p, 1).unwrap());
        }
        let boundary = PhasePoint::two(0.5, 0.5)
            .unwrap()
            .with_exact_from_floats(64)
            .unwrap();
        assert!(matches!(
            conjugacy_check(&boundary, 5),
            Err(Error::ExcludedSet)
        ));
    }

    #[test]
    fn conjugacy_sample_resamples_boundary_points() {
        // At width 8 a post-shift constant remainder is common, so the
        // sampler must discard boundary points yet still find no failures.
        let out = conjugacy_sample(200, 5, 8, 7).unwrap();
        assert_eq!(out.failures, 0);
        assert!(out.resampled > 0);
        assert!(out.pass);
    }

    #[test]
    fn entropy_values() {
        assert_eq!(ks_entropy_bernoulli(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(ks_entropy_bernoulli(&[1.0, 0.0]).unwrap(), 0.0);
        // High-precision oracle: log₂3 − 2/3.
        assert_abs_diff_eq!(
            ks_entropy_bernoulli(&[1.0 / 3.0, 2.0 / 3.0]).unwrap(),
            0.918_295_834_054_489_6,
            epsilon = 1e-12
        );
    }

    #[test]
    fn entropy_rate_of_fair_chain_is_one_bit() {
        let fair = MarkovModel::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_abs_diff_eq!(entropy_rate_markov(&fair), 1.0, epsilon = 1e-12);
        let flip = MarkovModel::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(entropy_rate_markov(&flip), 0.0);
    }

    #[test]
    fn window_equivalence_trivial_and_rejecting() {
        let a = bernoulli_sample(&[0.5, 0.5], 20_000, 50).unwrap();
        let same = finite_window_equivalence(&a, &a, 3, 0.01).unwrap();
        assert!(same.pass);
        assert_eq!(same.max_deviation, 0.0);

        // Alternating vs i.i.d.: the word (0,0) never occurs vs freq 1/4.
        let alternating =
            SymbolSequence::new(2, (0..20_000).map(|i| i % 2).collect(), Origin::Sampled).unwrap();
        let out = finite_window_equivalence(&a, &alternating, 2, 0.01).unwrap();
        assert!(!out.pass);
        assert!(out.max_deviation > 0.2);

        let short = bernoulli_sample(&[0.5, 0.5], 100, 51).unwrap();
        assert!(matches!(
            finite_window_equivalence(&short, &a, 3, 0.01),
            Err(Error::TooShort(_))
        ));
    }

    #[test]
    fn cylinder_json_round_trip() {
        let c = fixed(4, &[(-2, 1), (0, 3), (5, 0)]);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"alphabet\"") && json.contains("\"constraints\""));
        let back: CylinderSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    proptest! {
        /// Kolmogorov consistency: a cylinder's measure equals the sum of
        /// the measures of its one-symbol refinements at a fresh index.
        #[test]
        fn consistency_under_refinement(
            word in proptest::collection::vec(0u32..3, 1..4),
            offset in -3i64..3,
        ) {
            let probs = [0.2, 0.3, 0.5];
            let model = MarkovModel::new(vec![
                vec![0.1, 0.6, 0.3],
                vec![0.5, 0.25, 0.25],
                vec![0.3, 0.3, 0.4],
            ]).unwrap();
            let base = CylinderSpec::word(3, offset, &word).unwrap();
            let fresh = offset + word.len() as i64 + 1; // leaves a gap of 2
            let refine = |s: u32| {
                let mut cons = base.constraints().to_vec();
                cons.push(Constraint { t: fresh, allowed: BTreeSet::from([s]) });
                CylinderSpec::new(3, cons).unwrap()
            };

            let b0 = cylinder_measure_bernoulli(&base, &probs).unwrap();
            let b1: f64 = (0..3)
                .map(|s| cylinder_measure_bernoulli(&refine(s), &probs).unwrap())
                .sum();
            prop_assert!((b0 - b1).abs() < 1e-12);

            let m0 = cylinder_measure_markov(&base, &model).unwrap();
            let m1: f64 = (0..3)
                .map(|s| cylinder_measure_markov(&refine(s), &model).unwrap())
                .sum();
            prop_assert!((m0 - m1).abs() < 1e-12);
        }

        /// Stationarity: translating all indices leaves both measures unchanged.
        #[test]
        fn shift_invariance(
            word in proptest::collection::vec(0u32..3, 1..5),
            h in -20i64..20,
        ) {
            let probs = [0.2, 0.3, 0.5];
            let model = MarkovModel::new(vec![
                vec![0.1, 0.6, 0.3],
                vec![0.5, 0.25, 0.25],
                vec![0.3, 0.3, 0.4],
            ]).unwrap();
            let c = CylinderSpec::word(3, 0, &word).unwrap();
            let shifted = c.shifted(h);
            let b = cylinder_measure_bernoulli(&c, &probs).unwrap();
            let bs = cylinder_measure_bernoulli(&shifted, &probs).unwrap();
            prop_assert!((b - bs).abs() < 1e-15);
            let m = cylinder_measure_markov(&c, &model).unwrap();
            let ms = cylinder_measure_markov(&shifted, &model).unwrap();
            prop_assert!((m - ms).abs() < 1e-15);
        }

        /// 0 ≤ H ≤ log₂ N with equality at the top iff uniform.
        #[test]
        fn entropy_bounds(raw in proptest::collection::vec(0.01f64..1.0, 2..6)) {
            let total: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
            let h = ks_entropy_bernoulli(&probs).unwrap();
            let cap = (probs.len() as f64).log2();
            prop_assert!(h >= 0.0 && h <= cap + 1e-12);
            let uniform = vec![1.0 / probs.len() as f64; probs.len()];
            let hu = ks_entropy_bernoulli(&uniform).unwrap();
            prop_assert!((hu - cap).abs() < 1e-12);
        }
    }
}
