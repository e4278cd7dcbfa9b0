//! Deterministic systems: the baker transformation on the unit square and
//! the circle rotation, both preserving Lebesgue measure.
//!
//! Points can carry an exact representation holding the fractional binary
//! expansion of each coordinate. For the baker map the exact step is a
//! one-bit transfer: the leading bit of `x` moves to the front of `y`.
//! This makes the step exactly invertible and is also the reason long
//! coarse-grained orbits must be generated in exact mode: in plain `f64`
//! the doubling of `x` shifts the mantissa out after ~53 steps and the
//! orbit collapses onto the dyadic boundary.

use std::collections::VecDeque;

use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rng;

/// Default number of fractional bits per coordinate in exact mode.
pub const DEFAULT_EXACT_WIDTH: usize = 64;

/// Orbits longer than this are refused (float rotation error growth and
/// memory for exact bit reservoirs both stay invisible below it).
pub const MAX_ORBIT_LEN: usize = 100_000_000;

// ---------------------------------------------------------------------------
// Exact fractional expansions
// ---------------------------------------------------------------------------

/// A fractional binary expansion `0.b₀b₁b₂…` of finite width, front = most
/// significant bit. Value = Σ bᵢ·2^{-(i+1)} ∈ [0,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitFraction {
    bits: VecDeque<bool>,
}

impl BitFraction {
    /// Builds from explicit bits, most significant first.
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Self {
            bits: bits.into_iter().collect(),
        }
    }

    /// The first `width` bits of the expansion of `v`.
    ///
    /// `v` must lie in [0,1). Doubling an `f64` is exact, so the result is
    /// the true expansion of the binary64 value (all zeros past its mantissa).
    pub fn from_f64(v: f64, width: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::InvalidInput(format!("coordinate {v} outside [0,1)")));
        }
        let mut x = v;
        let mut bits = VecDeque::with_capacity(width);
        for _ in 0..width {
            x *= 2.0;
            let b = x >= 1.0;
            if b {
                x -= 1.0;
            }
            bits.push_back(b);
        }
        Ok(Self { bits })
    }

    /// `width` independent fair bits.
    pub fn random(width: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut bits = VecDeque::with_capacity(width);
        let mut remaining = width;
        while remaining > 0 {
            let chunk: u64 = rng.random();
            let take = remaining.min(64);
            for i in 0..take {
                bits.push_back((chunk >> i) & 1 == 1);
            }
            remaining -= take;
        }
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// The dyadic value of the first min(len, 53) bits. Exact: every
    /// intermediate of the backwards Horner scheme is a dyadic `f64`.
    pub fn value(&self) -> f64 {
        let k = self.bits.len().min(53);
        let mut v = 0.0;
        for i in (0..k).rev() {
            v = (v + if self.bits[i] { 1.0 } else { 0.0 }) / 2.0;
        }
        v
    }

    /// Integer formed by the first `n` bits (most significant first).
    /// `None` if fewer than `n` bits remain.
    pub fn leading_int(&self, n: usize) -> Option<u64> {
        if n > self.bits.len() || n > 63 {
            return None;
        }
        let mut v = 0u64;
        for i in 0..n {
            v = (v << 1) | u64::from(self.bits[i]);
        }
        Some(v)
    }

    pub(crate) fn pop_front(&mut self) -> Option<bool> {
        self.bits.pop_front()
    }

    pub(crate) fn push_front(&mut self, b: bool) {
        self.bits.push_front(b);
    }

    /// True iff bits from position `from` onward are all equal (the window
    /// looks like a dyadic rational from `from` on). Vacuously false when
    /// fewer than one bit remains past `from`.
    pub fn constant_from(&self, from: usize) -> bool {
        if from >= self.bits.len() {
            return false;
        }
        let first = self.bits[from];
        self.bits.iter().skip(from + 1).all(|&b| b == first)
    }

    /// Length of the maximal constant run ending at the last bit.
    pub fn constant_suffix_run(&self) -> usize {
        let n = self.bits.len();
        if n == 0 {
            return 0;
        }
        let last = self.bits[n - 1];
        let mut run = 1;
        for i in (0..n - 1).rev() {
            if self.bits[i] != last {
                break;
            }
            run += 1;
        }
        run
    }

    /// Finitely detectable dyadic tail: a constant run covering at least
    /// half of the expansion's tail. Infinite tails of ones or zeros cannot
    /// be detected from a finite window; this heuristic flags the windows
    /// that force the float reading onto a dyadic boundary while keeping
    /// the false-positive rate on random windows at ~2^(1-len/2).
    pub fn has_dyadic_tail(&self) -> bool {
        let threshold = (self.bits.len() / 2).max(2);
        self.constant_suffix_run() >= threshold
    }
}

/// Exact representation of a point of the unit square: one [`BitFraction`]
/// per coordinate. The baker step conserves the total number of bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPair {
    pub x: BitFraction,
    pub y: BitFraction,
}

impl ExactPair {
    pub fn new(x: BitFraction, y: BitFraction) -> Self {
        Self { x, y }
    }

    /// Uniformly random bits, `x_width` and `y_width` per coordinate.
    pub fn random(x_width: usize, y_width: usize, rng: &mut ChaCha8Rng) -> Self {
        Self {
            x: BitFraction::random(x_width, rng),
            y: BitFraction::random(y_width, rng),
        }
    }
}

// ---------------------------------------------------------------------------
// Phase points
// ---------------------------------------------------------------------------

/// A state of a deterministic system: a point of [0,1)² (baker) or [0,1)
/// (rotation), with an optional exact expansion for 2-D points.
#[derive(Clone, Debug)]
pub struct PhasePoint {
    coords: [f64; 2],
    dim: usize,
    exact: Option<ExactPair>,
}

impl PhasePoint {
    /// 1-D point on the circle [0,1).
    pub fn one(m: f64) -> Result<Self> {
        check_unit(m)?;
        Ok(Self {
            coords: [m, 0.0],
            dim: 1,
            exact: None,
        })
    }

    /// 2-D point of the unit square.
    pub fn two(x: f64, y: f64) -> Result<Self> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(Self {
            coords: [x, y],
            dim: 2,
            exact: None,
        })
    }

    /// 2-D point defined by exact expansions; floats are derived from the bits.
    pub fn from_exact(exact: ExactPair) -> Self {
        let coords = [exact.x.value(), exact.y.value()];
        Self {
            coords,
            dim: 2,
            exact: Some(exact),
        }
    }

    /// 2-D point with random exact expansions of the given width per coordinate.
    pub fn random_exact(width: usize, rng: &mut ChaCha8Rng) -> Self {
        Self::from_exact(ExactPair::random(width, width, rng))
    }

    /// Attaches an exact expansion of `width` bits per coordinate derived
    /// from the float coordinates.
    pub fn with_exact_from_floats(mut self, width: usize) -> Result<Self> {
        if self.dim != 2 {
            return Err(Error::InvalidInput(
                "exact form requires a 2-D point".into(),
            ));
        }
        self.exact = Some(ExactPair::new(
            BitFraction::from_f64(self.coords[0], width)?,
            BitFraction::from_f64(self.coords[1], width)?,
        ));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    /// Second coordinate; panics on 1-D points.
    pub fn y(&self) -> f64 {
        assert!(self.dim == 2, "y() on a 1-D point");
        self.coords[1]
    }

    pub fn exact(&self) -> Option<&ExactPair> {
        self.exact.as_ref()
    }

    fn refresh_floats(&mut self) {
        if let Some(e) = &self.exact {
            self.coords[0] = e.x.value();
            self.coords[1] = e.y.value();
        }
    }
}

fn check_unit(v: f64) -> Result<()> {
    if (0.0..1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("coordinate {v} outside [0,1)")))
    }
}

// ---------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------

/// Golden-mean conjugate (√5−1)/2, the default irrational rotation angle.
pub const GOLDEN_ROTATION: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Debug, PartialEq)]
pub enum SystemKind {
    /// Baker transformation of the unit square: stretch to twice the length,
    /// half the width, cut, stack. Preserves Lebesgue measure.
    Baker,
    /// Rotation of the circle [0,1) by `alpha`.
    Rotation { alpha: f64 },
}

/// A measure-preserving evolution map together with its metric. The
/// invariant measure is Lebesgue on [0,1)^d for both kinds.
#[derive(Clone, Debug, PartialEq)]
pub struct System {
    kind: SystemKind,
}

impl System {
    pub fn baker() -> Self {
        Self {
            kind: SystemKind::Baker,
        }
    }

    pub fn rotation(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!(
                "rotation angle {alpha} outside (0,1)"
            )));
        }
        Ok(Self {
            kind: SystemKind::Rotation { alpha },
        })
    }

    pub fn golden_rotation() -> Self {
        Self {
            kind: SystemKind::Rotation {
                alpha: GOLDEN_ROTATION,
            },
        }
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            SystemKind::Baker => 2,
            SystemKind::Rotation { .. } => 1,
        }
    }

    /// One application of the evolution map.
    pub fn step(&self, p: &PhasePoint) -> Result<PhasePoint> {
        let mut q = p.clone();
        self.step_in_place(&mut q)?;
        Ok(q)
    }

    /// One application of the inverse map.
    pub fn step_inverse(&self, p: &PhasePoint) -> Result<PhasePoint> {
        let mut q = p.clone();
        self.step_inverse_in_place(&mut q)?;
        Ok(q)
    }

    /// In-place step; O(1) bit work in exact mode.
    pub fn step_in_place(&self, p: &mut PhasePoint) -> Result<()> {
        match self.kind {
            SystemKind::Baker => {
                check_dim(p, 2)?;
                if p.exact.is_some() {
                    baker_step_exact(p.exact.as_mut().unwrap())?;
                    p.refresh_floats();
                } else {
                    let (x, y) = baker_step_floats(p.coords[0], p.coords[1]);
                    p.coords = [x, y];
                }
                Ok(())
            }
            SystemKind::Rotation { alpha } => {
                check_dim(p, 1)?;
                p.coords[0] = rotation_step(p.coords[0], alpha);
                Ok(())
            }
        }
    }

    pub fn step_inverse_in_place(&self, p: &mut PhasePoint) -> Result<()> {
        match self.kind {
            SystemKind::Baker => {
                check_dim(p, 2)?;
                if p.exact.is_some() {
                    baker_step_inverse_exact(p.exact.as_mut().unwrap())?;
                    p.refresh_floats();
                } else {
                    let (x, y) = baker_step_inverse_floats(p.coords[0], p.coords[1]);
                    p.coords = [x, y];
                }
                Ok(())
            }
            SystemKind::Rotation { alpha } => {
                check_dim(p, 1)?;
                p.coords[0] = wrap_unit(p.coords[0] - alpha);
                Ok(())
            }
        }
    }

    /// Distance in the system's metric: Euclidean on the square,
    /// wrap-around distance on the circle.
    pub fn distance(&self, a: &PhasePoint, b: &PhasePoint) -> f64 {
        match self.kind {
            SystemKind::Baker => {
                let dx = a.coords[0] - b.coords[0];
                let dy = a.coords[1] - b.coords[1];
                dx.hypot(dy)
            }
            SystemKind::Rotation { .. } => circle_distance(a.coords[0], b.coords[0]),
        }
    }

    /// The finite solution segment `[p0, T(p0), …, T^(steps−1)(p0)]`.
    ///
    /// Deterministic in its inputs. Returned points are float snapshots
    /// (the first element keeps `p0`'s exact form); when `p0` carries an
    /// exact form the iteration itself runs in exact mode.
    pub fn orbit(&self, p0: &PhasePoint, steps: usize) -> Result<Vec<PhasePoint>> {
        if steps < 1 {
            return Err(Error::InvalidInput("orbit needs steps >= 1".into()));
        }
        if steps > MAX_ORBIT_LEN {
            return Err(Error::ResourceLimit(format!(
                "orbit length {steps} > {MAX_ORBIT_LEN}"
            )));
        }
        let mut out = Vec::with_capacity(steps);
        out.push(p0.clone());
        let mut cur = p0.clone();
        for _ in 1..steps {
            self.step_in_place(&mut cur)?;
            let mut snap = cur.clone();
            snap.exact = None;
            out.push(snap);
        }
        Ok(out)
    }

    /// `n` i.i.d. points from the invariant (Lebesgue) measure,
    /// reproducible from the seed.
    pub fn sample_invariant(&self, n: usize, seed: u64) -> Result<Vec<PhasePoint>> {
        if n < 1 {
            return Err(Error::InvalidInput("sample_invariant needs n >= 1".into()));
        }
        let mut rng = rng::seeded(seed);
        let dim = self.dimension();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let p = if dim == 1 {
                PhasePoint::one(rng.random::<f64>()).expect("uniform draw is in [0,1)")
            } else {
                PhasePoint::two(rng.random::<f64>(), rng.random::<f64>())
                    .expect("uniform draw is in [0,1)")
            };
            out.push(p);
        }
        Ok(out)
    }
}

fn check_dim(p: &PhasePoint, want: usize) -> Result<()> {
    if p.dim == want {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "point has dimension {}, system needs {want}",
            p.dim
        )))
    }
}

// ---------------------------------------------------------------------------
// The maps
// ---------------------------------------------------------------------------

fn baker_step_floats(x: f64, y: f64) -> (f64, f64) {
    if x < 0.5 {
        (2.0 * x, y / 2.0)
    } else {
        (2.0 * x - 1.0, (y + 1.0) / 2.0)
    }
}

fn baker_step_inverse_floats(x: f64, y: f64) -> (f64, f64) {
    if y < 0.5 {
        (x / 2.0, 2.0 * y)
    } else {
        ((x + 1.0) / 2.0, 2.0 * y - 1.0)
    }
}

/// Exact baker step: the leading bit of `x` moves to the front of `y`.
/// Rejects windows whose post-shift `x` is a constant run (the point is
/// then indistinguishable from the excluded dyadic boundary).
fn baker_step_exact(e: &mut ExactPair) -> Result<()> {
    if e.x.len() < 2 {
        return Err(Error::WidthExceeded(format!(
            "x expansion has {} bit(s) left; cannot step",
            e.x.len()
        )));
    }
    if e.x.constant_from(1) {
        return Err(Error::ExcludedSet);
    }
    let b = e.x.pop_front().expect("checked len >= 2");
    e.y.push_front(b);
    Ok(())
}

fn baker_step_inverse_exact(e: &mut ExactPair) -> Result<()> {
    if e.y.len() < 2 {
        return Err(Error::WidthExceeded(format!(
            "y expansion has {} bit(s) left; cannot step back",
            e.y.len()
        )));
    }
    if e.y.constant_from(1) {
        return Err(Error::ExcludedSet);
    }
    let b = e.y.pop_front().expect("checked len >= 2");
    e.x.push_front(b);
    Ok(())
}

/// Baker step of a single point (float or exact form).
pub fn baker_step(p: &PhasePoint) -> Result<PhasePoint> {
    System::baker().step(p)
}

/// Inverse baker step.
pub fn baker_step_inverse(p: &PhasePoint) -> Result<PhasePoint> {
    System::baker().step_inverse(p)
}

/// Rotation of the circle: `m + alpha mod 1`.
pub fn rotation_step(m: f64, alpha: f64) -> f64 {
    wrap_unit(m + alpha)
}

fn wrap_unit(v: f64) -> f64 {
    let mut r = v % 1.0;
    if r < 0.0 {
        r += 1.0;
    }
    if r >= 1.0 {
        r = 0.0;
    }
    r
}

/// Wrap-around distance on the circle [0,1).
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p2(x: f64, y: f64) -> PhasePoint {
        PhasePoint::two(x, y).unwrap()
    }

    #[test]
    fn baker_first_branch() {
        let q = baker_step(&p2(0.3, 0.3)).unwrap();
        assert_abs_diff_eq!(q.x(), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 0.15, epsilon = 1e-15);
    }

    #[test]
    fn baker_second_branch() {
        let q = baker_step(&p2(0.75, 0.5)).unwrap();
        assert_abs_diff_eq!(q.x(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn baker_thirds_rational_oracle() {
        // Rational arithmetic: 1/3 < 1/2, so (1/3, 2/3) -> (2/3, 1/3).
        let q = baker_step(&p2(1.0 / 3.0, 2.0 / 3.0)).unwrap();
        assert_abs_diff_eq!(q.x(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn baker_inverse_examples() {
        let q = baker_step_inverse(&p2(0.6, 0.15)).unwrap();
        assert_abs_diff_eq!(q.x(), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 0.3, epsilon = 1e-15);
        let q = baker_step_inverse(&p2(0.5, 0.75)).unwrap();
        assert_abs_diff_eq!(q.x(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 0.5, epsilon = 1e-15);
        let q = baker_step_inverse(&p2(2.0 / 3.0, 1.0 / 3.0)).unwrap();
        assert_abs_diff_eq!(q.x(), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn float_roundtrip_within_tolerance() {
        let sys = System::baker();
        let pts = sys.sample_invariant(10_000, 11).unwrap();
        for p in &pts {
            let q = sys.step_inverse(&sys.step(p).unwrap()).unwrap();
            assert!(sys.distance(p, &q) < 1e-12);
        }
    }

    #[test]
    fn exact_roundtrip_is_identity() {
        let mut r = rng::seeded(3);
        for _ in 0..10_000 {
            let p = PhasePoint::random_exact(64, &mut r);
            let q = baker_step_inverse(&baker_step(&p).unwrap()).unwrap();
            assert_eq!(p.exact(), q.exact());
        }
    }

    #[test]
    fn exact_step_is_one_bit_shift() {
        let x = BitFraction::from_bits([false, true, true, false, true, false]);
        let y = BitFraction::from_bits([true, false, false, true]);
        let p = PhasePoint::from_exact(ExactPair::new(x, y));
        let q = baker_step(&p).unwrap();
        let e = q.exact().unwrap();
        assert_eq!(
            e.x,
            BitFraction::from_bits([true, true, false, true, false])
        );
        assert_eq!(
            e.y,
            BitFraction::from_bits([false, true, false, false, true])
        );
    }

    #[test]
    fn exact_step_rejects_dyadic_boundary() {
        // x = 0.1000…: after the shift the remainder is all zeros.
        let x = BitFraction::from_f64(0.5, 16).unwrap();
        let y = BitFraction::from_f64(0.3, 16).unwrap();
        let p = PhasePoint::from_exact(ExactPair::new(x, y));
        assert!(matches!(baker_step(&p), Err(Error::ExcludedSet)));
    }

    #[test]
    fn rotation_examples() {
        assert_abs_diff_eq!(
            rotation_step(0.0, GOLDEN_ROTATION),
            0.6180339887498949,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(rotation_step(0.9, 0.25), 0.15, epsilon = 1e-15);
        // High-precision oracle: (√5−1)/2 + 1/2 − 1 = 0.11803398874989484820…
        assert_abs_diff_eq!(
            rotation_step(0.5, GOLDEN_ROTATION),
            0.1180339887498949,
            epsilon = 1e-12
        );
    }

    #[test]
    fn orbit_matches_hand_iteration() {
        let sys = System::baker();
        let o = sys.orbit(&p2(0.3, 0.3), 3).unwrap();
        assert_eq!(o.len(), 3);
        assert_abs_diff_eq!(o[1].x(), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(o[1].y(), 0.15, epsilon = 1e-12);
        // T(0.6, 0.15): second branch -> (0.2, 0.575).
        assert_abs_diff_eq!(o[2].x(), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(o[2].y(), 0.575, epsilon = 1e-12);
    }

    #[test]
    fn orbit_rotation_quarter_turns() {
        let sys = System::rotation(0.25).unwrap();
        let o = sys.orbit(&PhasePoint::one(0.0).unwrap(), 4).unwrap();
        let got: Vec<f64> = o.iter().map(|p| p.x()).collect();
        assert_eq!(got, vec![0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn orbit_single_step_is_initial_point() {
        let sys = System::golden_rotation();
        let o = sys.orbit(&PhasePoint::one(0.42).unwrap(), 1).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].x(), 0.42);
    }

    #[test]
    fn sampling_is_seeded_and_uniform() {
        let sys = System::baker();
        assert!(sys.sample_invariant(0, 1).is_err());
        let one = sys.sample_invariant(1, 42).unwrap();
        assert!(one[0].x() < 1.0 && one[0].y() < 1.0);

        let a = sys.sample_invariant(100_000, 7).unwrap();
        let b = sys.sample_invariant(100_000, 7).unwrap();
        assert!(a
            .iter()
            .zip(&b)
            .all(|(p, q)| p.x() == q.x() && p.y() == q.y()));
        let frac = a.iter().filter(|p| p.x() < 0.5).count() as f64 / a.len() as f64;
        assert!((frac - 0.5).abs() < 0.01);
    }

    #[test]
    fn measure_preservation_on_rectangles() {
        // Empirical fraction of T(p) in dyadic rectangles vs their area, 4σ.
        let sys = System::baker();
        let pts = sys.sample_invariant(1_000_000, 5).unwrap();
        let rects: [((f64, f64), (f64, f64)); 3] = [
            ((0.25, 0.5), (0.5, 0.75)),
            ((0.0, 0.5), (0.0, 1.0)),
            ((0.125, 0.25), (0.75, 1.0)),
        ];
        let images: Vec<PhasePoint> = pts.iter().map(|p| sys.step(p).unwrap()).collect();
        for ((xl, xh), (yl, yh)) in rects {
            let area = (xh - xl) * (yh - yl);
            let hits = images
                .iter()
                .filter(|q| (xl..xh).contains(&q.x()) && (yl..yh).contains(&q.y()))
                .count();
            let freq = hits as f64 / pts.len() as f64;
            let sigma = (area * (1.0 - area) / pts.len() as f64).sqrt();
            assert!(
                (freq - area).abs() < 4.0 * sigma,
                "rect area {area}: freq={freq}"
            );
        }

        let rot = System::golden_rotation();
        let pts = rot.sample_invariant(1_000_000, 6).unwrap();
        let hits = pts
            .iter()
            .filter(|p| (0.125..0.5).contains(&rot.step(p).unwrap().x()))
            .count();
        let freq = hits as f64 / pts.len() as f64;
        let sigma = (0.375 * 0.625 / pts.len() as f64).sqrt();
        assert!((freq - 0.375).abs() < 4.0 * sigma);
    }

    #[test]
    fn rotation_is_isometry() {
        let sys = System::golden_rotation();
        let pts = sys.sample_invariant(2_000, 9).unwrap();
        for pair in pts.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let d0 = sys.distance(a, b);
            let d1 = sys.distance(&sys.step(a).unwrap(), &sys.step(b).unwrap());
            assert_abs_diff_eq!(d0, d1, epsilon = 1e-12);
        }
    }

    #[test]
    fn bitfraction_value_roundtrip() {
        let mut r = rng::seeded(17);
        for _ in 0..200 {
            let v: f64 = r.random();
            let f = BitFraction::from_f64(v, 64).unwrap();
            assert_eq!(
                f.value(),
                v,
                "53-bit expansion reconstructs the float exactly"
            );
        }
        // Reconstruction within 2^-W at narrow widths.
        let f = BitFraction::from_f64(0.3, 8).unwrap();
        assert!((f.value() - 0.3).abs() < 1.0 / 256.0);
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<PhasePoint>();
        assert_send_sync::<System>();
        assert_send_sync::<BitFraction>();
        assert_send_sync::<ExactPair>();
    }

    #[test]
    fn dyadic_tail_detection() {
        assert!(BitFraction::from_f64(0.5, 64).unwrap().has_dyadic_tail());
        assert!(BitFraction::from_f64(0.25, 64).unwrap().has_dyadic_tail());
        let mut r = rng::seeded(23);
        let random = BitFraction::random(64, &mut r);
        assert!(!random.has_dyadic_tail());
    }
}
