//! Finite observation partitions.
//!
//! An observation function with finitely many values is a partition of the
//! phase space into positive-measure cells, each carrying a representative
//! output value inside the cell. Observing a point returns the index of
//! the cell containing it.

use serde::{Deserialize, Serialize};

use crate::dynamics::{ExactPair, PhasePoint, System, SystemKind, MAX_ORBIT_LEN};
use crate::error::{Error, Result};
use crate::processes::{Origin, SymbolSequence};
use crate::rng;

/// Dyadic grid partitions finer than this are refused by default
/// (2^(2n) cells grow fast).
pub const DYADIC_CAP: usize = 8;

/// An axis-aligned half-open box `[lo, hi)` in 1 or 2 dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Cell {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() || lo.len() > 2 {
            return Err(Error::InvalidInput(
                "cell needs 1 or 2 matching bounds".into(),
            ));
        }
        if lo.iter().chain(&hi).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("cell bounds must be finite".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidInput(
                "cell bounds must satisfy lo < hi".into(),
            ));
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, coords: &[f64]) -> bool {
        coords.len() == self.dim()
            && coords
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(c, (lo, hi))| *c >= *lo && *c < *hi)
    }

    /// Lebesgue measure: product of side lengths.
    pub fn measure(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    /// All corners of the box (2 in 1-D, 4 in 2-D).
    pub fn corners(&self) -> Vec<Vec<f64>> {
        match self.dim() {
            1 => vec![vec![self.lo[0]], vec![self.hi[0]]],
            _ => vec![
                vec![self.lo[0], self.lo[1]],
                vec![self.hi[0], self.lo[1]],
                vec![self.lo[0], self.hi[1]],
                vec![self.hi[0], self.hi[1]],
            ],
        }
    }

    fn overlaps(&self, other: &Cell) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((alo, ahi), (blo, bhi))| alo < bhi && blo < ahi)
    }
}

/// A finite observation partition: disjoint positive-measure cells covering
/// the space, one distinct representative value inside each cell.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Partition {
    cells: Vec<Cell>,
    reps: Vec<Vec<f64>>,
    labels: Vec<String>,
    /// Set when the cells form the regular 2^n × 2^n grid over [0,1)²;
    /// enables O(1) observation. Not part of the serialized form.
    #[serde(skip)]
    grid: Option<usize>,
}

impl Partition {
    /// Validates and builds a partition. Pairwise disjointness is checked
    /// exhaustively up to 4096 cells; beyond that only the measure sum is
    /// checked (grid constructors are disjoint by construction).
    pub fn new(cells: Vec<Cell>, reps: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        Self::build(cells, reps, labels, None)
    }

    /// Re-runs constructor validation, e.g. after deserializing (serde
    /// performs no checks).
    pub fn revalidate(self) -> Result<Self> {
        let grid = self.grid;
        Self::build(self.cells, self.reps, self.labels, grid)
    }

    fn build(
        cells: Vec<Cell>,
        reps: Vec<Vec<f64>>,
        labels: Vec<String>,
        grid: Option<usize>,
    ) -> Result<Self> {
        if cells.is_empty() || cells.len() != reps.len() || cells.len() != labels.len() {
            return Err(Error::InvalidInput(
                "partition needs equal, nonzero numbers of cells, representatives, labels".into(),
            ));
        }
        let dim = cells[0].dim();
        if cells.iter().any(|c| c.dim() != dim) {
            return Err(Error::InvalidInput("cells have mixed dimensions".into()));
        }
        for (cell, rep) in cells.iter().zip(&reps) {
            if cell.measure() <= 0.0 {
                return Err(Error::InvalidInput("cell with nonpositive measure".into()));
            }
            if !cell.contains(rep) {
                return Err(Error::InvalidInput(format!(
                    "representative {rep:?} lies outside its cell"
                )));
            }
        }
        let mut sorted = reps.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("representatives are finite"));
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "representatives must be pairwise distinct".into(),
            ));
        }
        let total: f64 = cells.iter().map(Cell::measure).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "cell measures sum to {total}, expected 1"
            )));
        }
        if cells.len() <= 4096 {
            for i in 0..cells.len() {
                for j in i + 1..cells.len() {
                    if cells[i].overlaps(&cells[j]) {
                        return Err(Error::InvalidInput(format!("cells {i} and {j} overlap")));
                    }
                }
            }
        }
        Ok(Self {
            cells,
            reps,
            labels,
            grid,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cells[0].dim()
    }

    /// Alphabet size of the symbolic process this partition induces.
    pub fn alphabet(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn representative(&self, i: usize) -> &[f64] {
        &self.reps[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Lebesgue measure of cell `i`.
    pub fn cell_measure(&self, i: usize) -> f64 {
        self.cells[i].measure()
    }

    /// The index of the unique cell containing the point.
    pub fn observe(&self, p: &PhasePoint) -> Result<usize> {
        self.observe_coords(p.coords())
    }

    /// Like [`observe`](Self::observe) but on raw coordinates.
    pub fn observe_coords(&self, coords: &[f64]) -> Result<usize> {
        if let Some(n) = self.grid {
            if coords.len() == 2 {
                let scale = (1u64 << n) as f64;
                let xi = (coords[0] * scale) as u64;
                let yi = (coords[1] * scale) as u64;
                if xi < (1 << n) && yi < (1 << n) {
                    return Ok((xi as usize) << n | yi as usize);
                }
            }
            return Err(Error::NoCell(coords.to_vec()));
        }
        self.cells
            .iter()
            .position(|c| c.contains(coords))
            .ok_or_else(|| Error::NoCell(coords.to_vec()))
    }
}

/// The two-cell partition of the square split at x = 1/2, the observation
/// that reads off whether the point is in the left or right half.
pub fn left_right_partition() -> Partition {
    Partition::build(
        vec![
            Cell::new(vec![0.0, 0.0], vec![0.5, 1.0]).expect("static bounds"),
            Cell::new(vec![0.5, 0.0], vec![1.0, 1.0]).expect("static bounds"),
        ],
        vec![vec![0.25, 0.5], vec![0.75, 0.5]],
        vec!["s1".into(), "s2".into()],
        None,
    )
    .expect("static partition is valid")
}

/// The two-arc partition of the circle split at 1/2.
pub fn halves_partition() -> Partition {
    Partition::build(
        vec![
            Cell::new(vec![0.0], vec![0.5]).expect("static bounds"),
            Cell::new(vec![0.5], vec![1.0]).expect("static bounds"),
        ],
        vec![vec![0.25], vec![0.75]],
        vec!["L".into(), "R".into()],
        None,
    )
    .expect("static partition is valid")
}

/// The 2^(2n)-cell dyadic grid over [0,1)² with cells of side 1/2^n.
///
/// Cell indexing is row-major by (x-bits, y-bits): index = xi·2^n + yi where
/// xi = ⌊x·2^n⌋ and yi = ⌊y·2^n⌋, so transition matrices built over this
/// partition are reproducible. Each representative sits at offset
/// (√2/2^(n+1), √2/2^(n+1)) from its cell's lower-left corner, which keeps
/// every cell point within √2/2^n of the representative.
pub fn dyadic_partition(n: usize) -> Result<Partition> {
    dyadic_partition_capped(n, DYADIC_CAP)
}

/// [`dyadic_partition`] with an explicit cap on `n`.
pub fn dyadic_partition_capped(n: usize, cap: usize) -> Result<Partition> {
    if n < 1 {
        return Err(Error::InvalidInput("dyadic partition needs n >= 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "dyadic partition n={n} exceeds cap {cap} (2^(2n) cells)"
        )));
    }
    let side = 0.5f64.powi(n as i32);
    let offset = std::f64::consts::SQRT_2 / 2.0f64.powi(n as i32 + 1);
    let k = 1usize << n;
    let mut cells = Vec::with_capacity(k * k);
    let mut reps = Vec::with_capacity(k * k);
    let mut labels = Vec::with_capacity(k * k);
    for xi in 0..k {
        for yi in 0..k {
            let lo = vec![xi as f64 * side, yi as f64 * side];
            let hi = vec![(xi + 1) as f64 * side, (yi + 1) as f64 * side];
            reps.push(vec![lo[0] + offset, lo[1] + offset]);
            cells.push(Cell::new(lo, hi).expect("grid bounds are ordered"));
            labels.push(format!("c{xi}_{yi}"));
        }
    }
    Partition::build(cells, reps, labels, Some(n))
}

// ---------------------------------------------------------------------------
// Coarse-graining
// ---------------------------------------------------------------------------

/// Observes an orbit of `len` steps starting at `p0`, producing the symbolic
/// process the partition induces. Runs in exact mode iff `p0` carries an
/// exact form.
pub fn coarse_grain(
    sys: &System,
    part: &Partition,
    p0: &PhasePoint,
    len: usize,
) -> Result<SymbolSequence> {
    if len < 1 {
        return Err(Error::InvalidInput("coarse-graining needs len >= 1".into()));
    }
    if len > MAX_ORBIT_LEN {
        return Err(Error::ResourceLimit(format!(
            "orbit length {len} > {MAX_ORBIT_LEN}"
        )));
    }
    if part.dim() != sys.dimension() {
        return Err(Error::InvalidInput(
            "partition dimension does not match system".into(),
        ));
    }
    let mut data = Vec::with_capacity(len);
    let mut cur = p0.clone();
    data.push(part.observe(&cur)? as u32);
    for _ in 1..len {
        sys.step_in_place(&mut cur)?;
        data.push(part.observe(&cur)? as u32);
    }
    SymbolSequence::new(part.alphabet(), data, Origin::CoarseGrained)
}

/// Coarse-grains from a seeded random initial condition.
///
/// For the baker system the initial point is drawn in exact mode with an
/// x reservoir of `len` + 64 bits: the doubling of x consumes one bit per
/// step, and a plain f64 orbit would degenerate onto the dyadic boundary
/// after ~53 steps. The rotation iterates in f64, which is stable.
pub fn coarse_grain_random(
    sys: &System,
    part: &Partition,
    len: usize,
    seed: u64,
) -> Result<SymbolSequence> {
    if len > MAX_ORBIT_LEN {
        return Err(Error::ResourceLimit(format!(
            "orbit length {len} > {MAX_ORBIT_LEN}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let p0 = match sys.kind() {
        SystemKind::Baker => PhasePoint::from_exact(ExactPair::random(len + 64, 64, &mut rng)),
        SystemKind::Rotation { .. } => {
            use rand::RngExt;
            PhasePoint::one(rng.random::<f64>())?
        }
    };
    coarse_grain(sys, part, &p0, len)
}
