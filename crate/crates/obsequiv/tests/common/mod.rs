#![allow(dead_code)] // shared across test binaries; each uses a subset

//! Independent oracles for the integration suites. Everything here is
//! derived from first principles (rectangle geometry, interval overlap,
//! boolean matrix powers) rather than from the library's own code paths.

/// Transition matrix of the dyadic-grid observation of the baker map,
/// computed by brute-force rectangle images: each cell is mapped through
/// the piecewise-affine formula and intersected with every target cell.
/// Cell indexing is x-major: index = xi * 2^n + yi.
pub fn grid_image_chain(n: usize) -> Vec<Vec<f64>> {
    let k = 1usize << n;
    let side = 1.0 / k as f64;
    let states = k * k;
    let cell_area = side * side;
    let mut rows = vec![vec![0.0; states]; states];
    for xi in 0..k {
        for yi in 0..k {
            let (xl, xh) = (xi as f64 * side, (xi + 1) as f64 * side);
            let (yl, yh) = (yi as f64 * side, (yi + 1) as f64 * side);
            // Cells never straddle x = 1/2 for n >= 1.
            let (ixl, ixh, iyl, iyh) = if xh <= 0.5 {
                (2.0 * xl, 2.0 * xh, yl / 2.0, yh / 2.0)
            } else {
                (
                    2.0 * xl - 1.0,
                    2.0 * xh - 1.0,
                    (yl + 1.0) / 2.0,
                    (yh + 1.0) / 2.0,
                )
            };
            for txi in 0..k {
                for tyi in 0..k {
                    let (txl, txh) = (txi as f64 * side, (txi + 1) as f64 * side);
                    let (tyl, tyh) = (tyi as f64 * side, (tyi + 1) as f64 * side);
                    let w = (ixh.min(txh) - ixl.max(txl)).max(0.0);
                    let h = (iyh.min(tyh) - iyl.max(tyl)).max(0.0);
                    rows[xi * k + yi][txi * k + tyi] = w * h / cell_area;
                }
            }
        }
    }
    rows
}

/// Transition rows of the halves observation of the circle rotation, by
/// interval arithmetic: the image of [0,1/2) is [a, a+1/2) mod 1 and its
/// overlap with each half is read off directly.
pub fn rotation_halves_rows(alpha: f64) -> [[f64; 2]; 2] {
    let overlap_with = |start: f64, target_lo: f64, target_hi: f64| -> f64 {
        // Arc [start, start + 1/2) mod 1 vs [target_lo, target_hi).
        let mut total = 0.0;
        for (lo, hi) in [
            (start, (start + 0.5).min(1.0)),
            (0.0, (start + 0.5 - 1.0).max(0.0)),
        ] {
            total += (hi.min(target_hi) - lo.max(target_lo)).max(0.0);
        }
        total
    };
    let from_l = alpha.rem_euclid(1.0);
    let from_r = (0.5 + alpha).rem_euclid(1.0);
    [
        [
            overlap_with(from_l, 0.0, 0.5) / 0.5,
            overlap_with(from_l, 0.5, 1.0) / 0.5,
        ],
        [
            overlap_with(from_r, 0.0, 0.5) / 0.5,
            overlap_with(from_r, 0.5, 1.0) / 0.5,
        ],
    ]
}

/// Closed-form correlation of the rotation for A = B = [0, 1/2):
/// μ(Tⁿ(A) ∩ A) − 1/4 = |1/2 − {nα}| − 1/4.
pub fn rotation_overlap_correlation(alpha: f64, lag: usize) -> f64 {
    let frac = (lag as f64 * alpha).rem_euclid(1.0);
    (0.5 - frac).abs() - 0.25
}

/// Strong connectivity of a support digraph by forward and backward BFS.
pub fn strongly_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut rev = vec![Vec::new(); n];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            rev[v].push(u);
        }
    }
    let bfs = |edges: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &edges[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    bfs(adj) && bfs(&rev)
}

/// Period of a state by gcd over explicit return lengths, found through
/// boolean matrix powers up to 2·states + 1 steps.
pub fn period_by_matrix_powers(adj: &[Vec<usize>], state: usize) -> Option<usize> {
    let n = adj.len();
    let mut reach: Vec<bool> = (0..n).map(|v| v == state).collect();
    let mut g = 0usize;
    for step in 1..=(2 * n + 1) {
        let mut next = vec![false; n];
        for (u, outs) in adj.iter().enumerate() {
            if reach[u] {
                for &v in outs {
                    next[v] = true;
                }
            }
        }
        reach = next;
        if reach[state] {
            g = gcd(g, step);
        }
    }
    (g > 0).then_some(g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Support adjacency of a transition matrix (strictly positive entries).
pub fn support(rows: &[Vec<f64>]) -> Vec<Vec<usize>> {
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

/// L∞ distance of two matrices.
pub fn linf(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}
