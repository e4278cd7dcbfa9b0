//! Chi-square machinery shared by the statistical verdict operations.
//!
//! Convention used throughout: significance level 0.01, cells with expected
//! count below 5 are pooled (smallest marginals merged first), and rows or
//! columns that are entirely zero are dropped before computing degrees of
//! freedom, so structural zeros never inflate a test.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Significance level used by every verdict in the crate.
pub const SIGNIFICANCE: f64 = 0.01;

/// Expected counts below this are pooled.
pub const MIN_EXPECTED: f64 = 5.0;

/// Upper-tail p-value of the chi-square distribution. `df == 0` means the
/// table was degenerate (nothing to test); that counts as perfect agreement.
pub fn chi_square_p_value(stat: f64, df: usize) -> f64 {
    if df == 0 {
        return 1.0;
    }
    match ChiSquared::new(df as f64) {
        Ok(d) => (1.0 - d.cdf(stat)).clamp(0.0, 1.0),
        Err(_) => 1.0,
    }
}

/// Result of a contingency-table test.
#[derive(Clone, Debug, Serialize)]
pub struct ContingencyOutcome {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Cell of the (zero-trimmed, unpooled) table with the largest squared
    /// Pearson residual, in original row/column indices.
    pub max_residual_cell: Option<(usize, usize)>,
}

impl ContingencyOutcome {
    fn degenerate() -> Self {
        Self {
            statistic: 0.0,
            df: 0,
            p_value: 1.0,
            max_residual_cell: None,
        }
    }

    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

/// Pearson chi-square test of independence between rows and columns of a
/// count table (equivalently, homogeneity of row distributions).
///
/// All-zero rows and columns are removed first; then columns and, if still
/// needed, rows with small expected counts are pooled pairwise until every
/// expected count reaches [`MIN_EXPECTED`] or only two categories remain.
pub fn independence_test(counts: &[Vec<u64>]) -> ContingencyOutcome {
    let nrows = counts.len();
    let ncols = counts.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return ContingencyOutcome::degenerate();
    }

    // Trim structural zeros, remembering original indices.
    let row_idx: Vec<usize> = (0..nrows)
        .filter(|&i| counts[i].iter().any(|&c| c > 0))
        .collect();
    let col_idx: Vec<usize> = (0..ncols)
        .filter(|&j| counts.iter().any(|r| r[j] > 0))
        .collect();
    if row_idx.len() < 2 || col_idx.len() < 2 {
        return ContingencyOutcome::degenerate();
    }
    let table: Vec<Vec<u64>> = row_idx
        .iter()
        .map(|&i| col_idx.iter().map(|&j| counts[i][j]).collect())
        .collect();

    // Residuals on the trimmed, unpooled table for witness reporting.
    let max_residual_cell = max_residual(&table).map(|(r, c)| (row_idx[r], col_idx[c]));

    // Pool, then compute the statistic.
    let pooled = pool(table);
    let (stat, df) = pearson(&pooled);
    let p_value = chi_square_p_value(stat, df);
    ContingencyOutcome {
        statistic: stat,
        df,
        p_value,
        max_residual_cell,
    }
}

fn margins(table: &[Vec<u64>]) -> (Vec<f64>, Vec<f64>, f64) {
    let rows: Vec<f64> = table.iter().map(|r| r.iter().sum::<u64>() as f64).collect();
    let cols: Vec<f64> = (0..table[0].len())
        .map(|j| table.iter().map(|r| r[j] as f64).sum())
        .collect();
    let total = rows.iter().sum();
    (rows, cols, total)
}

fn min_expected(table: &[Vec<u64>]) -> f64 {
    let (rows, cols, total) = margins(table);
    let mut min = f64::INFINITY;
    for r in &rows {
        for c in &cols {
            min = min.min(r * c / total);
        }
    }
    min
}

/// Merge the two smallest-margin columns (then rows) until the minimum
/// expected count is acceptable or only two categories remain per axis.
fn pool(mut table: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    loop {
        if min_expected(&table) >= MIN_EXPECTED {
            return table;
        }
        if table[0].len() > 2 {
            let (_, cols, _) = margins(&table);
            let (a, b) = two_smallest(&cols);
            for row in &mut table {
                let merged = row[a] + row[b];
                row[a] = merged;
                row.remove(b);
            }
        } else if table.len() > 2 {
            let (rows, _, _) = margins(&table);
            let (a, b) = two_smallest(&rows);
            let taken = table.remove(b);
            for (cell, add) in table[a].iter_mut().zip(taken) {
                *cell += add;
            }
        } else {
            // 2x2 with small expecteds: compute anyway; desk-scale inputs
            // are large enough that this only happens in toy cases.
            return table;
        }
    }
}

fn two_smallest(v: &[f64]) -> (usize, usize) {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).expect("finite margins"));
    let (a, b) = (order[0], order[1]);
    (a.min(b), a.max(b))
}

fn pearson(table: &[Vec<u64>]) -> (f64, usize) {
    let (rows, cols, total) = margins(table);
    if total == 0.0 || rows.len() < 2 || cols.len() < 2 {
        return (0.0, 0);
    }
    let mut stat = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &o) in row.iter().enumerate() {
            let e = rows[i] * cols[j] / total;
            if e > 0.0 {
                let d = o as f64 - e;
                stat += d * d / e;
            }
        }
    }
    (stat, (rows.len() - 1) * (cols.len() - 1))
}

fn max_residual(table: &[Vec<u64>]) -> Option<(usize, usize)> {
    let (rows, cols, total) = margins(table);
    let mut best = None;
    let mut best_val = -1.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &o) in row.iter().enumerate() {
            let e = rows[i] * cols[j] / total;
            if e > 0.0 {
                let r2 = (o as f64 - e).powi(2) / e;
                if r2 > best_val {
                    best_val = r2;
                    best = Some((i, j));
                }
            }
        }
    }
    best
}
