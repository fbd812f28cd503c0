//! Sparse helpers for boundary matrices, which are mostly zero with unit entries.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;

type SparseRow = BTreeMap<usize, BigInt>;

fn sparse_rows(a: &IntegerMatrix) -> Vec<SparseRow> {
    (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect()
}

/// True iff `left * right` is the zero matrix. Shapes must be compatible.
pub(crate) fn product_is_zero(left: &IntegerMatrix, right: &IntegerMatrix) -> bool {
    debug_assert_eq!(left.cols(), right.rows());
    let right_rows = sparse_rows(right);
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for r in 0..left.rows() {
        acc.clear();
        for (k, a) in left.row(r).iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, b) in &right_rows[k] {
                *acc.entry(*c).or_insert_with(BigInt::zero) += a * b;
            }
        }
        if acc.values().any(|v| !v.is_zero()) {
            return false;
        }
    }
    true
}

/// Eliminates `±1` pivots (Markowitz order) by unimodular row operations,
/// dropping each pivot's row and column once the column is clear.
///
/// Returns the number of unit invariant factors found and, if anything
/// nonzero is left, the remaining block as dense rows. The invariant factors
/// of the input are the units followed by those of the remaining block.
pub(crate) fn eliminate_unit_pivots(a: &IntegerMatrix) -> (usize, Option<Vec<Vec<BigInt>>>) {
    let mut rows = sparse_rows(a);
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }

    let mut units = 0;
    while let Some((r, c)) = cheapest_unit(&rows, &cols) {
        let pivot_row = std::mem::take(&mut rows[r]);
        for cc in pivot_row.keys() {
            cols[*cc].remove(&r);
        }
        let unit = &pivot_row[&c];
        let targets: Vec<usize> = cols[c].iter().copied().collect();
        for i in targets {
            // unit is its own inverse
            let f = &rows[i][&c] * unit;
            for (cc, pv) in &pivot_row {
                let entry = rows[i].entry(*cc).or_insert_with(BigInt::zero);
                *entry -= &f * pv;
                if entry.is_zero() {
                    rows[i].remove(cc);
                    cols[*cc].remove(&i);
                } else {
                    cols[*cc].insert(i);
                }
            }
        }
        debug_assert!(cols[c].is_empty());
        units += 1;
    }

    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    if live_cols.is_empty() {
        return (units, None);
    }
    let position: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let rest = rows
        .into_iter()
        .filter(|row| !row.is_empty())
        .map(|row| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (c, v) in row {
                dense[position[&c]] = v;
            }
            dense
        })
        .collect();
    (units, Some(rest))
}

fn cheapest_unit(rows: &[SparseRow], cols: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (r, row) in rows.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let row_cost = row.len() - 1;
        if best.is_some_and(|(_, _, cost)| cost == 0) {
            break;
        }
        for (&c, v) in row {
            if !v.magnitude().is_one() {
                continue;
            }
            let cost = row_cost * (cols[c].len() - 1);
            if best.is_none_or(|(_, _, b)| cost < b) {
                best = Some((r, c, cost));
                if cost == 0 {
                    break;
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}
