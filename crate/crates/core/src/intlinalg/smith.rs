//! Smith normal form over the integers.
//!
//! Reduction picks the nonzero entry of least absolute value as pivot, clears
//! its row and column with quotient steps, and repeats until the pivot divides
//! everything left in the trailing block. Transforms are only tracked when the
//! caller asks for the full decomposition.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::sparse;

/// `A = T * D * S` with `T`, `S` unimodular and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub t: IntegerMatrix,
    pub s: IntegerMatrix,
    /// The nonzero diagonal entries of `d`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Full decomposition with both transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let mut red = Reducer::new(a, true);
    let factors = red.run();
    let (rows, cols) = a.shape();
    let mut d = IntegerMatrix::zeros(rows, cols);
    for (i, f) in factors.iter().enumerate() {
        d[(i, i)] = f.clone();
    }
    SmithDecomposition {
        d,
        t: to_matrix(red.t.take().unwrap(), rows, rows),
        s: to_matrix(red.s.take().unwrap(), cols, cols),
        invariant_factors: factors,
    }
}

/// Invariant factors only. Unit pivots are eliminated on a sparse copy first;
/// whatever is left goes through the dense reduction.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let (units, rest) = sparse::eliminate_unit_pivots(a);
    let mut factors = vec![BigInt::one(); units];
    if let Some(rest) = rest {
        factors.extend(dense_invariant_factors(rest));
    }
    factors
}

pub fn rank(a: &IntegerMatrix) -> usize {
    invariant_factors(a).len()
}

pub(crate) fn dense_invariant_factors(rows: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    Reducer::from_rows(rows, false).run()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntegerMatrix {
    IntegerMatrix::from_vec(r, c, rows.into_iter().flatten().collect())
        .expect("transform shape is fixed by construction")
}

struct Reducer {
    w: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    /// Left transform, kept so that `T * W * S` equals the input at all times.
    t: Option<Vec<Vec<BigInt>>>,
    s: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

impl Reducer {
    fn new(a: &IntegerMatrix, track: bool) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
        let mut red = Self::from_rows_with_cols(rows, a.cols(), false);
        if track {
            red.t = Some(identity_rows(a.rows()));
            red.s = Some(identity_rows(a.cols()));
        }
        red
    }

    fn from_rows(rows: Vec<Vec<BigInt>>, track: bool) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols, track)
    }

    fn from_rows_with_cols(w: Vec<Vec<BigInt>>, cols: usize, track: bool) -> Self {
        let rows = w.len();
        Reducer {
            w,
            rows,
            cols,
            t: track.then(|| identity_rows(rows)),
            s: track.then(|| identity_rows(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.w.swap(i, j);
        if let Some(t) = &mut self.t {
            for row in t.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.w.iter_mut() {
            row.swap(i, j);
        }
        if let Some(s) = &mut self.s {
            s.swap(i, j);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (d, s) = two_mut(&mut self.w, dst, src);
        axpy(d, s, q);
        if let Some(t) = &mut self.t {
            for row in t.iter_mut() {
                let delta = q * &row[dst];
                row[src] -= delta;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in self.w.iter_mut() {
            if !row[src].is_zero() {
                let delta = q * &row[src];
                row[dst] += delta;
            }
        }
        if let Some(s) = &mut self.s {
            let (srow, drow) = two_mut(s, src, dst);
            let neg = -q;
            axpy(srow, drow, &neg);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.w[i].iter_mut() {
            *v = -std::mem::take(v);
        }
        if let Some(t) = &mut self.t {
            for row in t.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    fn min_abs_in_block(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let v = &self.w[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, _, b)| v.magnitude() < b.magnitude()) {
                    best = Some((i, j, v));
                    if v.magnitude().is_one() {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut factors = Vec::new();
        let limit = self.rows.min(self.cols);
        for k in 0..limit {
            let Some((pi, pj)) = self.min_abs_in_block(k) else {
                break;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            self.settle_pivot(k);
            if self.w[k][k].is_negative() {
                self.negate_row(k);
            }
            factors.push(self.w[k][k].clone());
        }
        factors
    }

    /// Drives the block at `(k, k)` until the pivot is alone in its row and
    /// column and divides every entry of the trailing block.
    fn settle_pivot(&mut self, k: usize) {
        loop {
            let mut residue = false;
            for i in k + 1..self.rows {
                if self.w[i][k].is_zero() {
                    continue;
                }
                let q = -(&self.w[i][k] / &self.w[k][k]);
                self.add_row(i, k, &q);
                residue |= !self.w[i][k].is_zero();
            }
            for j in k + 1..self.cols {
                if self.w[k][j].is_zero() {
                    continue;
                }
                let q = -(&self.w[k][j] / &self.w[k][k]);
                self.add_col(j, k, &q);
                residue |= !self.w[k][j].is_zero();
            }
            if residue {
                self.promote_smaller_pivot(k);
                continue;
            }
            let pivot = self.w[k][k].clone();
            let offender = (k + 1..self.rows)
                .find(|&i| self.w[i][k + 1..].iter().any(|v| !(v % &pivot).is_zero()));
            match offender {
                Some(i) => self.add_row(k, i, &BigInt::one()),
                None => return,
            }
        }
    }

    fn promote_smaller_pivot(&mut self, k: usize) {
        let mut best: Option<(bool, usize)> = None;
        let mut best_abs = self.w[k][k].magnitude().clone();
        for i in k + 1..self.rows {
            let v = &self.w[i][k];
            if !v.is_zero() && v.magnitude() < &best_abs {
                best_abs = v.magnitude().clone();
                best = Some((true, i));
            }
        }
        for j in k + 1..self.cols {
            let v = &self.w[k][j];
            if !v.is_zero() && v.magnitude() < &best_abs {
                best_abs = v.magnitude().clone();
                best = Some((false, j));
            }
        }
        match best {
            Some((true, i)) => self.swap_rows(k, i),
            Some((false, j)) => self.swap_cols(k, j),
            None => unreachable!("a nonzero remainder is smaller than the pivot"),
        }
    }
}

fn two_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

/// dst += q * src
fn axpy(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += q * s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        let rebuilt = snf
            .t
            .checked_mul(&snf.d)
            .unwrap()
            .checked_mul(&snf.s)
            .unwrap();
        assert_eq!(&rebuilt, a);
        assert!(snf.t.determinant().unwrap().magnitude().is_one());
        assert!(snf.s.determinant().unwrap().magnitude().is_one());
        for w in snf.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert_eq!(snf.invariant_factors, invariant_factors(a));
        snf
    }

    #[test]
    fn identity_and_zero() {
        let snf = check(&IntegerMatrix::identity(2));
        assert_eq!(snf.d, IntegerMatrix::identity(2));
        assert_eq!(snf.invariant_factors, ints(&[1, 1]));

        let snf = check(&IntegerMatrix::zeros(2, 2));
        assert_eq!(snf.d, IntegerMatrix::zeros(2, 2));
        assert!(snf.invariant_factors.is_empty());
    }

    #[test]
    fn two_by_two_gcd_and_determinant() {
        let snf = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.invariant_factors, ints(&[2, 4]));
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (4, 0)] {
            let snf = check(&IntegerMatrix::zeros(r, c));
            assert_eq!(snf.t, IntegerMatrix::identity(r));
            assert_eq!(snf.s, IntegerMatrix::identity(c));
        }
    }

    #[test]
    fn divisibility_needs_row_mixing() {
        // diag(2, 3) is not in normal form; the chain must be 1 | 6.
        let snf = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.invariant_factors, ints(&[1, 6]));
        let snf = check(&m(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]));
        assert_eq!(snf.invariant_factors, ints(&[2, 2, 60]));
    }

    #[test]
    fn negative_and_rectangular() {
        let snf = check(&m(&[vec![-3, 0, 0], vec![0, 0, -9]]));
        assert_eq!(snf.invariant_factors, ints(&[3, 9]));
        check(&m(&[
            vec![1, 2, 3, 4],
            vec![5, 6, 7, 8],
            vec![9, 10, 11, 12],
        ]));
    }
}
