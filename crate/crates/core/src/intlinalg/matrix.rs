use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, stored row-major.
///
/// Zero-row and zero-column matrices are legal; they describe maps into or
/// out of the zero group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries; fails if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries given for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a list of rows. An empty list gives the 0x0 matrix.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    cols
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self::from_vec(rows.len(), cols, entries)
    }

    /// 1x1 matrix.
    pub fn scalar<T: Into<BigInt>>(value: T) -> Self {
        IntegerMatrix {
            rows: 1,
            cols: 1,
            entries: vec![value.into()],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out.entries[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &IntegerMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntegerMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scaled(&self, k: &BigInt) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    /// Adds `sign * block` into the window whose top-left corner is `(row, col)`.
    pub(crate) fn add_block(&mut self, row: usize, col: usize, block: &IntegerMatrix, sign: i32) {
        debug_assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = &block[(r, c)];
                if v.is_zero() {
                    continue;
                }
                let e = &mut self.entries[(row + r) * self.cols + col + c];
                if sign >= 0 {
                    *e += v;
                } else {
                    *e -= v;
                }
            }
        }
    }

    /// Permutes rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntegerMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(row_perm[r], col_perm[c])] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Largest absolute value among the entries (zero for empty matrices).
    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Text format: a `rows cols` header line followed by one whitespace-separated
/// row per line.
impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntegerMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = TextLines::new(s);
        let m = parse_matrix(&mut lines)?;
        if let Some((line, text)) = lines.next_content() {
            return Err(parse_error(
                line,
                1,
                format!("trailing content `{}`", text.trim()),
            ));
        }
        Ok(m)
    }
}

/// Line iterator over the matrix text format that skips blank lines and
/// `#` comments while tracking 1-based line numbers.
pub(crate) struct TextLines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    pending: Option<(usize, &'a str)>,
}

impl<'a> TextLines<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        TextLines {
            inner: s.lines().enumerate(),
            pending: None,
        }
    }

    /// Next raw line, comments included.
    pub(crate) fn next_raw(&mut self) -> Option<(usize, &'a str)> {
        if let Some(p) = self.pending.take() {
            return Some(p);
        }
        loop {
            let (i, line) = self.inner.next()?;
            if !line.trim().is_empty() {
                return Some((i + 1, line));
            }
        }
    }

    pub(crate) fn push_back(&mut self, item: (usize, &'a str)) {
        self.pending = Some(item);
    }

    pub(crate) fn next_content(&mut self) -> Option<(usize, &'a str)> {
        loop {
            let (n, line) = self.next_raw()?;
            if !line.trim_start().starts_with('#') {
                return Some((n, line));
            }
        }
    }
}

fn parse_error(line: usize, column: usize, message: String) -> Error {
    Error::Parse {
        line,
        column,
        message,
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    line.split_whitespace().map(move |tok| {
        let start = offset + line[offset..].find(tok).unwrap_or(0);
        offset = start + tok.len();
        (start + 1, tok)
    })
}

pub(crate) fn parse_matrix(lines: &mut TextLines<'_>) -> Result<IntegerMatrix> {
    let (hline, header) = lines
        .next_content()
        .ok_or_else(|| parse_error(1, 1, "missing `rows cols` header".into()))?;
    let dims: Vec<(usize, &str)> = tokens(header).collect();
    if dims.len() != 2 {
        return Err(parse_error(hline, 1, "header must be `rows cols`".into()));
    }
    let mut shape = [0usize; 2];
    for (k, (col, tok)) in dims.iter().enumerate() {
        shape[k] = tok
            .parse()
            .map_err(|_| parse_error(hline, *col, format!("invalid dimension `{tok}`")))?;
    }
    let (rows, cols) = (shape[0], shape[1]);
    let mut entries = Vec::with_capacity(rows * cols);
    // A row of a 0-column matrix is an empty line, which the reader skips.
    if cols > 0 {
        for r in 0..rows {
            let (ln, line) = lines
                .next_content()
                .ok_or_else(|| parse_error(hline, 1, format!("expected {rows} rows, found {r}")))?;
            let row: Vec<(usize, &str)> = tokens(line).collect();
            if row.len() != cols {
                return Err(parse_error(
                    ln,
                    1,
                    format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            for (col, tok) in row {
                let v: BigInt = tok
                    .parse()
                    .map_err(|_| parse_error(ln, col, format!("invalid integer `{tok}`")))?;
                entries.push(v);
            }
        }
    }
    IntegerMatrix::from_vec(rows, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = IntegerMatrix::from_rows(&[vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn multiply_and_shapes() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let b = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.checked_mul(&b).unwrap(), m(&[vec![2, 1], vec![4, 3]]));
        assert!(a.checked_mul(&IntegerMatrix::zeros(3, 1)).is_err());
        let e = IntegerMatrix::zeros(2, 0)
            .checked_mul(&IntegerMatrix::zeros(0, 3))
            .unwrap();
        assert_eq!(e, IntegerMatrix::zeros(2, 3));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            m(&[vec![2, 4], vec![6, 8]]).determinant().unwrap(),
            BigInt::from(-8)
        );
        assert_eq!(
            m(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]])
                .determinant()
                .unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(
            IntegerMatrix::zeros(0, 0).determinant().unwrap(),
            BigInt::one()
        );
        assert_eq!(
            m(&[vec![1, 2], vec![2, 4]]).determinant().unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn text_format_round_trip() {
        let a = m(&[vec![-1, 0], vec![1, 1], vec![0, -1]]);
        let text = a.to_string();
        assert_eq!(text, "3 2\n-1 0\n1 1\n0 -1\n");
        assert_eq!(text.parse::<IntegerMatrix>().unwrap(), a);
        assert_eq!(
            "0 3\n".parse::<IntegerMatrix>().unwrap(),
            IntegerMatrix::zeros(0, 3)
        );
        assert_eq!(
            "2 0\n".parse::<IntegerMatrix>().unwrap(),
            IntegerMatrix::zeros(2, 0)
        );
    }

    #[test]
    fn text_format_errors_carry_position() {
        let err = "2 2\n1 2\n3 x\n".parse::<IntegerMatrix>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "invalid integer `x`".into()
            }
        );
        assert!(matches!(
            "2 2\n1 2\n".parse::<IntegerMatrix>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn huge_entries_parse() {
        let text = "1 1\n123456789012345678901234567890\n";
        let a: IntegerMatrix = text.parse().unwrap();
        assert_eq!(a[(0, 0)].to_string(), "123456789012345678901234567890");
    }
}
