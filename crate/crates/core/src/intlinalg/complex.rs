use rayon::prelude::*;

use super::group::FGAbelianGroup;
use super::matrix::{parse_matrix, IntegerMatrix, TextLines};
use super::smith::invariant_factors;
use super::sparse::product_is_zero;
use crate::error::{Error, Result};

/// Homology `Ker(beta) / Im(alpha)` of `Z^n --alpha--> Z^m --beta--> Z^p`.
///
/// `alpha` is `m x n` and `beta` is `p x m`.
pub fn homology_of_pair(alpha: &IntegerMatrix, beta: &IntegerMatrix) -> Result<FGAbelianGroup> {
    if alpha.rows() != beta.cols() {
        return Err(Error::DimensionMismatch(format!(
            "alpha is {}x{} but beta is {}x{}",
            alpha.rows(),
            alpha.cols(),
            beta.rows(),
            beta.cols()
        )));
    }
    if !product_is_zero(beta, alpha) {
        return Err(Error::CompositionNotZero { degree: None });
    }
    Ok(pair_unchecked(alpha, beta))
}

fn pair_unchecked(alpha: &IntegerMatrix, beta: &IntegerMatrix) -> FGAbelianGroup {
    let factors = invariant_factors(alpha);
    let beta_rank = invariant_factors(beta).len();
    let free = alpha.rows() - factors.len() - beta_rank;
    FGAbelianGroup::from_invariant_factors(free, &factors)
}

/// Finite chain complex of free abelian groups `C_0 <- C_1 <- ... <- C_top`.
///
/// Each degree carries basis labels; `d_n : C_n -> C_{n-1}` is stored for
/// `1 <= n <= top`. Construction checks shapes and `d_{n-1} d_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    labels: Vec<Vec<String>>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` is `d_{k+1}`; there must be one fewer boundary than degrees.
    pub fn new(labels: Vec<Vec<String>>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != labels.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} boundaries, got {}",
                labels.len(),
                labels.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let n = k + 1;
            let expected = (labels[n - 1].len(), labels[n].len());
            if d.shape() != expected {
                return Err(Error::DimensionMismatch(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    expected.0,
                    expected.1
                )));
            }
        }
        for (k, pair) in boundaries.windows(2).enumerate() {
            if !product_is_zero(&pair[0], &pair[1]) {
                return Err(Error::CompositionNotZero {
                    degree: Some(k + 2),
                });
            }
        }
        Ok(ChainComplex { labels, boundaries })
    }

    /// Complex with generated labels `e0, e1, ...` in each degree.
    pub fn from_ranks(ranks: &[usize], boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        let labels = ranks
            .iter()
            .map(|&r| (0..r).map(|i| format!("e{i}")).collect())
            .collect();
        Self::new(labels, boundaries)
    }

    /// Number of stored degrees; the complex is zero from this degree on.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Highest stored degree, `None` for the empty complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.labels.len().checked_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.labels.get(n).map_or(&[], Vec::as_slice)
    }

    /// `d_n`, for `1 <= n <= top`.
    pub fn boundary(&self, n: usize) -> Option<&IntegerMatrix> {
        n.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }

    /// Incoming boundary `d_{n+1}`, with the zero map above the top degree.
    fn incoming(&self, n: usize) -> IntegerMatrix {
        self.boundary(n + 1)
            .cloned()
            .unwrap_or_else(|| IntegerMatrix::zeros(self.rank(n), 0))
    }

    /// Outgoing boundary `d_n`, with `d_0 : C_0 -> 0`.
    fn outgoing(&self, n: usize) -> IntegerMatrix {
        self.boundary(n)
            .cloned()
            .unwrap_or_else(|| IntegerMatrix::zeros(0, self.rank(n)))
    }

    /// `H_n` for a single degree.
    pub fn homology_at(&self, n: usize) -> FGAbelianGroup {
        if n >= self.len() {
            return FGAbelianGroup::trivial();
        }
        pair_unchecked(&self.incoming(n), &self.outgoing(n))
    }

    /// `H_0 ..= H_max_degree`; degrees above the top are zero.
    pub fn homology_up_to(&self, max_degree: usize) -> Vec<FGAbelianGroup> {
        (0..=max_degree)
            .into_par_iter()
            .map(|n| self.homology_at(n))
            .collect()
    }

    /// `H_0 ..= H_top`.
    pub fn homology(&self) -> Vec<FGAbelianGroup> {
        match self.top_degree() {
            Some(top) => self.homology_up_to(top),
            None => Vec::new(),
        }
    }
}

impl ChainComplex {
    /// Text stream: a `# ranks r_0 r_1 ...` line, then each `d_n` in the
    /// matrix text format under a `# d_n` comment.
    pub fn to_text(&self) -> String {
        let ranks: Vec<String> = self.ranks().iter().map(ToString::to_string).collect();
        let mut out = format!("# ranks {}\n", ranks.join(" "));
        for (k, d) in self.boundaries.iter().enumerate() {
            out.push_str(&format!("# d_{}\n{d}", k + 1));
        }
        out
    }

    /// Reads the stream written by [`ChainComplex::to_text`]. Without a
    /// `# ranks` line the ranks are taken from the matrix shapes.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = TextLines::new(s);
        let mut ranks: Option<Vec<usize>> = None;
        if let Some((ln, line)) = lines.next_raw() {
            let rest = line.trim_start().strip_prefix('#').map(str::trim_start);
            match rest.and_then(|r| r.strip_prefix("ranks")) {
                Some(list) => {
                    let parsed = list
                        .split_whitespace()
                        .map(|t| {
                            t.parse().map_err(|_| Error::Parse {
                                line: ln,
                                column: line.find(t).map_or(1, |c| c + 1),
                                message: format!("invalid rank `{t}`"),
                            })
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    ranks = Some(parsed);
                }
                None => lines.push_back((ln, line)),
            }
        }
        let mut boundaries = Vec::new();
        while let Some(item) = lines.next_content() {
            lines.push_back(item);
            boundaries.push(parse_matrix(&mut lines)?);
        }
        let ranks = match ranks {
            Some(r) => r,
            None if boundaries.is_empty() => {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: "empty complex needs a `# ranks` line".into(),
                })
            }
            None => std::iter::once(boundaries[0].rows())
                .chain(boundaries.iter().map(IntegerMatrix::cols))
                .collect(),
        };
        Self::from_ranks(&ranks, boundaries)
    }
}

/// Homology of every degree up to `max_degree`.
pub fn homology_of_complex(complex: &ChainComplex, max_degree: usize) -> Vec<FGAbelianGroup> {
    complex.homology_up_to(max_degree)
}
