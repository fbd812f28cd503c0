//! Precubical sets, their integral chain complex, and homology with local
//! coefficients given by a homological system.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlinalg::{ChainComplex, FGAbelianGroup, IntegerMatrix};

/// Graded cells with face maps `d_i^eps : X_n -> X_{n-1}` for `1 <= i <= n`.
///
/// Faces are stored by index: `faces[n][k][i - 1][eps]` is the index in
/// degree `n - 1` of the `(i, eps)` face of the `k`-th cell of degree `n`.
/// Construction checks that every face is present and lands in the right
/// degree; the cubical identities are checked by [`PrecubicalSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecubicalSet {
    cells: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<[usize; 2]>>>,
    index: HashMap<String, (usize, usize)>,
}

pub type FaceKey = (usize, u8);

impl PrecubicalSet {
    /// Builds a set from index-based face tables. `faces[0]` must be empty.
    pub fn from_indices(cells: Vec<Vec<String>>, faces: Vec<Vec<Vec<[usize; 2]>>>) -> Result<Self> {
        if faces.len() != cells.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees of cells but {} degrees of faces",
                cells.len(),
                faces.len()
            )));
        }
        let index = build_index(&cells)?;
        for (n, per_cell) in faces.iter().enumerate() {
            if per_cell.len() != cells[n].len() {
                return Err(Error::DimensionMismatch(format!(
                    "degree {n} has {} cells but {} face rows",
                    cells[n].len(),
                    per_cell.len()
                )));
            }
            for (k, fs) in per_cell.iter().enumerate() {
                if fs.len() != n {
                    return Err(Error::DanglingFace(format!(
                        "cell `{}` of degree {n} has {} face pairs",
                        cells[n][k],
                        fs.len()
                    )));
                }
                for (i, pair) in fs.iter().enumerate() {
                    for (eps, &f) in pair.iter().enumerate() {
                        if f >= cells[n - 1].len() {
                            return Err(Error::DanglingFace(format!(
                                "face ({},{eps}) of `{}` points to index {f} in degree {}",
                                i + 1,
                                cells[n][k],
                                n - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(PrecubicalSet {
            cells,
            faces,
            index,
        })
    }

    /// Builds a set from cell names and, per cell, named faces keyed by `(i, eps)`.
    pub fn from_named(
        cells: Vec<Vec<String>>,
        faces: &HashMap<String, HashMap<FaceKey, String>>,
    ) -> Result<Self> {
        let index = build_index(&cells)?;
        for name in faces.keys() {
            if !index.contains_key(name) {
                return Err(Error::UnknownElement(name.clone()));
            }
        }
        let mut table: Vec<Vec<Vec<[usize; 2]>>> = cells
            .iter()
            .take(1)
            .map(|c| vec![Vec::new(); c.len()])
            .collect();
        for n in 1..cells.len() {
            let mut per_cell = Vec::with_capacity(cells[n].len());
            for name in &cells[n] {
                let given = faces.get(name);
                let mut pairs = Vec::with_capacity(n);
                for i in 1..=n {
                    let mut pair = [0; 2];
                    for eps in 0..2u8 {
                        let face = given.and_then(|m| m.get(&(i, eps))).ok_or_else(|| {
                            Error::DanglingFace(format!("cell `{name}` has no face ({i},{eps})"))
                        })?;
                        pair[eps as usize] = match index.get(face) {
                            Some(&(d, k)) if d == n - 1 => k,
                            Some(&(d, _)) => {
                                return Err(Error::DanglingFace(format!(
                                    "face ({i},{eps}) of `{name}` is `{face}` of degree {d}, expected {}",
                                    n - 1
                                )))
                            }
                            None => {
                                return Err(Error::DanglingFace(format!(
                                    "face ({i},{eps}) of `{name}` is undeclared cell `{face}`"
                                )))
                            }
                        };
                    }
                    pairs.push(pair);
                }
                if let Some(m) = given {
                    if let Some(&(i, eps)) = m.keys().find(|&&(i, eps)| i == 0 || i > n || eps > 1)
                    {
                        return Err(Error::DanglingFace(format!(
                            "cell `{name}` of degree {n} declares impossible face ({i},{eps})"
                        )));
                    }
                }
                per_cell.push(pairs);
            }
            table.push(per_cell);
        }
        if let Some((name, m)) = faces
            .iter()
            .find(|(name, m)| index[*name].0 == 0 && !m.is_empty())
        {
            return Err(Error::DanglingFace(format!(
                "vertex `{name}` declares {} faces",
                m.len()
            )));
        }
        Self::from_indices(cells, table)
    }

    /// Number of stored degrees (`top_degree + 1`, or 0 if empty).
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, n: usize) -> &[String] {
        self.cells.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// `(degree, index)` of a named cell.
    pub fn position(&self, name: &str) -> Option<(usize, usize)> {
        self.index.get(name).copied()
    }

    /// Index in degree `n - 1` of `d_i^eps` applied to cell `k` of degree `n`; `i` is 1-based.
    pub fn face(&self, n: usize, k: usize, i: usize, eps: u8) -> usize {
        self.faces[n][k][i - 1][eps as usize]
    }

    /// Checks `d_i^a d_j^b = d_{j-1}^b d_i^a` for all `i < j` on every cell.
    pub fn validate(&self) -> Result<()> {
        for n in 2..self.len() {
            for k in 0..self.cells[n].len() {
                for j in 2..=n {
                    for i in 1..j {
                        for alpha in 0..2u8 {
                            for beta in 0..2u8 {
                                let left = self.face(n - 1, self.face(n, k, j, beta), i, alpha);
                                let right =
                                    self.face(n - 1, self.face(n, k, i, alpha), j - 1, beta);
                                if left != right {
                                    return Err(Error::PrecubicalIdentityViolated {
                                        n,
                                        i,
                                        j,
                                        alpha,
                                        beta,
                                        cell: self.cells[n][k].clone(),
                                        left: self.cells[n - 2][left].clone(),
                                        right: self.cells[n - 2][right].clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `d_n = sum_i (-1)^i (d_i^1 - d_i^0)` on free abelian groups of cells.
    pub fn integral_complex(&self) -> Result<ChainComplex> {
        self.validate()?;
        let boundaries = (1..self.len())
            .into_par_iter()
            .map(|n| {
                let mut d = IntegerMatrix::zeros(self.cells[n - 1].len(), self.cells[n].len());
                for k in 0..self.cells[n].len() {
                    for i in 1..=n {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        d[(self.face(n, k, i, 1), k)] += sign;
                        d[(self.face(n, k, i, 0), k)] -= sign;
                    }
                }
                d
            })
            .collect();
        ChainComplex::new(self.cells.clone(), boundaries)
    }

    pub fn integral_homology(&self) -> Result<Vec<FGAbelianGroup>> {
        Ok(self.integral_complex()?.homology())
    }

    /// The same set with cells reordered: `perms[n][k]` is the new position
    /// of cell `k` of degree `n`.
    pub fn relabeled(&self, perms: &[Vec<usize>]) -> Result<Self> {
        let mut cells = self.cells.clone();
        let mut faces: Vec<Vec<Vec<[usize; 2]>>> = self
            .faces
            .iter()
            .map(|fs| vec![Vec::new(); fs.len()])
            .collect();
        for n in 0..self.len() {
            for k in 0..self.cells[n].len() {
                let to = perms[n][k];
                cells[n][to] = self.cells[n][k].clone();
                faces[n][to] = self.faces[n][k]
                    .iter()
                    .map(|pair| pair.map(|f| perms[n - 1][f]))
                    .collect();
            }
        }
        Self::from_indices(cells, faces)
    }
}

fn build_index(cells: &[Vec<String>]) -> Result<HashMap<String, (usize, usize)>> {
    let mut index = HashMap::new();
    for (n, names) in cells.iter().enumerate() {
        for (k, name) in names.iter().enumerate() {
            if index.insert(name.clone(), (n, k)).is_some() {
                return Err(Error::Duplicate(name.clone()));
            }
        }
    }
    Ok(index)
}

/// Local coefficients: a free group `Z^rank` on every cell and, for every
/// face `d_i^eps sigma`, a matrix `F(sigma) -> F(d_i^eps sigma)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologicalSystem {
    ranks: Vec<Vec<usize>>,
    maps: Vec<Vec<Vec<[IntegerMatrix; 2]>>>,
}

impl HomologicalSystem {
    /// `maps[n][k][i - 1][eps]` is the matrix for face `(i, eps)` of cell `k` in degree `n`.
    pub fn new(
        x: &PrecubicalSet,
        ranks: Vec<Vec<usize>>,
        maps: Vec<Vec<Vec<[IntegerMatrix; 2]>>>,
    ) -> Result<Self> {
        if ranks.len() != x.len() || maps.len() != x.len() {
            return Err(Error::RankMismatch(
                "coefficient data does not cover every degree".into(),
            ));
        }
        for n in 0..x.len() {
            if ranks[n].len() != x.cells[n].len() || maps[n].len() != x.cells[n].len() {
                return Err(Error::RankMismatch(format!(
                    "coefficient data does not cover every cell of degree {n}"
                )));
            }
            for k in 0..x.cells[n].len() {
                if maps[n][k].len() != n {
                    return Err(Error::RankMismatch(format!(
                        "cell `{}` needs {n} face map pairs",
                        x.cells[n][k]
                    )));
                }
                for i in 1..=n {
                    for eps in 0..2u8 {
                        let m = &maps[n][k][i - 1][eps as usize];
                        let target = ranks[n - 1][x.face(n, k, i, eps)];
                        if m.shape() != (target, ranks[n][k]) {
                            return Err(Error::RankMismatch(format!(
                                "map for face ({i},{eps}) of `{}` is {}x{}, expected {}x{}",
                                x.cells[n][k],
                                m.rows(),
                                m.cols(),
                                target,
                                ranks[n][k]
                            )));
                        }
                    }
                }
            }
        }
        let system = HomologicalSystem { ranks, maps };
        system.check_functorial(x)?;
        Ok(system)
    }

    /// The constant system: `Z` everywhere with identity maps.
    pub fn constant(x: &PrecubicalSet) -> Self {
        Self::per_eps(x, [1, 1])
    }

    /// The pair `(Z^0, Z^1)`: rank one everywhere, with `Z^0` sending front
    /// faces (`eps = 0`) by `1` and back faces by `0`, and `Z^1` the reverse.
    pub fn goubault_systems(x: &PrecubicalSet) -> (Self, Self) {
        (Self::per_eps(x, [1, 0]), Self::per_eps(x, [0, 1]))
    }

    fn per_eps(x: &PrecubicalSet, values: [i64; 2]) -> Self {
        let ranks = x.cells.iter().map(|c| vec![1; c.len()]).collect();
        let pair = values.map(IntegerMatrix::scalar);
        let maps = x
            .cells
            .iter()
            .enumerate()
            .map(|(n, c)| vec![vec![pair.clone(); n]; c.len()])
            .collect();
        HomologicalSystem { ranks, maps }
    }

    pub fn rank(&self, n: usize, k: usize) -> usize {
        self.ranks[n][k]
    }

    pub fn map(&self, n: usize, k: usize, i: usize, eps: u8) -> &IntegerMatrix {
        &self.maps[n][k][i - 1][eps as usize]
    }

    fn check_functorial(&self, x: &PrecubicalSet) -> Result<()> {
        for n in 2..x.len() {
            for k in 0..x.cells[n].len() {
                for j in 2..=n {
                    for i in 1..j {
                        for alpha in 0..2u8 {
                            for beta in 0..2u8 {
                                let via_j = x.face(n, k, j, beta);
                                let via_i = x.face(n, k, i, alpha);
                                let left = self
                                    .map(n - 1, via_j, i, alpha)
                                    .checked_mul(self.map(n, k, j, beta))?;
                                let right = self
                                    .map(n - 1, via_i, j - 1, beta)
                                    .checked_mul(self.map(n, k, i, alpha))?;
                                if left != right {
                                    return Err(Error::FunctorialityViolated(format!(
                                        "cell `{}`: faces ({i},{alpha}) after ({j},{beta}) and \
                                         ({},{beta}) after ({i},{alpha}) give different maps",
                                        x.cells[n][k],
                                        j - 1
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn offsets(&self, n: usize) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.ranks[n].len());
        for &r in &self.ranks[n] {
            out.push(acc);
            acc += r;
        }
        out
    }

    fn total_rank(&self, n: usize) -> usize {
        self.ranks[n].iter().sum()
    }
}

/// Chain complex `C_n(X, F) = (+)_{sigma in X_n} F(sigma)`, basis ordered by
/// cell and then by local basis vector.
pub fn coefficient_complex(x: &PrecubicalSet, f: &HomologicalSystem) -> Result<ChainComplex> {
    x.validate()?;
    if f.ranks.len() != x.len() || (0..x.len()).any(|n| f.ranks[n].len() != x.cells[n].len()) {
        return Err(Error::RankMismatch(
            "coefficient system belongs to a different precubical set".into(),
        ));
    }
    let labels = (0..x.len())
        .map(|n| {
            let mut out = Vec::with_capacity(f.total_rank(n));
            for (k, name) in x.cells[n].iter().enumerate() {
                match f.ranks[n][k] {
                    1 => out.push(name.clone()),
                    r => out.extend((0..r).map(|b| format!("{name}[{b}]"))),
                }
            }
            out
        })
        .collect();
    let boundaries = (1..x.len())
        .into_par_iter()
        .map(|n| {
            let cols = f.offsets(n);
            let rows = f.offsets(n - 1);
            let mut d = IntegerMatrix::zeros(f.total_rank(n - 1), f.total_rank(n));
            for k in 0..x.cells[n].len() {
                for i in 1..=n {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for eps in 0..2u8 {
                        let s = if eps == 1 { sign } else { -sign };
                        let target = x.face(n, k, i, eps);
                        d.add_block(rows[target], cols[k], f.map(n, k, i, eps), s);
                    }
                }
            }
            d
        })
        .collect();
    ChainComplex::new(labels, boundaries)
}
