//! Cubical subsets of Euclidean space built from elementary cubes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::precubical::PrecubicalSet;

/// Product of intervals `[l, l+1]` or `{l}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryCube {
    intervals: Vec<(i64, i64)>,
}

impl ElementaryCube {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if hi != lo && hi != lo + 1 {
                return Err(Error::BadInterval { lo, hi });
            }
        }
        Ok(ElementaryCube { intervals })
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    /// Ambient dimension.
    pub fn emb(&self) -> usize {
        self.intervals.len()
    }

    /// Number of nondegenerate intervals.
    pub fn dim(&self) -> usize {
        self.intervals.iter().filter(|(l, r)| l != r).count()
    }

    /// Collapses the `j`-th nondegenerate interval (1-based) to its lower end
    /// for `eps = 0` or its upper end for `eps = 1`.
    pub fn face(&self, j: usize, eps: u8) -> Result<ElementaryCube> {
        let max = self.dim();
        if j == 0 || j > max {
            return Err(Error::IndexOutOfRange { index: j, max });
        }
        let axis = self
            .intervals
            .iter()
            .enumerate()
            .filter(|(_, (l, r))| l != r)
            .nth(j - 1)
            .map(|(axis, _)| axis)
            .expect("j is within the nondegenerate count");
        let mut intervals = self.intervals.clone();
        let (l, r) = intervals[axis];
        let p = if eps == 0 { l } else { r };
        intervals[axis] = (p, p);
        Ok(ElementaryCube { intervals })
    }

    pub fn translated(&self, offset: &[i64]) -> ElementaryCube {
        ElementaryCube {
            intervals: self
                .intervals
                .iter()
                .zip(offset)
                .map(|(&(l, r), &o)| (l + o, r + o))
                .collect(),
        }
    }
}

impl fmt::Display for ElementaryCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, r)) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            if l == r {
                write!(f, "{{{l}}}")?;
            } else {
                write!(f, "[{l},{r}]")?;
            }
        }
        Ok(())
    }
}

/// Face-closed set of elementary cubes of a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanCubicalSet {
    ambient_dim: usize,
    cubes: BTreeSet<ElementaryCube>,
}

impl EuclideanCubicalSet {
    /// All elementary cubes contained in the union of the given integer boxes.
    pub fn from_generators(ambient_dim: usize, boxes: &[Vec<(i64, i64)>]) -> Result<Self> {
        let mut cubes = BTreeSet::new();
        for b in boxes {
            if b.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "box has {} intervals in ambient dimension {ambient_dim}",
                    b.len()
                )));
            }
            let mut per_axis = Vec::with_capacity(ambient_dim);
            for &(lo, hi) in b {
                if hi < lo {
                    return Err(Error::BadInterval { lo, hi });
                }
                let mut elementary: Vec<(i64, i64)> = (lo..=hi).map(|p| (p, p)).collect();
                elementary.extend((lo..hi).map(|p| (p, p + 1)));
                per_axis.push(elementary);
            }
            let mut acc: Vec<Vec<(i64, i64)>> = vec![Vec::new()];
            for options in &per_axis {
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |&iv| {
                            let mut next = prefix.clone();
                            next.push(iv);
                            next
                        })
                    })
                    .collect();
            }
            cubes.extend(
                acc.into_iter()
                    .map(|intervals| ElementaryCube { intervals }),
            );
        }
        Ok(EuclideanCubicalSet { ambient_dim, cubes })
    }

    /// Closes a list of elementary cubes under faces.
    pub fn from_cubes(ambient_dim: usize, generators: &[ElementaryCube]) -> Result<Self> {
        let mut cubes = BTreeSet::new();
        let mut stack = Vec::new();
        for q in generators {
            if q.emb() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "cube {q} does not live in ambient dimension {ambient_dim}"
                )));
            }
            stack.push(q.clone());
        }
        while let Some(q) = stack.pop() {
            for j in 1..=q.dim() {
                for eps in 0..2 {
                    let f = q.face(j, eps)?;
                    if !cubes.contains(&f) {
                        stack.push(f);
                    }
                }
            }
            cubes.insert(q);
        }
        Ok(EuclideanCubicalSet { ambient_dim, cubes })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cubes(&self) -> impl Iterator<Item = &ElementaryCube> {
        self.cubes.iter()
    }

    /// `K_m`, lexicographically ordered.
    pub fn cubes_of_dim(&self, m: usize) -> Vec<&ElementaryCube> {
        self.cubes.iter().filter(|q| q.dim() == m).collect()
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cubes.iter().map(ElementaryCube::dim).max()
    }

    pub fn translated(&self, offset: &[i64]) -> Self {
        EuclideanCubicalSet {
            ambient_dim: self.ambient_dim,
            cubes: self.cubes.iter().map(|q| q.translated(offset)).collect(),
        }
    }

    pub fn to_precubical(&self) -> PrecubicalSet {
        let top = match self.top_dim() {
            Some(t) => t,
            None => return PrecubicalSet::from_indices(Vec::new(), Vec::new()).expect("empty set"),
        };
        let by_dim: Vec<Vec<&ElementaryCube>> = (0..=top).map(|m| self.cubes_of_dim(m)).collect();
        let position: Vec<HashMap<&ElementaryCube, usize>> = by_dim
            .iter()
            .map(|qs| qs.iter().enumerate().map(|(k, q)| (*q, k)).collect())
            .collect();
        let mut faces = Vec::with_capacity(top + 1);
        for (m, qs) in by_dim.iter().enumerate() {
            let per_cube = qs
                .iter()
                .map(|q| {
                    (1..=m)
                        .map(|j| {
                            [0u8, 1].map(|eps| {
                                let f = q.face(j, eps).expect("j is a valid face index");
                                position[m - 1][&f]
                            })
                        })
                        .collect()
                })
                .collect();
            faces.push(per_cube);
        }
        let cells = by_dim
            .iter()
            .map(|qs| qs.iter().map(ToString::to_string).collect())
            .collect();
        PrecubicalSet::from_indices(cells, faces).expect("elementary cubes are face-closed")
    }
}
