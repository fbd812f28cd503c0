//! Simplicial schemata, finite posets and their order complexes.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlinalg::{ChainComplex, FGAbelianGroup, IntegerMatrix};

/// Downward-closed family of nonempty subsets of an ordered vertex set.
///
/// Faces are stored as ascending lists of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSchema {
    vertices: Vec<String>,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialSchema {
    /// Checks that every face is a nonempty set of known vertices and that
    /// the family is downward closed.
    pub fn new(vertices: Vec<String>, faces: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        check_distinct(&vertices)?;
        let mut set = BTreeSet::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                return Err(Error::NotDownwardClosed(
                    "the empty set is not a face".into(),
                ));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::UnknownElement(format!("vertex #{v}")));
            }
            set.insert(f);
        }
        for f in &set {
            if f.len() < 2 {
                continue;
            }
            for i in 0..f.len() {
                let mut g = f.clone();
                g.remove(i);
                if !set.contains(&g) {
                    return Err(Error::NotDownwardClosed(format!(
                        "{} is a face but {} is not",
                        name_of(&vertices, f),
                        name_of(&vertices, &g)
                    )));
                }
            }
        }
        Ok(SimplicialSchema {
            vertices,
            faces: set,
        })
    }

    /// The downward closure of the given faces.
    pub fn from_maximal_faces(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut closure = BTreeSet::new();
        for f in maximal {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() > 24 {
                return Err(Error::DimensionMismatch(format!(
                    "face with {} vertices is too large to close",
                    f.len()
                )));
            }
            for mask in 1u32..(1 << f.len()) {
                closure.insert(
                    (0..f.len())
                        .filter(|k| mask & (1 << k) != 0)
                        .map(|k| f[k])
                        .collect::<Vec<_>>(),
                );
            }
        }
        Self::new(vertices, closure)
    }

    /// Every nonempty subset of the vertices.
    pub fn full_simplex(vertices: Vec<String>) -> Result<Self> {
        let all: Vec<usize> = (0..vertices.len()).collect();
        if all.is_empty() {
            return Self::new(vertices, Vec::new());
        }
        Self::from_maximal_faces(vertices, &[all])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    /// Faces with `n + 1` vertices, lexicographically ordered.
    pub fn faces_of_dim(&self, n: usize) -> Vec<&Vec<usize>> {
        self.faces.iter().filter(|f| f.len() == n + 1).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(Vec::len).max().map(|k| k - 1)
    }

    /// The same family over vertices reordered by `perm` (vertex `v` goes to `perm[v]`).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        for (v, &to) in perm.iter().enumerate() {
            vertices[to] = self.vertices[v].clone();
        }
        let faces = self
            .faces
            .iter()
            .map(|f| f.iter().map(|&v| perm[v]).collect());
        Self::new(vertices, faces)
    }

    /// Unreduced chain complex on ascending tuples with `d = sum_i (-1)^i (drop x_i)`.
    pub fn complex(&self) -> ChainComplex {
        let top = match self.dim() {
            Some(t) => t,
            None => return ChainComplex::new(Vec::new(), Vec::new()).expect("empty complex"),
        };
        let by_dim: Vec<Vec<&Vec<usize>>> = (0..=top).map(|n| self.faces_of_dim(n)).collect();
        let position: Vec<HashMap<&[usize], usize>> = by_dim
            .iter()
            .map(|fs| {
                fs.iter()
                    .enumerate()
                    .map(|(k, f)| (f.as_slice(), k))
                    .collect()
            })
            .collect();
        let boundaries = (1..=top)
            .into_par_iter()
            .map(|n| {
                let mut d = IntegerMatrix::zeros(by_dim[n - 1].len(), by_dim[n].len());
                let mut g = Vec::with_capacity(n);
                for (k, f) in by_dim[n].iter().enumerate() {
                    for i in 0..f.len() {
                        g.clear();
                        g.extend(
                            f.iter()
                                .enumerate()
                                .filter(|&(j, _)| j != i)
                                .map(|(_, &v)| v),
                        );
                        let row = position[n - 1][g.as_slice()];
                        d[(row, k)] += if i % 2 == 0 { 1 } else { -1 };
                    }
                }
                d
            })
            .collect();
        let labels = by_dim
            .iter()
            .map(|fs| fs.iter().map(|f| name_of(&self.vertices, f)).collect())
            .collect();
        ChainComplex::new(labels, boundaries).expect("simplicial boundaries compose to zero")
    }

    pub fn homology(&self) -> Vec<FGAbelianGroup> {
        self.complex().homology()
    }
}

pub fn schema_complex(k: &SimplicialSchema) -> ChainComplex {
    k.complex()
}

fn name_of(vertices: &[String], face: &[usize]) -> String {
    let parts: Vec<&str> = face.iter().map(|&v| vertices[v].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn check_distinct(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Duplicate(n.clone()));
        }
    }
    Ok(())
}

/// Finite partially ordered set with the order stored as a dense relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// `leq[x][y]` means `x <= y`. Reflexivity, antisymmetry and transitivity are checked.
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        check_distinct(&elements)?;
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "order relation must be {n}x{n}"
            )));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::NotAPoset(format!(
                    "`{}` is not below itself",
                    elements[x]
                )));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::NotAPoset(format!(
                        "`{}` and `{}` are below each other",
                        elements[x], elements[y]
                    )));
                }
                if !leq[x][y] {
                    continue;
                }
                if let Some(z) = (0..n).find(|&z| leq[y][z] && !leq[x][z]) {
                    return Err(Error::NotAPoset(format!(
                        "`{}` <= `{}` <= `{}` but not `{}` <= `{}`",
                        elements[x], elements[y], elements[z], elements[x], elements[z]
                    )));
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// Reflexive-transitive closure of the given pairs `(x, y)` meaning `x <= y`.
    pub fn from_relation(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::UnknownElement(format!("#{}", x.max(y))));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::new(elements, leq)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    /// Schema of strictly increasing chains.
    pub fn order_complex(&self) -> SimplicialSchema {
        let n = self.len();
        let above: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).filter(|&y| self.lt(x, y)).collect())
            .collect();
        let mut faces = Vec::new();
        let mut chain = Vec::new();
        for x in 0..n {
            chain.push(x);
            self.extend_chains(&above, &mut chain, &mut faces);
            chain.pop();
        }
        SimplicialSchema::new(self.elements.clone(), faces)
            .expect("chains are closed under removal")
    }

    fn extend_chains(
        &self,
        above: &[Vec<usize>],
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(chain.clone());
        let last = *chain.last().expect("chain is nonempty");
        for &y in &above[last] {
            chain.push(y);
            self.extend_chains(above, chain, out);
            chain.pop();
        }
    }

    pub fn homology(&self) -> Vec<FGAbelianGroup> {
        self.order_complex().homology()
    }

    /// True iff the homology is that of a point.
    pub fn is_acyclic(&self) -> bool {
        let h = self.homology();
        !h.is_empty()
            && h[0] == FGAbelianGroup::free(1)
            && h[1..].iter().all(FGAbelianGroup::is_trivial)
    }

    /// The subposet on the given elements.
    pub fn restricted(&self, keep: &[usize]) -> Result<Self> {
        let elements = keep.iter().map(|&x| self.elements[x].clone()).collect();
        let leq = keep
            .iter()
            .map(|&x| keep.iter().map(|&y| self.leq[x][y]).collect())
            .collect();
        Self::new(elements, leq)
    }
}

pub fn order_complex(p: &FinitePoset) -> SimplicialSchema {
    p.order_complex()
}

pub fn poset_homology(p: &FinitePoset) -> Vec<FGAbelianGroup> {
    p.homology()
}

pub fn is_acyclic(p: &FinitePoset) -> bool {
    p.is_acyclic()
}
