//! Right sets over a trace monoid, their precubical set of cells `(x, clique)`,
//! and homology with coefficients in a system over the set.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlinalg::{ChainComplex, FGAbelianGroup, IntegerMatrix};
use crate::precubical::PrecubicalSet;
use crate::trace::IndependenceAlphabet;

/// Finite set with a right action of the generators, optionally pointed by an
/// absorbing element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightMSet {
    carrier: Vec<String>,
    point: Option<usize>,
    /// `action[x][a]` is `x . a`.
    action: Vec<Vec<usize>>,
}

impl RightMSet {
    /// Checks totality, absorption of the point and `(x.a).b = (x.b).a` for independent `a, b`.
    pub fn new(
        alphabet: &IndependenceAlphabet,
        carrier: Vec<String>,
        point: Option<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = carrier.len();
        let mut seen = HashMap::new();
        for (k, x) in carrier.iter().enumerate() {
            if seen.insert(x.as_str(), k).is_some() {
                return Err(Error::Duplicate(x.clone()));
            }
        }
        if let Some(p) = point {
            if p >= n {
                return Err(Error::UnknownElement(format!("#{p}")));
            }
        }
        if action.len() != n {
            return Err(Error::ActionNotCompatible(format!(
                "action given for {} elements, carrier has {n}",
                action.len()
            )));
        }
        for (x, row) in action.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::ActionNotCompatible(format!(
                    "`{}` has {} transitions, alphabet has {} events",
                    carrier[x],
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&y) = row.iter().find(|&&y| y >= n) {
                return Err(Error::UnknownElement(format!("#{y}")));
            }
        }
        if let Some(p) = point {
            if let Some(a) = (0..alphabet.len()).find(|&a| action[p][a] != p) {
                return Err(Error::ActionNotCompatible(format!(
                    "base point `{}` is not absorbing under `{}`",
                    carrier[p],
                    alphabet.event(a)
                )));
            }
        }
        for (a, b) in alphabet.independent_pairs() {
            for x in 0..n {
                let ab = action[action[x][a]][b];
                let ba = action[action[x][b]][a];
                if ab != ba {
                    return Err(Error::ActionNotCompatible(format!(
                        "`{}` . {} . {} = `{}` but `{}` . {} . {} = `{}`",
                        carrier[x],
                        alphabet.event(a),
                        alphabet.event(b),
                        carrier[ab],
                        carrier[x],
                        alphabet.event(b),
                        alphabet.event(a),
                        carrier[ba]
                    )));
                }
            }
        }
        Ok(RightMSet {
            carrier,
            point,
            action,
        })
    }

    /// The one-point set.
    pub fn one_point(alphabet: &IndependenceAlphabet) -> Self {
        RightMSet {
            carrier: vec!["*".into()],
            point: Some(0),
            action: vec![vec![0; alphabet.len()]],
        }
    }

    /// `{x0, *}` with every generator sending `x0` to `*`.
    pub fn two_point(alphabet: &IndependenceAlphabet) -> Self {
        RightMSet {
            carrier: vec!["x0".into(), "*".into()],
            point: Some(1),
            action: vec![vec![1; alphabet.len()], vec![1; alphabet.len()]],
        }
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn point(&self) -> Option<usize> {
        self.point
    }

    pub fn act(&self, x: usize, a: usize) -> usize {
        self.action[x][a]
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.carrier
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }
}

/// Coefficients over a right set: `Z^rank(x)` on each element and a matrix
/// `F(x -> x.a) : Z^rank(x) -> Z^rank(x.a)` per element and generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MSetSystem {
    ranks: Vec<usize>,
    maps: Vec<Vec<IntegerMatrix>>,
}

impl MSetSystem {
    pub fn new(
        alphabet: &IndependenceAlphabet,
        x: &RightMSet,
        ranks: Vec<usize>,
        maps: Vec<Vec<IntegerMatrix>>,
    ) -> Result<Self> {
        if ranks.len() != x.len() || maps.len() != x.len() {
            return Err(Error::RankMismatch(format!(
                "coefficients given for {} elements, carrier has {}",
                ranks.len().min(maps.len()),
                x.len()
            )));
        }
        for s in 0..x.len() {
            if maps[s].len() != alphabet.len() {
                return Err(Error::RankMismatch(format!(
                    "`{}` has {} maps, alphabet has {} events",
                    x.carrier[s],
                    maps[s].len(),
                    alphabet.len()
                )));
            }
            for a in 0..alphabet.len() {
                let expected = (ranks[x.act(s, a)], ranks[s]);
                let m = &maps[s][a];
                if m.shape() != expected {
                    return Err(Error::RankMismatch(format!(
                        "map for `{}` under `{}` is {}x{}, expected {}x{}",
                        x.carrier[s],
                        alphabet.event(a),
                        m.rows(),
                        m.cols(),
                        expected.0,
                        expected.1
                    )));
                }
            }
        }
        for (a, b) in alphabet.independent_pairs() {
            for s in 0..x.len() {
                let (sa, sb) = (x.act(s, a), x.act(s, b));
                let left = maps[sa][b].checked_mul(&maps[s][a])?;
                let right = maps[sb][a].checked_mul(&maps[s][b])?;
                if left != right {
                    return Err(Error::FunctorialityViolated(format!(
                        "paths `{}` . {} . {} and `{}` . {} . {} give different maps",
                        x.carrier[s],
                        alphabet.event(a),
                        alphabet.event(b),
                        x.carrier[s],
                        alphabet.event(b),
                        alphabet.event(a)
                    )));
                }
            }
        }
        Ok(MSetSystem { ranks, maps })
    }

    /// `Z` everywhere with identity maps.
    pub fn constant(alphabet: &IndependenceAlphabet, x: &RightMSet) -> Self {
        MSetSystem {
            ranks: vec![1; x.len()],
            maps: vec![vec![IntegerMatrix::identity(1); alphabet.len()]; x.len()],
        }
    }

    /// `Z` on the given elements and `0` elsewhere, with identity maps where
    /// both ends are nonzero.
    pub fn supported_on(
        alphabet: &IndependenceAlphabet,
        x: &RightMSet,
        support: &[usize],
    ) -> Result<Self> {
        let ranks: Vec<usize> = (0..x.len())
            .map(|s| usize::from(support.contains(&s)))
            .collect();
        let maps = (0..x.len())
            .map(|s| {
                (0..alphabet.len())
                    .map(|a| {
                        let t = x.act(s, a);
                        if ranks[s] == 1 && ranks[t] == 1 {
                            IntegerMatrix::identity(1)
                        } else {
                            IntegerMatrix::zeros(ranks[t], ranks[s])
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(alphabet, x, ranks, maps)
    }

    /// `Z` at `x0` and `0` elsewhere.
    pub fn point_system(alphabet: &IndependenceAlphabet, x: &RightMSet, x0: usize) -> Result<Self> {
        Self::supported_on(alphabet, x, &[x0])
    }

    /// The constant system with the base point's group replaced by `0`.
    pub fn excluding_point(alphabet: &IndependenceAlphabet, x: &RightMSet) -> Result<Self> {
        let support: Vec<usize> = (0..x.len()).filter(|&s| Some(s) != x.point).collect();
        Self::supported_on(alphabet, x, &support)
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn map(&self, x: usize, a: usize) -> &IntegerMatrix {
        &self.maps[x][a]
    }
}

fn cell_name(alphabet: &IndependenceAlphabet, x: &RightMSet, s: usize, clique: &[usize]) -> String {
    format!("({},{})", x.carrier[s], alphabet.word_name(clique))
}

/// Cells `(x, a_1 ... a_n)` over cliques; `d_i^0` drops `a_i` and keeps `x`,
/// `d_i^1` drops `a_i` and moves `x` to `x . a_i`. Elements outer, cliques inner.
pub fn q_precubical(alphabet: &IndependenceAlphabet, x: &RightMSet) -> PrecubicalSet {
    let all = alphabet.all_cliques();
    let position: Vec<HashMap<&[usize], usize>> = all
        .iter()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(k, c)| (c.as_slice(), k))
                .collect()
        })
        .collect();
    let cells = all
        .iter()
        .map(|cs| {
            (0..x.len())
                .flat_map(|s| cs.iter().map(move |c| (s, c)))
                .map(|(s, c)| cell_name(alphabet, x, s, c))
                .collect()
        })
        .collect();
    let faces = all
        .iter()
        .enumerate()
        .map(|(n, cs)| {
            let below = all.get(n.wrapping_sub(1)).map_or(0, Vec::len);
            (0..x.len())
                .flat_map(|s| cs.iter().map(move |c| (s, c)))
                .map(|(s, c)| {
                    (0..n)
                        .map(|i| {
                            let mut d = c.clone();
                            d.remove(i);
                            let k = position[n - 1][d.as_slice()];
                            [s * below + k, x.act(s, c[i]) * below + k]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    PrecubicalSet::from_indices(cells, faces).expect("cells of a right set")
}

/// `C_n = (+)_{(x, n-clique)} F(x)`; at position `s` the target
/// `(x . a_s, drop)` receives `(-1)^s F(x -> x . a_s)` and `(x, drop)`
/// receives `-(-1)^s id`.
pub fn mset_complex(
    alphabet: &IndependenceAlphabet,
    x: &RightMSet,
    f: &MSetSystem,
) -> Result<ChainComplex> {
    if f.ranks.len() != x.len() {
        return Err(Error::RankMismatch(
            "coefficient system belongs to a different set".into(),
        ));
    }
    let all = alphabet.all_cliques();
    let position: Vec<HashMap<&[usize], usize>> = all
        .iter()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(k, c)| (c.as_slice(), k))
                .collect()
        })
        .collect();
    // offset of the block (s, k) in degree n is base[s] * |cliques_n| + ... ; ranks vary by s only
    let offsets: Vec<Vec<usize>> = all
        .iter()
        .map(|cs| {
            let mut acc = 0;
            let mut out = Vec::with_capacity(x.len() * cs.len());
            for s in 0..x.len() {
                for _ in cs {
                    out.push(acc);
                    acc += f.ranks[s];
                }
            }
            out.push(acc);
            out
        })
        .collect();
    let labels = all
        .iter()
        .map(|cs| {
            let mut out = Vec::new();
            for s in 0..x.len() {
                for c in cs {
                    let name = cell_name(alphabet, x, s, c);
                    match f.ranks[s] {
                        1 => out.push(name),
                        r => out.extend((0..r).map(|b| format!("{name}[{b}]"))),
                    }
                }
            }
            out
        })
        .collect();
    let boundaries = (1..all.len())
        .into_par_iter()
        .map(|n| {
            let below = all[n - 1].len();
            let mut d =
                IntegerMatrix::zeros(*offsets[n - 1].last().unwrap(), *offsets[n].last().unwrap());
            for s in 0..x.len() {
                let id = IntegerMatrix::identity(f.ranks[s]);
                for (kc, c) in all[n].iter().enumerate() {
                    let col = offsets[n][s * all[n].len() + kc];
                    for i in 0..n {
                        let mut drop = c.clone();
                        drop.remove(i);
                        let k = position[n - 1][drop.as_slice()];
                        let t = x.act(s, c[i]);
                        // i is 0-based, so the sign (-1)^(i+1)
                        let sign = if i % 2 == 0 { -1 } else { 1 };
                        d.add_block(offsets[n - 1][t * below + k], col, &f.maps[s][c[i]], sign);
                        d.add_block(offsets[n - 1][s * below + k], col, &id, -sign);
                    }
                }
            }
            d
        })
        .collect();
    ChainComplex::new(labels, boundaries)
}

/// Integral homology of `Q_* X`, computed both from the precubical set and
/// from the constant coefficient complex; the two must agree.
pub fn integral_mset_homology(
    alphabet: &IndependenceAlphabet,
    x: &RightMSet,
) -> Result<Vec<FGAbelianGroup>> {
    let via_cells = q_precubical(alphabet, x).integral_homology()?;
    let via_system = mset_complex(alphabet, x, &MSetSystem::constant(alphabet, x))?.homology();
    assert_eq!(
        via_cells, via_system,
        "two routes to the same homology disagree"
    );
    Ok(via_cells)
}
