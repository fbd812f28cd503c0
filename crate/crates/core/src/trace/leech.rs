use std::collections::HashMap;

use rayon::prelude::*;

use super::alphabet::IndependenceAlphabet;
use crate::error::{Error, Result};
use crate::intlinalg::{ChainComplex, IntegerMatrix};
use crate::precubical::PrecubicalSet;

/// The precubical set whose `n`-cells are the `n`-cliques; both faces
/// `d_i^0` and `d_i^1` delete the `i`-th letter.
pub fn t_precubical(alphabet: &IndependenceAlphabet) -> PrecubicalSet {
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
    let faces = all
        .iter()
        .enumerate()
        .map(|(n, cs)| {
            cs.iter()
                .map(|c| {
                    (0..n)
                        .map(|s| {
                            let f = position[n - 1][drop(c, s).as_slice()];
                            [f, f]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let cells = all
        .iter()
        .map(|cs| cs.iter().map(|c| alphabet.word_name(c)).collect())
        .collect();
    PrecubicalSet::from_indices(cells, faces).expect("clique faces are cliques")
}

fn drop(c: &[usize], s: usize) -> Vec<usize> {
    let mut d = c.to_vec();
    d.remove(s);
    d
}

/// Coefficient data on cliques: a rank for every clique and, for every
/// clique `c` and generator `a` extending it, the matrices
/// `left = F((a,1)) : F(c ∪ a) -> F(c)` and `right = F((1,a)) : F(c ∪ a) -> F(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSystem {
    ranks: HashMap<Vec<usize>, usize>,
    maps: HashMap<(Vec<usize>, usize), [IntegerMatrix; 2]>,
}

impl CliqueSystem {
    /// Cliques are ascending event lists. `maps[(c, a)] = [left, right]`.
    pub fn new(
        alphabet: &IndependenceAlphabet,
        ranks: HashMap<Vec<usize>, usize>,
        maps: HashMap<(Vec<usize>, usize), [IntegerMatrix; 2]>,
    ) -> Result<Self> {
        for c in ranks.keys() {
            if !c.windows(2).all(|w| w[0] < w[1]) || !alphabet.is_clique(c) {
                return Err(Error::RankMismatch(format!(
                    "`{}` is not a clique in ascending order",
                    alphabet.word_name(c)
                )));
            }
        }
        let all = alphabet.all_cliques();
        for (n, cs) in all.iter().enumerate() {
            for c in cs {
                let Some(&rank) = ranks.get(c) else {
                    return Err(Error::RankMismatch(format!(
                        "no rank for clique `{}`",
                        alphabet.word_name(c)
                    )));
                };
                if n == 0 {
                    continue;
                }
                for s in 0..n {
                    let d = drop(c, s);
                    let key = (d, c[s]);
                    let Some(pair) = maps.get(&key) else {
                        return Err(Error::RankMismatch(format!(
                            "no maps for clique `{}` and generator `{}`",
                            alphabet.word_name(&key.0),
                            alphabet.event(c[s])
                        )));
                    };
                    let expected = (ranks[&key.0], rank);
                    for m in pair {
                        if m.shape() != expected {
                            return Err(Error::RankMismatch(format!(
                                "map for clique `{}` and generator `{}` is {}x{}, expected {}x{}",
                                alphabet.word_name(&key.0),
                                alphabet.event(c[s]),
                                m.rows(),
                                m.cols(),
                                expected.0,
                                expected.1
                            )));
                        }
                    }
                }
            }
        }
        for (c, a) in maps.keys() {
            let mut full = c.clone();
            full.push(*a);
            if *a >= alphabet.len()
                || c.contains(a)
                || !alphabet.is_clique(&full)
                || !ranks.contains_key(c)
            {
                return Err(Error::RankMismatch(format!(
                    "maps given for `{}` extended by #{a}, which is not a clique",
                    alphabet.word_name(c)
                )));
            }
        }
        let system = CliqueSystem { ranks, maps };
        system.check_squares(alphabet)?;
        Ok(system)
    }

    /// `Z` on every clique with identity maps.
    pub fn constant(alphabet: &IndependenceAlphabet) -> Self {
        Self::uniform(alphabet, 1, |_| {
            [IntegerMatrix::identity(1), IntegerMatrix::identity(1)]
        })
    }

    /// The system of a right module: `left = id`, `right = rho(a)`.
    pub fn from_right_module(alphabet: &IndependenceAlphabet, g: &RightModule) -> Self {
        Self::uniform(alphabet, g.rank, |a| {
            [IntegerMatrix::identity(g.rank), g.action[a].clone()]
        })
    }

    /// The system of a bimodule: `left = lambda(a)`, `right = rho(a)`.
    pub fn from_bimodule(alphabet: &IndependenceAlphabet, b: &Bimodule) -> Self {
        Self::uniform(alphabet, b.rank, |a| {
            [b.left[a].clone(), b.right[a].clone()]
        })
    }

    fn uniform(
        alphabet: &IndependenceAlphabet,
        rank: usize,
        pair: impl Fn(usize) -> [IntegerMatrix; 2],
    ) -> Self {
        let mut ranks = HashMap::new();
        let mut maps = HashMap::new();
        for cs in alphabet.all_cliques() {
            for c in cs {
                for s in 0..c.len() {
                    maps.insert((drop(&c, s), c[s]), pair(c[s]));
                }
                ranks.insert(c, rank);
            }
        }
        CliqueSystem { ranks, maps }
    }

    pub fn rank(&self, clique: &[usize]) -> usize {
        self.ranks.get(clique).copied().unwrap_or(0)
    }

    pub fn left(&self, clique: &[usize], a: usize) -> &IntegerMatrix {
        &self.maps[&(clique.to_vec(), a)][0]
    }

    pub fn right(&self, clique: &[usize], a: usize) -> &IntegerMatrix {
        &self.maps[&(clique.to_vec(), a)][1]
    }

    /// For every clique `C` containing `a != b`, and each choice of left/right
    /// for both, removing `b` then `a` agrees with removing `a` then `b`.
    fn check_squares(&self, alphabet: &IndependenceAlphabet) -> Result<()> {
        for cs in alphabet.all_cliques().iter().skip(2) {
            for c in cs {
                for x in 0..c.len() {
                    for y in x + 1..c.len() {
                        let (a, b) = (c[x], c[y]);
                        let both = drop(&drop(c, y), x);
                        let without_a = drop(c, x);
                        let without_b = drop(c, y);
                        for ta in 0..2 {
                            for tb in 0..2 {
                                let m = |cl: &[usize], e: usize, t: usize| {
                                    &self.maps[&(cl.to_vec(), e)][t]
                                };
                                let first = m(&both, a, ta).checked_mul(m(&without_b, b, tb))?;
                                let second = m(&both, b, tb).checked_mul(m(&without_a, a, ta))?;
                                if first != second {
                                    let side = |t: usize| if t == 0 { "left" } else { "right" };
                                    return Err(Error::FunctorialityViolated(format!(
                                        "clique `{}`: {} `{}` and {} `{}` do not commute",
                                        alphabet.word_name(c),
                                        side(ta),
                                        alphabet.event(a),
                                        side(tb),
                                        alphabet.event(b)
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
}

/// `Z^rank` with a right action `rho(a)` for each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightModule {
    rank: usize,
    action: Vec<IntegerMatrix>,
}

impl RightModule {
    pub fn new(
        alphabet: &IndependenceAlphabet,
        rank: usize,
        action: Vec<IntegerMatrix>,
    ) -> Result<Self> {
        check_action(alphabet, rank, &action, "right")?;
        Ok(RightModule { rank, action })
    }

    /// Every generator acts as the identity.
    pub fn trivial(alphabet: &IndependenceAlphabet, rank: usize) -> Self {
        RightModule {
            rank,
            action: vec![IntegerMatrix::identity(rank); alphabet.len()],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, a: usize) -> &IntegerMatrix {
        &self.action[a]
    }
}

/// `Z^rank` with commuting left and right actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    rank: usize,
    left: Vec<IntegerMatrix>,
    right: Vec<IntegerMatrix>,
}

impl Bimodule {
    pub fn new(
        alphabet: &IndependenceAlphabet,
        rank: usize,
        left: Vec<IntegerMatrix>,
        right: Vec<IntegerMatrix>,
    ) -> Result<Self> {
        check_action(alphabet, rank, &left, "left")?;
        check_action(alphabet, rank, &right, "right")?;
        for a in 0..alphabet.len() {
            for b in 0..alphabet.len() {
                if left[a].checked_mul(&right[b])? != right[b].checked_mul(&left[a])? {
                    return Err(Error::ActionNotCompatible(format!(
                        "left `{}` and right `{}` do not commute",
                        alphabet.event(a),
                        alphabet.event(b)
                    )));
                }
            }
        }
        Ok(Bimodule { rank, left, right })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

fn check_action(
    alphabet: &IndependenceAlphabet,
    rank: usize,
    action: &[IntegerMatrix],
    side: &str,
) -> Result<()> {
    if action.len() != alphabet.len() {
        return Err(Error::ActionNotCompatible(format!(
            "{side} action given for {} generators, alphabet has {}",
            action.len(),
            alphabet.len()
        )));
    }
    for (a, m) in action.iter().enumerate() {
        if m.shape() != (rank, rank) {
            return Err(Error::RankMismatch(format!(
                "{side} action of `{}` is {}x{}, expected {rank}x{rank}",
                alphabet.event(a),
                m.rows(),
                m.cols()
            )));
        }
    }
    for (a, b) in alphabet.independent_pairs() {
        if action[a].checked_mul(&action[b])? != action[b].checked_mul(&action[a])? {
            return Err(Error::ActionNotCompatible(format!(
                "{side} actions of independent `{}` and `{}` do not commute",
                alphabet.event(a),
                alphabet.event(b)
            )));
        }
    }
    Ok(())
}

/// Assembles `C_n = (+)_{n-cliques} Z^{rank(c)}` with the block at position
/// `s` (1-based) of clique `c` given by `(-1)^s * block(c \ a_s, a_s)`.
fn clique_complex(
    alphabet: &IndependenceAlphabet,
    rank: impl Fn(&[usize]) -> usize + Sync,
    block: impl Fn(&[usize], usize) -> IntegerMatrix + Sync,
) -> Result<ChainComplex> {
    let all = alphabet.all_cliques();
    let offsets: Vec<(HashMap<&[usize], usize>, usize)> = all
        .iter()
        .map(|cs| {
            let mut acc = 0;
            let map = cs
                .iter()
                .map(|c| {
                    let at = acc;
                    acc += rank(c);
                    (c.as_slice(), at)
                })
                .collect();
            (map, acc)
        })
        .collect();
    let labels = all
        .iter()
        .map(|cs| {
            let mut out = Vec::new();
            for c in cs {
                let name = alphabet.word_name(c);
                match rank(c) {
                    1 => out.push(name),
                    r => out.extend((0..r).map(|b| format!("{name}[{b}]"))),
                }
            }
            out
        })
        .collect();
    let boundaries = (1..all.len())
        .into_par_iter()
        .map(|n| {
            let mut d = IntegerMatrix::zeros(offsets[n - 1].1, offsets[n].1);
            for c in &all[n] {
                let col = offsets[n].0[c.as_slice()];
                for s in 0..n {
                    let face = drop(c, s);
                    let row = offsets[n - 1].0[face.as_slice()];
                    // s is 0-based here, so (-1)^(s+1)
                    let sign = if s % 2 == 0 { -1 } else { 1 };
                    d.add_block(row, col, &block(&face, c[s]), sign);
                }
            }
            d
        })
        .collect();
    ChainComplex::new(labels, boundaries)
}

/// `d_n(c, phi) = sum_s (-1)^s (F(1,a_s) - F(a_s,1)) phi`.
pub fn leech_complex(alphabet: &IndependenceAlphabet, f: &CliqueSystem) -> Result<ChainComplex> {
    clique_complex(
        alphabet,
        |c| f.rank(c),
        |c, a| {
            f.right(c, a)
                .checked_sub(f.left(c, a))
                .expect("shapes checked on construction")
        },
    )
}

/// `d_n(c, g) = sum_s (-1)^s (g a_s - g)`.
pub fn right_module_complex(
    alphabet: &IndependenceAlphabet,
    g: &RightModule,
) -> Result<ChainComplex> {
    let id = IntegerMatrix::identity(g.rank);
    clique_complex(
        alphabet,
        |_| g.rank,
        |_, a| g.action[a].checked_sub(&id).expect("square action"),
    )
}

/// `d_n(c, phi) = sum_s (-1)^s (a_s phi - phi a_s)`.
pub fn hochschild_complex(alphabet: &IndependenceAlphabet, b: &Bimodule) -> Result<ChainComplex> {
    clique_complex(
        alphabet,
        |_| b.rank,
        |_, a| b.left[a].checked_sub(&b.right[a]).expect("square action"),
    )
}
