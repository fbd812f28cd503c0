//! Oracles and random generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cubhom::asts::AsyncTransitionSystem;
use cubhom::intlinalg::{ChainComplex, FGAbelianGroup, IntegerMatrix};
use cubhom::msets::RightMSet;
use cubhom::trace::IndependenceAlphabet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn z(n: usize) -> FGAbelianGroup {
    FGAbelianGroup::free(n)
}

pub fn dense(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Textbook Smith reduction: move the smallest nonzero entry to the corner,
/// clear its row and column by Euclidean steps, repair divisibility by adding
/// an offending row, recurse on the minor.
pub fn naive_invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = dense(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return out;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Homology from the naive oracle: `Z^(n_k - r_k - r_{k+1})` plus the torsion of `d_{k+1}`.
pub fn naive_homology(c: &ChainComplex) -> Vec<FGAbelianGroup> {
    let factors: Vec<Vec<BigInt>> = c.boundaries().iter().map(naive_invariant_factors).collect();
    (0..c.len())
        .map(|n| {
            let incoming: &[BigInt] = factors.get(n).map_or(&[], Vec::as_slice);
            let outgoing = if n == 0 { 0 } else { factors[n - 1].len() };
            let free = c.rank(n) - incoming.len() - outgoing;
            FGAbelianGroup::from_invariant_factors(free, incoming)
        })
        .collect()
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = dense(m)
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[rank][c];
            for j in c..cols {
                let v = &f * &a[rank][j];
                a[r][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant modulo a prime, by elimination over the field.
pub fn det_mod(m: &IntegerMatrix, p: u64) -> u64 {
    let n = m.rows();
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = dense(m)
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let (_, digits) = x.mod_floor(&pb).to_u64_digits();
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        let (mut b, mut e, mut r) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul(det, a[c][c]);
        let iv = inv(a[c][c]);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let f = mul(a[r][c], iv);
            for j in c..n {
                a[r][j] = (a[r][j] + p - mul(f, a[c][j])) % p;
            }
        }
    }
    det
}

pub const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

/// `det = +-1` exactly, with an independent check modulo several primes.
pub fn is_unimodular(m: &IntegerMatrix) -> bool {
    let exact = m.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
    let modular = PRIMES.iter().all(|&p| {
        let d = det_mod(m, p);
        d == 1 || d == p - 1
    });
    exact && modular
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    bound: i64,
    density: f64,
) -> IntegerMatrix {
    let entries = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(density) {
                BigInt::from(rng.gen_range(-bound..=bound))
            } else {
                BigInt::zero()
            }
        })
        .collect();
    IntegerMatrix::from_vec(rows, cols, entries).unwrap()
}

/// Random independence relation: each pair independent with probability `p`.
pub fn random_alphabet(rng: &mut ChaCha8Rng, events: usize, p: f64) -> IndependenceAlphabet {
    let mut pairs = Vec::new();
    for a in 0..events {
        for b in a + 1..events {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    IndependenceAlphabet::generic(events, &pairs).unwrap()
}

/// Number of `n`-element cliques for every `n`, by scanning all subsets.
pub fn brute_clique_counts(a: &IndependenceAlphabet) -> Vec<usize> {
    let k = a.len();
    let mut counts = vec![0; k + 1];
    for mask in 0u32..(1 << k) {
        let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let clique = members
            .iter()
            .enumerate()
            .all(|(x, &i)| members[x + 1..].iter().all(|&j| a.independent(i, j)));
        if clique {
            counts[members.len()] += 1;
        }
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts
}

/// Nonempty cliques of the independence graph as simplices, by scanning all subsets.
pub fn brute_clique_faces(a: &IndependenceAlphabet) -> Vec<Vec<usize>> {
    let k = a.len();
    (1u32..(1 << k))
        .map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|m| {
            m.iter()
                .enumerate()
                .all(|(x, &i)| m[x + 1..].iter().all(|&j| a.independent(i, j)))
        })
        .collect()
}

/// Random right M-set with a base point: states act by random moves, then
/// the independence squares are repaired by sending offenders to the point.
pub fn random_mset(rng: &mut ChaCha8Rng, a: &IndependenceAlphabet, states: usize) -> RightMSet {
    let point = states;
    let mut act: Vec<Vec<usize>> = (0..states)
        .map(|_| {
            (0..a.len())
                .map(|_| {
                    if rng.gen_bool(0.6) {
                        rng.gen_range(0..states)
                    } else {
                        point
                    }
                })
                .collect()
        })
        .collect();
    act.push(vec![point; a.len()]);
    loop {
        let mut changed = false;
        for s in 0..states {
            for (x, y) in a.independent_pairs() {
                let l = act[act[s][x]][y];
                let r = act[act[s][y]][x];
                if l != r {
                    // send the first step to the point
                    if act[s][x] != point {
                        act[s][x] = point;
                    } else {
                        act[s][y] = point;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut carrier: Vec<String> = (0..states).map(|s| format!("x{s}")).collect();
    carrier.push("*".into());
    RightMSet::new(a, carrier, Some(point), act).unwrap()
}

/// Random asynchronous transition system: sample the independence relation
/// and a partial deterministic transition table, close it under the diamond
/// property by saturation, and prune transitions that cannot be completed
/// (they then lead to the point). Returns `None` if the result is invalid.
pub fn random_ast(
    rng: &mut ChaCha8Rng,
    states: usize,
    events: usize,
) -> Option<AsyncTransitionSystem> {
    let a = random_alphabet(rng, events, 0.5);
    let mut next: Vec<Vec<Option<usize>>> = (0..states)
        .map(|_| {
            (0..events)
                .map(|_| rng.gen_bool(0.5).then(|| rng.gen_range(0..states)))
                .collect()
        })
        .collect();
    let mut forbidden = vec![vec![false; events]; states];
    let pairs: Vec<(usize, usize)> = a
        .independent_pairs()
        .into_iter()
        .flat_map(|(x, y)| [(x, y), (y, x)])
        .collect();
    loop {
        let mut changed = false;
        for s in 0..states {
            for &(e1, e2) in &pairs {
                let Some(s1) = next[s][e1] else { continue };
                let Some(u) = next[s1][e2] else { continue };
                let closes = next[s][e2].is_some_and(|s2| next[s2][e1] == Some(u));
                if closes {
                    continue;
                }
                changed = true;
                match next[s][e2] {
                    None if !forbidden[s][e2] => {
                        if let Some(r) = (0..states).find(|&r| next[r][e1] == Some(u)) {
                            next[s][e2] = Some(r);
                            continue;
                        }
                    }
                    Some(t) if next[t][e1].is_none() && !forbidden[t][e1] => {
                        next[t][e1] = Some(u);
                        continue;
                    }
                    _ => {}
                }
                next[s1][e2] = None;
                forbidden[s1][e2] = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut transitions = Vec::new();
    for (s, row) in next.iter().enumerate() {
        for (e, t) in row.iter().enumerate() {
            if let Some(t) = t {
                transitions.push((s, e, *t));
            }
        }
    }
    let names = (0..states).map(|s| format!("s{s}")).collect();
    let t = AsyncTransitionSystem::from_indices(names, 0, a, transitions).ok()?;
    t.validate().ok()?;
    t.to_pointed_mset().ok()?;
    Some(t)
}

/// A random permutation of `0..n`.
pub fn permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
