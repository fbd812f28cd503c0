use std::collections::{BTreeMap, VecDeque};

use super::alphabet::IndependenceAlphabet;
use crate::error::{Error, Result};

/// Lexicographically least word in the commutation class of `word`.
///
/// Built greedily: at each step, among letters that can be moved to the
/// front (every earlier remaining letter is independent of them), emit the
/// smallest.
pub fn normal_form(alphabet: &IndependenceAlphabet, word: &[usize]) -> Vec<usize> {
    let mut rest: Vec<usize> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let a = rest[p];
            if best.is_some_and(|b| rest[b] <= a) {
                continue;
            }
            if rest[..p].iter().all(|&b| alphabet.independent(a, b)) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter is always movable");
        out.push(rest.remove(p));
    }
    out
}

/// Element of the trace monoid, stored as its normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trace {
    word: Vec<usize>,
}

impl Trace {
    pub fn one() -> Self {
        Trace::default()
    }

    pub fn from_word(alphabet: &IndependenceAlphabet, word: &[usize]) -> Result<Self> {
        if let Some(&a) = word.iter().find(|&&a| a >= alphabet.len()) {
            return Err(Error::UnknownEvent(format!("#{a}")));
        }
        Ok(Trace {
            word: normal_form(alphabet, word),
        })
    }

    pub fn generator(alphabet: &IndependenceAlphabet, a: usize) -> Result<Self> {
        Self::from_word(alphabet, &[a])
    }

    pub fn parse(alphabet: &IndependenceAlphabet, text: &str) -> Result<Self> {
        let word = alphabet.parse_word(text)?;
        Self::from_word(alphabet, &word)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn name(&self, alphabet: &IndependenceAlphabet) -> String {
        alphabet.word_name(&self.word)
    }

    pub fn mul(&self, other: &Trace, alphabet: &IndependenceAlphabet) -> Trace {
        let mut w = self.word.clone();
        w.extend_from_slice(&other.word);
        Trace {
            word: normal_form(alphabet, &w),
        }
    }

    /// Letter multiplicities.
    pub fn content(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &a in &self.word {
            *out.entry(a).or_insert(0) += 1;
        }
        out
    }

    /// `t` with `a * t = self`, if `a` left-divides `self`.
    pub fn left_cancel(&self, alphabet: &IndependenceAlphabet, a: usize) -> Option<Trace> {
        let p = self.word.iter().position(|&b| b == a)?;
        if !self.word[..p].iter().all(|&b| alphabet.independent(a, b)) {
            return None;
        }
        let mut w = self.word.clone();
        w.remove(p);
        Some(Trace {
            word: normal_form(alphabet, &w),
        })
    }

    /// `t` with `t * a = self`, if `a` right-divides `self`.
    pub fn right_cancel(&self, alphabet: &IndependenceAlphabet, a: usize) -> Option<Trace> {
        let p = self.word.iter().rposition(|&b| b == a)?;
        if !self.word[p + 1..]
            .iter()
            .all(|&b| alphabet.independent(a, b))
        {
            return None;
        }
        let mut w = self.word.clone();
        w.remove(p);
        Some(Trace {
            word: normal_form(alphabet, &w),
        })
    }

    /// `q` with `p * q = self`.
    pub fn left_quotient(&self, alphabet: &IndependenceAlphabet, p: &Trace) -> Option<Trace> {
        p.word
            .iter()
            .try_fold(self.clone(), |t, &a| t.left_cancel(alphabet, a))
    }

    /// `q` with `q * s = self`.
    pub fn right_quotient(&self, alphabet: &IndependenceAlphabet, s: &Trace) -> Option<Trace> {
        s.word
            .iter()
            .rev()
            .try_fold(self.clone(), |t, &a| t.right_cancel(alphabet, a))
    }

    pub fn left_divides(&self, alphabet: &IndependenceAlphabet, other: &Trace) -> bool {
        other.left_quotient(alphabet, self).is_some()
    }

    pub fn right_divides(&self, alphabet: &IndependenceAlphabet, other: &Trace) -> bool {
        other.right_quotient(alphabet, self).is_some()
    }

    /// Every factorization `self = p * q`, listed by `p` in increasing length.
    pub fn left_divisors(&self, alphabet: &IndependenceAlphabet) -> Vec<(Trace, Trace)> {
        let mut seen = BTreeMap::new();
        let mut queue = VecDeque::from([(Trace::one(), self.clone())]);
        seen.insert(Trace::one(), self.clone());
        let mut out = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            out.push((p.clone(), q.clone()));
            let mut firsts: Vec<usize> = q.word.clone();
            firsts.sort_unstable();
            firsts.dedup();
            for a in firsts {
                if let Some(rest) = q.left_cancel(alphabet, a) {
                    let next = p.mul(&Trace { word: vec![a] }, alphabet);
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), rest.clone());
                        queue.push_back((next, rest));
                    }
                }
            }
        }
        out
    }
}

pub fn trace_mul(alphabet: &IndependenceAlphabet, x: &Trace, y: &Trace) -> Trace {
    x.mul(y, alphabet)
}

/// Equality of the commutation classes of two words.
pub fn trace_eq(alphabet: &IndependenceAlphabet, x: &[usize], y: &[usize]) -> Result<bool> {
    Ok(Trace::from_word(alphabet, x)? == Trace::from_word(alphabet, y)?)
}
