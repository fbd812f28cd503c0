use std::collections::HashMap;

use crate::error::{Error, Result};

/// Finite ordered set of events with an irreflexive symmetric independence relation.
///
/// Events are referred to by their position in the declared list; that order
/// is also the order used for cliques and normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceAlphabet {
    events: Vec<String>,
    index: HashMap<String, usize>,
    independent: Vec<Vec<bool>>,
}

impl IndependenceAlphabet {
    pub fn new<S: AsRef<str>>(events: &[S], independence: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = events.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            if index.insert(name.clone(), k).is_some() {
                return Err(Error::Duplicate(name.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownEvent(s.as_ref().to_string()))
        };
        let pairs = independence
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(names, &pairs)
    }

    /// Builds an alphabet from event names and index pairs.
    pub fn from_indices(events: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = events.len();
        let mut index = HashMap::new();
        for (k, name) in events.iter().enumerate() {
            if index.insert(name.clone(), k).is_some() {
                return Err(Error::Duplicate(name.clone()));
            }
        }
        let mut independent = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownEvent(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::ReflexiveIndependence(events[a].clone()));
            }
            independent[a][b] = true;
            independent[b][a] = true;
        }
        Ok(IndependenceAlphabet {
            events,
            index,
            independent,
        })
    }

    /// Events named `a`, `b`, ... (or `e0`, `e1`, ... beyond 26) with the given pairs.
    pub fn generic(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let events = (0..n)
            .map(|k| {
                if n <= 26 {
                    char::from(b'a' + k as u8).to_string()
                } else {
                    format!("e{k}")
                }
            })
            .collect();
        Self::from_indices(events, pairs)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    pub fn event(&self, a: usize) -> &str {
        &self.events[a]
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    pub fn independent(&self, a: usize, b: usize) -> bool {
        self.independent[a][b]
    }

    /// Independent pairs `(a, b)` with `a < b`.
    pub fn independent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.independent[a][b])
            .collect()
    }

    /// True iff the events are pairwise independent (and hence distinct).
    pub fn is_clique(&self, events: &[usize]) -> bool {
        events
            .iter()
            .enumerate()
            .all(|(k, &a)| events[k + 1..].iter().all(|&b| self.independent[a][b]))
    }

    /// All `n`-cliques `a_1 < ... < a_n`, in lexicographic order.
    pub fn cliques(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        self.extend_cliques(0, n, &mut current, &mut out);
        out
    }

    fn extend_cliques(
        &self,
        from: usize,
        n: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for a in from..self.len() {
            if current.iter().all(|&b| self.independent[a][b]) {
                current.push(a);
                self.extend_cliques(a + 1, n, current, out);
                current.pop();
            }
        }
    }

    /// Cliques of every size, indexed by size, up to the largest nonempty size.
    pub fn all_cliques(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out = vec![vec![Vec::new()]];
        loop {
            let next = self.cliques(out.len());
            if next.is_empty() {
                return out;
            }
            out.push(next);
        }
    }

    pub fn max_clique_size(&self) -> usize {
        self.all_cliques().len() - 1
    }

    /// Display name of a word of events: letters concatenated when every
    /// event name is a single character, otherwise joined with `.`; `1` if empty.
    pub fn word_name(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let short = self.events.iter().all(|e| e.chars().count() == 1);
        let sep = if short { "" } else { "." };
        word.iter()
            .map(|&a| self.events[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word written as by [`IndependenceAlphabet::word_name`]; `1`
    /// and the empty string denote the unit.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || (text == "1" && !self.index.contains_key("1")) {
            return Ok(Vec::new());
        }
        if text.contains('.') || text.contains(',') {
            return text
                .split(['.', ','])
                .map(|s| self.lookup(s.trim()))
                .collect();
        }
        if let Ok(a) = self.lookup(text) {
            return Ok(vec![a]);
        }
        text.chars().map(|c| self.lookup(&c.to_string())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques_in_order() {
        let none = IndependenceAlphabet::generic(3, &[]).unwrap();
        assert!(none.cliques(2).is_empty());
        assert_eq!(none.cliques(0), vec![Vec::<usize>::new()]);

        let full = IndependenceAlphabet::generic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(full.cliques(2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(full.max_clique_size(), 3);

        let one = IndependenceAlphabet::generic(3, &[(0, 1)]).unwrap();
        assert_eq!(one.cliques(2), vec![vec![0, 1]]);
        assert!(one.cliques(3).is_empty());
    }

    #[test]
    fn construction_errors() {
        let err = IndependenceAlphabet::new(&["a", "b"], &[("a", "a")]).unwrap_err();
        assert_eq!(err, Error::ReflexiveIndependence("a".into()));
        let err = IndependenceAlphabet::new(&["a", "b"], &[("a", "c")]).unwrap_err();
        assert_eq!(err, Error::UnknownEvent("c".into()));
        let err = IndependenceAlphabet::new(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, Error::Duplicate("a".into()));
    }

    #[test]
    fn word_names_round_trip() {
        let a = IndependenceAlphabet::new(&["a", "b"], &[]).unwrap();
        assert_eq!(a.word_name(&[0, 1, 1]), "abb");
        assert_eq!(a.parse_word("abb").unwrap(), vec![0, 1, 1]);
        assert_eq!(a.parse_word("1").unwrap(), Vec::<usize>::new());
        let long = IndependenceAlphabet::new(&["send", "recv"], &[]).unwrap();
        assert_eq!(long.word_name(&[1, 0]), "recv.send");
        assert_eq!(long.parse_word("recv.send").unwrap(), vec![1, 0]);
    }
}
