//! Asynchronous transition systems and their homology through the pointed
//! right set they induce.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::intlinalg::{ChainComplex, FGAbelianGroup};
use crate::msets::{mset_complex, MSetSystem, RightMSet};
use crate::trace::IndependenceAlphabet;

/// States, an initial state, events with independence, and labelled transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsyncTransitionSystem {
    states: Vec<String>,
    initial: usize,
    alphabet: IndependenceAlphabet,
    transitions: Vec<(usize, usize, usize)>,
}

impl AsyncTransitionSystem {
    /// Resolves names; the axioms are checked by [`AsyncTransitionSystem::validate`].
    pub fn new<S: AsRef<str>>(
        states: &[S],
        initial: &str,
        alphabet: IndependenceAlphabet,
        transitions: &[(S, S, S)],
    ) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (k, s) in states.iter().enumerate() {
            if index.insert(s.clone(), k).is_some() {
                return Err(Error::Duplicate(s.clone()));
            }
        }
        let state = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let initial = state(initial)?;
        let transitions = transitions
            .iter()
            .map(|(s, e, t)| {
                Ok((
                    state(s.as_ref())?,
                    alphabet.lookup(e.as_ref())?,
                    state(t.as_ref())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AsyncTransitionSystem {
            states,
            initial,
            alphabet,
            transitions,
        })
    }

    pub fn from_indices(
        states: Vec<String>,
        initial: usize,
        alphabet: IndependenceAlphabet,
        transitions: Vec<(usize, usize, usize)>,
    ) -> Result<Self> {
        if initial >= states.len() {
            return Err(Error::UnknownElement(format!("state #{initial}")));
        }
        for &(s, e, t) in &transitions {
            if s >= states.len() || t >= states.len() {
                return Err(Error::UnknownElement(format!("state #{}", s.max(t))));
            }
            if e >= alphabet.len() {
                return Err(Error::UnknownEvent(format!("#{e}")));
            }
        }
        Ok(AsyncTransitionSystem {
            states,
            initial,
            alphabet,
            transitions,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn alphabet(&self) -> &IndependenceAlphabet {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[(usize, usize, usize)] {
        &self.transitions
    }

    /// Checks, in order: every event is used; transitions are deterministic;
    /// independent events close every two-step path into a diamond.
    pub fn validate(&self) -> Result<()> {
        let a = &self.alphabet;
        for e in 0..a.len() {
            if !self.transitions.iter().any(|&(_, f, _)| f == e) {
                return Err(Error::UnusedEvent(a.event(e).to_string()));
            }
        }
        let mut next: HashMap<(usize, usize), usize> = HashMap::new();
        for &(s, e, t) in &self.transitions {
            if let Some(&u) = next.get(&(s, e)) {
                if u != t {
                    return Err(Error::NondeterministicEvent {
                        state: self.states[s].clone(),
                        event: a.event(e).to_string(),
                        first: self.states[u].clone(),
                        second: self.states[t].clone(),
                    });
                }
            }
            next.insert((s, e), t);
        }
        for &(s, e1, s1) in &self.transitions {
            for e2 in 0..a.len() {
                if !a.independent(e1, e2) {
                    continue;
                }
                let Some(&u) = next.get(&(s1, e2)) else {
                    continue;
                };
                let closes = next
                    .get(&(s, e2))
                    .is_some_and(|&s2| next.get(&(s2, e1)) == Some(&u));
                if !closes {
                    return Err(Error::BrokenDiamond {
                        s: self.states[s].clone(),
                        e1: a.event(e1).to_string(),
                        e2: a.event(e2).to_string(),
                        s1: self.states[s1].clone(),
                        u: self.states[u].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Name for the extra absorbing state: `*`, lengthened until it is fresh.
    pub fn point_name(&self) -> String {
        let mut name = "*".to_string();
        while self.states.contains(&name) {
            name.push('*');
        }
        name
    }

    /// Carrier `S ∪ {*}` with `s . e = s'` along a transition and `*` otherwise.
    pub fn to_pointed_mset(&self) -> Result<RightMSet> {
        self.validate()?;
        let n = self.states.len();
        let mut action = vec![vec![n; self.alphabet.len()]; n + 1];
        for &(s, e, t) in &self.transitions {
            action[s][e] = t;
        }
        let mut carrier = self.states.clone();
        carrier.push(self.point_name());
        RightMSet::new(&self.alphabet, carrier, Some(n), action)
    }

    /// Size of the largest set of pairwise independent events.
    pub fn max_independent(&self) -> usize {
        self.alphabet.max_clique_size()
    }
}

/// Complex of cells `(s, e_1 ... e_n)` over `S ∪ {*}` with coefficients `F`.
pub fn ast_complex(t: &AsyncTransitionSystem, f: &MSetSystem) -> Result<ChainComplex> {
    let x = t.to_pointed_mset()?;
    mset_complex(&t.alphabet, &x, f)
}

/// Integral homology up to `max_degree`, which defaults to the largest
/// number of pairwise independent events.
pub fn ast_integral_homology(
    t: &AsyncTransitionSystem,
    max_degree: Option<usize>,
) -> Result<Vec<FGAbelianGroup>> {
    let x = t.to_pointed_mset()?;
    let c = mset_complex(&t.alphabet, &x, &MSetSystem::constant(&t.alphabet, &x))?;
    Ok(c.homology_up_to(max_degree.unwrap_or_else(|| t.max_independent())))
}
