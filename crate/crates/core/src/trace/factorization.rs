use super::alphabet::IndependenceAlphabet;
use super::word::Trace;
use crate::error::Result;
use crate::schema::FinitePoset;

/// A factorization `x * beta * y` of a trace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    pub x: Trace,
    pub beta: Trace,
    pub y: Trace,
}

impl Factorization {
    pub fn name(&self, alphabet: &IndependenceAlphabet) -> String {
        format!(
            "({},{},{})",
            self.x.name(alphabet),
            self.beta.name(alphabet),
            self.y.name(alphabet)
        )
    }
}

/// All factorizations `alpha = x * beta * y` where the letters of `beta` are
/// pairwise independent (repetitions of a letter allowed), ordered by
/// `(x, beta, y) <= (x', beta', y')` iff `x'` left-divides `x` and `y'`
/// right-divides `y`.
pub fn factorization_poset(
    alphabet: &IndependenceAlphabet,
    alpha: &Trace,
) -> Result<(Vec<Factorization>, FinitePoset)> {
    let mut elems = Vec::new();
    for (x, rest) in alpha.left_divisors(alphabet) {
        for (beta, y) in rest.left_divisors(alphabet) {
            let letters: Vec<usize> = beta.content().into_keys().collect();
            if alphabet.is_clique(&letters) {
                elems.push(Factorization {
                    x: x.clone(),
                    beta,
                    y,
                });
            }
        }
    }
    elems.sort();
    let leq = elems
        .iter()
        .map(|lo| {
            elems
                .iter()
                .map(|hi| hi.x.left_divides(alphabet, &lo.x) && hi.y.right_divides(alphabet, &lo.y))
                .collect()
        })
        .collect();
    let names = elems.iter().map(|f| f.name(alphabet)).collect();
    let poset = FinitePoset::new(names, leq)?;
    Ok((elems, poset))
}
