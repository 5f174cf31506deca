use std::cmp::Ordering;

use super::algebra::{Algebra, GeneratorId};

/// Strictly increasing list of generators: a canonical basis monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<GeneratorId>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub(crate) fn from_sorted(ids: Vec<GeneratorId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Monomial(ids)
    }

    /// Splits into the Grassmann-variable prefix and the operator suffix.
    pub fn split_operators(&self, alg: &Algebra) -> (Monomial, Monomial) {
        let cut = self.0.iter().position(|&g| alg.kind(g).is_mode()).unwrap_or(self.0.len());
        (Monomial(self.0[..cut].to_vec()), Monomial(self.0[cut..].to_vec()))
    }

    pub fn text(&self, alg: &Algebra) -> String {
        let names: Vec<&str> = self.0.iter().map(|&g| alg.name(g)).collect();
        names.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rewrites a product of generators into signed canonical monomials.
///
/// Rules, applied to the leftmost out-of-order adjacent pair:
/// `g g → 0`, `a a† → 1 − a† a`, and `g h → −h g` otherwise.
pub fn normal_order(word: Vec<GeneratorId>, alg: &Algebra) -> Vec<(i64, Monomial)> {
    let (cre, ann) = (alg.creation(), alg.annihilation());
    let mut out: Vec<(i64, Monomial)> = Vec::new();
    let mut stack = vec![(1i64, word)];
    while let Some((sign, mut w)) = stack.pop() {
        let Some(i) = w.windows(2).position(|p| p[0] >= p[1]) else {
            match out.iter_mut().find(|(_, m)| m.0 == w) {
                Some(entry) => entry.0 += sign,
                None => out.push((sign, Monomial(w))),
            }
            continue;
        };
        if w[i] == w[i + 1] {
            continue;
        }
        if w[i] == ann && w[i + 1] == cre {
            let mut contracted = w.clone();
            contracted.drain(i..i + 2);
            stack.push((sign, contracted));
        }
        w.swap(i, i + 1);
        stack.push((-sign, w));
    }
    out.retain(|(c, _)| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(alg: &Algebra, names: &[&str]) -> Vec<GeneratorId> {
        names.iter().map(|n| alg.lookup(n).unwrap()).collect()
    }

    fn mono(alg: &Algebra, names: &[&str]) -> Monomial {
        Monomial(ids(alg, names))
    }

    #[test]
    fn car_contraction() {
        let alg = Algebra::phase_space();
        let mut got = normal_order(ids(&alg, &["a", "ad"]), &alg);
        got.sort_by(|x, y| x.1.cmp(&y.1));
        assert_eq!(got, vec![(1, Monomial::unit()), (-1, mono(&alg, &["ad", "a"]))]);
    }

    #[test]
    fn nilpotent_generators() {
        let alg = Algebra::phase_space();
        for n in ["alpha", "alphas", "a", "ad"] {
            assert!(normal_order(ids(&alg, &[n, n]), &alg).is_empty(), "{n}");
        }
        // a α a = −α a a = 0
        assert!(normal_order(ids(&alg, &["a", "alpha", "a"]), &alg).is_empty());
    }

    #[test]
    fn variables_move_left_of_modes_with_sign() {
        let alg = Algebra::phase_space();
        let got = normal_order(ids(&alg, &["a", "alpha"]), &alg);
        assert_eq!(got, vec![(-1, mono(&alg, &["alpha", "a"]))]);
        let got = normal_order(ids(&alg, &["betas", "alphas", "alpha"]), &alg);
        assert_eq!(got, vec![(-1, mono(&alg, &["alpha", "alphas", "betas"]))]);
    }

    #[test]
    fn number_operator_is_idempotent() {
        let alg = Algebra::phase_space();
        let got = normal_order(ids(&alg, &["ad", "a", "ad", "a"]), &alg);
        assert_eq!(got, vec![(1, mono(&alg, &["ad", "a"]))]);
    }

    #[test]
    fn order_is_degree_then_lexicographic() {
        let alg = Algebra::phase_space();
        let mut v = vec![mono(&alg, &["ad", "a"]), mono(&alg, &["a"]), Monomial::unit(), mono(&alg, &["alpha"])];
        v.sort();
        assert_eq!(v, vec![Monomial::unit(), mono(&alg, &["alpha"]), mono(&alg, &["a"]), mono(&alg, &["ad", "a"])]);
    }
}
