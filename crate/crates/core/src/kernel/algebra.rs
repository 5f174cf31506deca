use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a generator in its algebra. Index order is the canonical
/// monomial order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratorId(pub(crate) u8);

impl GeneratorId {
    pub fn order_index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Variable,
    ConjugateVariable,
    Creation,
    Annihilation,
}

impl GeneratorKind {
    pub fn is_variable(self) -> bool {
        matches!(self, GeneratorKind::Variable | GeneratorKind::ConjugateVariable)
    }

    pub fn is_mode(self) -> bool {
        !self.is_variable()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    /// Image under the adjoint.
    pub partner: GeneratorId,
}

/// A declared Grassmann pair `(α, α*)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannPair {
    pub var: GeneratorId,
    pub conj: GeneratorId,
}

/// Immutable generator table: Grassmann pairs in declaration order
/// (variable before conjugate), then `a†`, then `a`.
#[derive(Debug, PartialEq, Eq)]
pub struct Algebra {
    generators: Vec<Generator>,
    pairs: Vec<GrassmannPair>,
    creation: GeneratorId,
    annihilation: GeneratorId,
}

#[derive(Default)]
pub struct AlgebraBuilder {
    pairs: Vec<(String, String)>,
    mode: Option<(String, String)>,
}

impl AlgebraBuilder {
    /// Declares a Grassmann variable and its conjugate.
    pub fn pair(mut self, var: &str, conj: &str) -> Self {
        self.pairs.push((var.to_string(), conj.to_string()));
        self
    }

    /// Names the annihilation and creation operators of the mode.
    pub fn mode(mut self, annihilation: &str, creation: &str) -> Self {
        self.mode = Some((annihilation.to_string(), creation.to_string()));
        self
    }

    pub fn build(self) -> Result<Arc<Algebra>> {
        let (ann, cre) = self.mode.unwrap_or_else(|| ("a".into(), "ad".into()));
        if 2 * self.pairs.len() + 2 > u8::MAX as usize {
            return Err(Error::UnsupportedOperand("too many generators".into()));
        }
        let mut generators = Vec::new();
        let mut pairs = Vec::new();
        for (var, conj) in self.pairs {
            let v = GeneratorId(generators.len() as u8);
            let c = GeneratorId(v.0 + 1);
            generators.push(Generator { name: var, kind: GeneratorKind::Variable, partner: c });
            generators.push(Generator { name: conj, kind: GeneratorKind::ConjugateVariable, partner: v });
            pairs.push(GrassmannPair { var: v, conj: c });
        }
        let creation = GeneratorId(generators.len() as u8);
        let annihilation = GeneratorId(creation.0 + 1);
        generators.push(Generator { name: cre, kind: GeneratorKind::Creation, partner: annihilation });
        generators.push(Generator { name: ann, kind: GeneratorKind::Annihilation, partner: creation });

        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() || generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Algebra { generators, pairs, creation, annihilation }))
    }
}

impl Algebra {
    pub fn builder() -> AlgebraBuilder {
        AlgebraBuilder::default()
    }

    /// The phase-space algebra: pairs `alpha/alphas`, `beta/betas` and the
    /// mode `a`/`ad`.
    pub fn phase_space() -> Arc<Algebra> {
        Self::builder()
            .pair("alpha", "alphas")
            .pair("beta", "betas")
            .mode("a", "ad")
            .build()
            .expect("fixed generator table is valid")
    }

    pub fn generators(&self) -> impl Iterator<Item = (GeneratorId, &Generator)> {
        self.generators.iter().enumerate().map(|(i, g)| (GeneratorId(i as u8), g))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn info(&self, id: GeneratorId) -> &Generator {
        &self.generators[id.0 as usize]
    }

    pub fn kind(&self, id: GeneratorId) -> GeneratorKind {
        self.info(id).kind
    }

    pub fn name(&self, id: GeneratorId) -> &str {
        &self.info(id).name
    }

    pub fn adjoint_of(&self, id: GeneratorId) -> GeneratorId {
        self.info(id).partner
    }

    pub fn lookup(&self, name: &str) -> Result<GeneratorId> {
        self.generators()
            .find(|(_, g)| g.name == name)
            .map(|(id, _)| id)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn pairs(&self) -> &[GrassmannPair] {
        &self.pairs
    }

    /// The pair containing `name` as variable or conjugate.
    pub fn pair(&self, name: &str) -> Result<GrassmannPair> {
        let id = self.lookup(name)?;
        self.pairs
            .iter()
            .copied()
            .find(|p| p.var == id || p.conj == id)
            .ok_or_else(|| Error::InvalidMeasure(format!("`{name}` is not a Grassmann variable")))
    }

    /// Validates an ordered `(variable, conjugate)` pair.
    pub fn checked_pair(&self, var: GeneratorId, conj: GeneratorId) -> Result<GrassmannPair> {
        let pair = GrassmannPair { var, conj };
        if self.pairs.contains(&pair) {
            Ok(pair)
        } else {
            Err(Error::InvalidMeasure(format!(
                "({}, {}) is not a declared Grassmann pair",
                self.name(var),
                self.name(conj)
            )))
        }
    }

    pub fn creation(&self) -> GeneratorId {
        self.creation
    }

    pub fn annihilation(&self) -> GeneratorId {
        self.annihilation
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        write!(f, "Algebra[{}]", names.join(" < "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_variables_first_and_creation_before_annihilation() {
        let alg = Algebra::phase_space();
        let order: Vec<&str> = alg.generators().map(|(_, g)| g.name.as_str()).collect();
        assert_eq!(order, ["alpha", "alphas", "beta", "betas", "ad", "a"]);
        assert!(alg.creation() < alg.annihilation());
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Algebra::builder().pair("x", "x").build().unwrap_err();
        assert_eq!(err, Error::DuplicateGenerator("x".into()));
        let err = Algebra::builder().pair("a", "b").mode("a", "ad").build().unwrap_err();
        assert_eq!(err, Error::DuplicateGenerator("a".into()));
    }

    #[test]
    fn partners_are_involutive() {
        let alg = Algebra::phase_space();
        for (id, _) in alg.generators() {
            assert_eq!(alg.adjoint_of(alg.adjoint_of(id)), id);
        }
    }

    #[test]
    fn mode_operators_are_not_a_measure() {
        let alg = Algebra::phase_space();
        let a = alg.lookup("a").unwrap();
        let ad = alg.lookup("ad").unwrap();
        assert!(matches!(alg.checked_pair(a, ad), Err(Error::InvalidMeasure(_))));
        assert!(matches!(alg.pair("a"), Err(Error::InvalidMeasure(_))));
    }
}
