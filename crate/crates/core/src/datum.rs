use crate::coxeter::{AffineCoxeterDatum, Reflection, ReflectionSet};
use crate::error::{Error, Result};
use crate::torus::{Character, TorusDatum};

/// A Coxeter datum and a torus datum over the same reflection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDatum {
    name: String,
    coxeter: AffineCoxeterDatum,
    torus: TorusDatum,
}

impl GroupDatum {
    pub fn new(name: impl Into<String>, coxeter: AffineCoxeterDatum, torus: TorusDatum) -> Result<Self> {
        if torus.num_reflections() != coxeter.len() {
            return Err(Error::Torus(format!(
                "torus datum describes {} reflections, Coxeter datum has {}",
                torus.num_reflections(),
                coxeter.len()
            )));
        }
        Ok(Self { name: name.into(), coxeter, torus })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coxeter(&self) -> &AffineCoxeterDatum {
        &self.coxeter
    }

    pub fn torus(&self) -> &TorusDatum {
        &self.torus
    }

    pub fn p(&self) -> u64 {
        self.torus.p()
    }

    pub fn reflection(&self, label: &str) -> Result<Reflection> {
        self.coxeter.reflection(label)
    }

    pub fn set(&self, labels: &[&str]) -> Result<ReflectionSet> {
        labels.iter().map(|l| self.reflection(l)).collect()
    }

    /// `S_lambda = { s : lambda(c_s) != 0 }`.
    pub fn s_lambda(&self, lambda: &Character) -> ReflectionSet {
        self.coxeter.reflections().filter(|&s| self.torus.is_trivial_on_subgroup(lambda, s).unwrap_or(false)).collect()
    }

    pub fn twist(&self, lambda: &Character, s: Reflection) -> Result<Character> {
        self.torus.twist(lambda, s)
    }

    /// `I(lambda1, lambda2) = { s : lambda1^s = lambda2 }`.
    pub fn i_lambda_pair(&self, lambda1: &Character, lambda2: &Character) -> ReflectionSet {
        self.coxeter
            .reflections()
            .filter(|&s| self.torus.twist(lambda1, s).map(|t| &t == lambda2).unwrap_or(false))
            .collect()
    }
}
