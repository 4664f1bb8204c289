//! Characters `xi_{lambda, I}` of the affine pro-p Iwahori-Hecke algebra.

use crate::coxeter::{Reflection, ReflectionSet};
use crate::datum::GroupDatum;
use crate::error::{Error, Result};
use crate::torus::{Character, Phase};

/// The character `xi_{lambda, I}` with `I` a subset of `S_lambda`.
///
/// Ordering is by `lambda` (lexicographic phases), then by `I` as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeckeCharacter {
    lambda: Character,
    subset: ReflectionSet,
}

impl HeckeCharacter {
    pub fn lambda(&self) -> &Character {
        &self.lambda
    }

    pub fn subset(&self) -> ReflectionSet {
        self.subset
    }

    /// Value on `T_s`: `-1` for `s` in `I`, `0` otherwise.
    pub fn evaluate_on_generator(&self, s: Reflection) -> i8 {
        if self.subset.contains(s) {
            -1
        } else {
            0
        }
    }

    /// Formats as `phase,..;label,..`.
    pub fn display(&self, datum: &GroupDatum) -> String {
        format!("{};{}", self.lambda, datum.coxeter().format_set(self.subset))
    }
}

/// Builds `xi_{lambda, I}`, rejecting `I` not contained in `S_lambda`.
pub fn make_character(datum: &GroupDatum, lambda: Character, subset: ReflectionSet) -> Result<HeckeCharacter> {
    let cox = datum.coxeter();
    if !subset.is_subset(cox.all()) {
        let bad = subset.difference(cox.all()).iter().next().unwrap();
        return Err(Error::ReflectionIndex(bad.index()));
    }
    let s_lambda = datum.s_lambda(&lambda);
    if let Some(bad) = subset.difference(s_lambda).iter().next() {
        return Err(Error::NotInSLambda(cox.label(bad).to_string()));
    }
    Ok(HeckeCharacter { lambda, subset })
}

/// Parses the `"phases;reflections"` syntax, e.g. `1/4;` or `0;s0,s1`.
///
/// An empty phase list denotes the trivial character.
pub fn parse_character(datum: &GroupDatum, spec: &str) -> Result<HeckeCharacter> {
    let (phases, refl) = spec
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("character `{spec}` must have the form `phases;reflections`")))?;
    let torus = datum.torus();
    let lambda = if phases.trim().is_empty() {
        torus.trivial_character()
    } else {
        let phases = phases.split(',').map(str::parse::<Phase>).collect::<Result<Vec<_>>>()?;
        torus.character(phases)?
    };
    let subset = datum.coxeter().parse_set(refl)?;
    make_character(datum, lambda, subset)
}

/// Sign: `I = S^aff`. Trivial: `I` empty and `S_lambda = S^aff`.
pub fn is_supersingular(datum: &GroupDatum, xi: &HeckeCharacter) -> bool {
    let all = datum.coxeter().all();
    let sign = xi.subset == all;
    let trivial = xi.subset.is_empty() && datum.s_lambda(&xi.lambda) == all;
    !(sign || trivial)
}

/// All `xi_{lambda, I}` with `I` in `S_lambda`, ordered by `lambda` then `I`.
pub fn enumerate_hecke_characters(
    datum: &GroupDatum,
    only_supersingular: bool,
    bound: u64,
) -> Result<Vec<HeckeCharacter>> {
    let mut out = Vec::new();
    for lambda in datum.torus().enumerate_characters(bound)? {
        let s_lambda = datum.s_lambda(&lambda);
        for subset in s_lambda.subsets() {
            let xi = HeckeCharacter { lambda: lambda.clone(), subset };
            if !only_supersingular || is_supersingular(datum, &xi) {
                out.push(xi);
            }
        }
        if out.len() as u64 > bound {
            return Err(Error::BoundExceeded { count: out.len() as u128, bound });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::AffineCoxeterDatum;
    use crate::presets;
    use crate::torus::TorusDatum;

    fn sl2_5() -> GroupDatum {
        presets::sl2(5).unwrap().datum
    }

    #[test]
    fn make_character_checks_s_lambda() {
        let d = sl2_5();
        let t = d.torus();
        let s0 = d.set(&["s0"]).unwrap();
        assert!(make_character(&d, t.trivial_character(), s0).is_ok());
        let chi1 = t.character_from_numerators(&[1]).unwrap();
        assert_eq!(make_character(&d, chi1.clone(), s0), Err(Error::NotInSLambda("s0".into())));
        assert!(make_character(&d, chi1, ReflectionSet::EMPTY).is_ok());
    }

    #[test]
    fn evaluation_on_generators() {
        let d = sl2_5();
        let xi = parse_character(&d, "0;s0").unwrap();
        assert_eq!(xi.evaluate_on_generator(d.reflection("s0").unwrap()), -1);
        assert_eq!(xi.evaluate_on_generator(d.reflection("s1").unwrap()), 0);
        let xi = parse_character(&d, "1/4;").unwrap();
        assert_eq!(xi.evaluate_on_generator(d.reflection("s0").unwrap()), 0);
    }

    #[test]
    fn supersingular_classification() {
        let d = sl2_5();
        assert!(!is_supersingular(&d, &parse_character(&d, "0;s0,s1").unwrap()));
        assert!(!is_supersingular(&d, &parse_character(&d, "0;").unwrap()));
        assert!(is_supersingular(&d, &parse_character(&d, "1/4;").unwrap()));
        assert!(is_supersingular(&d, &parse_character(&d, "0;s1").unwrap()));

        let u = presets::u21(2).unwrap().datum;
        assert!(is_supersingular(&u, &parse_character(&u, "1/3,0;").unwrap()));
        assert!(is_supersingular(&u, &parse_character(&u, "1/3,0;s2").unwrap()));
    }

    #[test]
    fn enumeration_sl2() {
        let d = sl2_5();
        let all = enumerate_hecke_characters(&d, false, 1000).unwrap();
        let shown: Vec<String> = all.iter().map(|x| x.display(&d)).collect();
        assert_eq!(shown, vec!["0;", "0;s0", "0;s1", "0;s0,s1", "1/4;", "1/2;", "3/4;"]);
        assert_eq!(enumerate_hecke_characters(&d, true, 1000).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_u21_trivial_iwahori() {
        let d = presets::u21(2).unwrap().datum;
        let triv: Vec<_> = enumerate_hecke_characters(&d, false, 1000)
            .unwrap()
            .into_iter()
            .filter(|x| x.lambda().phases()[0].is_zero())
            .collect();
        // eta ranges over U(1) of order 3; each trivial-Iwahori chi gives 4 characters
        assert_eq!(triv.len(), 12);
        let eta0: Vec<_> = triv.iter().filter(|x| x.lambda().is_trivial()).collect();
        assert_eq!(eta0.len(), 4);
        assert_eq!(eta0.iter().filter(|x| is_supersingular(&d, x)).count(), 2);
    }

    #[test]
    fn enumeration_trivial_group_single_reflection() {
        let labels = vec!["s".to_string()];
        let cox = AffineCoxeterDatum::from_codes(labels.clone(), &[vec![1]]).unwrap();
        let torus = TorusDatum::new(2, vec![], vec![vec![]], vec![vec![]], &labels).unwrap();
        let d = GroupDatum::new("point", cox, torus).unwrap();
        assert_eq!(enumerate_hecke_characters(&d, false, 10).unwrap().len(), 2);
        assert!(enumerate_hecke_characters(&d, true, 10).unwrap().is_empty());
        assert_eq!(parse_character(&d, ";s").unwrap().display(&d), ";s");
    }

    #[test]
    fn parse_errors() {
        let d = sl2_5();
        assert!(matches!(parse_character(&d, "1/4"), Err(Error::Parse(_))));
        assert!(matches!(parse_character(&d, "1/4;s9"), Err(Error::UnknownReflection(_))));
        assert!(matches!(parse_character(&d, "1/3;"), Err(Error::PhaseDenominator { .. })));
        assert!(matches!(parse_character(&d, "1/4,0;"), Err(Error::DimensionMismatch { .. })));
    }
}
