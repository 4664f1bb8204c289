//! Closed-form dimension of `Ext^1(xi_{lambda1, I1}, xi_{lambda2, I2})`.
//!
//! Notation: `A = I1 \ (I1 n I2)`, `B = I2 \ (I1 n I2)`, `C = I1 n I2`, and
//! `D` is the complement of `I1 u I2`.

use std::fmt;

use crate::coxeter::{CoxeterOrder, Reflection, ReflectionSet};
use crate::datum::GroupDatum;
use crate::error::{Error, Result};
use crate::hecke_chars::HeckeCharacter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    LambdaNeINe,
    LambdaNeIEq,
    LambdaEqINe,
    LambdaEqIEq,
}

impl CaseTag {
    pub fn of(xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> Self {
        match (xi1.lambda() == xi2.lambda(), xi1.subset() == xi2.subset()) {
            (false, false) => CaseTag::LambdaNeINe,
            (false, true) => CaseTag::LambdaNeIEq,
            (true, false) => CaseTag::LambdaEqINe,
            (true, true) => CaseTag::LambdaEqIEq,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::LambdaNeINe => "ne-ne",
            CaseTag::LambdaNeIEq => "ne-eq",
            CaseTag::LambdaEqINe => "eq-ne",
            CaseTag::LambdaEqIEq => "eq-eq",
        })
    }
}

/// Why a structure constant `a_s` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroRule {
    /// `s` in `I1 n I2`.
    QuadraticBoth,
    /// `s` in `S_lambda1`, outside `I1 u I2`.
    QuadraticInert,
    /// `s` in `I2`, outside `S_lambda1`.
    QuadraticUnsupported,
    /// Commutes with some element of `I1 \ I2`.
    Hyp3,
    /// Commutes with some element of `I2 \ I1`.
    Hyp4,
    /// Order 3 with some element of `I1 n I2`.
    Hyp5,
    /// `lambda1^s != lambda2`.
    TorusCommutation,
    /// Tied to a group of constants that is forced to vanish.
    TiedToZero,
}

impl fmt::Display for ZeroRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroRule::QuadraticBoth => "quadratic:I1&I2",
            ZeroRule::QuadraticInert => "quadratic:S_l1-(I1|I2)",
            ZeroRule::QuadraticUnsupported => "quadratic:I2-S_l1",
            ZeroRule::Hyp3 => "hyp3",
            ZeroRule::Hyp4 => "hyp4",
            ZeroRule::Hyp5 => "hyp5",
            ZeroRule::TorusCommutation => "torus",
            ZeroRule::TiedToZero => "tied-to-zero",
        })
    }
}

/// The three cases in which `a_s` survives the quadratic relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridgeCase {
    /// `s` in `I1`, not in `I2`.
    Case1,
    /// `s` in `S_lambda1 \ I1` and in `I2`.
    Case2,
    /// `s` outside `S_lambda1` and outside `I2`.
    Case3,
    ForcedZero(ZeroRule),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReflectionStatus {
    Free,
    TiedToI1Group,
    TiedToI2Group,
    ForcedZero(ZeroRule),
}

impl fmt::Display for ReflectionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReflectionStatus::Free => f.write_str("free"),
            ReflectionStatus::TiedToI1Group => f.write_str("tied:I1-group"),
            ReflectionStatus::TiedToI2Group => f.write_str("tied:I2-group"),
            ReflectionStatus::ForcedZero(rule) => write!(f, "zero:{rule}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtResult {
    pub dimension: u32,
    pub case_tag: CaseTag,
    pub i_lambda_pair: ReflectionSet,
    pub i_lambda_i2: ReflectionSet,
    pub delta1: u8,
    pub delta2: u8,
    pub hyp2: bool,
    pub warnings: Vec<String>,
    pub per_reflection: Vec<(Reflection, ReflectionStatus)>,
    /// The raw formula went negative and was clamped to zero.
    pub clamped: bool,
}

impl ExtResult {
    /// Evaluates the four-way case split on the stored ingredients.
    pub fn formula_value(&self) -> i64 {
        formula_value(self.case_tag, self.i_lambda_i2.len(), self.delta1, self.delta2, self.hyp2)
    }
}

pub(crate) fn formula_value(case: CaseTag, n: usize, delta1: u8, delta2: u8, hyp2: bool) -> i64 {
    let (n, d1, d2) = (n as i64, delta1 as i64, delta2 as i64);
    match case {
        CaseTag::LambdaNeINe => n + d1 + d2 - i64::from(hyp2),
        CaseTag::LambdaNeIEq | CaseTag::LambdaEqIEq => n,
        CaseTag::LambdaEqINe if hyp2 => n,
        CaseTag::LambdaEqINe => n + d1 + d2 - 1,
    }
}

struct Parts {
    a: ReflectionSet,
    b: ReflectionSet,
    c: ReflectionSet,
    s_lambda1: ReflectionSet,
}

fn parts(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> Parts {
    let (i1, i2) = (xi1.subset(), xi2.subset());
    let c = i1.intersection(i2);
    Parts { a: i1.difference(c), b: i2.difference(c), c, s_lambda1: datum.s_lambda(xi1.lambda()) }
}

/// `I(lambda1, lambda2) = { s : lambda1^s = lambda2 }`.
pub fn i_lambda_pair(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> ReflectionSet {
    datum.i_lambda_pair(xi1.lambda(), xi2.lambda())
}

/// Sorts `s` into the cases left open by the quadratic relations.
pub fn bridge_case(
    datum: &GroupDatum,
    s: Reflection,
    xi1: &HeckeCharacter,
    xi2: &HeckeCharacter,
) -> Result<BridgeCase> {
    datum.coxeter().check(s)?;
    let (i1, i2) = (xi1.subset(), xi2.subset());
    let in_s_lambda1 = datum.s_lambda(xi1.lambda()).contains(s);
    Ok(match (i1.contains(s), i2.contains(s)) {
        (true, true) => BridgeCase::ForcedZero(ZeroRule::QuadraticBoth),
        (true, false) => BridgeCase::Case1,
        (false, true) if in_s_lambda1 => BridgeCase::Case2,
        (false, true) => BridgeCase::ForcedZero(ZeroRule::QuadraticUnsupported),
        (false, false) if in_s_lambda1 => BridgeCase::ForcedZero(ZeroRule::QuadraticInert),
        (false, false) => BridgeCase::Case3,
    })
}

fn hyp345_rule(datum: &GroupDatum, s: Reflection, p: &Parts) -> Option<ZeroRule> {
    let cox = datum.coxeter();
    let has = |set: ReflectionSet, m: u32| set.iter().any(|t| cox.m(s, t) == CoxeterOrder::Finite(m));
    if has(p.a, 2) {
        Some(ZeroRule::Hyp3)
    } else if has(p.b, 2) {
        Some(ZeroRule::Hyp4)
    } else if has(p.c, 3) {
        Some(ZeroRule::Hyp5)
    } else {
        None
    }
}

/// Whether one of the kill conditions (3)-(5) applies to `s` outside `I1 u I2`.
pub fn hyp345_kills(datum: &GroupDatum, s: Reflection, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> Result<bool> {
    datum.coxeter().check(s)?;
    if xi1.subset().union(xi2.subset()).contains(s) {
        return Err(Error::Coxeter(format!(
            "{} lies in I1 u I2; kill conditions apply only outside",
            datum.coxeter().label(s)
        )));
    }
    Ok(hyp345_rule(datum, s, &parts(datum, xi1, xi2)).is_some())
}

/// `I(lambda1, I2)`: reflections of `I(lambda1, lambda2)` outside
/// `S_lambda1 u I2` that survive the kill conditions.
pub fn i_lambda_i2(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> ReflectionSet {
    let p = parts(datum, xi1, xi2);
    let j = i_lambda_pair(datum, xi1, xi2);
    let outside = datum.coxeter().all().difference(p.s_lambda1.union(xi2.subset()));
    j.intersection(outside).iter().filter(|&s| hyp345_rule(datum, s, &p).is_none()).collect()
}

pub fn deltas(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> (u8, u8) {
    let p = parts(datum, xi1, xi2);
    let j = i_lambda_pair(datum, xi1, xi2);
    let (i1, i2) = (xi1.subset(), xi2.subset());
    let delta1 = !p.a.is_empty() && p.a.is_subset(j);
    let delta2 = i2.is_subset(p.s_lambda1) && !i2.is_subset(i1) && p.b.is_subset(j);
    (u8::from(delta1), u8::from(delta2))
}

/// Some `s in I1 \ I2`, `s' in I2 \ I1` commute.
pub fn hyp2_applies(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> bool {
    let p = parts(datum, xi1, xi2);
    let cox = datum.coxeter();
    p.a.iter().any(|s| p.b.iter().any(|t| cox.m(s, t) == CoxeterOrder::Finite(2)))
}

/// Dimension of `Ext^1(xi1, xi2)` from the closed form, with the per-reflection ledger.
pub fn ext_dimension(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> ExtResult {
    let cox = datum.coxeter();
    let p = parts(datum, xi1, xi2);
    let j = i_lambda_pair(datum, xi1, xi2);
    let i_l_i2 = i_lambda_i2(datum, xi1, xi2);
    let (delta1, delta2) = deltas(datum, xi1, xi2);
    let hyp2 = hyp2_applies(datum, xi1, xi2);
    let case_tag = CaseTag::of(xi1, xi2);

    let mut warnings = Vec::new();
    let unverified = cox.unverified_pairs();
    if !unverified.is_empty() {
        let list: Vec<String> =
            unverified.iter().map(|&(s, t, m)| format!("m({},{})={m}", cox.label(s), cox.label(t))).collect();
        warnings.push(format!("UNVERIFIED closed form: Coxeter orders outside {{2,3,inf}}: {}", list.join(" ")));
    }

    let raw = formula_value(case_tag, i_l_i2.len(), delta1, delta2, hyp2);
    let clamped = raw < 0;
    if clamped {
        warnings.push(format!("negative formula value {raw} clamped to 0; formula-oracle discrepancy"));
    }

    // With hyp2 the two groups satisfy a_A + a_B = 0, so a zero group kills the other.
    let group1_alive = delta1 == 1 && !(hyp2 && delta2 == 0);
    let group2_alive = delta2 == 1 && !(hyp2 && delta1 == 0);

    let per_reflection = cox
        .reflections()
        .map(|s| {
            let status = match bridge_case(datum, s, xi1, xi2).expect("reflection in range") {
                BridgeCase::ForcedZero(rule) => ReflectionStatus::ForcedZero(rule),
                _ if !j.contains(s) => ReflectionStatus::ForcedZero(ZeroRule::TorusCommutation),
                BridgeCase::Case1 if group1_alive => ReflectionStatus::TiedToI1Group,
                BridgeCase::Case2 if group2_alive => ReflectionStatus::TiedToI2Group,
                BridgeCase::Case1 | BridgeCase::Case2 => ReflectionStatus::ForcedZero(ZeroRule::TiedToZero),
                BridgeCase::Case3 => match hyp345_rule(datum, s, &p) {
                    Some(rule) => ReflectionStatus::ForcedZero(rule),
                    None => ReflectionStatus::Free,
                },
            };
            (s, status)
        })
        .collect();

    ExtResult {
        dimension: raw.max(0) as u32,
        case_tag,
        i_lambda_pair: j,
        i_lambda_i2: i_l_i2,
        delta1,
        delta2,
        hyp2,
        warnings,
        per_reflection,
        clamped,
    }
}
