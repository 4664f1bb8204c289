//! The finite abelian group `Z_k`, its subgroups `Z_{k,s}`, the reflection
//! actions on it, and its characters stored as exact `Q/Z` phases.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::coxeter::Reflection;
use crate::error::{Error, Result};

/// Default cap on `|Z_k|` for enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Q/Z`, kept as a reduced fraction `num/den` with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let r = num.rem_euclid(den as i128) as u64;
        let g = gcd(r, den);
        Phase { num: r / g, den: den / g }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn scale(self, k: i64) -> Phase {
        Phase::new(self.num as i128 * k as i128, self.den)
    }
}

impl std::ops::Add for Phase {
    type Output = Phase;

    fn add(self, other: Phase) -> Phase {
        let den = lcm(self.den, other.den);
        let a = self.num as i128 * (den / self.den) as i128;
        let b = other.num as i128 * (den / other.den) as i128;
        Phase::new(a + b, den)
    }
}

impl std::ops::Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        self.scale(-1)
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid phase `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i128 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Phase::new(n, d))
    }
}

/// A character `lambda` of `Z_k`: one phase per generator.
///
/// The value on the element with exponent vector `x` is the root of unity of
/// phase `sum_i x_i * phase_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    phases: Vec<Phase>,
}

impl Character {
    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn is_trivial(&self) -> bool {
        self.phases.iter().all(|p| p.is_zero())
    }

    /// `sum_i x_i * phase_i` in `Q/Z`.
    pub fn pair(&self, x: &[i64]) -> Result<Phase> {
        if x.len() != self.phases.len() {
            return Err(Error::DimensionMismatch { expected: self.phases.len(), got: x.len() });
        }
        Ok(self.phases.iter().zip(x).fold(Phase::ZERO, |acc, (p, &k)| acc + p.scale(k)))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.phases.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `Z_k` presented as `Z/d_1 x ... x Z/d_r`, with one involutive action and
/// one list of subgroup generators per simple affine reflection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusDatum {
    p: u64,
    orders: Vec<u64>,
    // actions[s][i] = image of generator i under conjugation by s
    actions: Vec<Vec<Vec<u64>>>,
    subgroups: Vec<Vec<Vec<u64>>>,
}

impl TorusDatum {
    /// Validates and builds a torus datum. `labels` name the reflections for
    /// diagnostics and fix how many action tables are expected.
    pub fn new(
        p: u64,
        orders: Vec<u64>,
        actions: Vec<Vec<Vec<i64>>>,
        subgroups: Vec<Vec<Vec<i64>>>,
        labels: &[String],
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Torus(format!("p = {p} is not prime")));
        }
        for (i, &d) in orders.iter().enumerate() {
            if d == 0 {
                return Err(Error::Torus(format!("generator order d_{} must be positive", i + 1)));
            }
            if gcd(d, p) != 1 {
                return Err(Error::Torus(format!("order d_{} = {d} not coprime to p = {p}", i + 1)));
            }
        }
        if actions.len() != labels.len() {
            return Err(Error::Torus(format!("expected {} action tables, got {}", labels.len(), actions.len())));
        }
        if subgroups.len() != labels.len() {
            return Err(Error::Torus(format!("expected {} subgroup lists, got {}", labels.len(), subgroups.len())));
        }
        let r = orders.len();
        let reduce =
            |v: &[i64]| -> Vec<u64> { v.iter().zip(&orders).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect() };

        let mut reduced_actions = Vec::with_capacity(actions.len());
        for (table, label) in actions.iter().zip(labels) {
            if table.len() != r || table.iter().any(|row| row.len() != r) {
                return Err(Error::Torus(format!("action of {label} must be a {r}x{r} table")));
            }
            reduced_actions.push(table.iter().map(|row| reduce(row)).collect::<Vec<_>>());
        }
        let mut reduced_subgroups = Vec::with_capacity(subgroups.len());
        for (gens, label) in subgroups.iter().zip(labels) {
            if gens.iter().any(|g| g.len() != r) {
                return Err(Error::Torus(format!("subgroup generators of Z_k,{label} must have {r} components")));
            }
            reduced_subgroups.push(gens.iter().map(|g| reduce(g)).collect::<Vec<_>>());
        }

        let datum = TorusDatum { p, orders, actions: reduced_actions, subgroups: reduced_subgroups };
        for (s, label) in labels.iter().enumerate() {
            datum.check_action(s, label)?;
        }
        Ok(datum)
    }

    fn check_action(&self, s: usize, label: &str) -> Result<()> {
        let table = &self.actions[s];
        // well-defined: d_i * image(g_i) = 0
        for (i, row) in table.iter().enumerate() {
            let d_i = self.orders[i] as u128;
            for (j, &v) in row.iter().enumerate() {
                if !(d_i * v as u128).is_multiple_of(self.orders[j] as u128) {
                    return Err(Error::Torus(format!(
                        "action of {label} is not a well-defined endomorphism on generator {}",
                        i + 1
                    )));
                }
            }
        }
        for i in 0..self.rank() {
            let img = self.apply_table(table, &self.actions[s][i]);
            let unit: Vec<u64> = (0..self.rank()).map(|j| u64::from(i == j) % self.orders[j]).collect();
            if img != unit {
                return Err(Error::Torus(format!("action of {label} is not involutive")));
            }
        }
        Ok(())
    }

    fn apply_table(&self, table: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        (0..self.rank())
            .map(|j| {
                let d = self.orders[j] as u128;
                let sum = x.iter().zip(table).fold(0u128, |acc, (&xi, row)| (acc + xi as u128 * row[j] as u128) % d);
                sum as u64
            })
            .collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn group_order(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    pub fn num_reflections(&self) -> usize {
        self.actions.len()
    }

    pub fn action(&self, s: Reflection) -> Result<&[Vec<u64>]> {
        self.actions.get(s.0).map(Vec::as_slice).ok_or(Error::ReflectionIndex(s.0))
    }

    pub fn subgroup(&self, s: Reflection) -> Result<&[Vec<u64>]> {
        self.subgroups.get(s.0).map(Vec::as_slice).ok_or(Error::ReflectionIndex(s.0))
    }

    /// Image of the element `x` under conjugation by `s`.
    pub fn act(&self, s: Reflection, x: &[u64]) -> Result<Vec<u64>> {
        let table = self.action(s)?;
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: x.len() });
        }
        Ok(self.apply_table(table, x))
    }

    /// Builds a character from phases, rejecting denominators that do not divide `d_i`.
    pub fn character(&self, phases: Vec<Phase>) -> Result<Character> {
        if phases.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: phases.len() });
        }
        for (i, (p, &d)) in phases.iter().zip(&self.orders).enumerate() {
            if d % p.den() != 0 {
                return Err(Error::PhaseDenominator { index: i, phase: p.to_string(), order: d });
            }
        }
        Ok(Character { phases })
    }

    /// The character with phases `k_i / d_i`.
    pub fn character_from_numerators(&self, nums: &[i64]) -> Result<Character> {
        if nums.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: nums.len() });
        }
        Ok(Character { phases: nums.iter().zip(&self.orders).map(|(&k, &d)| Phase::new(k as i128, d)).collect() })
    }

    pub fn trivial_character(&self) -> Character {
        Character { phases: vec![Phase::ZERO; self.rank()] }
    }

    /// `lambda^s = lambda o A_s`.
    pub fn twist(&self, lambda: &Character, s: Reflection) -> Result<Character> {
        let table = self.action(s)?;
        let phases = table.iter().map(|image| lambda.pair(&to_signed(image))).collect::<Result<Vec<_>>>()?;
        Ok(Character { phases })
    }

    pub fn is_trivial_on_subgroup(&self, lambda: &Character, s: Reflection) -> Result<bool> {
        for g in self.subgroup(s)? {
            if !lambda.pair(&to_signed(g))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `lambda(c_s)`: 1 when `lambda` is trivial on `Z_{k,s}`, 0 otherwise.
    pub fn c_value(&self, lambda: &Character, s: Reflection) -> Result<u8> {
        Ok(u8::from(self.is_trivial_on_subgroup(lambda, s)?))
    }

    /// All `prod d_i` characters in lexicographic phase order.
    pub fn enumerate_characters(&self, bound: u64) -> Result<Vec<Character>> {
        let count = self.group_order();
        if count > bound as u128 {
            return Err(Error::BoundExceeded { count, bound });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut nums = vec![0u64; self.rank()];
        loop {
            out.push(Character {
                phases: nums.iter().zip(&self.orders).map(|(&k, &d)| Phase::new(k as i128, d)).collect(),
            });
            // odometer, last coordinate fastest
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                nums[i] += 1;
                if nums[i] < self.orders[i] {
                    break;
                }
                nums[i] = 0;
            }
        }
    }

    /// All elements of `Z_k` as reduced exponent vectors.
    pub fn elements(&self, bound: u64) -> Result<Vec<Vec<u64>>> {
        let count = self.group_order();
        if count > bound as u128 {
            return Err(Error::BoundExceeded { count, bound });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut x = vec![0u64; self.rank()];
        loop {
            out.push(x.clone());
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                x[i] += 1;
                if x[i] < self.orders[i] {
                    break;
                }
                x[i] = 0;
            }
        }
    }

    pub(crate) fn reduce(&self, x: &[i64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&v, &d)| v.rem_euclid(d as i64) as u64).collect()
    }

    /// Applies an arbitrary endomorphism table (rows = generator images).
    pub(crate) fn apply_map(&self, table: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        self.apply_table(table, x)
    }
}

pub(crate) fn to_signed(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn ph(s: &str) -> Phase {
        s.parse().unwrap()
    }

    #[test]
    fn phase_arithmetic_is_mod_one() {
        assert_eq!(ph("6/4"), ph("1/2"));
        assert_eq!(ph("-1/4"), ph("3/4"));
        assert_eq!(ph("1/3") + ph("2/3"), Phase::ZERO);
        assert_eq!(ph("1/4").scale(3), ph("3/4"));
        assert_eq!(ph("0").to_string(), "0");
        assert_eq!(ph("2/8").to_string(), "1/4");
        assert!(ph("1/4") < ph("1/2"));
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x".parse::<Phase>().is_err());
    }

    #[test]
    fn pairing_examples() {
        let p = presets::sl2(5).unwrap();
        let t = p.datum.torus();
        assert!(t.trivial_character().pair(&[3]).unwrap().is_zero());
        let chi1 = t.character_from_numerators(&[1]).unwrap();
        assert_eq!(chi1.pair(&[1]).unwrap(), ph("1/4"));
        let chi2 = t.character_from_numerators(&[2]).unwrap();
        assert_eq!(chi2.pair(&[3]).unwrap(), ph("1/2"));
        assert_eq!(chi2.pair(&[1, 1]), Err(Error::DimensionMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn twisting_examples() {
        let p = presets::sl2(5).unwrap();
        let (t, s0) = (p.datum.torus(), p.datum.reflection("s0").unwrap());
        let chi1 = t.character_from_numerators(&[1]).unwrap();
        assert_eq!(t.twist(&chi1, s0).unwrap(), t.character_from_numerators(&[3]).unwrap());
        assert_eq!(t.twist(&t.trivial_character(), s0).unwrap(), t.trivial_character());

        // u11(3): e -> -3e mod 8 sends phase e/8 to 5e/8
        let u = presets::u11(3).unwrap();
        let (t, s1) = (u.datum.torus(), u.datum.reflection("s1").unwrap());
        for e in 0..8 {
            let chi = t.character_from_numerators(&[e]).unwrap();
            let twisted = t.twist(&chi, s1).unwrap();
            assert_eq!(twisted.phases()[0], Phase::new(5 * e as i128, 8));
            assert_eq!(t.twist(&twisted, s1).unwrap(), chi);
        }
    }

    #[test]
    fn c_values_and_subgroups() {
        let p = presets::sl2(5).unwrap();
        let t = p.datum.torus();
        let (s0, s1) = (Reflection(0), Reflection(1));
        assert!(t.is_trivial_on_subgroup(&t.trivial_character(), s0).unwrap());
        assert_eq!(t.c_value(&t.trivial_character(), s1).unwrap(), 1);
        let chi1 = t.character_from_numerators(&[1]).unwrap();
        assert!(!t.is_trivial_on_subgroup(&chi1, s0).unwrap());
        let chi2 = t.character_from_numerators(&[2]).unwrap();
        assert_eq!(t.c_value(&chi2, s1).unwrap(), 0);

        // u21(2): zeta of order 3 is trivial on Z_k,s2 (generated by exponent q+1 = 3)
        let u = presets::u21(2).unwrap();
        let t = u.datum.torus();
        let s2 = u.datum.reflection("s2").unwrap();
        let hybrid = t.character_from_numerators(&[1, 0]).unwrap();
        assert!(t.is_trivial_on_subgroup(&hybrid, s2).unwrap());
        assert_eq!(t.c_value(&hybrid, s2).unwrap(), 1);
    }

    /// Averages the 4th roots of unity `chi_2(z)` over `Z_k` inside `F_5`, where
    /// they all live, and compares with the triviality criterion.
    #[test]
    fn c_value_matches_orthogonality_sum_in_f5() {
        let p = presets::sl2(5).unwrap();
        let t = p.datum.torus();
        let s1 = Reflection(1);
        // 2 generates F_5^x; the phase k/4 maps to 2^k
        let root = |phase: Phase| -> u64 {
            let k = phase.num() * (4 / phase.den());
            (0..k).fold(1, |acc, _| acc * 2 % 5)
        };
        for r in 0..4 {
            let chi = t.character_from_numerators(&[r]).unwrap();
            let sum: u64 = (0..4).map(|z| root(chi.pair(&[z]).unwrap())).sum::<u64>() % 5;
            // 1/|Z| = 1/4 = 4 in F_5
            let avg = sum * 4 % 5;
            assert_eq!(avg, t.c_value(&chi, s1).unwrap() as u64, "r = {r}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(presets::sl2(5).unwrap().datum.torus().enumerate_characters(100).unwrap().len(), 4);
        assert_eq!(presets::u21(2).unwrap().datum.torus().enumerate_characters(100).unwrap().len(), 9);
        assert_eq!(presets::u11(3).unwrap().datum.torus().enumerate_characters(100).unwrap().len(), 8);
        assert!(matches!(
            presets::u11(3).unwrap().datum.torus().enumerate_characters(7),
            Err(Error::BoundExceeded { count: 8, bound: 7 })
        ));
    }

    #[test]
    fn validation_failures() {
        let labels = vec!["s".to_string()];
        // order not coprime to p
        let err = TorusDatum::new(5, vec![5], vec![vec![vec![-1]]], vec![vec![]], &labels).unwrap_err();
        assert!(err.to_string().contains("not coprime"));
        // p not prime
        assert!(TorusDatum::new(4, vec![3], vec![vec![vec![1]]], vec![vec![]], &labels).is_err());
        // not involutive: multiplication by 2 on Z/5
        let err = TorusDatum::new(3, vec![5], vec![vec![vec![2]]], vec![vec![]], &labels).unwrap_err();
        assert!(err.to_string().contains("involutive"));
        // not well defined: Z/2 -> Z/4, 1 -> 1
        let err =
            TorusDatum::new(3, vec![2, 4], vec![vec![vec![0, 1], vec![0, 1]]], vec![vec![]], &labels).unwrap_err();
        assert!(err.to_string().contains("well-defined"));
        // wrong number of tables
        assert!(TorusDatum::new(3, vec![2], vec![], vec![], &labels).is_err());
    }

    #[test]
    fn character_denominator_checked() {
        let t = presets::sl2(5).unwrap().datum.torus().clone();
        assert!(t.character(vec![ph("1/4")]).is_ok());
        assert!(matches!(t.character(vec![ph("1/3")]), Err(Error::PhaseDenominator { .. })));
    }
}
