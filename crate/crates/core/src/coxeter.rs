//! Affine Coxeter systems `(W^aff, S^aff)` at the level of pairwise orders.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of simple affine reflections; subsets are stored as `u64` bitsets.
pub const MAX_REFLECTIONS: usize = 64;

/// Index of a simple affine reflection inside an [`AffineCoxeterDatum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Reflection(pub usize);

impl Reflection {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Order of a product `s s'` of two simple reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterOrder {
    Finite(u32),
    Infinite,
}

impl CoxeterOrder {
    /// Integer encoding used in serialized documents: `0` is infinity.
    pub fn to_code(self) -> u32 {
        match self {
            CoxeterOrder::Finite(m) => m,
            CoxeterOrder::Infinite => 0,
        }
    }

    pub fn from_code(code: u32) -> Self {
        if code == 0 {
            CoxeterOrder::Infinite
        } else {
            CoxeterOrder::Finite(code)
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            CoxeterOrder::Finite(m) => Some(m),
            CoxeterOrder::Infinite => None,
        }
    }

    /// Whether the closed-form Ext formula has been established for this order.
    pub fn is_closed_form_verified(self) -> bool {
        matches!(
            self,
            CoxeterOrder::Finite(1) | CoxeterOrder::Finite(2) | CoxeterOrder::Finite(3) | CoxeterOrder::Infinite
        )
    }
}

impl fmt::Display for CoxeterOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterOrder::Finite(m) => write!(f, "{m}"),
            CoxeterOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// A subset of `S^aff`, as a bitset over reflection indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReflectionSet(u64);

impl ReflectionSet {
    pub const EMPTY: ReflectionSet = ReflectionSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ReflectionSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ReflectionSet(u64::MAX)
        } else {
            ReflectionSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(s: Reflection) -> Self {
        ReflectionSet(1 << s.0)
    }

    pub fn contains(self, s: Reflection) -> bool {
        self.0 >> s.0 & 1 == 1
    }

    pub fn insert(&mut self, s: Reflection) {
        self.0 |= 1 << s.0;
    }

    pub fn with(mut self, s: Reflection) -> Self {
        self.insert(s);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ReflectionSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ReflectionSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ReflectionSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Reflection> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1).map(Reflection)
    }

    /// All subsets of `self`, in increasing bitset order.
    pub fn subsets(self) -> Vec<ReflectionSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(ReflectionSet(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out
    }
}

impl FromIterator<Reflection> for ReflectionSet {
    fn from_iter<T: IntoIterator<Item = Reflection>>(iter: T) -> Self {
        let mut set = ReflectionSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

/// The set `S^aff` together with its Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCoxeterDatum {
    labels: Vec<String>,
    orders: Vec<Vec<CoxeterOrder>>,
}

impl AffineCoxeterDatum {
    pub fn new(labels: Vec<String>, orders: Vec<Vec<CoxeterOrder>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Coxeter("at least one reflection is required".into()));
        }
        if n > MAX_REFLECTIONS {
            return Err(Error::Coxeter(format!("at most {MAX_REFLECTIONS} reflections are supported")));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains([',', ';']) || l.chars().any(char::is_whitespace) {
                return Err(Error::Coxeter(format!("invalid reflection label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Coxeter(format!("duplicate reflection label `{l}`")));
            }
        }
        if orders.len() != n || orders.iter().any(|row| row.len() != n) {
            return Err(Error::Coxeter(format!("Coxeter matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if orders[i][i] != CoxeterOrder::Finite(1) {
                return Err(Error::Coxeter(format!("diagonal entry m({0},{0}) must be 1", labels[i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if orders[i][j] != orders[j][i] {
                    return Err(Error::Coxeter(format!(
                        "Coxeter matrix not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
                if let CoxeterOrder::Finite(m) = orders[i][j] {
                    if m < 2 {
                        return Err(Error::Coxeter(format!(
                            "m({}, {}) = {m} must be at least 2",
                            labels[i], labels[j]
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, orders })
    }

    /// Builds a datum from the integer encoding (`0` is infinity).
    pub fn from_codes(labels: Vec<String>, codes: &[Vec<u32>]) -> Result<Self> {
        let orders = codes.iter().map(|row| row.iter().map(|&c| CoxeterOrder::from_code(c)).collect()).collect();
        Self::new(labels, orders)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn reflections(&self) -> impl Iterator<Item = Reflection> {
        (0..self.labels.len()).map(Reflection)
    }

    pub fn all(&self) -> ReflectionSet {
        ReflectionSet::full(self.len())
    }

    pub fn label(&self, s: Reflection) -> &str {
        &self.labels[s.0]
    }

    pub fn reflection(&self, label: &str) -> Result<Reflection> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Reflection)
            .ok_or_else(|| Error::UnknownReflection(label.to_string()))
    }

    pub fn check(&self, s: Reflection) -> Result<()> {
        if s.0 < self.len() {
            Ok(())
        } else {
            Err(Error::ReflectionIndex(s.0))
        }
    }

    /// `m(s, s')`; `Finite(1)` on the diagonal.
    pub fn order(&self, s: Reflection, t: Reflection) -> Result<CoxeterOrder> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.orders[s.0][t.0])
    }

    /// Unchecked variant for internal use on validated indices.
    pub(crate) fn m(&self, s: Reflection, t: Reflection) -> CoxeterOrder {
        self.orders[s.0][t.0]
    }

    pub fn order_by_label(&self, s: &str, t: &str) -> Result<CoxeterOrder> {
        self.order(self.reflection(s)?, self.reflection(t)?)
    }

    pub fn codes(&self) -> Vec<Vec<u32>> {
        self.orders.iter().map(|row| row.iter().map(|m| m.to_code()).collect()).collect()
    }

    /// Off-diagonal entries outside `{2, 3, inf}`, each unordered pair once.
    pub fn unverified_pairs(&self) -> Vec<(Reflection, Reflection, CoxeterOrder)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let m = self.orders[i][j];
                if !m.is_closed_form_verified() {
                    out.push((Reflection(i), Reflection(j), m));
                }
            }
        }
        out
    }

    pub fn format_set(&self, set: ReflectionSet) -> String {
        set.iter().map(|s| self.label(s)).collect::<Vec<_>>().join(",")
    }

    /// Parses a comma-separated label list; the empty string is the empty set.
    pub fn parse_set(&self, text: &str) -> Result<ReflectionSet> {
        let mut set = ReflectionSet::EMPTY;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            set.insert(self.reflection(part)?);
        }
        Ok(set)
    }
}

/// `[s, s', s, s', ...]` of the given length, starting with `s`.
pub fn alternating_word(s: Reflection, t: Reflection, length: usize) -> Result<Vec<Reflection>> {
    if length == 0 {
        return Err(Error::AlternatingWord("length must be positive"));
    }
    if s == t {
        return Err(Error::AlternatingWord("letters must be distinct"));
    }
    Ok((0..length).map(|i| if i % 2 == 0 { s } else { t }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn s(i: usize) -> Reflection {
        Reflection(i)
    }

    #[test]
    fn sl2_orders() {
        let p = presets::sl2(5).unwrap();
        let cox = p.datum.coxeter();
        assert_eq!(cox.order_by_label("s0", "s1").unwrap(), CoxeterOrder::Infinite);
        assert_eq!(cox.order_by_label("s1", "s1").unwrap(), CoxeterOrder::Finite(1));
    }

    #[test]
    fn sl4_opposite_nodes_commute() {
        let p = presets::sl_n(4, 5).unwrap();
        let cox = p.datum.coxeter();
        // s4 is the affine node of the 4-cycle s1-s2-s3-s4
        assert_eq!(cox.order_by_label("s4", "s2").unwrap(), CoxeterOrder::Finite(2));
        assert_eq!(cox.order_by_label("s1", "s3").unwrap(), CoxeterOrder::Finite(2));
        assert_eq!(cox.order_by_label("s1", "s4").unwrap(), CoxeterOrder::Finite(3));
    }

    #[test]
    fn unknown_label_is_rejected() {
        let p = presets::sl2(5).unwrap();
        assert_eq!(p.datum.coxeter().order_by_label("s0", "s7"), Err(Error::UnknownReflection("s7".into())));
        assert!(p.datum.coxeter().order(s(0), s(9)).is_err());
    }

    #[test]
    fn alternating_words() {
        assert_eq!(alternating_word(s(0), s(1), 3).unwrap(), vec![s(0), s(1), s(0)]);
        assert_eq!(alternating_word(s(1), s(0), 2).unwrap(), vec![s(1), s(0)]);
        assert_eq!(alternating_word(s(0), s(1), 1).unwrap(), vec![s(0)]);
        assert!(alternating_word(s(0), s(1), 0).is_err());
        assert!(alternating_word(s(0), s(0), 2).is_err());
    }

    #[test]
    fn matrix_validation() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(AffineCoxeterDatum::from_codes(labels.clone(), &[vec![1, 3], vec![3, 1]]).is_ok());
        assert!(AffineCoxeterDatum::from_codes(labels.clone(), &[vec![1, 3], vec![2, 1]]).is_err());
        assert!(AffineCoxeterDatum::from_codes(labels.clone(), &[vec![2, 3], vec![3, 1]]).is_err());
        assert!(AffineCoxeterDatum::from_codes(labels.clone(), &[vec![1, 1], vec![1, 1]]).is_err());
        assert!(AffineCoxeterDatum::from_codes(vec![], &[]).is_err());
        let dup = vec!["a".to_string(), "a".to_string()];
        assert!(AffineCoxeterDatum::from_codes(dup, &[vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn unverified_entries_are_listed() {
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let cox = AffineCoxeterDatum::from_codes(labels, &[vec![1, 4, 2], vec![4, 1, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(cox.unverified_pairs(), vec![(s(0), s(1), CoxeterOrder::Finite(4))]);
    }

    #[test]
    fn subsets_enumeration() {
        let set = ReflectionSet::from_bits(0b101);
        let subs: Vec<u64> = set.subsets().into_iter().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0, 1, 4, 5]);
        assert_eq!(ReflectionSet::EMPTY.subsets(), vec![ReflectionSet::EMPTY]);
    }
}
