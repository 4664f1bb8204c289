//! The `Ext^1` quiver on Hecke characters, its blocks, and diagram-orbit packets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::coxeter::{Reflection, ReflectionSet};
use crate::datum::GroupDatum;
use crate::error::{Error, Result};
use crate::ext_formula::ext_dimension;
use crate::ext_oracle::oracle_ext_dimension;
use crate::hecke_chars::{enumerate_hecke_characters, is_supersingular, make_character, HeckeCharacter};
use crate::torus::{to_signed, Character};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Formula,
    Oracle,
}

impl Engine {
    pub fn dimension(self, datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> Result<u32> {
        match self {
            Engine::Formula => Ok(ext_dimension(datum, xi1, xi2).dimension),
            Engine::Oracle => oracle_ext_dimension(datum, xi1, xi2),
        }
    }
}

/// A partition of characters: blocks sorted internally and by least element.
pub type Partition = Vec<Vec<HeckeCharacter>>;

fn normalize(mut parts: Partition) -> Partition {
    for p in parts.iter_mut() {
        p.sort();
    }
    parts.sort();
    parts
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtQuiver {
    pub nodes: Vec<HeckeCharacter>,
    /// `(from, to) -> dim Ext^1(nodes[from], nodes[to])`, positive entries only.
    pub edges: BTreeMap<(usize, usize), u32>,
}

impl ExtQuiver {
    /// Computes every ordered pair (self-pairs included) with the chosen engine.
    pub fn on_nodes(datum: &GroupDatum, mut nodes: Vec<HeckeCharacter>, engine: Engine) -> Result<Self> {
        nodes.sort();
        nodes.dedup();
        let n = nodes.len();
        let dims: Vec<Result<u32>> =
            (0..n * n).into_par_iter().map(|k| engine.dimension(datum, &nodes[k / n], &nodes[k % n])).collect();
        let mut edges = BTreeMap::new();
        for (k, dim) in dims.into_iter().enumerate() {
            let dim = dim?;
            if dim > 0 {
                edges.insert((k / n, k % n), dim);
            }
        }
        Ok(ExtQuiver { nodes, edges })
    }

    pub fn edge(&self, from: usize, to: usize) -> u32 {
        self.edges.get(&(from, to)).copied().unwrap_or(0)
    }

    pub fn index_of(&self, xi: &HeckeCharacter) -> Option<usize> {
        self.nodes.binary_search(xi).ok()
    }

    /// Ordered pairs `i < j` whose two directions carry different dimensions.
    pub fn asymmetric_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for &(i, j) in self.edges.keys() {
            if i != j && self.edge(i, j) != self.edge(j, i) {
                out.insert((i.min(j), i.max(j)));
            }
        }
        out.into_iter().collect()
    }

    /// Graphviz digraph; each block becomes a cluster.
    pub fn to_dot(&self, datum: &GroupDatum) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph ext_quiver {{");
        let _ = writeln!(out, "  label=\"{}\";", datum.name());
        for (b, block) in blocks(self).iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{b} {{");
            let _ = writeln!(out, "    label=\"block {b}\";");
            for xi in block {
                let i = self.index_of(xi).expect("block node in quiver");
                let _ = writeln!(out, "    n{i} [label=\"{}\"];", xi.display(datum));
            }
            let _ = writeln!(out, "  }}");
        }
        for (&(i, j), d) in &self.edges {
            let _ = writeln!(out, "  n{i} -> n{j} [label=\"{d}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Nodes are the (optionally supersingular) Hecke characters of the datum.
pub fn build_quiver(datum: &GroupDatum, engine: Engine, include_non_ss: bool, bound: u64) -> Result<ExtQuiver> {
    let nodes = enumerate_hecke_characters(datum, !include_non_ss, bound)?;
    ExtQuiver::on_nodes(datum, nodes, engine)
}

/// Connected components of the underlying undirected graph.
pub fn blocks(q: &ExtQuiver) -> Partition {
    let n = q.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in q.edges.keys() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<HeckeCharacter>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(q.nodes[i].clone());
    }
    normalize(groups.into_values().collect())
}

/// A Coxeter-matrix-preserving permutation of `S^aff` with a compatible
/// automorphism of `Z_k`. Acts by `xi_{lambda, I} -> xi_{lambda o T^-1, perm(I)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    perm: Vec<Reflection>,
    torus_map: Vec<Vec<u64>>,
    inverse_map: Vec<Vec<u64>>,
}

impl DiagramAutomorphism {
    /// `perm[s]` is the image of `s`; `torus_map[i]` is the image of generator `i`.
    /// Invertibility is checked by enumerating `Z_k` up to `bound` elements.
    pub fn new(datum: &GroupDatum, perm: Vec<Reflection>, torus_map: Vec<Vec<i64>>, bound: u64) -> Result<Self> {
        let table = validate(datum, &perm, &torus_map)?;
        let torus = datum.torus();
        let r = torus.rank();
        let mut inverse_map = vec![Vec::new(); r];
        let mut images = BTreeSet::new();
        for x in torus.elements(bound)? {
            let y = torus.apply_map(&table, &x);
            if !images.insert(y.clone()) {
                return Err(Error::Automorphism("torus map is not invertible".into()));
            }
            // several generators share an image when some orders are 1
            for (i, inv) in inverse_map.iter_mut().enumerate() {
                if y == unit(datum, i) {
                    *inv = x.clone();
                }
            }
        }
        Ok(DiagramAutomorphism { perm, torus_map: table, inverse_map })
    }

    /// Like [`DiagramAutomorphism::new`] with a known inverse, skipping enumeration.
    pub fn with_inverse(
        datum: &GroupDatum,
        perm: Vec<Reflection>,
        torus_map: Vec<Vec<i64>>,
        inverse: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let table = validate(datum, &perm, &torus_map)?;
        let torus = datum.torus();
        let inverse_map: Vec<Vec<u64>> = inverse.iter().map(|row| torus.reduce(row)).collect();
        if inverse_map.len() != table.len() || inverse_map.iter().any(|row| row.len() != table.len()) {
            return Err(Error::Automorphism("inverse has the wrong shape".into()));
        }
        for i in 0..torus.rank() {
            let e = unit(datum, i);
            let there_and_back = torus.apply_map(&inverse_map, &torus.apply_map(&table, &e));
            let back_and_there = torus.apply_map(&table, &torus.apply_map(&inverse_map, &e));
            if there_and_back != e || back_and_there != e {
                return Err(Error::Automorphism("given inverse does not invert the torus map".into()));
            }
        }
        Ok(DiagramAutomorphism { perm, torus_map: table, inverse_map })
    }

    pub fn identity(datum: &GroupDatum) -> Self {
        let id: Vec<Vec<u64>> = (0..datum.torus().rank()).map(|i| unit(datum, i)).collect();
        DiagramAutomorphism { perm: datum.coxeter().reflections().collect(), torus_map: id.clone(), inverse_map: id }
    }

    pub fn perm(&self) -> &[Reflection] {
        &self.perm
    }

    pub fn torus_map(&self) -> &[Vec<u64>] {
        &self.torus_map
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &Self, datum: &GroupDatum) -> Self {
        let torus = datum.torus();
        DiagramAutomorphism {
            perm: other.perm.iter().map(|s| self.perm[s.index()]).collect(),
            torus_map: other.torus_map.iter().map(|row| torus.apply_map(&self.torus_map, row)).collect(),
            inverse_map: self.inverse_map.iter().map(|row| torus.apply_map(&other.inverse_map, row)).collect(),
        }
    }

    pub fn map_set(&self, set: ReflectionSet) -> ReflectionSet {
        set.iter().map(|s| self.perm[s.index()]).collect()
    }

    /// `lambda o T^-1`.
    pub fn map_character(&self, datum: &GroupDatum, lambda: &Character) -> Result<Character> {
        let phases = self.inverse_map.iter().map(|x| lambda.pair(&to_signed(x))).collect::<Result<Vec<_>>>()?;
        datum.torus().character(phases)
    }

    pub fn apply(&self, datum: &GroupDatum, xi: &HeckeCharacter) -> Result<HeckeCharacter> {
        let lambda = self.map_character(datum, xi.lambda())?;
        make_character(datum, lambda, self.map_set(xi.subset()))
            .map_err(|e| Error::Automorphism(format!("image of {} is not a character: {e}", xi.display(datum))))
    }
}

fn unit(datum: &GroupDatum, i: usize) -> Vec<u64> {
    let orders = datum.torus().orders();
    (0..orders.len()).map(|j| u64::from(i == j) % orders[j]).collect()
}

// Coxeter preservation, well-definedness and `T A_s = A_perm(s) T`.
fn validate(datum: &GroupDatum, perm: &[Reflection], torus_map: &[Vec<i64>]) -> Result<Vec<Vec<u64>>> {
    let cox = datum.coxeter();
    let torus = datum.torus();
    let n = cox.len();
    if perm.len() != n {
        return Err(Error::Automorphism(format!("permutation must have {n} entries")));
    }
    let mut seen = vec![false; n];
    for s in perm {
        if s.index() >= n || std::mem::replace(&mut seen[s.index()], true) {
            return Err(Error::Automorphism("not a permutation of S^aff".into()));
        }
    }
    for s in cox.reflections() {
        for t in cox.reflections() {
            if cox.m(perm[s.index()], perm[t.index()]) != cox.m(s, t) {
                return Err(Error::Automorphism(format!("does not preserve m({}, {})", cox.label(s), cox.label(t))));
            }
        }
    }
    let r = torus.rank();
    if torus_map.len() != r || torus_map.iter().any(|row| row.len() != r) {
        return Err(Error::Automorphism(format!("torus map must be a {r}x{r} table")));
    }
    let table: Vec<Vec<u64>> = torus_map.iter().map(|row| torus.reduce(row)).collect();
    for (i, row) in table.iter().enumerate() {
        let d_i = torus.orders()[i] as u128;
        if row.iter().zip(torus.orders()).any(|(&v, &d)| !(d_i * v as u128).is_multiple_of(d as u128)) {
            return Err(Error::Automorphism(format!("torus map not well defined on generator {}", i + 1)));
        }
    }
    for s in cox.reflections() {
        let a_s = torus.action(s)?;
        let a_ps = torus.action(perm[s.index()])?;
        for i in 0..r {
            if torus.apply_map(&table, &a_s[i]) != torus.apply_map(a_ps, &table[i]) {
                return Err(Error::Automorphism(format!(
                    "torus map does not intertwine the actions of {} and {}",
                    cox.label(s),
                    cox.label(perm[s.index()])
                )));
            }
        }
    }
    Ok(table)
}

/// Checks that `autos` is closed under composition.
pub fn check_closed(datum: &GroupDatum, autos: &[DiagramAutomorphism]) -> Result<()> {
    for a in autos {
        for b in autos {
            let c = a.compose(b, datum);
            if !autos.iter().any(|x| x.perm == c.perm && x.torus_map == c.torus_map) {
                return Err(Error::AutomorphismsNotClosed);
            }
        }
    }
    Ok(())
}

/// Orbits of `nodes` under the group `autos` (identity-only when empty).
pub fn l_packets(datum: &GroupDatum, autos: &[DiagramAutomorphism], nodes: &[HeckeCharacter]) -> Result<Partition> {
    check_closed(datum, autos)?;
    let node_set: BTreeSet<&HeckeCharacter> = nodes.iter().collect();
    let mut assigned: BTreeSet<HeckeCharacter> = BTreeSet::new();
    let mut parts = Vec::new();
    for xi in nodes {
        if assigned.contains(xi) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        orbit.insert(xi.clone());
        for g in autos {
            let image = g.apply(datum, xi)?;
            if !node_set.contains(&image) {
                return Err(Error::NodeSetMismatch);
            }
            orbit.insert(image);
        }
        assigned.extend(orbit.iter().cloned());
        parts.push(orbit.into_iter().collect());
    }
    Ok(normalize(parts))
}

/// Outcome of comparing blocks with packets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionComparison {
    pub equal: bool,
    /// Indices of blocks meeting two or more packets.
    pub mixed_blocks: Vec<usize>,
    /// Indices of packets spread over two or more blocks.
    pub split_packets: Vec<usize>,
}

pub fn compare_partitions(blocks: &Partition, packets: &Partition) -> Result<PartitionComparison> {
    let owner = |parts: &Partition| -> BTreeMap<HeckeCharacter, usize> {
        parts.iter().enumerate().flat_map(|(i, p)| p.iter().map(move |x| (x.clone(), i))).collect()
    };
    let block_of = owner(blocks);
    let packet_of = owner(packets);
    if block_of.keys().ne(packet_of.keys()) {
        return Err(Error::NodeSetMismatch);
    }
    let count_distinct = |part: &Vec<HeckeCharacter>, map: &BTreeMap<HeckeCharacter, usize>| {
        part.iter().map(|x| map[x]).collect::<BTreeSet<_>>().len()
    };
    let mixed_blocks =
        blocks.iter().enumerate().filter(|(_, b)| count_distinct(b, &packet_of) > 1).map(|(i, _)| i).collect();
    let split_packets =
        packets.iter().enumerate().filter(|(_, p)| count_distinct(p, &block_of) > 1).map(|(i, _)| i).collect();
    Ok(PartitionComparison {
        equal: normalize(blocks.clone()) == normalize(packets.clone()),
        mixed_blocks,
        split_packets,
    })
}

/// Supersingular characters, in enumeration order.
pub fn supersingular_nodes(datum: &GroupDatum, bound: u64) -> Result<Vec<HeckeCharacter>> {
    let nodes = enumerate_hecke_characters(datum, true, bound)?;
    debug_assert!(nodes.iter().all(|x| is_supersingular(datum, x)));
    Ok(nodes)
}
