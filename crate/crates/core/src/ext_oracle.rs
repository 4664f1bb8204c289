//! Brute-force `Ext^1` dimension.
//!
//! A two-dimensional extension `E` of `xi2` by `xi1` is described by
//! structure constants `a_s`, one per simple reflection: in the basis
//! `(v1, v2)`, `T_s` acts by the upper-triangular matrix `[[x1, a_s], [0, x2]]`.
//! Torus equivariance, the quadratic relations and every finite braid relation
//! give a homogeneous linear system on `(a_s)` over `F_p`. Its kernel, modulo
//! the coboundary `delta_{I1} - delta_{I2}` when `lambda1 = lambda2`, is `Ext^1`.

use std::fmt;

use crate::coxeter::{alternating_word, CoxeterOrder, Reflection};
use crate::datum::GroupDatum;
use crate::error::{Error, Result};
use crate::hecke_chars::HeckeCharacter;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    TorusKill(Reflection),
    Quadratic(Reflection),
    Braid(Reflection, Reflection),
}

impl Provenance {
    pub fn display(&self, datum: &GroupDatum) -> String {
        let l = |s: &Reflection| datum.coxeter().label(*s).to_string();
        match self {
            Provenance::TorusKill(s) => format!("torus_kill({})", l(s)),
            Provenance::Quadratic(s) => format!("quadratic({})", l(s)),
            Provenance::Braid(s, t) => format!("braid({},{})", l(s), l(t)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    /// Coefficients over `F_p`, indexed like `ConstraintSystem::unknowns`.
    pub coeffs: Vec<u64>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub unknowns: Vec<Reflection>,
    pub rows: Vec<ConstraintRow>,
    pub p: u64,
}

impl ConstraintSystem {
    pub fn coefficient_rows(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|r| r.coeffs.clone()).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        linalg::kernel_basis(&self.coefficient_rows(), self.unknowns.len(), self.p)
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        self.rows.iter().all(|r| linalg::dot(&r.coeffs, a, self.p) == 0)
    }

    /// One TSV line per row: provenance, then one coefficient per unknown.
    pub fn explain_tsv(&self, datum: &GroupDatum) -> String {
        let mut out = String::from("# provenance");
        for s in &self.unknowns {
            out.push('\t');
            out.push_str("a_");
            out.push_str(datum.coxeter().label(*s));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.provenance.display(datum));
            for c in &row.coeffs {
                out.push('\t');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// The matrix of `T_s` on `E`, with `a_s` left symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorMatrix {
    /// Action on `v1`: `-1` if `s` is in `I1`, else `0`.
    pub x1: i64,
    /// Diagonal action on `v2`: `-1` if `s` is in `I2`, else `0`.
    pub x2: i64,
    pub unknown: Reflection,
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, a_{}], [0, {}]]", self.x1, self.unknown.index(), self.x2)
    }
}

pub fn generator_matrix(xi1: &HeckeCharacter, xi2: &HeckeCharacter, s: Reflection) -> GeneratorMatrix {
    GeneratorMatrix { x1: xi1.evaluate_on_generator(s) as i64, x2: xi2.evaluate_on_generator(s) as i64, unknown: s }
}

/// An upper-triangular product whose (1,2) entry is linear in the unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SymbolicUpper {
    d1: i64,
    off: Vec<i64>,
    d2: i64,
}

impl SymbolicUpper {
    fn identity(n: usize) -> Self {
        SymbolicUpper { d1: 1, off: vec![0; n], d2: 1 }
    }

    fn times(mut self, g: &GeneratorMatrix) -> Self {
        // [[d1, f], [0, d2]] * [[x1, a], [0, x2]] = [[d1 x1, d1 a + f x2], [0, d2 x2]]
        for c in self.off.iter_mut() {
            *c *= g.x2;
        }
        self.off[g.unknown.index()] += self.d1;
        self.d1 *= g.x1;
        self.d2 *= g.x2;
        self
    }
}

fn word_product(word: &[Reflection], xi1: &HeckeCharacter, xi2: &HeckeCharacter, n: usize) -> SymbolicUpper {
    word.iter().fold(SymbolicUpper::identity(n), |acc, &s| acc.times(&generator_matrix(xi1, xi2, s)))
}

/// `{ s : lambda2^s != lambda1 }`; each forces `a_s = 0`.
pub fn torus_kill_set(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> crate::coxeter::ReflectionSet {
    datum
        .coxeter()
        .reflections()
        .filter(|&s| datum.twist(xi2.lambda(), s).map(|t| &t != xi1.lambda()).unwrap_or(true))
        .collect()
}

pub fn build_system(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> ConstraintSystem {
    let cox = datum.coxeter();
    let torus = datum.torus();
    let p = datum.p();
    let n = cox.len();
    let unknowns: Vec<Reflection> = cox.reflections().collect();
    let unit = |s: Reflection| -> Vec<u64> { (0..n).map(|i| u64::from(i == s.index()) % p).collect() };
    let mut rows = Vec::new();

    for s in torus_kill_set(datum, xi1, xi2).iter() {
        rows.push(ConstraintRow { coeffs: unit(s), provenance: Provenance::TorusKill(s) });
    }

    // (1,2) entry of M_s^2 + C_s M_s: a_s (x1 + x2 + c1)
    for s in cox.reflections() {
        let g = generator_matrix(xi1, xi2, s);
        let c1 = torus.c_value(xi1.lambda(), s).expect("reflection in range") as i64;
        let mut coeffs = vec![0u64; n];
        coeffs[s.index()] = linalg::reduce(g.x1 + g.x2 + c1, p);
        rows.push(ConstraintRow { coeffs, provenance: Provenance::Quadratic(s) });
    }

    for s in cox.reflections() {
        for t in cox.reflections().filter(|t| *t > s) {
            let CoxeterOrder::Finite(m) = cox.m(s, t) else {
                continue;
            };
            let left = word_product(&alternating_word(s, t, m as usize).expect("s != t"), xi1, xi2, n);
            let right = word_product(&alternating_word(t, s, m as usize).expect("s != t"), xi1, xi2, n);
            let coeffs = left.off.iter().zip(&right.off).map(|(l, r)| linalg::reduce(l - r, p)).collect();
            rows.push(ConstraintRow { coeffs, provenance: Provenance::Braid(s, t) });
        }
    }

    ConstraintSystem { unknowns, rows, p }
}

/// `|unknowns| - rank` over `F_p`.
pub fn kernel_dimension(sys: &ConstraintSystem, p: u64) -> usize {
    sys.unknowns.len() - linalg::rank(&sys.coefficient_rows(), sys.unknowns.len(), p)
}

/// The coboundary `delta_{I1} - delta_{I2}` reduced mod `p`.
pub fn coboundary(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> Vec<u64> {
    datum
        .coxeter()
        .reflections()
        .map(|s| {
            let v = i64::from(xi1.subset().contains(s)) - i64::from(xi2.subset().contains(s));
            linalg::reduce(v, datum.p())
        })
        .collect()
}

/// Kernel dimension of the constraint system, minus the coboundary line when
/// `lambda1 = lambda2` and `I1 != I2`.
pub fn oracle_ext_dimension(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter) -> Result<u32> {
    let sys = build_system(datum, xi1, xi2);
    let kernel = kernel_dimension(&sys, datum.p());
    if xi1.lambda() == xi2.lambda() && xi1.subset() != xi2.subset() {
        let cob = coboundary(datum, xi1, xi2);
        if !sys.contains(&cob) {
            return Err(Error::TheoryMismatch(format!(
                "coboundary delta_I1 - delta_I2 is not in the constraint kernel for ({}, {})",
                xi1.display(datum),
                xi2.display(datum)
            )));
        }
        Ok(kernel as u32 - 1)
    } else {
        Ok(kernel as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Mat2([[u64; 2]; 2]);

impl Mat2 {
    fn mul(self, o: Mat2, p: u64) -> Mat2 {
        let mut r = [[0u64; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let sum = (0..2).fold(0u128, |acc, k| acc + self.0[i][k] as u128 * o.0[k][j] as u128);
                *cell = (sum % p as u128) as u64;
            }
        }
        Mat2(r)
    }

    fn add(self, o: Mat2, p: u64) -> Mat2 {
        let mut r = self.0;
        for (row, orow) in r.iter_mut().zip(o.0) {
            for (x, y) in row.iter_mut().zip(orow) {
                *x = (*x + y) % p;
            }
        }
        Mat2(r)
    }
}

/// Checks that the structure constants `a` define an `H^aff`-module: torus
/// kills, full quadratic identities `T_s^2 = -c_s T_s`, and full braid
/// identities for every finite order.
pub fn verify_solution(datum: &GroupDatum, xi1: &HeckeCharacter, xi2: &HeckeCharacter, a: &[u64]) -> bool {
    let cox = datum.coxeter();
    let torus = datum.torus();
    let p = datum.p();
    if a.len() != cox.len() {
        return false;
    }
    let a: Vec<u64> = a.iter().map(|x| x % p).collect();
    let mat = |s: Reflection| {
        let g = generator_matrix(xi1, xi2, s);
        Mat2([[linalg::reduce(g.x1, p), a[s.index()]], [0, linalg::reduce(g.x2, p)]])
    };

    if torus_kill_set(datum, xi1, xi2).iter().any(|s| a[s.index()] != 0) {
        return false;
    }
    for s in cox.reflections() {
        let m = mat(s);
        let c1 = torus.c_value(xi1.lambda(), s).expect("in range") as u64;
        let c2 = torus.c_value(xi2.lambda(), s).expect("in range") as u64;
        let cs = Mat2([[c1 % p, 0], [0, c2 % p]]);
        let lhs = m.mul(m, p).add(cs.mul(m, p), p);
        if lhs != Mat2([[0, 0], [0, 0]]) {
            return false;
        }
    }
    let identity = Mat2([[1 % p, 0], [0, 1 % p]]);
    for s in cox.reflections() {
        for t in cox.reflections().filter(|t| *t > s) {
            let CoxeterOrder::Finite(m) = cox.m(s, t) else {
                continue;
            };
            let prod = |w: Vec<Reflection>| w.into_iter().fold(identity, |acc, r| acc.mul(mat(r), p));
            let left = prod(alternating_word(s, t, m as usize).expect("s != t"));
            let right = prod(alternating_word(t, s, m as usize).expect("s != t"));
            if left != right {
                return false;
            }
        }
    }
    true
}
