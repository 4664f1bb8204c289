//! Built-in group data: SL_2, SL_n (n >= 3), U(1,1) and U(2,1).

use crate::coxeter::{AffineCoxeterDatum, CoxeterOrder, Reflection};
use crate::datum::GroupDatum;
use crate::error::{Error, Result};
use crate::quiver::DiagramAutomorphism;
use crate::torus::{is_prime, TorusDatum};

/// A group datum together with its diagram-automorphism group.
#[derive(Debug, Clone)]
pub struct Preset {
    /// Canonical spec string, e.g. `sln:3:2`.
    pub name: String,
    pub q: u64,
    pub datum: GroupDatum,
    pub automorphisms: Vec<DiagramAutomorphism>,
}

/// Splits a prime power `q = p^f` and returns `p`.
pub fn prime_of(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::Preset(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    if r != 1 || !is_prime(p) {
        return Err(Error::Preset(format!("q = {q} is not a prime power")));
    }
    Ok(p)
}

fn check_quadratic(q: u64) -> Result<()> {
    prime_of(q)?;
    if q >= 1 << 31 {
        return Err(Error::Preset(format!("q = {q} is too large for F_q^2")));
    }
    Ok(())
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn build(
    name: String,
    q: u64,
    labels: Vec<String>,
    orders: Vec<Vec<CoxeterOrder>>,
    zk: Vec<u64>,
    actions: Vec<Vec<Vec<i64>>>,
    subgroups: Vec<Vec<Vec<i64>>>,
) -> Result<GroupDatum> {
    let p = prime_of(q)?;
    let cox = AffineCoxeterDatum::new(labels.clone(), orders)?;
    let torus = TorusDatum::new(p, zk, actions, subgroups, &labels)?;
    GroupDatum::new(name, cox, torus)
}

fn rank_one_orders() -> Vec<Vec<CoxeterOrder>> {
    use CoxeterOrder::*;
    vec![vec![Finite(1), Infinite], vec![Infinite, Finite(1)]]
}

fn swap() -> Vec<Reflection> {
    vec![Reflection(1), Reflection(0)]
}

/// `SL_2` over a field with `q` elements: `Z_k = F_q^x`, both reflections invert.
pub fn sl2(q: u64) -> Result<Preset> {
    prime_of(q)?;
    let name = format!("sl2:{q}");
    let datum = build(
        name.clone(),
        q,
        labels(&["s0", "s1"]),
        rank_one_orders(),
        vec![q - 1],
        vec![vec![vec![-1]]; 2],
        vec![vec![vec![1]]; 2],
    )?;
    let flip = DiagramAutomorphism::with_inverse(&datum, swap(), vec![vec![-1]], vec![vec![-1]])?;
    let automorphisms = vec![DiagramAutomorphism::identity(&datum), flip];
    Ok(Preset { name, q, datum, automorphisms })
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    (0..r).map(|j| i64::from(i == j)).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn compose(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    // (a o b)(e_i) = a(b(e_i))
    b.iter().map(|row| (0..a.len()).map(|j| row.iter().zip(a).map(|(x, ar)| x * ar[j]).sum()).collect()).collect()
}

/// `SL_n` with `n >= 3`. Reflections `s1..sn`, `sn` the affine one.
///
/// `Z_k` is the diagonal torus `(F_q^x)^{n-1}`, coordinate `n` being the
/// inverse product of the others. Diagram automorphisms are the `n` rotations.
pub fn sl_n(n: usize, q: u64) -> Result<Preset> {
    if !(3..=64).contains(&n) {
        return Err(Error::Preset(format!("sln needs 3 <= n <= 64, got {n}")));
    }
    prime_of(q)?;
    let r = n - 1;
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let orders = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let gap = (i + n - j) % n;
                    if i == j {
                        CoxeterOrder::Finite(1)
                    } else if gap == 1 || gap == n - 1 {
                        CoxeterOrder::Finite(3)
                    } else {
                        CoxeterOrder::Finite(2)
                    }
                })
                .collect()
        })
        .collect();

    let mut actions = Vec::with_capacity(n);
    let mut subgroups = Vec::with_capacity(n);
    for i in 0..n - 2 {
        let mut table: Vec<Vec<i64>> = (0..r).map(|k| unit(r, k)).collect();
        table.swap(i, i + 1);
        actions.push(table);
        subgroups.push(vec![sub(&unit(r, i), &unit(r, i + 1))]);
    }
    let last = r - 1;
    let neg = |v: Vec<i64>| -> Vec<i64> { v.into_iter().map(|x| -x).collect() };
    actions
        .push((0..r).map(|k| if k == last { neg(unit(r, last)) } else { sub(&unit(r, k), &unit(r, last)) }).collect());
    subgroups.push(vec![unit(r, last)]);
    actions.push((0..r).map(|k| if k == 0 { neg(unit(r, 0)) } else { sub(&unit(r, k), &unit(r, 0)) }).collect());
    subgroups.push(vec![unit(r, 0)]);

    let name = format!("sln:{n}:{q}");
    let datum = build(name.clone(), q, names, orders, vec![q - 1; r], actions, subgroups)?;

    // rotation s_i -> s_{i+1}
    let rotation: Vec<Vec<i64>> =
        (0..r).map(|k| if k == last { neg(unit(r, 0)) } else { sub(&unit(r, k + 1), &unit(r, 0)) }).collect();
    let mut powers: Vec<Vec<Vec<i64>>> = vec![(0..r).map(|k| unit(r, k)).collect()];
    for k in 1..n {
        powers.push(compose(&rotation, &powers[k - 1]));
    }
    let mut automorphisms = Vec::with_capacity(n);
    for k in 0..n {
        let perm = (0..n).map(|i| Reflection((i + k) % n)).collect();
        let inverse = powers[(n - k) % n].clone();
        automorphisms.push(DiagramAutomorphism::with_inverse(&datum, perm, powers[k].clone(), inverse)?);
    }
    Ok(Preset { name, q, datum, automorphisms })
}

/// Quasi-split `U(1,1)`: `Z_k = F_{q^2}^x`, both reflections act by `x -> x^{-q}`.
pub fn u11(q: u64) -> Result<Preset> {
    check_quadratic(q)?;
    let name = format!("u11:{q}");
    let action = vec![vec![-(q as i64)]];
    let datum = build(
        name.clone(),
        q,
        labels(&["s1", "s2"]),
        rank_one_orders(),
        vec![q * q - 1],
        vec![action.clone(); 2],
        vec![vec![vec![q as i64 + 1]]; 2],
    )?;
    let flip = DiagramAutomorphism::with_inverse(&datum, swap(), action.clone(), action)?;
    let automorphisms = vec![DiagramAutomorphism::identity(&datum), flip];
    Ok(Preset { name, q, datum, automorphisms })
}

/// `U(2,1)`: `Z_k = F_{q^2}^x x U(1)`, the Iwahori part and the norm-one part.
pub fn u21(q: u64) -> Result<Preset> {
    check_quadratic(q)?;
    let name = format!("u21:{q}");
    let action = vec![vec![-(q as i64), 0], vec![0, 1]];
    let datum = build(
        name.clone(),
        q,
        labels(&["s1", "s2"]),
        rank_one_orders(),
        vec![q * q - 1, q + 1],
        vec![action.clone(); 2],
        vec![vec![vec![1, 0]], vec![vec![q as i64 + 1, 0]]],
    )?;
    let automorphisms = vec![DiagramAutomorphism::identity(&datum)];
    Ok(Preset { name, q, datum, automorphisms })
}

/// Parses `sl2:Q`, `sln:N:Q`, `u11:Q` or `u21:Q`. A bare family name picks
/// the smallest interesting parameters.
pub fn parse(spec: &str) -> Result<Preset> {
    let spec = match spec {
        "sl2" => "sl2:5",
        "sln" | "sl3" => "sln:3:2",
        "u11" => "u11:3",
        "u21" => "u21:2",
        other => other,
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<u64> {
        s.parse().map_err(|_| Error::Preset(format!("`{s}` is not a positive integer in `{spec}`")))
    };
    match parts.as_slice() {
        ["sl2", q] => sl2(num(q)?),
        ["sln", n, q] => sl_n(num(n)? as usize, num(q)?),
        ["u11", q] => u11(num(q)?),
        ["u21", q] => u21(num(q)?),
        _ => Err(Error::Preset(format!("unknown preset `{spec}`; try `presets list`"))),
    }
}

/// Preset families with a short description each.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sl2:Q", "SL_2 over F_Q, reflections s0 s1, m = infinity"),
        ("sln:N:Q", "SL_N over F_Q (N >= 3), reflections s1..sN with sN affine, cyclic diagram"),
        ("u11:Q", "quasi-split U(1,1) for F_{Q^2}/F_Q, reflections s1 s2"),
        ("u21:Q", "U(2,1) for F_{Q^2}/F_Q, Z_k = F_{Q^2}^x x U(1), reflections s1 s2"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke_chars::{enumerate_hecke_characters, is_supersingular};

    #[test]
    fn prime_powers() {
        assert_eq!(prime_of(2).unwrap(), 2);
        assert_eq!(prime_of(9).unwrap(), 3);
        assert_eq!(prime_of(125).unwrap(), 5);
        assert!(prime_of(6).is_err());
        assert!(prime_of(1).is_err());
        assert!(sl2(12).is_err());
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse("sl2:5").unwrap().datum.name(), "sl2:5");
        assert_eq!(parse("sln:3:2").unwrap().datum.coxeter().len(), 3);
        assert!(parse("sln:2:5").is_err());
        assert!(parse("gl3:5").is_err());
        assert!(parse("u11:x").is_err());
    }

    #[test]
    fn sl_n_shapes() {
        for (n, q) in [(3, 2), (3, 5), (4, 3), (5, 2)] {
            let p = sl_n(n, q).unwrap();
            assert_eq!(p.automorphisms.len(), n);
            assert_eq!(p.datum.torus().rank(), n - 1);
            crate::quiver::check_closed(&p.datum, &p.automorphisms).unwrap();
        }
        let d = sl_n(4, 5).unwrap().datum;
        let cox = d.coxeter();
        assert_eq!(cox.order_by_label("s1", "s2").unwrap(), CoxeterOrder::Finite(3));
        assert_eq!(cox.order_by_label("s4", "s1").unwrap(), CoxeterOrder::Finite(3));
        assert_eq!(cox.order_by_label("s4", "s2").unwrap(), CoxeterOrder::Finite(2));
    }

    #[test]
    fn sl_n_rotation_validates_by_enumeration() {
        let p = sl_n(3, 4).unwrap();
        let rot = &p.automorphisms[1];
        let table: Vec<Vec<i64>> = rot.torus_map().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let again = DiagramAutomorphism::new(&p.datum, rot.perm().to_vec(), table, 1000).unwrap();
        assert_eq!(&again, rot);
    }

    #[test]
    fn automorphisms_preserve_supersingularity() {
        for p in [sl2(5).unwrap(), sl_n(3, 4).unwrap(), sl_n(4, 3).unwrap(), u11(3).unwrap(), u21(3).unwrap()] {
            let all = enumerate_hecke_characters(&p.datum, false, 100_000).unwrap();
            for g in &p.automorphisms {
                for xi in &all {
                    let image = g.apply(&p.datum, xi).unwrap();
                    assert_eq!(is_supersingular(&p.datum, xi), is_supersingular(&p.datum, &image));
                }
            }
        }
    }

    #[test]
    fn trivial_torus_sl2_2() {
        let d = sl2(2).unwrap().datum;
        assert_eq!(d.torus().group_order(), 1);
        assert_eq!(enumerate_hecke_characters(&d, false, 10).unwrap().len(), 4);
    }
}
