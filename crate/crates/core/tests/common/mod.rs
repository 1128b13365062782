//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use finalg::embed::GroupWitness;
use finalg::magma::{CayleyTable, Label};
use finalg::modular::generated_mul_semigroup;
use finalg::rings::RingTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Triple-loop associativity check.
pub fn naive_associative(t: &CayleyTable) -> bool {
    let n = t.size();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t.op(t.op(x, y), z) == t.op(x, t.op(y, z)))))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest k >= 1 with a^k = 1 (mod n), by repeated exponentiation from
/// scratch. Requires gcd(a, n) = 1 and n >= 2.
pub fn multiplicative_order(a: u64, n: u64) -> usize {
    let pow = |k: u32| (0..k).fold(1u64, |acc, _| acc * a % n);
    (1..).find(|&k| pow(k) == 1 % n).unwrap() as usize
}

pub fn random_table(rng: &mut impl Rng, size: usize) -> CayleyTable {
    let labels: Vec<Label> = (0..size as Label).collect();
    let rows: Vec<Vec<Label>> = (0..size)
        .map(|_| (0..size).map(|_| rng.gen_range(0..size as Label)).collect())
        .collect();
    CayleyTable::new(labels, &rows).unwrap()
}

/// 1,000 random tables of size 1..=6 from a fixed seed.
pub fn random_corpus() -> Vec<CayleyTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..1000)
        .map(|i| {
            let size = 1 + i % 6;
            random_table(&mut rng, size)
        })
        .collect()
}

/// Every cyclic multiplicative semigroup <a> in Z_n for n <= max_n.
pub fn generated_corpus(max_n: u64) -> Vec<(u64, u64, CayleyTable)> {
    (1..=max_n)
        .flat_map(|n| (0..n).map(move |a| (a, n, generated_mul_semigroup(a, n))))
        .collect()
}

/// Small hand-written semigroups: left/right zero, null, a band, and a
/// non-commutative monoid of maps on two points.
pub fn handcrafted_semigroups() -> Vec<CayleyTable> {
    let l = |n: Label| (0..n).collect::<Vec<_>>();
    vec![
        CayleyTable::from_label_op(l(3), |x, _| x).unwrap(),
        CayleyTable::from_label_op(l(4), |_, y| y).unwrap(),
        CayleyTable::from_label_op(l(4), |_, _| 0).unwrap(),
        CayleyTable::from_label_op(l(5), |x, y| x.max(y)).unwrap(),
        CayleyTable::from_label_op(l(6), |x, y| x.min(y)).unwrap(),
        // maps {0,1} -> {0,1} encoded as f(0) + 2 f(1); x·y = y after x
        CayleyTable::from_label_op(l(4), |x, y| {
            let apply = |f: Label, p: Label| if p == 0 { f & 1 } else { f >> 1 };
            apply(y, apply(x, 0)) + 2 * apply(y, apply(x, 1))
        })
        .unwrap(),
        // Z_2 x left-zero(2)
        CayleyTable::from_label_op(l(4), |x, y| ((x ^ y) & 1) | (x & 2)).unwrap(),
    ]
}

/// Group test straight from the definition on an index set.
pub fn forms_group(t: &CayleyTable, members: &[usize]) -> Option<usize> {
    let closed = members
        .iter()
        .all(|&x| members.iter().all(|&y| members.contains(&t.op(x, y))));
    if !closed || members.is_empty() {
        return None;
    }
    let e = *members
        .iter()
        .find(|&&e| members.iter().all(|&x| t.op(e, x) == x && t.op(x, e) == x))?;
    members
        .iter()
        .all(|&x| members.iter().any(|&y| t.op(x, y) == e && t.op(y, x) == e))
        .then_some(e)
}

/// Witnesses not strictly contained in another witness.
pub fn maximal_carriers(ws: &[GroupWitness]) -> BTreeSet<Vec<Label>> {
    let sets: Vec<BTreeSet<Label>> = ws
        .iter()
        .map(|w| w.carrier.iter().copied().collect())
        .collect();
    sets.iter()
        .filter(|s| !sets.iter().any(|o| o.len() > s.len() && s.is_subset(o)))
        .map(|s| s.iter().copied().collect())
        .collect()
}

/// A field found by the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleField {
    pub carrier: Vec<Label>,
    pub unity: Label,
}

fn field_from_definition(rt: &RingTable, members: &[usize]) -> Option<Label> {
    if members.len() < 2 {
        return None;
    }
    let zero = rt.index_of(rt.zero()).unwrap();
    let inside = |x: usize| members.contains(&x);
    for &x in members {
        for &y in members {
            if !inside(rt.add(x, y)) || !inside(rt.mul(x, y)) || rt.mul(x, y) != rt.mul(y, x) {
                return None;
            }
        }
    }
    // additive inverses
    if !members
        .iter()
        .all(|&x| members.iter().any(|&y| rt.add(x, y) == zero))
    {
        return None;
    }
    let one = *members.iter().find(|&&u| {
        members
            .iter()
            .all(|&x| rt.mul(u, x) == x && rt.mul(x, u) == x)
    })?;
    members
        .iter()
        .filter(|&&x| x != zero)
        .all(|&x| members.iter().any(|&y| rt.mul(x, y) == one))
        .then(|| rt.label(one))
}

fn proper_for_ring(rt: &RingTable, members: &[usize]) -> bool {
    let n = rt.size();
    let unity = (0..n).find(|&u| (0..n).all(|x| rt.mul(u, x) == x && rt.mul(x, u) == x));
    !members.is_empty() && members.len() != n && !(members.len() == 1 && Some(members[0]) == unity)
}

fn to_oracle(rt: &RingTable, members: &[usize], unity: Label) -> OracleField {
    let mut carrier: Vec<Label> = members.iter().map(|&i| rt.label(i)).collect();
    carrier.sort_unstable();
    OracleField { carrier, unity }
}

/// Every proper subset forming a field, by enumerating all 2^n subsets.
/// Only practical for small carriers.
pub fn fields_by_raw_enumeration(rt: &RingTable) -> BTreeSet<OracleField> {
    let n = rt.size();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !proper_for_ring(rt, &members) {
            continue;
        }
        if let Some(u) = field_from_definition(rt, &members) {
            out.insert(to_oracle(rt, &members, u));
        }
    }
    out
}

/// Every proper subset forming a field, by walking the full subset lattice
/// and cutting a branch only once two included elements have a sum or
/// product that was already excluded.
pub fn fields_by_subset_search(rt: &RingTable) -> BTreeSet<OracleField> {
    let n = rt.size();
    let mut out = BTreeSet::new();
    let mut state = vec![None::<bool>; n];
    fn walk(
        rt: &RingTable,
        i: usize,
        state: &mut Vec<Option<bool>>,
        out: &mut BTreeSet<OracleField>,
    ) {
        let n = rt.size();
        if i == n {
            let members: Vec<usize> = (0..n).filter(|&k| state[k] == Some(true)).collect();
            if proper_for_ring(rt, &members) {
                if let Some(u) = field_from_definition(rt, &members) {
                    out.insert(to_oracle(rt, &members, u));
                }
            }
            return;
        }
        for choice in [false, true] {
            state[i] = Some(choice);
            let consistent = (0..=i).filter(|&j| state[j] == Some(true)).all(|j| {
                (0..=i).filter(|&k| state[k] == Some(true)).all(|k| {
                    [rt.add(j, k), rt.mul(j, k)]
                        .iter()
                        .all(|&p| state[p] != Some(false))
                })
            });
            if consistent {
                walk(rt, i + 1, state, out);
            }
        }
        state[i] = None;
    }
    walk(rt, 0, &mut state, &mut out);
    out
}
