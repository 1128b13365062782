//! Structures inside the residue ring Z_n: power orbits, cyclic
//! multiplicative subsemigroups, and induced tables of closed subsets.

use std::collections::HashMap;

use serde::Serialize;

use crate::magma::{CayleyTable, Label, MagmaError};

/// Eventual periodicity of the sequence a^1, a^2, ... mod n.
///
/// `tail` is the smallest exponent whose residue recurs and `period` the
/// smallest positive p with a^(tail+p) = a^tail (mod n). `residues` holds
/// a^1 .. a^(tail+period-1), which are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub base: u64,
    pub modulus: u64,
    pub tail: usize,
    pub period: usize,
    pub residues: Vec<u64>,
}

impl OrbitSummary {
    /// Residues of the repeating part, starting at a^tail.
    pub fn cycle(&self) -> &[u64] {
        &self.residues[self.tail - 1..]
    }

    /// Residue of a^k for any k >= 1.
    pub fn residue_at(&self, k: usize) -> u64 {
        assert!(k >= 1, "exponents start at 1");
        if k < self.tail {
            self.residues[k - 1]
        } else {
            self.cycle()[(k - self.tail) % self.period]
        }
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn check_modulus(n: u64) {
    assert!(n >= 1, "modulus must be at least 1");
    assert!(
        n <= Label::MAX as u64,
        "modulus {n} exceeds the label range"
    );
}

/// Tail, period and distinct residues of the powers of `a` modulo `n`,
/// found by iterating x -> a·x mod n and recording first occurrences.
///
/// `a` is reduced modulo `n`. Panics if `n == 0`.
pub fn power_orbit(a: u64, n: u64) -> OrbitSummary {
    check_modulus(n);
    if n <= DENSE_INDEX_LIMIT {
        // exponent of first occurrence per residue, 0 = unseen
        let mut first_seen = vec![0usize; n as usize];
        walk_orbit(a, n, |x, k| {
            let slot = &mut first_seen[x as usize];
            match *slot {
                0 => {
                    *slot = k;
                    None
                }
                j => Some(j),
            }
        })
    } else {
        let mut first_seen: HashMap<u64, usize> = HashMap::new();
        walk_orbit(a, n, |x, k| match first_seen.insert(x, k) {
            Some(j) => {
                first_seen.insert(x, j);
                Some(j)
            }
            None => None,
        })
    }
}

/// Moduli up to this size index first occurrences with a dense vector.
const DENSE_INDEX_LIMIT: u64 = 1 << 20;

/// Iterates a^1, a^2, ...; `seen(x, k)` records exponent k for residue x
/// and returns the earlier exponent if x was already recorded.
fn walk_orbit<F>(a: u64, n: u64, mut seen: F) -> OrbitSummary
where
    F: FnMut(u64, usize) -> Option<usize>,
{
    let a = a % n;
    let mut residues = Vec::new();
    let mut x = a;
    let mut k = 1;
    loop {
        if let Some(j) = seen(x, k) {
            return OrbitSummary {
                base: a,
                modulus: n,
                tail: j,
                period: k - j,
                residues,
            };
        }
        residues.push(x);
        x = mul_mod(x, a, n);
        k += 1;
    }
}

/// Cayley table of the multiplicative subsemigroup of Z_n generated by `a`.
///
/// Elements are listed in order of first appearance as powers a^1, a^2, ...
pub fn generated_mul_semigroup(a: u64, n: u64) -> CayleyTable {
    let orbit = power_orbit(a, n);
    let labels = orbit.residues.iter().map(|&r| r as Label).collect();
    CayleyTable::from_label_op(labels, |x, y| mul_mod(x as u64, y as u64, n) as Label)
        .expect("power orbits are closed under multiplication")
}

/// One of the two ring operations of Z_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Add,
    Mul,
}

impl Law {
    pub fn apply(self, x: u64, y: u64, n: u64) -> u64 {
        match self {
            Law::Add => add_mod(x, y, n),
            Law::Mul => mul_mod(x, y, n),
        }
    }
}

/// Induced table of `law` on a subset of Z_n, in the order the residues are
/// given. Fails with `NotClosed` on the first product leaving the subset.
pub fn zn_table(subset: &[u64], n: u64, law: Law) -> Result<CayleyTable, MagmaError> {
    check_modulus(n);
    if subset.is_empty() {
        return Err(MagmaError::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&r| r >= n) {
        return Err(MagmaError::UnknownLabel(bad as Label));
    }
    let labels = subset.iter().map(|&r| r as Label).collect();
    CayleyTable::from_label_op(labels, |x, y| law.apply(x as u64, y as u64, n) as Label)
}

/// The residues d·k mod n, i.e. the additive subgroup generated by `d`.
pub fn multiples(d: u64, n: u64) -> Vec<u64> {
    check_modulus(n);
    let step = d % n;
    let mut out = vec![0];
    let mut x = step;
    while x != 0 {
        out.push(x);
        x = add_mod(x, step, n);
    }
    out.sort_unstable();
    out
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
