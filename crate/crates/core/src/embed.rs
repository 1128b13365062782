//! Group substructures of finite semigroups and the special
//! semigroup / special monoid predicates.
//!
//! The production search walks the idempotents: every subgroup of a finite
//! semigroup has an idempotent identity `e`, and all subgroups with identity
//! `e` sit inside the group of units of the local monoid `eSe`. That group is
//! the maximal subgroup at `e`. `brute_force_groups` enumerates subsets
//! directly and serves as the independent check.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::magma::{CayleyTable, Label};
use crate::subset::ElementSet;

/// Largest carrier `brute_force_groups` accepts.
pub const BRUTE_FORCE_LIMIT: usize = 32;

/// Default lower bound on witness order for the special predicates.
pub const DEFAULT_MIN_ORDER: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error(
        "operation is not associative: ({left}*{middle})*{right} != {left}*({middle}*{right})"
    )]
    NotAssociative {
        left: Label,
        middle: Label,
        right: Label,
    },
    #[error("{0} is not idempotent")]
    NotIdempotent(Label),
    #[error("table has no two-sided identity")]
    NotMonoid,
    #[error("carrier of size {size} exceeds the exhaustive search limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("label {0} is not an element of the carrier")]
    UnknownLabel(Label),
}

/// A subset that forms a group under the induced operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupWitness {
    /// Sorted ascending.
    pub carrier: Vec<Label>,
    pub identity: Label,
    pub order: usize,
}

impl fmt::Display for GroupWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}} @ {}",
            join_labels(&self.carrier, ","),
            self.identity
        )
    }
}

pub(crate) fn join_labels(labels: &[Label], sep: &str) -> String {
    labels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Why a special-structure predicate came out the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    /// The whole structure already has the stronger kind.
    IsAlreadyTargetKind,
    /// No proper subset of the stronger kind exists.
    NoWitness,
    /// At least one proper witness was found.
    Witnessed,
    /// The candidate subset is the whole carrier, empty, or the unit singleton.
    NotProperSubset,
    /// The candidate subset is not an ideal of the ambient ring.
    NotIdeal,
    /// The ambient ring is not itself special.
    AmbientNotSpecial,
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictReason::IsAlreadyTargetKind => "already of the target kind",
            VerdictReason::NoWitness => "no proper witness",
            VerdictReason::Witnessed => "witnessed",
            VerdictReason::NotProperSubset => "not a proper subset",
            VerdictReason::NotIdeal => "not an ideal",
            VerdictReason::AmbientNotSpecial => "ambient ring is not special",
        })
    }
}

/// Outcome of a special-structure predicate. `special` holds exactly when
/// `witnesses` is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialVerdict<W> {
    pub special: bool,
    pub witnesses: Vec<W>,
    pub reason: VerdictReason,
}

impl<W> SpecialVerdict<W> {
    pub(crate) fn negative(reason: VerdictReason) -> Self {
        SpecialVerdict {
            special: false,
            witnesses: Vec::new(),
            reason,
        }
    }

    pub(crate) fn from_witnesses(witnesses: Vec<W>) -> Self {
        let special = !witnesses.is_empty();
        SpecialVerdict {
            special,
            witnesses,
            reason: if special {
                VerdictReason::Witnessed
            } else {
                VerdictReason::NoWitness
            },
        }
    }
}

/// Sort key shared by every witness list: larger first, then by carrier.
pub(crate) fn sort_witnesses<W, F>(witnesses: &mut [W], key: F)
where
    F: Fn(&W) -> (usize, &[Label]),
{
    witnesses.sort_by(|a, b| {
        let (oa, ca) = key(a);
        let (ob, cb) = key(b);
        ob.cmp(&oa).then_with(|| ca.cmp(cb))
    });
}

fn require_associative(t: &CayleyTable) -> Result<(), EmbedError> {
    match t.associativity_counterexample() {
        Some((x, a, y)) => Err(EmbedError::NotAssociative {
            left: t.label(x),
            middle: t.label(a),
            right: t.label(y),
        }),
        None => Ok(()),
    }
}

fn witness_from(t: &CayleyTable, set: &ElementSet, identity: usize) -> GroupWitness {
    let mut carrier = t.labels_of(set);
    carrier.sort_unstable();
    GroupWitness {
        order: carrier.len(),
        carrier,
        identity: t.label(identity),
    }
}

/// Units of the local monoid eSe, for an idempotent `e`.
fn units_at(t: &CayleyTable, e: usize) -> ElementSet {
    let local = ElementSet::from_indices(t.size(), (0..t.size()).map(|x| t.op(t.op(e, x), e)));
    let members: Vec<usize> = local.iter().collect();
    ElementSet::from_indices(
        t.size(),
        members
            .iter()
            .copied()
            .filter(|&x| members.iter().any(|&y| t.op(x, y) == e && t.op(y, x) == e)),
    )
}

/// Maximal subgroup of `t` whose identity is the idempotent `e`.
pub fn maximal_subgroup_at(t: &CayleyTable, e: Label) -> Result<GroupWitness, EmbedError> {
    require_associative(t)?;
    let ei = t.index_of(e).ok_or(EmbedError::UnknownLabel(e))?;
    if t.op(ei, ei) != ei {
        return Err(EmbedError::NotIdempotent(e));
    }
    Ok(witness_from(t, &units_at(t, ei), ei))
}

fn maximal_subgroups(t: &CayleyTable, min_order: usize) -> Vec<GroupWitness> {
    let mut found: Vec<GroupWitness> = t
        .idempotents()
        .into_iter()
        .map(|e| witness_from(t, &units_at(t, e), e))
        .filter(|w| w.order >= min_order)
        .collect();
    sort_witnesses(&mut found, |w| (w.order, &w.carrier));
    found
}

/// One maximal subgroup per idempotent, keeping those of order at least
/// `min_order`, sorted by order descending then carrier.
pub fn embedded_groups(t: &CayleyTable, min_order: usize) -> Result<Vec<GroupWitness>, EmbedError> {
    require_associative(t)?;
    Ok(maximal_subgroups(t, min_order))
}

/// Every subset of at most `max_size` elements that forms a group under
/// the induced operation, found by exhaustive enumeration of the subset
/// lattice. Branches are cut only when an included pair already has its
/// product excluded, so no closed subset is skipped.
pub fn brute_force_groups(
    t: &CayleyTable,
    max_size: usize,
) -> Result<Vec<GroupWitness>, EmbedError> {
    require_associative(t)?;
    let n = t.size();
    if n > BRUTE_FORCE_LIMIT {
        return Err(EmbedError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut search = SubsetSearch {
        t,
        n,
        max_size,
        out: &mut out,
    };
    search.descend(0, 0, 0);
    sort_witnesses(&mut out, |w| (w.order, &w.carrier));
    Ok(out)
}

struct SubsetSearch<'a> {
    t: &'a CayleyTable,
    n: usize,
    max_size: usize,
    out: &'a mut Vec<GroupWitness>,
}

impl SubsetSearch<'_> {
    /// `included` is a closed-so-far subset of `0..i`; `forced` holds the
    /// products of included pairs that land at index `i` or later.
    fn descend(&mut self, i: usize, included: u64, forced: u64) {
        if i == self.n {
            if included != 0 {
                if let Some(w) = self.group_witness(included) {
                    self.out.push(w);
                }
            }
            return;
        }
        let bit = 1u64 << i;
        // exclude i
        if forced & bit == 0 {
            self.descend(i + 1, included, forced);
        }
        // include i
        if (included.count_ones() as usize) < self.max_size {
            let with = included | bit;
            let mut next_forced = forced;
            let mut ok = true;
            for j in (0..=i).filter(|&j| with & (1 << j) != 0) {
                for p in [self.t.op(i, j), self.t.op(j, i)] {
                    if p <= i {
                        if with & (1 << p) == 0 {
                            ok = false;
                        }
                    } else {
                        next_forced |= 1 << p;
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.descend(i + 1, with, next_forced);
            }
        }
    }

    fn group_witness(&self, mask: u64) -> Option<GroupWitness> {
        let t = self.t;
        let members: Vec<usize> = (0..self.n).filter(|&k| mask & (1 << k) != 0).collect();
        let e = *members
            .iter()
            .find(|&&e| members.iter().all(|&x| t.op(e, x) == x && t.op(x, e) == x))?;
        let invertible = members
            .iter()
            .all(|&x| members.iter().any(|&y| t.op(x, y) == e && t.op(y, x) == e));
        invertible.then(|| {
            witness_from(
                t,
                &ElementSet::from_indices(t.size(), members.iter().copied()),
                e,
            )
        })
    }
}

/// Proper in the sense used by the special predicates: nonempty, not the
/// whole carrier, and not the singleton of the ambient identity if there is one.
fn is_proper(t: &CayleyTable, carrier: &[Label], ambient_identity: Option<Label>) -> bool {
    !carrier.is_empty()
        && carrier.len() != t.size()
        && !(carrier.len() == 1 && Some(carrier[0]) == ambient_identity)
}

fn special_verdict(t: &CayleyTable, min_order: usize) -> SpecialVerdict<GroupWitness> {
    let class = t.classify();
    if class.kind.is_group() {
        return SpecialVerdict::negative(VerdictReason::IsAlreadyTargetKind);
    }
    let witnesses = maximal_subgroups(t, min_order.max(1))
        .into_iter()
        .filter(|w| is_proper(t, &w.carrier, class.identity))
        .collect();
    SpecialVerdict::from_witnesses(witnesses)
}

/// A semigroup that is not a group but has a proper subset of order at
/// least `min_order` forming a group under the same operation.
pub fn is_special_semigroup(
    t: &CayleyTable,
    min_order: usize,
) -> Result<SpecialVerdict<GroupWitness>, EmbedError> {
    require_associative(t)?;
    Ok(special_verdict(t, min_order))
}

/// As [`is_special_semigroup`], but the table must have a two-sided identity.
pub fn is_special_monoid(
    t: &CayleyTable,
    min_order: usize,
) -> Result<SpecialVerdict<GroupWitness>, EmbedError> {
    require_associative(t)?;
    if t.identity().is_none() {
        return Err(EmbedError::NotMonoid);
    }
    Ok(special_verdict(t, min_order))
}
