//! Two-operation structures: ring axioms, classification, embedded fields,
//! ideals, and the special ring / subring / ideal predicates.
//!
//! Rings need not have a multiplicative unity. A field found inside a ring
//! takes some idempotent of the ambient multiplication as its own unity,
//! which need not be the ambient unity (or exist in the ambient ring at all).

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::embed::{sort_witnesses, SpecialVerdict, VerdictReason};
use crate::magma::{CayleyTable, Label, MagmaError, StructureKind};
use crate::modular::{multiples, zn_table, Law};
use crate::subset::ElementSet;

/// Upper bound on the number of additive subgroups `embedded_fields` will
/// enumerate before giving up.
pub const SUBGROUP_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error(transparent)]
    Table(#[from] MagmaError),
    #[error("addition and multiplication tables have different carriers")]
    LabelMismatch,
    #[error("addition is not an abelian group (it is a {0})")]
    AddNotAbelianGroup(StructureKind),
    #[error(
        "multiplication is not associative: ({left}*{middle})*{right} != {left}*({middle}*{right})"
    )]
    MulNotAssociative {
        left: Label,
        middle: Label,
        right: Label,
    },
    #[error("{side:?} distributivity fails at ({x}, {y}, {z})")]
    NotDistributive {
        x: Label,
        y: Label,
        z: Label,
        side: Side,
    },
    #[error("more than {limit} additive subgroups to search")]
    TooLarge { limit: usize },
}

/// A carrier with validated addition and multiplication tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTable {
    add: CayleyTable,
    mul: CayleyTable,
    zero: usize,
}

impl RingTable {
    /// Builds and validates a ring from label matrices.
    pub fn new(
        labels: Vec<Label>,
        add_rows: &[Vec<Label>],
        mul_rows: &[Vec<Label>],
    ) -> Result<Self, RingError> {
        let add = CayleyTable::new(labels.clone(), add_rows)?;
        let mul = CayleyTable::new(labels, mul_rows)?;
        Self::from_tables(add, mul)
    }

    /// Validates a pair of tables on the same carrier: abelian addition,
    /// associative multiplication, and both distributive laws.
    pub fn from_tables(add: CayleyTable, mul: CayleyTable) -> Result<Self, RingError> {
        if add.labels() != mul.labels() {
            return Err(RingError::LabelMismatch);
        }
        let add_class = add.classify();
        if add_class.kind != StructureKind::AbelianGroup {
            return Err(RingError::AddNotAbelianGroup(add_class.kind));
        }
        let zero = add.identity().expect("abelian group has an identity");
        if let Some((x, a, y)) = mul.associativity_counterexample() {
            return Err(RingError::MulNotAssociative {
                left: mul.label(x),
                middle: mul.label(a),
                right: mul.label(y),
            });
        }
        let rt = RingTable { add, mul, zero };
        if let Some((x, y, z, side)) = rt.distributivity_counterexample() {
            return Err(RingError::NotDistributive {
                x: rt.label(x),
                y: rt.label(y),
                z: rt.label(z),
                side,
            });
        }
        Ok(rt)
    }

    /// First triple violating x·(y+z) = x·y + x·z (left) or
    /// (y+z)·x = y·x + z·x (right), as indices.
    fn distributivity_counterexample(&self) -> Option<(usize, usize, usize, Side)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let yz = self.add(y, z);
                    if self.mul(x, yz) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return Some((x, y, z, Side::Left));
                    }
                    if self.mul(yz, x) != self.add(self.mul(y, x), self.mul(z, x)) {
                        return Some((x, y, z, Side::Right));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn labels(&self) -> &[Label] {
        self.add.labels()
    }

    pub fn label(&self, i: usize) -> Label {
        self.add.label(i)
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.add.index_of(label)
    }

    pub fn zero(&self) -> Label {
        self.label(self.zero)
    }

    pub fn add_table(&self) -> &CayleyTable {
        &self.add
    }

    pub fn mul_table(&self) -> &CayleyTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add.op(x, y)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul.op(x, y)
    }

    /// Evaluates both distributive laws at a labelled triple.
    pub fn distributes_at(&self, x: Label, y: Label, z: Label) -> Option<(bool, bool)> {
        let (x, y, z) = (self.index_of(x)?, self.index_of(y)?, self.index_of(z)?);
        let yz = self.add(y, z);
        Some((
            self.mul(x, yz) == self.add(self.mul(x, y), self.mul(x, z)),
            self.mul(yz, x) == self.add(self.mul(y, x), self.mul(z, x)),
        ))
    }

    /// Induced ring on a subset closed under both operations.
    /// Elements keep their ambient order.
    pub fn restrict(&self, subset: &[Label]) -> Result<RingTable, RingError> {
        let set = self.add.indices_of(subset)?;
        self.restrict_set(&set)
    }

    fn restrict_set(&self, set: &ElementSet) -> Result<RingTable, RingError> {
        let add = self.add.restrict_set(set)?;
        let mul = self.mul.restrict_set(set)?;
        // a nonempty subset closed under addition in a finite group is a
        // subgroup; the remaining axioms are inherited
        let zero = add
            .index_of(self.zero())
            .expect("closed additive subset contains zero");
        Ok(RingTable { add, mul, zero })
    }

    pub fn classify(&self) -> RingClass {
        let commutative = self.mul.is_commutative();
        let unity = self.mul.identity();
        let kind = match (unity, commutative) {
            (Some(u), true) if self.size() >= 2 && self.nonzero_invertible(u) => RingKind::Field,
            (Some(_), true) => RingKind::CommutativeUnitalRing,
            (Some(_), false) => RingKind::UnitalRing,
            (None, true) => RingKind::CommutativeRng,
            (None, false) => RingKind::Rng,
        };
        RingClass {
            kind,
            unity: unity.map(|u| self.label(u)),
            commutative,
        }
    }

    fn nonzero_invertible(&self, unity: usize) -> bool {
        let n = self.size();
        (0..n)
            .filter(|&x| x != self.zero)
            .all(|x| (0..n).any(|y| self.mul(x, y) == unity))
    }

    /// Cyclic additive subgroup generated by `g`.
    fn additive_cycle(&self, g: usize) -> ElementSet {
        let mut set = ElementSet::empty(self.size());
        let mut x = g;
        while set.insert(x) {
            x = self.add(x, g);
        }
        set
    }

    /// All additive subgroups, by joining cyclic subgroups onto already
    /// found subgroups starting from {0}.
    pub(crate) fn additive_subgroups(&self) -> Result<Vec<ElementSet>, RingError> {
        let n = self.size();
        let mut cycles: Vec<ElementSet> = Vec::new();
        let mut seen_cycles = HashSet::new();
        for g in 0..n {
            let c = self.additive_cycle(g);
            if seen_cycles.insert(c.clone()) {
                cycles.push(c);
            }
        }
        let trivial = ElementSet::from_indices(n, [self.zero]);
        let mut seen = HashSet::from([trivial.clone()]);
        let mut found = vec![trivial];
        let mut next = 0;
        while next < found.len() {
            let h = found[next].clone();
            next += 1;
            for c in cycles.iter().filter(|c| !c.is_subset(&h)) {
                let mut joined = ElementSet::empty(n);
                for a in h.iter() {
                    for b in c.iter() {
                        joined.insert(self.add(a, b));
                    }
                }
                if seen.insert(joined.clone()) {
                    if found.len() >= SUBGROUP_LIMIT {
                        return Err(RingError::TooLarge {
                            limit: SUBGROUP_LIMIT,
                        });
                    }
                    found.push(joined);
                }
            }
        }
        Ok(found)
    }

    /// Field structure on an additive subgroup, if it has one: closed
    /// under multiplication, commutative, with a unity and inverses for
    /// every non-zero element.
    fn field_on(&self, h: &ElementSet) -> Option<FieldWitness> {
        if h.len() < 2 {
            return None;
        }
        let members: Vec<usize> = h.iter().collect();
        for &x in &members {
            for &y in &members {
                if !h.contains(self.mul(x, y)) || self.mul(x, y) != self.mul(y, x) {
                    return None;
                }
            }
        }
        let unity = *members
            .iter()
            .find(|&&u| members.iter().all(|&x| self.mul(u, x) == x))?;
        let invertible = members
            .iter()
            .filter(|&&x| x != self.zero)
            .all(|&x| members.iter().any(|&y| self.mul(x, y) == unity));
        if !invertible {
            return None;
        }
        let mut carrier: Vec<Label> = members.iter().map(|&i| self.label(i)).collect();
        carrier.sort_unstable();
        Some(FieldWitness {
            order: carrier.len(),
            carrier,
            zero: self.zero(),
            unity: self.label(unity),
        })
    }

    fn is_proper(&self, set: &ElementSet) -> bool {
        let unity = self.mul.identity();
        !set.is_empty()
            && set.len() != self.size()
            && !(set.len() == 1 && unity.is_some_and(|u| set.contains(u)))
    }

    /// Proper subsets that form a field under the induced operations,
    /// sorted by order descending then carrier.
    pub fn embedded_fields(&self) -> Result<Vec<FieldWitness>, RingError> {
        let mut out: Vec<FieldWitness> = self
            .additive_subgroups()?
            .iter()
            .filter(|h| self.is_proper(h))
            .filter_map(|h| self.field_on(h))
            .collect();
        sort_witnesses(&mut out, |w| (w.order, &w.carrier));
        Ok(out)
    }

    /// Additive subgroup absorbing multiplication by every ring element on
    /// both sides. Labels outside the carrier make this false.
    pub fn is_ideal(&self, subset: &[Label]) -> bool {
        let Ok(set) = self.add.indices_of(subset) else {
            return false;
        };
        if self.add.check_closed(&set).is_err() {
            return false;
        }
        let absorbs = set.iter().all(|a| {
            (0..self.size()).all(|r| set.contains(self.mul(r, a)) && set.contains(self.mul(a, r)))
        });
        absorbs
    }

    /// Not a field, yet some proper subset is a field.
    pub fn is_special_ring(&self) -> Result<SpecialVerdict<FieldWitness>, RingError> {
        if self.classify().kind == RingKind::Field {
            return Ok(SpecialVerdict::negative(VerdictReason::IsAlreadyTargetKind));
        }
        Ok(SpecialVerdict::from_witnesses(self.embedded_fields()?))
    }

    /// `subset` is a proper subset of this ring, closed under both
    /// operations, and both it and this ring are special rings. The
    /// witnesses reported are those of the subring.
    pub fn is_special_subring(
        &self,
        subset: &[Label],
    ) -> Result<SpecialVerdict<FieldWitness>, RingError> {
        let set = self.add.indices_of(subset)?;
        if !self.is_proper(&set) {
            return Ok(SpecialVerdict::negative(VerdictReason::NotProperSubset));
        }
        let inner = self.restrict_set(&set)?;
        let verdict = inner.is_special_ring()?;
        if !verdict.special {
            return Ok(verdict);
        }
        if !self.is_special_ring()?.special {
            return Ok(SpecialVerdict::negative(VerdictReason::AmbientNotSpecial));
        }
        Ok(verdict)
    }

    /// `subset` is an ideal of this ring which is not a field but has a
    /// proper subset (proper within the ideal) that is a field.
    pub fn is_special_ideal(
        &self,
        subset: &[Label],
    ) -> Result<SpecialVerdict<FieldWitness>, RingError> {
        if !self.is_ideal(subset) {
            return Ok(SpecialVerdict::negative(VerdictReason::NotIdeal));
        }
        self.restrict(subset)?.is_special_ring()
    }
}

/// Two-operation kinds, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    Rng,
    CommutativeRng,
    UnitalRing,
    CommutativeUnitalRing,
    Field,
}

impl RingKind {
    pub const ALL: [RingKind; 5] = [
        RingKind::Rng,
        RingKind::CommutativeRng,
        RingKind::UnitalRing,
        RingKind::CommutativeUnitalRing,
        RingKind::Field,
    ];

    fn axioms(self) -> u8 {
        match self {
            RingKind::Rng => 0,
            RingKind::CommutativeRng => 1,
            RingKind::UnitalRing => 2,
            RingKind::CommutativeUnitalRing => 3,
            RingKind::Field => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Rng => "rng",
            RingKind::CommutativeRng => "commutative rng",
            RingKind::UnitalRing => "unital ring",
            RingKind::CommutativeUnitalRing => "commutative unital ring",
            RingKind::Field => "field",
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Strict refinement between ring kinds.
pub fn is_ring_refinement(weaker: RingKind, stronger: RingKind) -> bool {
    let (a, b) = (weaker.axioms(), stronger.axioms());
    a != b && a & b == a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingClass {
    pub kind: RingKind,
    pub unity: Option<Label>,
    pub commutative: bool,
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        match self.unity {
            Some(u) => write!(f, "; unity {u}"),
            None => write!(f, "; no unity"),
        }
    }
}

/// A subset forming a field under the ambient operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldWitness {
    /// Sorted ascending.
    pub carrier: Vec<Label>,
    pub zero: Label,
    pub unity: Label,
    pub order: usize,
}

impl fmt::Display for FieldWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}} zero {} unity {}",
            crate::embed::join_labels(&self.carrier, ","),
            self.zero,
            self.unity
        )
    }
}

/// Ring of residues in `subset` under + and × mod n.
pub fn zn_ring(subset: &[u64], n: u64) -> Result<RingTable, RingError> {
    RingTable::from_tables(
        zn_table(subset, n, Law::Add)?,
        zn_table(subset, n, Law::Mul)?,
    )
}

/// The full residue ring Z_n.
pub fn residue_ring(n: u64) -> RingTable {
    let all: Vec<u64> = (0..n).collect();
    zn_ring(&all, n).expect("Z_n is a ring")
}

/// The subring dZ_n of multiples of `d`.
pub fn multiples_ring(d: u64, n: u64) -> RingTable {
    zn_ring(&multiples(d, n), n).expect("dZ_n is a ring")
}
