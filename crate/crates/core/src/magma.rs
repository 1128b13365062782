//! Finite sets with one binary operation, stored as Cayley tables.
//!
//! Elements are addressed by index internally; integer labels only appear at
//! the boundary (construction and reporting).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::subset::ElementSet;

/// Integer label of a carrier element (residues mod n in most uses).
pub type Label = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagmaError {
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("not closed: {left} * {right} = {product} is outside the carrier")]
    NotClosed {
        left: Label,
        right: Label,
        product: Label,
    },
    #[error("shape mismatch: expected {expected} x {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: String },
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("empty subset")]
    EmptySubset,
    #[error("label {0} is not an element of the carrier")]
    UnknownLabel(Label),
}

/// A finite carrier with one closed binary operation.
///
/// Row = left operand, column = right operand.
#[derive(Clone)]
pub struct CayleyTable {
    labels: Vec<Label>,
    entries: Vec<usize>,
    index: HashMap<Label, usize>,
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.entries == other.entries
    }
}

impl Eq for CayleyTable {}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyTable")
            .field("labels", &self.labels)
            .field("rows", &self.label_rows())
            .finish()
    }
}

fn index_labels(labels: &[Label]) -> Result<HashMap<Label, usize>, MagmaError> {
    if labels.is_empty() {
        return Err(MagmaError::EmptyCarrier);
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, &l) in labels.iter().enumerate() {
        if index.insert(l, i).is_some() {
            return Err(MagmaError::DuplicateLabel(l));
        }
    }
    Ok(index)
}

impl CayleyTable {
    /// Builds a table from labels and a square matrix of product labels.
    pub fn new(labels: Vec<Label>, rows: &[Vec<Label>]) -> Result<Self, MagmaError> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        if rows.len() != n {
            return Err(MagmaError::ShapeMismatch {
                expected: n,
                found: format!("{} rows", rows.len()),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MagmaError::ShapeMismatch {
                    expected: n,
                    found: format!("{} entries in row {}", row.len(), i + 1),
                });
            }
            for (j, &product) in row.iter().enumerate() {
                match index.get(&product) {
                    Some(&k) => entries.push(k),
                    None => {
                        return Err(MagmaError::NotClosed {
                            left: labels[i],
                            right: labels[j],
                            product,
                        })
                    }
                }
            }
        }
        Ok(CayleyTable {
            labels,
            entries,
            index,
        })
    }

    /// Builds a table from a label-level operation, failing on the first
    /// product that leaves the carrier.
    pub fn from_label_op<F>(labels: Vec<Label>, op: F) -> Result<Self, MagmaError>
    where
        F: Fn(Label, Label) -> Label,
    {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut entries = Vec::with_capacity(n * n);
        for &x in &labels {
            for &y in &labels {
                let product = op(x, y);
                match index.get(&product) {
                    Some(&k) => entries.push(k),
                    None => {
                        return Err(MagmaError::NotClosed {
                            left: x,
                            right: y,
                            product,
                        })
                    }
                }
            }
        }
        Ok(CayleyTable {
            labels,
            entries,
            index,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Product of two element indices.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.labels.len() + y]
    }

    /// Product of two labels, `None` if either is not in the carrier.
    pub fn op_labels(&self, x: Label, y: Label) -> Option<Label> {
        Some(self.label(self.op(self.index_of(x)?, self.index_of(y)?)))
    }

    pub fn label_rows(&self) -> Vec<Vec<Label>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.label(self.op(i, j))).collect())
            .collect()
    }

    pub(crate) fn indices_of(&self, subset: &[Label]) -> Result<ElementSet, MagmaError> {
        if subset.is_empty() {
            return Err(MagmaError::EmptySubset);
        }
        let mut set = ElementSet::empty(self.size());
        for &l in subset {
            set.insert(self.index_of(l).ok_or(MagmaError::UnknownLabel(l))?);
        }
        Ok(set)
    }

    pub(crate) fn labels_of(&self, set: &ElementSet) -> Vec<Label> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// Grows the closed set `span` by `fresh` elements until it is closed again.
    fn extend_closure(&self, span: &mut ElementSet, fresh: impl Iterator<Item = usize>) {
        let mut queue: Vec<usize> = fresh.filter(|&g| span.insert(g)).collect();
        while let Some(u) = queue.pop() {
            let members: Vec<usize> = span.iter().collect();
            for v in members {
                for w in [self.op(u, v), self.op(v, u)] {
                    if span.insert(w) {
                        queue.push(w);
                    }
                }
            }
        }
    }

    /// A generating set chosen greedily in index order: each generator is the
    /// first element outside the span of the previous ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = ElementSet::empty(self.size());
        for c in 0..self.size() {
            if !span.contains(c) {
                gens.push(c);
                self.extend_closure(&mut span, std::iter::once(c));
            }
        }
        gens
    }

    /// Light's associativity test over a generating set.
    ///
    /// For each generator `a`, compares `(x·a)·y` with `x·(a·y)` for all
    /// `x, y`. The set of `a` passing this check is closed under the
    /// operation, so passing on generators implies associativity.
    /// Returns a failing triple `(x, a, y)` as indices.
    pub fn associativity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for a in self.generators() {
            for x in 0..n {
                let xa = self.op(x, a);
                for y in 0..n {
                    if self.op(xa, y) != self.op(x, self.op(a, y)) {
                        return Some((x, a, y));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_counterexample().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (i + 1..n).all(|j| self.op(i, j) == self.op(j, i)))
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        let n = self.size();
        (0..n).find(|&e| (0..n).all(|x| self.op(e, x) == x && self.op(x, e) == x))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.op(x, x) == x).collect()
    }

    fn every_element_invertible(&self, e: usize) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..n).any(|y| self.op(x, y) == e && self.op(y, x) == e))
    }

    pub fn classify(&self) -> StructureClass {
        let commutative = self.is_commutative();
        let idempotents: BTreeSet<Label> = self
            .idempotents()
            .into_iter()
            .map(|i| self.label(i))
            .collect();
        if !self.is_associative() {
            return StructureClass {
                kind: StructureKind::Magma,
                identity: None,
                idempotents,
                commutative,
            };
        }
        let identity = self.identity();
        let kind = match identity {
            Some(e) if self.every_element_invertible(e) => StructureKind::Group,
            Some(_) => StructureKind::Monoid,
            None => StructureKind::Semigroup,
        };
        StructureClass {
            kind: if commutative {
                kind.commutative()
            } else {
                kind
            },
            identity: identity.map(|e| self.label(e)),
            idempotents,
            commutative,
        }
    }

    /// Checks that `set` is closed, reporting the first escaping product.
    pub(crate) fn check_closed(&self, set: &ElementSet) -> Result<(), MagmaError> {
        for x in set.iter() {
            for y in set.iter() {
                let p = self.op(x, y);
                if !set.contains(p) {
                    return Err(MagmaError::NotClosed {
                        left: self.label(x),
                        right: self.label(y),
                        product: self.label(p),
                    });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn restrict_set(&self, set: &ElementSet) -> Result<CayleyTable, MagmaError> {
        if set.is_empty() {
            return Err(MagmaError::EmptySubset);
        }
        self.check_closed(set)?;
        let members: Vec<usize> = set.iter().collect();
        let mut local = vec![usize::MAX; self.size()];
        for (k, &m) in members.iter().enumerate() {
            local[m] = k;
        }
        let labels: Vec<Label> = members.iter().map(|&m| self.label(m)).collect();
        let mut entries = Vec::with_capacity(members.len() * members.len());
        for &x in &members {
            for &y in &members {
                entries.push(local[self.op(x, y)]);
            }
        }
        let index = index_labels(&labels)?;
        Ok(CayleyTable {
            labels,
            entries,
            index,
        })
    }

    /// Induced table on a closed subset. Elements keep their ambient order.
    pub fn restrict(&self, subset: &[Label]) -> Result<CayleyTable, MagmaError> {
        self.restrict_set(&self.indices_of(subset)?)
    }
}

/// Single-operation structure kinds, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Magma,
    Semigroup,
    CommutativeSemigroup,
    Monoid,
    CommutativeMonoid,
    Group,
    AbelianGroup,
}

const ASSOCIATIVE: u8 = 1;
const COMMUTATIVE: u8 = 2;
const IDENTITY: u8 = 4;
const INVERSES: u8 = 8;

impl StructureKind {
    pub const ALL: [StructureKind; 7] = [
        StructureKind::Magma,
        StructureKind::Semigroup,
        StructureKind::CommutativeSemigroup,
        StructureKind::Monoid,
        StructureKind::CommutativeMonoid,
        StructureKind::Group,
        StructureKind::AbelianGroup,
    ];

    fn commutative(self) -> Self {
        match self {
            StructureKind::Semigroup => StructureKind::CommutativeSemigroup,
            StructureKind::Monoid => StructureKind::CommutativeMonoid,
            StructureKind::Group => StructureKind::AbelianGroup,
            other => other,
        }
    }

    fn axioms(self) -> u8 {
        match self {
            StructureKind::Magma => 0,
            StructureKind::Semigroup => ASSOCIATIVE,
            StructureKind::CommutativeSemigroup => ASSOCIATIVE | COMMUTATIVE,
            StructureKind::Monoid => ASSOCIATIVE | IDENTITY,
            StructureKind::CommutativeMonoid => ASSOCIATIVE | IDENTITY | COMMUTATIVE,
            StructureKind::Group => ASSOCIATIVE | IDENTITY | INVERSES,
            StructureKind::AbelianGroup => ASSOCIATIVE | IDENTITY | INVERSES | COMMUTATIVE,
        }
    }

    pub fn has_identity(self) -> bool {
        self.axioms() & IDENTITY != 0
    }

    pub fn is_group(self) -> bool {
        self.axioms() & INVERSES != 0
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Magma => "magma",
            StructureKind::Semigroup => "semigroup",
            StructureKind::CommutativeSemigroup => "commutative semigroup",
            StructureKind::Monoid => "monoid",
            StructureKind::CommutativeMonoid => "commutative monoid",
            StructureKind::Group => "group",
            StructureKind::AbelianGroup => "abelian group",
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Strict refinement between single-operation kinds: `stronger` satisfies
/// every axiom of `weaker` and at least one more.
///
/// The order starts at semigroups; `Magma` is not part of it and compares
/// false against everything.
pub fn is_refinement(weaker: StructureKind, stronger: StructureKind) -> bool {
    if weaker == StructureKind::Magma || stronger == StructureKind::Magma {
        return false;
    }
    let (a, b) = (weaker.axioms(), stronger.axioms());
    a != b && a & b == a
}

/// Classification of a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub kind: StructureKind,
    pub identity: Option<Label>,
    pub idempotents: BTreeSet<Label>,
    pub commutative: bool,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        match self.identity {
            Some(e) => write!(f, "; identity {e}"),
            None => write!(f, "; no identity"),
        }
    }
}
