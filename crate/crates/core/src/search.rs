//! Batch scans over moduli for special semigroups, rings and ideals.
//!
//! Work is spread over moduli with rayon; results are collected and sorted
//! by `(n, a)` or `(n, d)` before they are returned, so output never
//! depends on scheduling.

use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embed::{is_special_semigroup, SpecialVerdict, DEFAULT_MIN_ORDER};
use crate::magma::Label;
use crate::modular::{divisors, generated_mul_semigroup, multiples};
use crate::rings::{multiples_ring, residue_ring, FieldWitness, RingTable};

/// Default bound on the largest modulus a scan may touch.
pub const DEFAULT_MAX_CARRIER: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchKind {
    #[serde(rename = "special-semigroup")]
    SpecialSemigroup,
    #[serde(rename = "special-ring")]
    SpecialRing,
    #[serde(rename = "special-ideal")]
    SpecialIdeal,
}

impl SearchKind {
    pub fn tag(self) -> &'static str {
        match self {
            SearchKind::SpecialSemigroup => "special-semigroup",
            SearchKind::SpecialRing => "special-ring",
            SearchKind::SpecialIdeal => "special-ideal",
        }
    }
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search: {0}")]
    InvalidSpec(String),
    #[error("cannot write findings: {0}")]
    SinkFailure(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub kind: SearchKind,
    pub modulus_range: RangeInclusive<u64>,
    /// Generators to try in semigroup scans; `None` means every `a < n`.
    pub generator_range: Option<RangeInclusive<u64>>,
    pub min_group_order: usize,
    /// Largest modulus accepted.
    pub max_carrier: u64,
    pub parallel: bool,
}

impl SearchSpec {
    pub fn new(kind: SearchKind, modulus_range: RangeInclusive<u64>) -> Self {
        SearchSpec {
            kind,
            modulus_range,
            generator_range: None,
            min_group_order: DEFAULT_MIN_ORDER,
            max_carrier: DEFAULT_MAX_CARRIER,
            parallel: true,
        }
    }

    fn validate(&self, expected: SearchKind) -> Result<(), SearchError> {
        let invalid = |m: String| Err(SearchError::InvalidSpec(m));
        if self.kind != expected {
            return invalid(format!("expected a {expected} scan, got {}", self.kind));
        }
        let (lo, hi) = (*self.modulus_range.start(), *self.modulus_range.end());
        if lo == 0 {
            return invalid("moduli must be at least 1".into());
        }
        if lo > hi {
            return invalid(format!("empty modulus range {lo}..{hi}"));
        }
        if hi > self.max_carrier {
            return invalid(format!(
                "modulus {hi} exceeds the limit {}",
                self.max_carrier
            ));
        }
        if self.min_group_order == 0 {
            return invalid("minimum group order must be at least 1".into());
        }
        Ok(())
    }
}

/// Which parameter picked the structure inside Z_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parameter {
    /// Generator of a cyclic multiplicative semigroup.
    Generator(u64),
    /// Divisor d of the subring dZ_n.
    Divisor(u64),
}

/// One special structure found by a scan.
///
/// Serialized with keys in the fixed order `kind`, `n`, `a` | `d`,
/// `carrier`, `witness`, `witness_identity`, `classification`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: SearchKind,
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    pub carrier: Vec<Label>,
    pub witness: Vec<Label>,
    pub witness_identity: Label,
    pub classification: String,
}

impl Finding {
    pub fn parameter(&self) -> Parameter {
        match (self.a, self.d) {
            (Some(a), _) => Parameter::Generator(a),
            (None, Some(d)) => Parameter::Divisor(d),
            (None, None) => panic!("finding without a parameter"),
        }
    }

    fn sort_key(&self) -> (u64, Parameter) {
        (self.n, self.parameter())
    }

    /// Reruns the predicate that produced this finding and checks that it
    /// still reports the same special verdict and leading witness.
    pub fn reverify(&self, min_group_order: usize) -> bool {
        match (self.kind, self.parameter()) {
            (SearchKind::SpecialSemigroup, Parameter::Generator(a)) => {
                semigroup_finding(self.n, a, min_group_order).as_ref() == Some(self)
            }
            (SearchKind::SpecialRing, Parameter::Divisor(d)) => {
                ring_finding(self.n, d).as_ref() == Some(self)
            }
            (SearchKind::SpecialIdeal, Parameter::Divisor(d)) => {
                ideal_finding(&residue_ring(self.n), self.n, d).as_ref() == Some(self)
            }
            _ => false,
        }
    }
}

fn sorted(labels: &[Label]) -> Vec<Label> {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v
}

fn semigroup_finding(n: u64, a: u64, min_order: usize) -> Option<Finding> {
    let t = generated_mul_semigroup(a, n);
    let verdict =
        is_special_semigroup(&t, min_order).expect("generated semigroups are associative");
    let w = verdict.witnesses.first()?;
    Some(Finding {
        kind: SearchKind::SpecialSemigroup,
        n,
        a: Some(a),
        d: None,
        carrier: sorted(t.labels()),
        witness: w.carrier.clone(),
        witness_identity: w.identity,
        classification: t.classify().kind.to_string(),
    })
}

fn field_finding(
    kind: SearchKind,
    n: u64,
    d: u64,
    ring: &RingTable,
    verdict: SpecialVerdict<FieldWitness>,
) -> Option<Finding> {
    let w = verdict.witnesses.first()?;
    Some(Finding {
        kind,
        n,
        a: None,
        d: Some(d),
        carrier: sorted(ring.labels()),
        witness: w.carrier.clone(),
        witness_identity: w.unity,
        classification: ring.classify().kind.to_string(),
    })
}

fn ring_finding(n: u64, d: u64) -> Option<Finding> {
    let ring = if d == 1 {
        residue_ring(n)
    } else {
        multiples_ring(d, n)
    };
    let verdict = ring.is_special_ring().ok()?;
    field_finding(SearchKind::SpecialRing, n, d, &ring, verdict)
}

fn ideal_finding(zn: &RingTable, n: u64, d: u64) -> Option<Finding> {
    let subset: Vec<Label> = multiples(d, n).into_iter().map(|r| r as Label).collect();
    let verdict = zn.is_special_ideal(&subset).ok()?;
    let ideal = zn.restrict(&subset).ok()?;
    field_finding(SearchKind::SpecialIdeal, n, d, &ideal, verdict)
}

/// d = 1 (the whole of Z_n) and every divisor 1 < d < n.
fn subring_divisors(n: u64) -> impl Iterator<Item = u64> {
    divisors(n).into_iter().filter(move |&d| d == 1 || d < n)
}

fn run_over_moduli<F>(spec: &SearchSpec, per_modulus: F) -> Vec<Finding>
where
    F: Fn(u64) -> Vec<Finding> + Sync + Send,
{
    let mut findings: Vec<Finding> = if spec.parallel {
        spec.modulus_range
            .clone()
            .into_par_iter()
            .flat_map_iter(&per_modulus)
            .collect()
    } else {
        spec.modulus_range.clone().flat_map(&per_modulus).collect()
    };
    findings.sort_by_key(Finding::sort_key);
    findings
}

/// Special cyclic multiplicative semigroups `<a>` inside Z_n.
pub fn scan_special_semigroups(spec: &SearchSpec) -> Result<Vec<Finding>, SearchError> {
    spec.validate(SearchKind::SpecialSemigroup)?;
    let generators = spec.generator_range.clone();
    Ok(run_over_moduli(spec, |n| {
        let (lo, hi) = match &generators {
            Some(r) => (*r.start(), (*r.end()).min(n - 1)),
            None => (0, n - 1),
        };
        (lo..=hi)
            .filter_map(|a| semigroup_finding(n, a, spec.min_group_order))
            .collect()
    }))
}

/// Special rings among Z_n and its subrings dZ_n.
pub fn scan_special_rings(spec: &SearchSpec) -> Result<Vec<Finding>, SearchError> {
    spec.validate(SearchKind::SpecialRing)?;
    Ok(run_over_moduli(spec, |n| {
        subring_divisors(n)
            .filter_map(|d| ring_finding(n, d))
            .collect()
    }))
}

/// Special ideals dZ_n of Z_n (including Z_n itself).
pub fn scan_special_ideals(spec: &SearchSpec) -> Result<Vec<Finding>, SearchError> {
    spec.validate(SearchKind::SpecialIdeal)?;
    Ok(run_over_moduli(spec, |n| {
        let zn = residue_ring(n);
        subring_divisors(n)
            .filter_map(|d| ideal_finding(&zn, n, d))
            .collect()
    }))
}

/// Dispatches on `spec.kind`.
pub fn scan(spec: &SearchSpec) -> Result<Vec<Finding>, SearchError> {
    match spec.kind {
        SearchKind::SpecialSemigroup => scan_special_semigroups(spec),
        SearchKind::SpecialRing => scan_special_rings(spec),
        SearchKind::SpecialIdeal => scan_special_ideals(spec),
    }
}

/// Writes one JSON object per line and returns the number of records.
pub fn emit_findings<W: Write>(findings: &[Finding], mut sink: W) -> Result<usize, SearchError> {
    for f in findings {
        let line = serde_json::to_string(f).expect("findings always serialize");
        sink.write_all(line.as_bytes())?;
        sink.write_all(b"\n")?;
    }
    sink.flush()?;
    Ok(findings.len())
}
