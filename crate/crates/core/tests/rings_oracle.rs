mod common;

use std::collections::BTreeSet;

use common::{fields_by_raw_enumeration, fields_by_subset_search, is_prime, OracleField};
use finalg::embed::VerdictReason;
use finalg::magma::{CayleyTable, Label};
use finalg::modular::{divisors, multiples, zn_table, Law};
use finalg::rings::{
    multiples_ring, residue_ring, zn_ring, FieldWitness, RingError, RingKind, RingTable, Side,
};
use proptest::prelude::*;

fn as_oracle(ws: &[FieldWitness]) -> BTreeSet<OracleField> {
    ws.iter()
        .map(|w| OracleField {
            carrier: w.carrier.clone(),
            unity: w.unity,
        })
        .collect()
}

fn ring_from_ops(
    n: Label,
    add: impl Fn(Label, Label) -> Label,
    mul: impl Fn(Label, Label) -> Label,
) -> RingTable {
    let labels: Vec<Label> = (0..n).collect();
    RingTable::from_tables(
        CayleyTable::from_label_op(labels.clone(), add).unwrap(),
        CayleyTable::from_label_op(labels, mul).unwrap(),
    )
    .unwrap()
}

/// 2x2 matrices over Z_2, entry (r, c) stored in bit 2r + c.
fn matrices_z2() -> RingTable {
    let bit = |m: Label, r: Label, c: Label| (m >> (2 * r + c)) & 1;
    ring_from_ops(
        16,
        |x, y| x ^ y,
        |x, y| {
            let mut out = 0;
            for r in 0..2 {
                for c in 0..2 {
                    let v = (bit(x, r, 0) & bit(y, 0, c)) ^ (bit(x, r, 1) & bit(y, 1, c));
                    out |= v << (2 * r + c);
                }
            }
            out
        },
    )
}

/// F_4 as Z_2[t]/(t^2 + t + 1), element a + bt stored as a + 2b.
fn f4() -> RingTable {
    ring_from_ops(
        4,
        |x, y| x ^ y,
        |x, y| {
            let (a, b, c, d) = (x & 1, x >> 1, y & 1, y >> 1);
            let bd = b & d;
            ((a & c) ^ bd) | (((a & d) ^ (b & c) ^ bd) << 1)
        },
    )
}

/// Z_m x Z_k with componentwise operations, (i, j) stored as i·k + j.
fn product(m: Label, k: Label) -> RingTable {
    let split = move |x: Label| (x / k, x % k);
    ring_from_ops(
        m * k,
        move |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            ((a + c) % m) * k + (b + d) % k
        },
        move |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            ((a * c) % m) * k + (b * d) % k
        },
    )
}

/// Z_2[t]/(t^2), element a + bt stored as a + 2b.
fn dual_numbers_z2() -> RingTable {
    ring_from_ops(
        4,
        |x, y| x ^ y,
        |x, y| {
            let (a, b, c, d) = (x & 1, x >> 1, y & 1, y >> 1);
            (a & c) | (((a & d) ^ (b & c)) << 1)
        },
    )
}

fn extra_rings() -> Vec<RingTable> {
    vec![
        matrices_z2(),
        f4(),
        product(2, 2),
        product(2, 3),
        product(3, 3),
        product(2, 5),
        product(3, 4),
        dual_numbers_z2(),
        ring_from_ops(1, |_, _| 0, |_, _| 0),
        // zero multiplication on Z_6
        ring_from_ops(6, |x, y| (x + y) % 6, |_, _| 0),
    ]
}

fn zn_corpus(max_n: u64) -> Vec<(String, RingTable)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for d in divisors(n) {
            let name = if d == 1 {
                format!("Z_{n}")
            } else {
                format!("{d}Z_{n}")
            };
            out.push((name, multiples_ring(d, n)));
        }
    }
    out
}

#[test]
fn embedded_fields_match_subset_oracle() {
    for (name, rt) in zn_corpus(30) {
        let fast = as_oracle(&rt.embedded_fields().unwrap());
        assert_eq!(fast, fields_by_subset_search(&rt), "{name}");
    }
    for (i, rt) in extra_rings().iter().enumerate() {
        let fast = as_oracle(&rt.embedded_fields().unwrap());
        assert_eq!(fast, fields_by_subset_search(rt), "extra ring {i}");
    }
}

#[test]
fn subset_oracle_matches_raw_enumeration() {
    for (name, rt) in zn_corpus(16) {
        assert_eq!(
            fields_by_subset_search(&rt),
            fields_by_raw_enumeration(&rt),
            "{name}"
        );
    }
    for rt in extra_rings().iter().filter(|r| r.size() <= 16) {
        assert_eq!(fields_by_subset_search(rt), fields_by_raw_enumeration(rt));
    }
}

#[test]
fn residue_rings_are_fields_exactly_at_primes() {
    for n in 1..100 {
        let kind = residue_ring(n).classify().kind;
        assert_eq!(kind == RingKind::Field, is_prime(n), "Z_{n} is {kind}");
        if n >= 2 {
            assert!(kind >= RingKind::CommutativeUnitalRing);
        }
    }
}

#[test]
fn multiples_are_ideals() {
    for n in 1..=60 {
        let z = residue_ring(n);
        for d in divisors(n) {
            let m: Vec<Label> = multiples(d, n).iter().map(|&x| x as Label).collect();
            assert!(z.is_ideal(&m), "{d}Z_{n}");
        }
        // a non-subgroup is never an ideal
        if n >= 3 {
            assert!(!z.is_ideal(&[0, 1]));
        }
    }
}

#[test]
fn witness_orders_are_prime_powers_and_fields() {
    let prime_power = |q: usize| {
        let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
        }
        r == 1
    };
    let mut rings: Vec<RingTable> = zn_corpus(60).into_iter().map(|(_, r)| r).collect();
    rings.extend(extra_rings());
    for rt in rings {
        for w in rt.embedded_fields().unwrap() {
            assert!(prime_power(w.order), "{w}");
            let sub = rt.restrict(&w.carrier).unwrap();
            let c = sub.classify();
            assert_eq!(c.kind, RingKind::Field);
            assert_eq!(c.unity, Some(w.unity));
            assert_eq!(w.zero, rt.zero());
            // the unity of a subfield is an idempotent of the ambient ring
            let u = rt.index_of(w.unity).unwrap();
            assert_eq!(rt.mul(u, u), u);
        }
    }
}

#[test]
fn field_m_inside_multiples_of_six() {
    let sr = multiples_ring(6, 60);
    let class = sr.classify();
    assert_eq!(class.kind, RingKind::CommutativeRng);
    assert_eq!(class.unity, None);
    let v = sr.is_special_ring().unwrap();
    assert!(v.special);
    assert_eq!(v.witnesses.len(), 1);
    let m = &v.witnesses[0];
    assert_eq!(m.carrier, vec![0, 12, 24, 36, 48]);
    assert_eq!((m.zero, m.unity), (0, 36));

    // the non-zero part of M is cyclic of order 4 under multiplication
    let units = zn_table(&[12, 24, 36, 48], 60, Law::Mul).unwrap();
    let c = units.classify();
    assert!(c.kind.is_group());
    let cyclic = units.labels().iter().any(|&g| {
        let mut x = g;
        let mut seen = BTreeSet::new();
        while seen.insert(x) {
            x = x * g % 60;
        }
        seen.len() == 4
    });
    assert!(cyclic);

    // the ideal 6Z_60 of Z_60 is a special ideal, and Z_60 is special too
    let z60 = residue_ring(60);
    let sr_labels: Vec<Label> = (0..10).map(|k| 6 * k).collect();
    assert!(z60.is_special_ideal(&sr_labels).unwrap().special);
    assert!(z60.is_special_subring(&sr_labels).unwrap().special);
    assert!(z60.is_special_ring().unwrap().special);
}

#[test]
fn special_rings_are_not_fields() {
    let mut rings: Vec<RingTable> = zn_corpus(40).into_iter().map(|(_, r)| r).collect();
    rings.extend(extra_rings());
    for rt in rings {
        let v = rt.is_special_ring().unwrap();
        assert_eq!(v.special, !v.witnesses.is_empty());
        if rt.classify().kind == RingKind::Field {
            assert!(!v.special);
            assert_eq!(v.reason, VerdictReason::IsAlreadyTargetKind);
        }
    }
}

#[test]
fn subrings_of_fields_are_never_special() {
    for p in (2..40).filter(|&p| is_prime(p)) {
        let z = residue_ring(p);
        let v = z.is_special_subring(&[0]).unwrap();
        assert!(!v.special);
    }
    let f = f4();
    assert!(!f.is_special_subring(&[0, 1]).unwrap().special);
    assert_eq!(
        f.is_special_subring(&[0, 1, 2, 3]).unwrap().reason,
        VerdictReason::NotProperSubset
    );
}

#[test]
fn known_small_rings() {
    let m = matrices_z2();
    let c = m.classify();
    assert_eq!(c.kind, RingKind::UnitalRing);
    assert_eq!(c.unity, Some(0b1001));
    // the scalars {0, I} are the prime field, and F_4 sits inside too
    let fields = m.embedded_fields().unwrap();
    assert!(fields.iter().any(|w| w.carrier == vec![0, 9]));
    assert!(fields.iter().any(|w| w.order == 4));
    assert!(m.is_special_ring().unwrap().special);

    assert_eq!(f4().classify().kind, RingKind::Field);
    assert!(f4().embedded_fields().unwrap().iter().all(|w| w.order == 2));

    // Z_2 x Z_3 has the two coordinate fields
    let orders: Vec<usize> = product(2, 3)
        .embedded_fields()
        .unwrap()
        .iter()
        .map(|w| w.order)
        .collect();
    assert_eq!(orders, vec![3, 2]);

    assert_eq!(
        dual_numbers_z2().classify().kind,
        RingKind::CommutativeUnitalRing
    );
}

fn check_rejection(add: &CayleyTable, mul: &CayleyTable) {
    match RingTable::from_tables(add.clone(), mul.clone()) {
        Ok(_) => panic!("accepted"),
        Err(RingError::NotDistributive { x, y, z, side }) => {
            let (o, a) = (
                |p, q| mul.op_labels(p, q).unwrap(),
                |p, q| add.op_labels(p, q).unwrap(),
            );
            let holds = match side {
                Side::Left => o(x, a(y, z)) == a(o(x, y), o(x, z)),
                Side::Right => o(a(y, z), x) == a(o(y, x), o(z, x)),
            };
            assert!(!holds);
        }
        Err(RingError::MulNotAssociative {
            left,
            middle,
            right,
        }) => {
            let o = |p, q| mul.op_labels(p, q).unwrap();
            assert_ne!(o(o(left, middle), right), o(left, o(middle, right)));
        }
        Err(RingError::AddNotAbelianGroup(kind)) => {
            assert!(kind != finalg::magma::StructureKind::AbelianGroup)
        }
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn rejections_carry_real_counterexamples() {
    for n in 2..=12 {
        let labels: Vec<Label> = (0..n).collect();
        let add = CayleyTable::from_label_op(labels.clone(), |x, y| (x + y) % n).unwrap();
        let maxes = CayleyTable::from_label_op(labels.clone(), |x, y| x.max(y)).unwrap();
        let ones = CayleyTable::from_label_op(labels.clone(), |_, _| 1).unwrap();
        let left = CayleyTable::from_label_op(labels.clone(), |x, _| x).unwrap();
        check_rejection(&add, &maxes);
        check_rejection(&add, &ones);
        check_rejection(&add, &left);
        check_rejection(&maxes, &add);
    }
    assert!(matches!(zn_ring(&[1, 2], 5), Err(RingError::Table(_))));
}

proptest! {
    #[test]
    fn ideals_of_residue_rings_are_the_divisor_multiples(n in 2u64..48, d in 1u64..48) {
        let z = residue_ring(n);
        let m: Vec<Label> = multiples(d, n).iter().map(|&x| x as Label).collect();
        prop_assert!(z.is_ideal(&m));
        let sub = z.restrict(&m).unwrap();
        prop_assert_eq!(sub.size() as u64, n / common::gcd(d % n, n));
    }

    #[test]
    fn field_witnesses_of_multiples_rings_agree_with_oracle(n in 2u64..=40, k in 0usize..8) {
        let ds = divisors(n);
        let d = ds[k % ds.len()];
        let rt = multiples_ring(d, n);
        prop_assert_eq!(as_oracle(&rt.embedded_fields().unwrap()), fields_by_subset_search(&rt));
    }
}
