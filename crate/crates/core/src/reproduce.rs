//! Reproduction checks for the worked mod-60 examples.
//!
//! Expected values live in small `key: value` fixture files under
//! `fixtures/mod60/`. They are turned into the expected text with plain
//! string formatting only, so a regression in the library cannot leak into
//! the expected side of a check.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::embed::is_special_semigroup;
use crate::magma::Label;
use crate::modular::{generated_mul_semigroup, power_orbit};
use crate::rings::{zn_ring, FieldWitness};
use crate::text::write_table;

/// File names, in check order.
pub const FIXTURE_FILES: [&str; 6] = [
    "sg.txt",
    "ss.txt",
    "orbit.txt",
    "field_m.txt",
    "special_ring.txt",
    "special_semigroup.txt",
];

pub const CHECK_NAMES: [&str; 6] = [
    "sg-table",
    "ss-table",
    "orbit-18-mod-60",
    "field-m",
    "special-ring-sr",
    "special-semigroup-ss",
];

const BUILTIN: [&str; 6] = [
    include_str!("../fixtures/mod60/sg.txt"),
    include_str!("../fixtures/mod60/ss.txt"),
    include_str!("../fixtures/mod60/orbit.txt"),
    include_str!("../fixtures/mod60/field_m.txt"),
    include_str!("../fixtures/mod60/special_ring.txt"),
    include_str!("../fixtures/mod60/special_semigroup.txt"),
];

/// Fixture contents, or a message describing why a file could not be read.
pub struct Fixtures(Vec<Result<String, String>>);

impl Fixtures {
    pub fn builtin() -> Self {
        Fixtures(BUILTIN.iter().map(|s| Ok(s.to_string())).collect())
    }

    pub fn from_dir(dir: &Path) -> Self {
        Fixtures(
            FIXTURE_FILES
                .iter()
                .map(|f| {
                    let path = dir.join(f);
                    fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

struct Fixture<'a>(Vec<(&'a str, &'a str)>);

impl<'a> Fixture<'a> {
    fn parse(text: &'a str) -> Result<Self, String> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_once(':')
                    .map(|(k, v)| (k.trim(), v.trim()))
                    .ok_or_else(|| format!("malformed fixture line `{l}`"))
            })
            .collect::<Result<_, _>>()
            .map(Fixture)
    }

    fn get(&self, key: &str) -> Result<&'a str, String> {
        self.0
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| format!("fixture has no `{key}`"))
    }

    fn all(&self, key: &str) -> Vec<&'a str> {
        self.0
            .iter()
            .filter(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .collect()
    }

    fn numbers<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, String> {
        self.get(key)?
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| format!("`{t}` in `{key}` is not a number"))
            })
            .collect()
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<T, String> {
        let v = self.get(key)?;
        v.parse()
            .map_err(|_| format!("`{key}: {v}` is not a number"))
    }
}

/// Largest modulus a fixture may name.
const FIXTURE_MODULUS_LIMIT: u64 = 4096;

fn modulus(fx: &Fixture) -> Result<u64, String> {
    let n: u64 = fx.number("modulus")?;
    if n == 0 || n > FIXTURE_MODULUS_LIMIT {
        return Err(format!("modulus {n} outside 1..={FIXTURE_MODULUS_LIMIT}"));
    }
    Ok(n)
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn brace(mut labels: Vec<Label>) -> String {
    labels.sort_unstable();
    let inner: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Expected text for a table check, built from the fixture by formatting.
fn expected_table(fx: &Fixture) -> Result<String, String> {
    let mut out = format!("elements: {}\n", normalize(fx.get("elements")?));
    for row in fx.all("row") {
        out.push_str(&normalize(row));
        out.push('\n');
    }
    let identity = match fx.get("identity")? {
        "none" => "no identity".to_string(),
        e => format!("identity {e}"),
    };
    out.push_str(&format!(
        "classification: {}; {identity}\n",
        fx.get("kind")?
    ));
    Ok(out)
}

fn table_check(fx: &Fixture, subset: bool) -> Result<(String, String), String> {
    let expected = expected_table(fx)?;
    let ss = generated_mul_semigroup(18, 60);
    let table = if subset {
        // the carrier comes from the fixture; the products do not
        let elements: Vec<Label> = fx.numbers("elements")?;
        ss.restrict(&elements).map_err(|e| e.to_string())?
    } else {
        ss
    };
    let actual = format!(
        "{}classification: {}\n",
        write_table(&table),
        table.classify()
    );
    Ok((expected, actual))
}

fn orbit_check(fx: &Fixture) -> Result<(String, String), String> {
    let (base, modulus): (u64, u64) = (fx.number("base")?, modulus(fx)?);
    let terms = fx.get("sequence")?.split_whitespace().count();
    let expected = format!(
        "residues: {}\nsequence: {}\ntail: {}\nperiod: {}",
        normalize(fx.get("residues")?),
        normalize(fx.get("sequence")?),
        fx.get("tail")?,
        fx.get("period")?
    );
    let o = power_orbit(base, modulus);
    let join =
        |v: &mut dyn Iterator<Item = u64>| v.map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
    let actual = format!(
        "residues: {}\nsequence: {}\ntail: {}\nperiod: {}",
        join(&mut o.residues.iter().copied()),
        join(&mut (1..=terms).map(|k| o.residue_at(k))),
        o.tail,
        o.period
    );
    Ok((expected, actual))
}

fn residues(fx: &Fixture) -> Result<(Vec<u64>, u64), String> {
    Ok((fx.numbers("elements")?, modulus(fx)?))
}

fn field_check(fx: &Fixture) -> Result<(String, String), String> {
    let (elements, modulus) = residues(fx)?;
    let expected = format!(
        "kind: {}\nzero: {}\nunity: {}",
        fx.get("kind")?,
        fx.get("zero")?,
        fx.get("unity")?
    );
    let actual = match zn_ring(&elements, modulus) {
        Ok(m) => {
            let c = m.classify();
            let unity = c.unity.map_or("none".to_string(), |u| u.to_string());
            format!("kind: {}\nzero: {}\nunity: {unity}", c.kind, m.zero())
        }
        Err(e) => format!("error: {e}"),
    };
    Ok((expected, actual))
}

fn special_ring_check(fx: &Fixture) -> Result<(String, String), String> {
    let (elements, modulus) = residues(fx)?;
    let expected = format!(
        "kind: {}\nspecial: {}\nwitnesses: {}",
        fx.get("kind")?,
        fx.get("special")?,
        brace(fx.numbers("witness")?)
    );
    let actual =
        match zn_ring(&elements, modulus).and_then(|r| Ok((r.classify(), r.is_special_ring()?))) {
            Ok((class, verdict)) => format!(
                "kind: {}\nspecial: {}\nwitnesses: {}",
                class.kind,
                if verdict.special { "yes" } else { "no" },
                verdict
                    .witnesses
                    .iter()
                    .map(|w: &FieldWitness| brace(w.carrier.clone()))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            Err(e) => format!("error: {e}"),
        };
    Ok((expected, actual))
}

fn special_semigroup_check(fx: &Fixture) -> Result<(String, String), String> {
    let (generator, modulus): (u64, u64) = (fx.number("generator")?, modulus(fx)?);
    let min_order: usize = fx.number("min-order")?;
    let expected = format!(
        "special: {}\nwitnesses: {} @ {}",
        fx.get("special")?,
        brace(fx.numbers("witness")?),
        fx.get("identity")?
    );
    let t = generated_mul_semigroup(generator, modulus);
    let actual = match is_special_semigroup(&t, min_order) {
        Ok(v) => format!(
            "special: {}\nwitnesses: {}",
            if v.special { "yes" } else { "no" },
            v.witnesses
                .iter()
                .map(|w| format!("{} @ {}", brace(w.carrier.clone()), w.identity))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        Err(e) => format!("error: {e}"),
    };
    Ok((expected, actual))
}

fn run_check(index: usize, text: &Result<String, String>) -> CheckResult {
    let outcome = text.clone().and_then(|t| {
        let fx = Fixture::parse(&t)?;
        match index {
            0 => table_check(&fx, true),
            1 => table_check(&fx, false),
            2 => orbit_check(&fx),
            3 => field_check(&fx),
            4 => special_ring_check(&fx),
            _ => special_semigroup_check(&fx),
        }
    });
    let (expected, actual) = match outcome {
        Ok(pair) => pair,
        Err(e) => (format!("unusable fixture: {e}"), String::new()),
    };
    CheckResult {
        name: CHECK_NAMES[index].to_string(),
        pass: !expected.starts_with("unusable fixture") && expected == actual,
        expected,
        actual,
    }
}

/// Runs every check against the given fixtures.
pub fn verify(fixtures: &Fixtures) -> Vec<CheckResult> {
    fixtures
        .0
        .iter()
        .enumerate()
        .map(|(i, text)| run_check(i, text))
        .collect()
}
