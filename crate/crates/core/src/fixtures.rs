//! Named built-in algebras.
//!
//! Names: `leib2`, `heis3`, `as2`, `abelian:<variety>:<n>`, followed by any
//! chain of `.<variety>` functor applications and an optional `@<p>` to
//! reduce over GF(p). Everything is defined over Q otherwise.

use crate::algebra::{Algebra, Variety};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Base names shipped with golden outputs.
pub const NAMES: &[&str] = &[
    "leib2",
    "heis3",
    "as2",
    "abelian:lie:2",
    "abelian:dendriform:2",
    "heis3.leibniz",
    "as2.lie",
    "as2.diassociative",
    "as2.diassociative.leibniz",
    "as2.lie.leibniz",
    "leib2@5",
];

fn base(name: &str, field: FieldSpec) -> Result<Algebra> {
    let table: &[(usize, usize, usize, usize, i64)] = match name {
        // e2e2 = e1
        "leib2" => &[(0, 1, 1, 0, 1)],
        // [e1,e2] = e3
        "heis3" => &[(0, 0, 1, 2, 1), (0, 1, 0, 2, -1)],
        // e1 unit, e2² = 0
        "as2" => &[(0, 0, 0, 0, 1), (0, 0, 1, 1, 1), (0, 1, 0, 1, 1)],
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            if let ["abelian", variety, n] = parts[..] {
                let variety: Variety = variety.parse()?;
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::parse("fixture", format!("bad dimension in {name:?}")))?;
                return Ok(Algebra::abelian(variety, field, n));
            }
            return Err(Error::parse("fixture", format!("unknown fixture {name:?}")));
        }
    };
    let (variety, dim) = match name {
        "leib2" => (Variety::Leibniz, 2),
        "heis3" => (Variety::Lie, 3),
        _ => (Variety::Associative, 2),
    };
    Algebra::from_table(variety, field, dim, table)
}

/// Resolves a fixture name; every result passes [`Algebra::verify`].
pub fn fixture(name: &str) -> Result<Algebra> {
    let (name, field) = match name.split_once('@') {
        Some((n, p)) => {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::parse("fixture", format!("bad prime in {name:?}")))?;
            (n, FieldSpec::prime(p)?)
        }
        None => (name, FieldSpec::rationals()),
    };
    let mut parts = name.split('.');
    let mut alg = base(parts.next().unwrap_or_default(), field)?;
    for target in parts {
        alg = alg.functor_map(target.parse()?)?;
    }
    let report = alg.verify();
    if let Some(v) = report.violations.first() {
        return Err(Error::parse("fixture", format!("{name} fails its identities: {v}")));
    }
    Ok(alg)
}
