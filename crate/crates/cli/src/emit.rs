//! Machine-readable emission of the symbolic objects, each with a reader
//! that parses the emitted JSON back and checks it against the source.

use std::str::FromStr;

use hurwitz_core::cartanweyl::{commutator_table, extracted_generators, hadamard_sylvester, so5_generators, GeneratorSet};
use hurwitz_core::cayley::cayley_symbolic;
use hurwitz_core::exactnum::{parse_rational, Rational};
use hurwitz_core::hurwitz::hurwitz_symbolic;
use hurwitz_core::ksmap::{quadratic_map, QuadraticMap, Side};
use hurwitz_core::matrix::{ExactMatrix, PolyMatrix};
use hurwitz_core::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitTarget {
    Hurwitz(usize),
    Cayley(usize),
    Ksmap(usize, Side),
    Generators(usize),
    So5Table,
    Hadamard(usize),
}

impl FromStr for EmitTarget {
    type Err = Error;

    /// Accepts `hurwitz:8`, `cayley:3`, `ksmap:5:left`, `generators:8`,
    /// `so5-table` and `hadamard:3`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::Parse(format!("emit target {s:?} needs a dimension")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad dimension in emit target {s:?}")))
        };
        match parts[0] {
            "hurwitz" => Ok(EmitTarget::Hurwitz(num(1)?)),
            "cayley" => Ok(EmitTarget::Cayley(num(1)?)),
            "ksmap" => {
                let side = parts.get(2).map_or(Ok(Side::Right), |p| p.parse())?;
                Ok(EmitTarget::Ksmap(num(1)?, side))
            }
            "generators" => Ok(EmitTarget::Generators(num(1)?)),
            "so5-table" => Ok(EmitTarget::So5Table),
            "hadamard" => Ok(EmitTarget::Hadamard(num(1)?)),
            other => Err(Error::Parse(format!("unknown emit target {other:?}"))),
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("emitted objects serialize")
}

fn generator_set(n: usize) -> Result<GeneratorSet> {
    if n == 5 {
        Ok(so5_generators())
    } else {
        extracted_generators(n)
    }
}

/// Builds the JSON document for `target`.
pub fn emit(target: EmitTarget) -> Result<Value> {
    Ok(match target {
        EmitTarget::Hurwitz(n) => json!({"kind": "hurwitz", "n": n, "matrix": to_value(&hurwitz_symbolic(n)?)}),
        EmitTarget::Cayley(n) => json!({
            "kind": "cayley",
            "n": n,
            "scale": "|u|^2",
            "matrix": to_value(&cayley_symbolic(n)?),
        }),
        EmitTarget::Ksmap(n, side) => json!({"kind": "ksmap", "map": to_value(quadratic_map(n, side)?)}),
        EmitTarget::Generators(n) => {
            let set = generator_set(n)?;
            json!({"kind": "generators", "set": to_value(&set), "structure_constants": to_value(&commutator_table(&set))})
        }
        EmitTarget::So5Table => {
            let set = so5_generators();
            json!({"kind": "so5-table", "set": to_value(&set), "structure_constants": to_value(&commutator_table(&set))})
        }
        EmitTarget::Hadamard(m) => json!({"kind": "hadamard", "m": m, "matrix": to_value(&hadamard_sylvester(m)?)}),
    })
}

fn field<'a, T: Deserialize<'a>>(v: &'a Value, key: &str) -> Result<T> {
    let raw = v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))?;
    T::deserialize(raw).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Deserialize)]
struct Term {
    generator: String,
    coeff: String,
}

#[derive(Deserialize)]
struct Row {
    a: String,
    b: String,
    terms: Vec<Term>,
}

/// Rebuilds every listed commutator from its expansion and compares it with
/// the commutator of the parsed generators.
fn table_consistent(set: &GeneratorSet, table: &Value) -> Result<bool> {
    let rows: Vec<Row> = field(table, "nonzero_commutators")?;
    let lookup = |label: &str| set.get(label).ok_or_else(|| Error::Parse(format!("unknown generator {label:?}")));
    let mut listed = 0;
    for row in &rows {
        let mut sum = ExactMatrix::zeros(set.n);
        for t in &row.terms {
            let c: Rational = parse_rational(&t.coeff)?;
            sum = sum.add(&lookup(&t.generator)?.scale(&c));
        }
        if lookup(&row.a)?.commutator(lookup(&row.b)?) != sum {
            return Ok(false);
        }
        listed += 1;
    }
    // Pairs absent from the list must commute.
    let mut nonzero = 0;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if !set.generators[i].commutator(&set.generators[j]).is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok(listed == nonzero)
}

/// Parses `doc` (as produced by [`emit`] for `target`) and checks that it
/// reproduces the original object exactly.
pub fn round_trip(target: EmitTarget, doc: &Value) -> Result<bool> {
    Ok(match target {
        EmitTarget::Hurwitz(n) => field::<PolyMatrix>(doc, "matrix")? == hurwitz_symbolic(n)?,
        EmitTarget::Cayley(n) => field::<PolyMatrix>(doc, "matrix")? == cayley_symbolic(n)?,
        EmitTarget::Ksmap(n, side) => field::<QuadraticMap>(doc, "map")? == *quadratic_map(n, side)?,
        EmitTarget::Generators(_) | EmitTarget::So5Table => {
            let n = match target {
                EmitTarget::Generators(n) => n,
                _ => 5,
            };
            let set: GeneratorSet = field(doc, "set")?;
            let reference = generator_set(n)?;
            set.labels == reference.labels
                && set.generators == reference.generators
                && table_consistent(&set, doc.get("structure_constants").unwrap_or(&Value::Null))?
        }
        EmitTarget::Hadamard(m) => field::<ExactMatrix>(doc, "matrix")? == hadamard_sylvester(m)?,
    })
}
