//! Wire format. Field order in these structs is the key order on output.

use cg3_core::{CGTerm, DiffEntry, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Coefficient {
    fn from(q: &Rational) -> Self {
        Coefficient { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOut {
    pub diagram_u: [i64; 6],
    pub diagram_v: [i64; 6],
    pub coefficient: Coefficient,
}

impl From<&CGTerm> for TermOut {
    fn from(t: &CGTerm) -> Self {
        TermOut { diagram_u: t.diagram_u.as_array(), diagram_v: t.diagram_v.as_array(), coefficient: (&t.coeff).into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryOut {
    pub w1: [i64; 2],
    pub w2: [i64; 2],
    pub label: [i64; 5],
    pub descent: [i64; 3],
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgOut {
    pub query: QueryOut,
    pub terms: Vec<TermOut>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOut {
    pub diagram_u: [i64; 6],
    pub diagram_v: [i64; 6],
    pub formula: Option<Coefficient>,
    pub oracle: Option<Coefficient>,
}

impl From<&DiffEntry> for DiffOut {
    fn from(d: &DiffEntry) -> Self {
        DiffOut {
            diagram_u: d.index.diagram_u.as_array(),
            diagram_v: d.index.diagram_v.as_array(),
            formula: d.formula.as_ref().map(Coefficient::from),
            oracle: d.oracle.as_ref().map(Coefficient::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MismatchOut<'a> {
    pub query: &'a QueryOut,
    pub diff: Vec<DiffOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub label: String,
    pub descent: String,
    pub diagram_u: String,
    pub diagram_v: String,
    pub num: String,
    pub den: String,
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Canonical JSON text: two-space indentation, trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("wire types serialise");
    s.push('\n');
    s
}

pub fn to_csv(results: &[CgOut]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in results {
        for t in &r.terms {
            w.serialize(CsvRow {
                label: join(&r.query.label),
                descent: join(&r.query.descent),
                diagram_u: join(&t.diagram_u),
                diagram_v: join(&t.diagram_v),
                num: t.coefficient.num.clone(),
                den: t.coefficient.den.clone(),
            })
            .expect("csv rows serialise");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_stable() {
        let r = CgOut {
            query: QueryOut { w1: [1, 0], w2: [1, 0], label: [1, 1, 0, 0, 0], descent: [0, 0, 0], mode: "both".into() },
            terms: vec![TermOut {
                diagram_u: [1, 0, 0, 1, 0, 0],
                diagram_v: [1, 0, 0, 1, 0, 1],
                coefficient: Coefficient { num: "-1".into(), den: "1".into() },
            }],
            verified: true,
        };
        let text = to_json(&vec![r]);
        let back: Vec<CgOut> = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&back), text);
    }
}
