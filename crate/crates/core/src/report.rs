//! Versioned JSON reports shared by the command-line front end.

use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, consistency_check, parse_descriptor, Classification};
use crate::error::{GroupError, ParseError, WitnessError};
use crate::fg::{endo_string_numbers, matrix_order, Endomorphism, FgGroup};
use crate::linalg::IntMatrix;
use crate::value::StringValue;
use crate::witness::{StringKind, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

/// A report envelope. Keys come out sorted because `serde_json::Value` keeps
/// objects in a `BTreeMap`.
pub fn envelope<T: Serialize>(command: &str, inputs: Value, results: &T) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": serde_json::to_value(results).expect("reports serialize"),
    })
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub input: String,
    #[serde(flatten)]
    pub classification: Classification,
    pub violations: Vec<String>,
}

pub fn classify_report(text: &str) -> Result<ClassifyReport, ParseError> {
    let d = parse_descriptor(text)?;
    let classification = classify(&d);
    let violations = consistency_check(&classification);
    Ok(ClassifyReport {
        input: text.into(),
        classification,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoWitnessReport {
    pub carrier: String,
    pub map: String,
    pub generator: String,
    pub kind: StringKind,
    pub members: Vec<String>,
    pub verification: VerificationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoReport {
    pub group: String,
    pub matrix: String,
    pub s: StringValue,
    pub ns: StringValue,
    pub s0: StringValue,
    /// Order of the map on its surjective core, when finite.
    pub order_on_core: Option<String>,
    /// Order of the matrix itself, when it is an invertible integer matrix of finite order.
    pub matrix_order: Option<u64>,
    pub surjective_core: Vec<String>,
    pub witness: Option<EndoWitnessReport>,
}

#[derive(Debug, thiserror::Error)]
pub enum EndoError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// Decides `φ` given by a group literal and a matrix literal, verifying the
/// witness at `depth` when some string number is infinite.
pub fn endo_report(group: &str, matrix: &str, depth: usize) -> Result<EndoReport, EndoError> {
    let g: FgGroup = group.parse()?;
    let m: IntMatrix = matrix.parse().map_err(GroupError::from)?;
    let phi = Endomorphism::new(&g, &m)?;
    let v = endo_string_numbers(&phi);
    let witness = match &v.witness {
        Some(w) => Some(EndoWitnessReport {
            carrier: w.carrier.clone(),
            map: w.map.clone(),
            generator: w.generator.clone(),
            kind: w.kind,
            members: w.first_members(4)?,
            verification: w.verify_capped(depth)?,
        }),
        None => None,
    };
    Ok(EndoReport {
        group: g.to_string(),
        matrix: phi.matrix().to_string(),
        s: v.s,
        ns: v.ns,
        s0: v.s0,
        order_on_core: v.order_of_restriction.map(|o| o.to_string()),
        matrix_order: if m.is_square() {
            matrix_order(&m)
        } else {
            None
        },
        surjective_core: v
            .surjective_core
            .generators()
            .iter()
            .map(|x| x.to_string())
            .collect(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_is_sorted_and_versioned() {
        let r = classify_report("Z + Prufer(3)").unwrap();
        let v = envelope("classify", json!({"descriptor": "Z + Prufer(3)"}), &r);
        let text = render(&v);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["command", "inputs", "results", "schema_version"]);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(render(&back), text);
        assert_eq!(v["results"]["verdicts"]["ns"], "Zero");
        assert_eq!(v["results"]["hopf"], "NotHopfian");
    }

    #[test]
    fn endo_examples() {
        let r = endo_report("Z^2", "1,1;0,1", 50).unwrap();
        assert_eq!(r.ns, StringValue::Infinite);
        assert!(r.witness.as_ref().unwrap().verification.passed);
        let r = endo_report("Z^2", "0,-1;1,0", 50).unwrap();
        assert_eq!(
            (r.s, r.ns, r.s0),
            (StringValue::Zero, StringValue::Zero, StringValue::Zero)
        );
        assert_eq!(r.order_on_core.as_deref(), Some("4"));
        assert_eq!(r.matrix_order, Some(4));
        assert!(matches!(
            endo_report("[4]", "3", 10),
            Ok(EndoReport {
                s: StringValue::Zero,
                ..
            })
        ));
        assert!(matches!(
            endo_report("[4] + Z", "0,0;1,0", 10),
            Err(EndoError::Group(GroupError::WellDefinedness { .. }))
        ));
    }
}
