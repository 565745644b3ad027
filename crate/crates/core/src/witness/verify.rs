use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::WitnessError;

/// A map on a carrier together with a rule `n ↦ xₙ`.
pub trait Dynamics: Send + Sync {
    type Elem: Clone + Eq + Hash + Debug;

    fn apply(&self, x: &Self::Elem) -> Self::Elem;

    /// `x₀, …, x_depth`.
    fn members(&self, depth: usize) -> Result<Vec<Self::Elem>, WitnessError>;

    fn is_zero(&self, x: &Self::Elem) -> bool;

    fn in_carrier(&self, _x: &Self::Elem) -> bool {
        true
    }

    fn render(&self, x: &Self::Elem) -> String {
        format!("{:?}", x)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StringKind {
    Plain,
    NonSingular,
    Null { k: usize },
}

impl StringKind {
    pub fn name(self) -> String {
        match self {
            StringKind::Plain => "plain".into(),
            StringKind::NonSingular => "non-singular".into(),
            StringKind::Null { k } => format!("null (k={})", k),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// First failing check, pinned to an index where one applies.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub n: Option<usize>,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: StringKind,
    pub depth: usize,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub failure: Option<Failure>,
    /// `x₀, x₁, …` rendered (at most a handful).
    pub sample: Vec<String>,
}

const SAMPLE: usize = 4;

pub fn verify<D: Dynamics + ?Sized>(
    d: &D,
    kind: StringKind,
    depth: usize,
) -> Result<VerificationReport, WitnessError> {
    if depth == 0 {
        return Err(WitnessError::InvalidParameters(
            "depth must be at least 1".into(),
        ));
    }
    let xs = d.members(depth)?;
    if xs.len() != depth + 1 {
        return Err(WitnessError::InvalidParameters(format!(
            "generator produced {} members, expected {}",
            xs.len(),
            depth + 1
        )));
    }
    let mut checks = Vec::new();
    let mut failure: Option<Failure> = None;
    let mut record = |check: &'static str, result: Result<String, (Option<usize>, String)>| {
        let (passed, detail) = match result {
            Ok(detail) => (true, detail),
            Err((n, detail)) => {
                if failure.is_none() {
                    failure = Some(Failure {
                        check,
                        n,
                        detail: detail.clone(),
                    });
                }
                (false, detail)
            }
        };
        checks.push(CheckOutcome {
            check,
            passed,
            detail,
        });
    };

    record(
        "carrier",
        match xs.iter().position(|x| !d.in_carrier(x)) {
            None => Ok(format!("x_0..x_{} lie in the carrier", depth)),
            Some(n) => Err((
                Some(n),
                format!("x_{} = {} is not in the carrier", n, d.render(&xs[n])),
            )),
        },
    );

    let mut broken = None;
    for n in 1..=depth {
        let image = d.apply(&xs[n]);
        if image != xs[n - 1] {
            broken = Some((n, image));
            break;
        }
    }
    record(
        "pseudostring",
        match broken {
            None => Ok(format!("φ(x_n) = x_(n-1) for 1 ≤ n ≤ {}", depth)),
            Some((n, image)) => Err((
                Some(n),
                format!(
                    "φ(x_{}) = {} but x_{} = {}",
                    n,
                    d.render(&image),
                    n - 1,
                    d.render(&xs[n - 1])
                ),
            )),
        },
    );

    record(
        "distinct",
        match first_repeat(&xs) {
            None => Ok(format!("x_0..x_{} pairwise distinct", depth)),
            Some((m, n)) => Err((Some(n), format!("x_{} = x_{} = {}", n, m, d.render(&xs[n])))),
        },
    );

    match kind {
        StringKind::Plain => {}
        StringKind::Null { k } => {
            let result = if d.is_zero(&xs[0]) {
                Err((Some(0), "x_0 = 0".to_string()))
            } else {
                let mut y = xs[0].clone();
                let mut early = None;
                for j in 1..=k {
                    y = d.apply(&y);
                    if j < k && d.is_zero(&y) {
                        early = Some(j);
                        break;
                    }
                }
                match early {
                    Some(j) => Err((
                        Some(j),
                        format!("φ^{}(x_0) = 0 already, before the claimed k = {}", j, k),
                    )),
                    None if d.is_zero(&y) => Ok(format!("x_0 ≠ 0 and φ^{}(x_0) = 0", k)),
                    None => Err((Some(k), format!("φ^{}(x_0) = {} ≠ 0", k, d.render(&y)))),
                }
            };
            record("null", result);
        }
        StringKind::NonSingular => {
            let mut orbit = vec![xs[0].clone()];
            for _ in 0..depth {
                let next = d.apply(orbit.last().expect("nonempty"));
                orbit.push(next);
            }
            record(
                "forward-orbit",
                match first_repeat(&orbit) {
                    None => Ok(format!("φ^m(x_0) pairwise distinct for 0 ≤ m ≤ {}", depth)),
                    Some((m, n)) => Err((Some(n), format!("φ^{}(x_0) = φ^{}(x_0)", n, m))),
                },
            );
        }
    }

    let passed = failure.is_none();
    Ok(VerificationReport {
        kind,
        depth,
        passed,
        checks,
        failure,
        sample: xs.iter().take(SAMPLE).map(|x| d.render(x)).collect(),
    })
}

fn first_repeat<T: Eq + Hash>(xs: &[T]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&T, usize> = HashMap::with_capacity(xs.len());
    for (n, x) in xs.iter().enumerate() {
        if let Some(&m) = seen.get(x) {
            return Some((m, n));
        }
        seen.insert(x, n);
    }
    None
}

/// Object-safe view of a [`Dynamics`] implementation.
pub trait ErasedDynamics: Send + Sync {
    fn verify(&self, kind: StringKind, depth: usize) -> Result<VerificationReport, WitnessError>;
    fn render_members(&self, count: usize) -> Result<Vec<String>, WitnessError>;
}

impl<D: Dynamics> ErasedDynamics for D {
    fn verify(&self, kind: StringKind, depth: usize) -> Result<VerificationReport, WitnessError> {
        verify(self, kind, depth)
    }

    fn render_members(&self, count: usize) -> Result<Vec<String>, WitnessError> {
        Ok(self
            .members(count.saturating_sub(1))?
            .iter()
            .map(|x| self.render(x))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Integers with a fixed map and rule.
    struct Toy {
        map: fn(i64) -> i64,
        rule: fn(usize) -> i64,
    }

    impl Dynamics for Toy {
        type Elem = i64;

        fn apply(&self, x: &i64) -> i64 {
            (self.map)(*x)
        }

        fn members(&self, depth: usize) -> Result<Vec<i64>, WitnessError> {
            Ok((0..=depth).map(self.rule).collect())
        }

        fn is_zero(&self, x: &i64) -> bool {
            *x == 0
        }
    }

    #[test]
    fn constant_sequence_fails_distinctness_at_one() {
        let toy = Toy {
            map: |x| x,
            rule: |_| 7,
        };
        let r = verify(&toy, StringKind::Plain, 5).unwrap();
        assert!(!r.passed);
        let f = r.failure.unwrap();
        assert_eq!((f.check, f.n), ("distinct", Some(1)));
    }

    #[test]
    fn translation_is_non_singular() {
        let toy = Toy {
            map: |x| x + 1,
            rule: |n| -(n as i64),
        };
        assert!(verify(&toy, StringKind::NonSingular, 100).unwrap().passed);
        let bad = verify(&toy, StringKind::Null { k: 1 }, 10).unwrap();
        assert_eq!(bad.failure.unwrap().check, "null");
    }

    #[test]
    fn broken_pseudostring_is_pinned() {
        let toy = Toy {
            map: |x| x / 2,
            rule: |n| if n < 3 { 1 << n } else { 100 },
        };
        let r = verify(&toy, StringKind::Plain, 6).unwrap();
        let f = r.failure.unwrap();
        assert_eq!((f.check, f.n), ("pseudostring", Some(3)));
        assert!(verify(&toy, StringKind::Plain, 0).is_err());
    }
}
