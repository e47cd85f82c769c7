//! JSON transition-amplitude files.
//!
//! ```json
//! {"algebra": "C", "steps": [{"from": "N", "to": "M", "matrix": [[["1/2", "1/2"], ...], ...]}]}
//! ```
//!
//! `from`/`to` name a measurement or a ground set. Rows and columns follow
//! the ground set's sorted element order. The file is exact when every
//! coefficient is a `"p/q"` string or an integer, and float otherwise.

use std::str::FromStr;
use std::sync::Arc;

use compalg_core::algebra::{AlgebraKind, Amplitude};
use compalg_core::model::GroundSet;
use compalg_core::prob::{Assignment, Matrix};
use compalg_core::scalar::{Rational, Scalar};
use serde::Deserialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq)]
pub enum AssignmentData {
    Exact(Assignment<Rational>),
    Float(Assignment<f64>),
}

impl AssignmentData {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            AssignmentData::Exact(a) => a.kind(),
            AssignmentData::Float(a) => a.kind(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    algebra: String,
    steps: Vec<Step>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Step {
    from: String,
    to: String,
    matrix: Vec<Vec<Vec<Value>>>,
}

fn rational(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => {
            Rational::from_str(s.trim()).map_err(|_| format!("`{s}` is not a rational p/q"))
        }
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_i64)
            .ok_or_else(|| format!("{n} is not an integer")),
        other => Err(format!(
            "coefficient {other} is neither a number nor a string"
        )),
    }
}

fn float(v: &Value) -> Result<f64, String> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| format!("{n} is out of range")),
        _ => rational(v).map(|r| r.to_f64()),
    }
}

fn is_exact(v: &Value) -> bool {
    match v {
        Value::String(_) => true,
        Value::Number(n) => n.is_i64(),
        _ => false,
    }
}

fn build<S: Scalar>(
    kind: AlgebraKind,
    steps: &[(Arc<GroundSet>, Arc<GroundSet>, &Step)],
    coeff: impl Fn(&Value) -> Result<S, String>,
) -> Result<Assignment<S>, String> {
    let mut asg = Assignment::new(kind).map_err(|e| e.to_string())?;
    for (k, (from, to, step)) in steps.iter().enumerate() {
        let rows = step
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        let v = c.iter().map(&coeff).collect::<Result<Vec<_>, _>>()?;
                        Amplitude::new(kind, v).map_err(|e| e.to_string())
                    })
                    .collect::<Result<Vec<_>, String>>()
            })
            .collect::<Result<Vec<_>, String>>()
            .map_err(|e| format!("step {k}: {e}"))?;
        let m = Matrix::from_rows(kind, rows).map_err(|e| format!("step {k}: {e}"))?;
        if let Some(prev) = asg.explicit(from, to) {
            if *prev != m {
                return Err(format!(
                    "step {k}: conflicting matrices for {} -> {}",
                    from.name(),
                    to.name()
                ));
            }
        }
        asg.set(from, to, m).map_err(|e| format!("step {k}: {e}"))?;
    }
    Ok(asg)
}

/// Parses an assignment file for `algebra`; `resolve` maps ids to ground sets.
pub fn load(
    text: &str,
    algebra: AlgebraKind,
    resolve: impl Fn(&str) -> Option<Arc<GroundSet>>,
) -> Result<AssignmentData, String> {
    let file: File = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let kind: AlgebraKind = file.algebra.parse().map_err(|e| format!("{e}"))?;
    if kind != algebra {
        return Err(format!(
            "file declares algebra {kind} but {algebra} was requested"
        ));
    }
    let mut steps = Vec::new();
    for (k, step) in file.steps.iter().enumerate() {
        let from = resolve(&step.from).ok_or_else(|| {
            format!(
                "step {k}: unknown measurement or ground set `{}`",
                step.from
            )
        })?;
        let to = resolve(&step.to)
            .ok_or_else(|| format!("step {k}: unknown measurement or ground set `{}`", step.to))?;
        steps.push((from, to, step));
    }
    let exact = file
        .steps
        .iter()
        .flat_map(|s| s.matrix.iter().flatten().flatten())
        .all(is_exact);
    if exact {
        build(kind, &steps, rational).map(AssignmentData::Exact)
    } else {
        build(kind, &steps, float).map(AssignmentData::Float)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grounds() -> impl Fn(&str) -> Option<Arc<GroundSet>> {
        let n = GroundSet::new("N", ["n1", "n2"]).unwrap();
        let m = GroundSet::new("M", ["m1", "m2"]).unwrap();
        move |id| match id {
            "N" => Some(n.clone()),
            "M" => Some(m.clone()),
            _ => None,
        }
    }

    #[test]
    fn exact_and_float_modes() {
        let exact = r#"{"algebra":"C","steps":[{"from":"N","to":"M","matrix":[[["1/2","1/2"],["1/2","-1/2"]],[["1/2","-1/2"],[0,"1/2"]]]}]}"#;
        assert!(matches!(
            load(exact, AlgebraKind::C, grounds()).unwrap(),
            AssignmentData::Exact(_)
        ));
        let float = r#"{"algebra":"C","steps":[{"from":"N","to":"M","matrix":[[[0.5,0.5],["1/2","-1/2"]],[[0.5,-0.5],[0,0.5]]]}]}"#;
        let AssignmentData::Float(a) = load(float, AlgebraKind::C, grounds()).unwrap() else {
            panic!()
        };
        let (n, m) = (grounds()("N").unwrap(), grounds()("M").unwrap());
        assert_eq!(a.explicit(&n, &m).unwrap().get(0, 1).coeffs(), &[0.5, -0.5]);
    }

    #[test]
    fn errors() {
        let bad_kind = r#"{"algebra":"H","steps":[]}"#;
        assert!(load(bad_kind, AlgebraKind::C, grounds())
            .unwrap_err()
            .contains("declares algebra H"));
        let short = r#"{"algebra":"C","steps":[{"from":"N","to":"M","matrix":[[["1"]]]}]}"#;
        assert!(load(short, AlgebraKind::C, grounds())
            .unwrap_err()
            .contains("coefficients"));
        let unknown = r#"{"algebra":"R","steps":[{"from":"X","to":"M","matrix":[]}]}"#;
        assert!(load(unknown, AlgebraKind::R, grounds())
            .unwrap_err()
            .contains("`X`"));
        let same =
            r#"{"algebra":"R","steps":[{"from":"N","to":"N","matrix":[[[2],[0]],[[0],[1]]]}]}"#;
        assert!(load(same, AlgebraKind::R, grounds())
            .unwrap_err()
            .contains("identity"));
        let twice = r#"{"algebra":"R","steps":[{"from":"N","to":"M","matrix":[[[1],[0]],[[0],[1]]]},{"from":"N","to":"M","matrix":[[[0],[1]],[[1],[0]]]}]}"#;
        assert!(load(twice, AlgebraKind::R, grounds())
            .unwrap_err()
            .contains("conflicting"));
    }
}
