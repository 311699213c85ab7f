use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::specs::{satisfies, Equation, VarietyPresentation};

use super::catalog::{chyper_equations, chyper_signature};
use super::ConstructionError;

/// How an equation of the padded schema was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    /// Both sides are the same term after substitution.
    Syntactic,
    /// Equal, up to variable renaming and sides, to the axiom at this index.
    Axiom(usize),
    /// Holds in every supplied model.
    Semantic { models: usize },
    Unjustified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JustifiedEquation {
    pub schema: String,
    pub substituted: String,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaddingReport {
    pub source: String,
    pub source_type: usize,
    pub target_type: usize,
    /// `(new operation, original operation)`.
    pub definitions: Vec<(String, String)>,
    pub equations: Vec<JustifiedEquation>,
    pub verified: bool,
}

/// Number `k` such that `v` is a type `2k+1` presentation: `2k+1` ternary
/// operations, the single constant `0`, and every schema equation among the
/// axioms (operations matched in declaration order).
pub fn chyper_type(v: &VarietyPresentation) -> Result<usize, ConstructionError> {
    let sig = &v.signature;
    let m = sig.ops().len();
    if !sig.is_pointed() || m % 2 == 0 || sig.ops().iter().any(|op| op.arity != 3) {
        return Err(ConstructionError::SchemaMismatch(
            "expected an odd number of ternary operations and the constant 0".into(),
        ));
    }
    let k = m / 2;
    let names: Vec<String> = sig.ops().iter().map(|op| op.name.clone()).collect();
    for eq in chyper_equations(k) {
        let renamed = rename(&eq, &|i| names[i - 1].clone());
        if !v.equations.iter().any(|ax| ax.matches_up_to_renaming(&renamed)) {
            return Err(ConstructionError::SchemaMismatch(format!("missing `{renamed}`")));
        }
    }
    Ok(k)
}

fn rename(eq: &Equation, name_of: &dyn Fn(usize) -> String) -> Equation {
    let f = |op: &str| match op.strip_prefix('p').and_then(|i| i.parse::<usize>().ok()) {
        Some(i) => name_of(i),
        None => op.to_string(),
    };
    Equation::new(eq.lhs.map_ops(&f), eq.rhs.map_ops(&f))
}

/// Index (1-based) of the original operation behind padded operation `i`:
/// `q_i = p_i` for `i ≤ 2k`, `q_{2k+1} = q_{2k+2} = p_{2k}`, `q_{2k+3} = p_{2k+1}`.
fn source_index(i: usize, k: usize) -> usize {
    if i <= 2 * k {
        i
    } else if i <= 2 * k + 2 {
        2 * k
    } else {
        2 * k + 1
    }
}

/// Pads a type `2k+1` presentation to type `2k+3` and certifies every
/// equation of the larger schema. `models` feeds the semantic fallback.
pub fn pad_chyper(
    v: &VarietyPresentation,
    models: &[FiniteAlgebra],
) -> Result<(VarietyPresentation, PaddingReport), ConstructionError> {
    let k = chyper_type(v)?;
    let names: Vec<String> = v.signature.ops().iter().map(|op| op.name.clone()).collect();
    let source_name = |i: usize| names[source_index(i, k) - 1].clone();
    let mut equations = Vec::new();
    for eq in chyper_equations(k + 1) {
        let sub = rename(&eq, &source_name);
        let justification = if sub.lhs == sub.rhs {
            Justification::Syntactic
        } else if let Some(i) = v.equations.iter().position(|ax| ax.matches_up_to_renaming(&sub)) {
            Justification::Axiom(i)
        } else if !models.is_empty() && models.iter().all(|a| satisfies(a, std::slice::from_ref(&sub)).unwrap_or(false)) {
            Justification::Semantic { models: models.len() }
        } else {
            Justification::Unjustified
        };
        equations.push(JustifiedEquation {
            schema: eq.to_string(),
            substituted: sub.to_string(),
            justification,
        });
    }
    let verified = equations.iter().all(|e| e.justification != Justification::Unjustified);
    let target = 2 * k + 3;
    let report = PaddingReport {
        source: v.name.clone(),
        source_type: 2 * k + 1,
        target_type: target,
        definitions: (1..=target).map(|i| (format!("p{i}"), source_name(i))).collect(),
        equations,
        verified,
    };
    let padded = VarietyPresentation::with_pins(
        format!("CHyper{target}"),
        chyper_signature(k + 1),
        chyper_equations(k + 1),
        vec![Some(0)],
    )?;
    Ok((padded, report))
}
