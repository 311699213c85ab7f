use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;

use super::{enumerate_internal, InternalError, InternalStructure, StructureSpec};

/// Sample-relative verdicts, strongest first within each family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    StronglyTrivializes,
    Trivializes,
    WeaklyTrivializes,
    Intensively,
    Crystallographic,
    Refuted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::StronglyTrivializes => "STRONGLY_TRIVIALIZES",
            Verdict::Trivializes => "TRIVIALIZES",
            Verdict::WeaklyTrivializes => "WEAKLY_TRIVIALIZES",
            Verdict::Intensively => "INTENSIVELY",
            Verdict::Crystallographic => "CRYSTALLOGRAPHIC",
            Verdict::Refuted => "REFUTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleResult {
    pub name: String,
    pub size: usize,
    pub count: usize,
    pub structures: Vec<InternalStructure>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationWitness {
    pub sample: String,
    pub first: InternalStructure,
    pub second: InternalStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrystallographyReport {
    pub spec: String,
    pub samples: Vec<SampleResult>,
    pub verdict: Verdict,
    /// Every sample carries at most one structure. Implied by every verdict
    /// except `REFUTED`; reported so the sample-relative claim is explicit.
    pub crystallographic: bool,
    pub max_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RefutationWitness>,
}

/// Enumerates `s`-structures on every sample (in parallel, results kept in
/// sample order) and derives the strongest verdict the counts support.
pub fn crystallography_report(
    samples: &[FiniteAlgebra],
    s: &StructureSpec,
    budget: u64,
) -> Result<CrystallographyReport, InternalError> {
    let first = samples.first().ok_or(InternalError::EmptySamples)?;
    if samples.iter().any(|a| !a.same_signature(first)) {
        return Err(InternalError::SignatureMismatch);
    }
    let results: Vec<SampleResult> = samples
        .par_iter()
        .map(|a| {
            let e = enumerate_internal(a, s, budget)?;
            if e.truncated {
                return Err(InternalError::BudgetExhausted {
                    sample: a.name().to_string(),
                    nodes: e.nodes,
                });
            }
            Ok(SampleResult {
                name: a.name().to_string(),
                size: a.size(),
                count: e.structures.len(),
                structures: e.structures,
                truncated: false,
            })
        })
        .collect::<Result<_, _>>()?;
    let (verdict, witness) = verdict_of(&results);
    let max_count = results.iter().map(|r| r.count).max().unwrap_or(0);
    Ok(CrystallographyReport {
        spec: s.name.clone(),
        samples: results,
        verdict,
        crystallographic: max_count <= 1,
        max_count,
        witness,
    })
}

/// The verdict rules, applied to per-sample counts.
pub fn verdict_of(results: &[SampleResult]) -> (Verdict, Option<RefutationWitness>) {
    if let Some(r) = results.iter().find(|r| r.count >= 2) {
        let witness = RefutationWitness {
            sample: r.name.clone(),
            first: r.structures[0].clone(),
            second: r.structures[1].clone(),
        };
        return (Verdict::Refuted, Some(witness));
    }
    if results.iter().all(|r| r.count == 1) {
        return (Verdict::Intensively, None);
    }
    let carriers: Vec<&SampleResult> = results.iter().filter(|r| r.count > 0).collect();
    if carriers.iter().all(|r| r.size <= 1) {
        if carriers.iter().all(|r| r.size == 1) {
            return (Verdict::StronglyTrivializes, None);
        }
        let subterminal_lacking = results.iter().any(|r| r.size <= 1 && r.count == 0);
        return if subterminal_lacking {
            (Verdict::WeaklyTrivializes, None)
        } else {
            (Verdict::Trivializes, None)
        };
    }
    (Verdict::Crystallographic, None)
}
