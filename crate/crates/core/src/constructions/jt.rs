use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;

use super::ConstructionError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JtSearchResult {
    /// A binary term operation with `x + 0 = x = 0 + x` on this algebra.
    Found { table: Vec<usize>, generated: usize },
    /// The binary clone was exhausted without one.
    NoneInClone { generated: usize },
    /// The budget ran out first. This is not a proof of anything.
    NoneWithinBudget { generated: usize },
}

/// Generates binary term operations of a pointed algebra (projections and the
/// point, closed under the basic operations) breadth first, looking for one
/// that is a unit-law operation for the point. `budget` bounds the number of
/// distinct tables generated.
pub fn jt_clone_search(a: &FiniteAlgebra, budget: usize) -> Result<JtSearchResult, ConstructionError> {
    let zero = a
        .point()
        .ok_or_else(|| ConstructionError::BadParams("JT search needs a pointed algebra".into()))?;
    let n = a.size();
    let is_jt = |t: &[usize]| (0..n).all(|x| t[x * n + zero] == x && t[zero * n + x] == x);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut terms: Vec<Vec<usize>> = Vec::new();
    let seeds = [
        (0..n * n).map(|c| c / n).collect::<Vec<_>>(),
        (0..n * n).map(|c| c % n).collect(),
        vec![zero; n * n],
    ];
    for s in seeds {
        if seen.insert(s.clone()) {
            terms.push(s);
        }
    }
    let mut old = 0;
    while old < terms.len() {
        let fresh = terms.len();
        for (i, op) in a.signature().ops().iter().enumerate() {
            let r = op.arity;
            let mut idx = vec![0usize; r];
            loop {
                if idx.iter().any(|&k| k >= old) {
                    let t: Vec<usize> = (0..n * n)
                        .map(|c| {
                            let args: Vec<usize> = idx.iter().map(|&k| terms[k][c]).collect();
                            a.apply(i, &args)
                        })
                        .collect();
                    if seen.insert(t.clone()) {
                        if is_jt(&t) {
                            return Ok(JtSearchResult::Found {
                                table: t,
                                generated: seen.len(),
                            });
                        }
                        if seen.len() >= budget {
                            return Ok(JtSearchResult::NoneWithinBudget { generated: seen.len() });
                        }
                        terms.push(t);
                    }
                }
                if !crate::specs::odometer(&mut idx, fresh) {
                    break;
                }
            }
        }
        old = fresh;
    }
    Ok(JtSearchResult::NoneInClone { generated: seen.len() })
}
