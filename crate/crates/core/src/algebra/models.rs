use std::collections::HashSet;

use crate::search::{Problem, Search, UEquation, UTerm, Instances, Unknown};
use crate::specs::{Term, VarietyPresentation};

use super::{AlgebraError, FiniteAlgebra};

/// Result of [`enumerate_models`]. When `truncated` is set the node budget
/// ran out and `models` is only a prefix of the full (ordered) list.
#[derive(Clone, Debug)]
pub struct ModelEnumeration {
    pub models: Vec<FiniteAlgebra>,
    pub truncated: bool,
    pub nodes: u64,
}

/// Search order of a signature's symbols: constants first, then operations by
/// ascending arity (declaration order breaks ties). Returns `(is_const, index)`.
pub(crate) fn symbol_order(sig: &crate::specs::Signature) -> Vec<(bool, usize)> {
    let mut order: Vec<(bool, usize)> = (0..sig.consts().len()).map(|c| (true, c)).collect();
    let mut ops: Vec<usize> = (0..sig.ops().len()).collect();
    ops.sort_by_key(|&i| (sig.op(i).arity, i));
    order.extend(ops.into_iter().map(|i| (false, i)));
    order
}

pub(crate) fn compile_uterm(
    t: &Term,
    sig: &crate::specs::Signature,
    unknown_of: &dyn Fn(bool, usize) -> usize,
    vars: &[String],
) -> UTerm {
    match t {
        Term::Var(v) => UTerm::Var(vars.iter().position(|x| x == v).expect("variable listed")),
        Term::Const(c) => UTerm::Unknown(unknown_of(true, sig.const_index(c).expect("checked term")), Vec::new()),
        Term::Apply(op, args) => UTerm::Unknown(
            unknown_of(false, sig.op_index(op).expect("checked term")),
            args.iter().map(|a| compile_uterm(a, sig, unknown_of, vars)).collect(),
        ),
    }
}

/// Every algebra of size `n` satisfying `v`'s equations, in lexicographic
/// order of the table vector (constants, then operations by arity, then
/// cells). Pinned constants are fixed to their pin.
pub fn enumerate_models(v: &VarietyPresentation, n: usize, budget: u64) -> Result<ModelEnumeration, AlgebraError> {
    enumerate_models_with(v, n, budget, |_| true)
}

/// Streaming form of [`enumerate_models`]: `keep` sees each model as it is
/// found and returns `false` to stop.
pub fn enumerate_models_with(
    v: &VarietyPresentation,
    n: usize,
    budget: u64,
    mut keep: impl FnMut(&FiniteAlgebra) -> bool,
) -> Result<ModelEnumeration, AlgebraError> {
    if budget == 0 {
        return Err(AlgebraError::ZeroBudget);
    }
    let sig = &v.signature;
    for (c, pin) in sig.consts().iter().zip(&v.pins) {
        if let Some(p) = pin {
            if *p >= n {
                return Err(AlgebraError::PinOutOfRange {
                    constant: c.clone(),
                    pin: *p,
                    size: n,
                });
            }
        }
    }
    let mut out = ModelEnumeration {
        models: Vec::new(),
        truncated: false,
        nodes: 0,
    };
    if n == 0 {
        if sig.consts().is_empty() {
            let alg = FiniteAlgebra::new(
                format!("{}_0_0", v.name),
                v.name.clone(),
                sig.clone(),
                0,
                vec![Vec::new(); sig.ops().len()],
                Vec::new(),
            )?;
            if keep(&alg) {
                out.models.push(alg);
            }
        }
        return Ok(out);
    }

    let order = symbol_order(sig);
    let unknown_of = |is_const: bool, idx: usize| order.iter().position(|&s| s == (is_const, idx)).unwrap();
    let unknowns = order
        .iter()
        .map(|&(is_const, i)| Unknown::full(if is_const { 0 } else { sig.op(i).arity }))
        .collect();
    let equations = v
        .equations
        .iter()
        .map(|eq| {
            let vars = eq.variables();
            UEquation {
                nvars: vars.len(),
                lhs: compile_uterm(&eq.lhs, sig, &unknown_of, &vars),
                rhs: compile_uterm(&eq.rhs, sig, &unknown_of, &vars),
                instances: Instances::All,
            }
        })
        .collect();
    let carrier = FiniteAlgebra::bare(n);
    let mut search = Search::new(Problem {
        dom: &carrier,
        val: &carrier,
        hom: false,
        unknowns,
        equations,
    });
    for (c, pin) in v.pins.iter().enumerate() {
        if let Some(p) = pin {
            let cell = search.cell_of(unknown_of(true, c), 0).unwrap();
            search.restrict(cell, vec![*p]);
        }
    }
    let mut err = None;
    let mut count = 0usize;
    let models = &mut out.models;
    let outcome = search.run(budget, |cells| {
        let mut tables = vec![Vec::new(); sig.ops().len()];
        let mut consts = vec![0; sig.consts().len()];
        let mut at = 0;
        for &(is_const, i) in &order {
            if is_const {
                consts[i] = cells[at];
                at += 1;
            } else {
                let len = n.pow(sig.op(i).arity as u32);
                tables[i] = cells[at..at + len].to_vec();
                at += len;
            }
        }
        match FiniteAlgebra::new(format!("{}_{n}_{count}", v.name), v.name.clone(), sig.clone(), n, tables, consts) {
            Ok(alg) => {
                count += 1;
                let go = keep(&alg);
                models.push(alg);
                go
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out.truncated = outcome.truncated;
    out.nodes = outcome.nodes;
    Ok(out)
}

/// Table vector in search order (constants, then operations by arity).
pub(crate) fn order_key(a: &FiniteAlgebra) -> Vec<usize> {
    let mut key = Vec::new();
    for (is_const, i) in symbol_order(a.signature()) {
        if is_const {
            key.push(a.constant(i));
        } else {
            key.extend_from_slice(a.table(i));
        }
    }
    key
}

/// Relabels `a` along the permutation `perm` (old element `x` becomes `perm[x]`).
pub fn relabel(a: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let n = a.size();
    let tables = a
        .signature()
        .ops()
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let mut t = vec![0; a.table(i).len()];
            for (code, &v) in a.table(i).iter().enumerate() {
                let args = a.decode(code, op.arity);
                let new_code = args.iter().fold(0, |acc, &x| acc * n + perm[x]);
                t[new_code] = perm[v];
            }
            t
        })
        .collect();
    let consts = a.constants().iter().map(|&c| perm[c]).collect();
    FiniteAlgebra::new(a.name(), a.variety_name(), a.signature().clone(), n, tables, consts)
        .expect("relabeling preserves shape")
}

/// Largest carrier [`canonical_form`] accepts.
pub const CANONICAL_MAX: usize = 6;

/// The relabeling of `a` with lexicographically least table vector, by brute
/// force over all `n!` permutations.
pub fn canonical_form(a: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    let n = a.size();
    if n > CANONICAL_MAX {
        return Err(AlgebraError::TooLarge);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = a.clone();
    let mut best_key = order_key(a);
    loop {
        let cand = relabel(a, &perm);
        let key = order_key(&cand);
        if key < best_key {
            best_key = key;
            best = cand;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

/// Keeps the first algebra of each isomorphism class, preserving order.
pub fn dedup_isomorphic(models: Vec<FiniteAlgebra>) -> Result<Vec<FiniteAlgebra>, AlgebraError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in models {
        if seen.insert(order_key(&canonical_form(&m)?)) {
            out.push(m);
        }
    }
    Ok(out)
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
