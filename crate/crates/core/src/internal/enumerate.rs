use crate::algebra::{compile_uterm, symbol_order, FiniteAlgebra};
use crate::search::{Instances, Problem, Search, UEquation, Unknown};
use crate::specs::{odometer, CompiledEquation, Term};

use super::objects::power_hom_failure;
use super::{InternalError, InternalStructure, StructureSpec};

/// Output of [`enumerate_internal`].
#[derive(Clone, Debug)]
pub struct InternalEnumeration {
    pub structures: Vec<InternalStructure>,
    pub truncated: bool,
    pub nodes: u64,
}

/// All internal `s`-structures on `a`: spec operations that are
/// homomorphisms `a^k → a` satisfying the spec equations, spec constants that
/// are unit candidates. Sorted by [`InternalStructure::order_key`].
pub fn enumerate_internal(a: &FiniteAlgebra, s: &StructureSpec, budget: u64) -> Result<InternalEnumeration, InternalError> {
    enumerate_internal_limited(a, s, budget, usize::MAX)
}

/// Like [`enumerate_internal`] but stops after `limit` structures.
pub fn enumerate_internal_limited(
    a: &FiniteAlgebra,
    s: &StructureSpec,
    budget: u64,
    limit: usize,
) -> Result<InternalEnumeration, InternalError> {
    if budget == 0 {
        return Err(InternalError::ZeroBudget);
    }
    let sig = &s.signature;
    let n = a.size();
    let order = symbol_order(sig);
    let unknown_of = |is_const: bool, idx: usize| order.iter().position(|&x| x == (is_const, idx)).unwrap();
    let unknowns = order
        .iter()
        .map(|&(is_const, i)| Unknown::full(if is_const { 0 } else { sig.op(i).arity }))
        .collect();
    let equations = s
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
    let mut search = Search::new(Problem {
        dom: a,
        val: a,
        hom: true,
        unknowns,
        equations,
    });
    let units = a.unit_candidates();
    for c in 0..sig.consts().len() {
        let cell = search.cell_of(unknown_of(true, c), 0).expect("constant cell");
        search.restrict(cell, units.clone());
    }
    let mut structures = Vec::new();
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
        structures.push(InternalStructure::new(&s.name, sig, n, tables, consts));
        structures.len() < limit
    });
    Ok(InternalEnumeration {
        structures,
        truncated: outcome.truncated,
        nodes: outcome.nodes,
    })
}

/// Default cap on the number of candidate tables [`brute_force_internal`] visits.
pub const BRUTE_FORCE_CAP: u64 = 20_000_000;

/// Exhaustive oracle for [`enumerate_internal`].
///
/// Constants range over every element and are filtered by the unit-candidate
/// definition. Cells forced by an equation of the shape `op(v..) = v` (after
/// substituting the constants) are pre-filled; every remaining cell ranges
/// over the whole carrier. Each candidate is tested against the spec
/// equations and then against the homomorphism condition by a direct scan.
pub fn brute_force_internal(a: &FiniteAlgebra, s: &StructureSpec) -> Result<Vec<InternalStructure>, InternalError> {
    brute_force_internal_capped(a, s, BRUTE_FORCE_CAP)
}

pub fn brute_force_internal_capped(
    a: &FiniteAlgebra,
    s: &StructureSpec,
    cap: u64,
) -> Result<Vec<InternalStructure>, InternalError> {
    let sig = &s.signature;
    let n = a.size();
    let nconsts = sig.consts().len();
    let compiled: Vec<CompiledEquation> = s
        .equations
        .iter()
        .map(|eq| CompiledEquation::new(eq, sig))
        .collect::<Result<_, _>>()?;
    let lens: Vec<usize> = sig
        .ops()
        .iter()
        .map(|op| crate::specs::checked_pow(n, op.arity).ok_or(InternalError::TooLarge))
        .collect::<Result<_, _>>()?;

    // every assignment of constants, with its pinned cells
    let mut plans: Vec<(Vec<usize>, Vec<Vec<Option<usize>>>)> = Vec::new();
    let mut total: u64 = 0;
    let mut consts = vec![0usize; nconsts];
    if n > 0 || nconsts == 0 {
        loop {
            if consts.iter().all(|&c| is_unit(a, c)) {
                if let Some(pins) = pinned_cells(s, n, &consts, &lens) {
                    let free: usize = pins.iter().flatten().filter(|p| p.is_none()).count();
                    let count = (n as u64).checked_pow(free as u32).ok_or(InternalError::TooLarge)?;
                    total = total.saturating_add(count);
                    if total > cap {
                        return Err(InternalError::TooLarge);
                    }
                    plans.push((consts.clone(), pins));
                }
            }
            if nconsts == 0 || !odometer(&mut consts, n) {
                break;
            }
        }
    }

    let mut out = Vec::new();
    for (consts, pins) in plans {
        let free: Vec<(usize, usize)> = pins
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.iter().enumerate().filter(|(_, p)| p.is_none()).map(move |(c, _)| (i, c)))
            .collect();
        let mut tables: Vec<Vec<usize>> = pins.iter().map(|t| t.iter().map(|p| p.unwrap_or(0)).collect()).collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            for (&(i, c), &d) in free.iter().zip(&digits) {
                tables[i][c] = d;
            }
            let refs: Vec<&[usize]> = tables.iter().map(Vec::as_slice).collect();
            let ok = compiled.iter().all(|eq| eq.first_violation(n, &refs, &consts).is_none())
                && tables
                    .iter()
                    .zip(sig.ops())
                    .all(|(t, op)| power_hom_failure(a, op.arity, t).is_none());
            if ok {
                out.push(InternalStructure::new(&s.name, sig, n, tables.clone(), consts.clone()));
            }
            if free.is_empty() || n == 0 || !odometer(&mut digits, n) {
                break;
            }
        }
    }
    out.sort_by_key(InternalStructure::order_key);
    Ok(out)
}

fn is_unit(a: &FiniteAlgebra, x: usize) -> bool {
    a.constants().iter().all(|&c| c == x)
        && a.signature().ops().iter().enumerate().all(|(i, op)| {
            let code = (0..op.arity).fold(0, |acc, _| acc * a.size() + x);
            a.table(i)[code] == x
        })
}

/// Cells fixed by equations `op(args) = rhs` whose arguments are variables or
/// constants and whose right side is a variable or a constant. `None` if two
/// such equations disagree on a cell.
fn pinned_cells(s: &StructureSpec, n: usize, consts: &[usize], lens: &[usize]) -> Option<Vec<Vec<Option<usize>>>> {
    let sig = &s.signature;
    let mut pins: Vec<Vec<Option<usize>>> = lens.iter().map(|&l| vec![None; l]).collect();
    for eq in &s.equations {
        for (lhs, rhs) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
            let Term::Apply(op, args) = lhs else { continue };
            if !args.iter().all(|t| matches!(t, Term::Var(_) | Term::Const(_))) || matches!(rhs, Term::Apply(..)) {
                continue;
            }
            let i = sig.op_index(op).expect("checked spec");
            let vars = eq.variables();
            let mut env = vec![0usize; vars.len()];
            let value = |t: &Term, env: &[usize]| match t {
                Term::Var(v) => env[vars.iter().position(|x| x == v).unwrap()],
                Term::Const(c) => consts[sig.const_index(c).unwrap()],
                Term::Apply(..) => unreachable!(),
            };
            loop {
                if n == 0 {
                    break;
                }
                let code = args.iter().fold(0, |acc, t| acc * n + value(t, &env));
                let v = value(rhs, &env);
                match pins[i][code] {
                    None => pins[i][code] = Some(v),
                    Some(w) if w != v => return None,
                    _ => {}
                }
                if vars.is_empty() || !odometer(&mut env, n) {
                    break;
                }
            }
        }
    }
    Some(pins)
}
