use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;

use super::{Equation, Signature, SpecError, Symbol, Term};

/// Evaluates `t` in `a` under `env`.
pub fn eval_term(t: &Term, a: &FiniteAlgebra, env: &BTreeMap<String, usize>) -> Result<usize, SpecError> {
    match t {
        Term::Var(v) => env.get(v).copied().ok_or_else(|| SpecError::UnboundVariable(v.clone())),
        Term::Const(c) => {
            let i = a
                .signature()
                .const_index(c)
                .ok_or_else(|| SpecError::UnknownSymbol(c.clone()))?;
            Ok(a.constant(i))
        }
        Term::Apply(op, args) => {
            let i = a
                .signature()
                .op_index(op)
                .ok_or_else(|| SpecError::UnknownSymbol(op.clone()))?;
            if a.signature().op(i).arity != args.len() {
                return Err(SpecError::ArityMismatch {
                    op: op.clone(),
                    expected: a.signature().op(i).arity,
                    found: args.len(),
                });
            }
            let vals = args
                .iter()
                .map(|arg| eval_term(arg, a, env))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(a.apply(i, &vals))
        }
    }
}

/// Term with names resolved to indices.
#[derive(Clone, Debug)]
pub(crate) enum CTerm {
    Var(usize),
    Const(usize),
    Op(usize, Vec<CTerm>),
}

impl CTerm {
    pub(crate) fn compile(t: &Term, sig: &Signature, vars: &[String]) -> Result<CTerm, SpecError> {
        Ok(match t {
            Term::Var(v) => CTerm::Var(
                vars.iter()
                    .position(|x| x == v)
                    .ok_or_else(|| SpecError::UnboundVariable(v.clone()))?,
            ),
            Term::Const(c) => match sig.lookup(c) {
                Some(Symbol::Const(i)) => CTerm::Const(i),
                _ => return Err(SpecError::UnknownSymbol(c.clone())),
            },
            Term::Apply(op, args) => match sig.lookup(op) {
                Some(Symbol::Op(i)) if sig.op(i).arity == args.len() => CTerm::Op(
                    i,
                    args.iter()
                        .map(|a| CTerm::compile(a, sig, vars))
                        .collect::<Result<_, _>>()?,
                ),
                Some(Symbol::Op(i)) => {
                    return Err(SpecError::ArityMismatch {
                        op: op.clone(),
                        expected: sig.op(i).arity,
                        found: args.len(),
                    })
                }
                _ => return Err(SpecError::UnknownSymbol(op.clone())),
            },
        })
    }

    /// Evaluates against raw tables: `tables[op]` is row-major over `n`.
    pub(crate) fn eval(&self, n: usize, tables: &[&[usize]], consts: &[usize], env: &[usize]) -> usize {
        match self {
            CTerm::Var(i) => env[*i],
            CTerm::Const(i) => consts[*i],
            CTerm::Op(i, args) => {
                let mut code = 0;
                for a in args {
                    code = code * n + a.eval(n, tables, consts, env);
                }
                tables[*i][code]
            }
        }
    }
}

/// An equation compiled against a signature, with its variables in name order.
#[derive(Clone, Debug)]
pub(crate) struct CompiledEquation {
    pub vars: Vec<String>,
    pub lhs: CTerm,
    pub rhs: CTerm,
}

impl CompiledEquation {
    pub(crate) fn new(eq: &Equation, sig: &Signature) -> Result<Self, SpecError> {
        let vars = eq.variables();
        Ok(Self {
            lhs: CTerm::compile(&eq.lhs, sig, &vars)?,
            rhs: CTerm::compile(&eq.rhs, sig, &vars)?,
            vars,
        })
    }

    /// First violating assignment in lexicographic order (first variable most
    /// significant), if any.
    pub(crate) fn first_violation(&self, n: usize, tables: &[&[usize]], consts: &[usize]) -> Option<Vec<usize>> {
        let mut env = vec![0; self.vars.len()];
        if n == 0 && !env.is_empty() {
            return None;
        }
        loop {
            if self.lhs.eval(n, tables, consts, &env) != self.rhs.eval(n, tables, consts, &env) {
                return Some(env);
            }
            if !odometer(&mut env, n) {
                return None;
            }
        }
    }
}

/// Advances `digits` as a base-`n` counter, last digit fastest. Returns false
/// after the last value.
pub(crate) fn odometer(digits: &mut [usize], n: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub equation_index: usize,
    pub equation: String,
    pub assignment: Vec<(String, usize)>,
    pub lhs: usize,
    pub rhs: usize,
}

/// Outcome of [`check_identities`]. `violations` lists at most
/// [`IdentityReport::MAX_LISTED`] entries, equation-major and lexicographic
/// within an equation; `total_violations` counts them all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub violations: Vec<Violation>,
    pub total_violations: usize,
}

impl IdentityReport {
    pub const MAX_LISTED: usize = 64;

    pub fn satisfied(&self) -> bool {
        self.total_violations == 0
    }
}

/// Exhaustively checks every equation under every assignment of carrier
/// elements to its variables.
pub fn check_identities(a: &FiniteAlgebra, eqs: &[Equation]) -> Result<IdentityReport, SpecError> {
    let n = a.size();
    let tables: Vec<&[usize]> = (0..a.signature().ops().len()).map(|i| a.table(i)).collect();
    let mut report = IdentityReport {
        violations: Vec::new(),
        total_violations: 0,
    };
    for (ei, eq) in eqs.iter().enumerate() {
        let ce = CompiledEquation::new(eq, a.signature())?;
        let mut env = vec![0; ce.vars.len()];
        if n == 0 && !env.is_empty() {
            continue;
        }
        loop {
            let l = ce.lhs.eval(n, &tables, a.constants(), &env);
            let r = ce.rhs.eval(n, &tables, a.constants(), &env);
            if l != r {
                report.total_violations += 1;
                if report.violations.len() < IdentityReport::MAX_LISTED {
                    report.violations.push(Violation {
                        equation_index: ei,
                        equation: eq.to_string(),
                        assignment: ce.vars.iter().cloned().zip(env.iter().copied()).collect(),
                        lhs: l,
                        rhs: r,
                    });
                }
            }
            if !odometer(&mut env, n) {
                break;
            }
        }
    }
    Ok(report)
}

/// Early-exit variant of [`check_identities`].
pub fn satisfies(a: &FiniteAlgebra, eqs: &[Equation]) -> Result<bool, SpecError> {
    let tables: Vec<&[usize]> = (0..a.signature().ops().len()).map(|i| a.table(i)).collect();
    for eq in eqs {
        let ce = CompiledEquation::new(eq, a.signature())?;
        if ce.first_violation(a.size(), &tables, a.constants()).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
