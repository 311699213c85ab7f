use std::collections::BTreeSet;
use std::fmt;

use super::{Signature, SpecError, Symbol};

/// A term over a signature. Constants are kept distinct from variables so a
/// term can be checked without consulting the signature for every leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn apply(op: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Apply(op.into(), args)
    }

    pub fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Const(_) => {}
            Term::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<(), SpecError> {
        match self {
            Term::Var(v) => match sig.lookup(v) {
                None => Ok(()),
                Some(_) => Err(SpecError::VariableShadowsSymbol(v.clone())),
            },
            Term::Const(c) => match sig.lookup(c) {
                Some(Symbol::Const(_)) => Ok(()),
                _ => Err(SpecError::UnknownSymbol(c.clone())),
            },
            Term::Apply(op, args) => {
                let Some(Symbol::Op(i)) = sig.lookup(op) else {
                    return Err(SpecError::UnknownSymbol(op.clone()));
                };
                let arity = sig.op(i).arity;
                if arity != args.len() {
                    return Err(SpecError::ArityMismatch {
                        op: op.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    /// Renames variables through `f`; symbols are untouched.
    pub fn map_vars(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::Const(c) => Term::Const(c.clone()),
            Term::Apply(op, args) => Term::Apply(op.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    /// Renames operation symbols through `f`.
    pub fn map_ops(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Apply(op, args) => Term::Apply(f(op), args.iter().map(|a| a.map_ops(f)).collect()),
        }
    }

    fn first_occurrence<'a>(&'a self, seen: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !seen.contains(&v.as_str()) {
                    seen.push(v);
                }
            }
            Term::Const(_) => {}
            Term::Apply(_, args) => args.iter().for_each(|a| a.first_occurrence(seen)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::Apply(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }

    /// Variables of both sides, in name order. This is the order in which
    /// assignments are enumerated by the identity checker.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.lhs.collect_vars(&mut set);
        self.rhs.collect_vars(&mut set);
        set.into_iter().map(str::to_owned).collect()
    }

    pub fn check(&self, sig: &Signature) -> Result<(), SpecError> {
        self.lhs.check(sig)?;
        self.rhs.check(sig)
    }

    pub fn flipped(&self) -> Equation {
        Equation::new(self.rhs.clone(), self.lhs.clone())
    }

    /// Canonical variable renaming: variables become `v0, v1, ...` in order of
    /// first occurrence (lhs first). Two equations are alpha-equivalent iff
    /// their normal forms are equal.
    pub fn alpha_normal(&self) -> Equation {
        let mut seen = Vec::new();
        self.lhs.first_occurrence(&mut seen);
        self.rhs.first_occurrence(&mut seen);
        let names: Vec<String> = seen.iter().map(|s| s.to_string()).collect();
        let rename = |v: &str| {
            let i = names.iter().position(|n| n == v).expect("collected above");
            format!("v{i}")
        };
        Equation::new(self.lhs.map_vars(&rename), self.rhs.map_vars(&rename))
    }

    /// Alpha-equivalence in either orientation.
    pub fn matches_up_to_renaming(&self, other: &Equation) -> bool {
        let me = self.alpha_normal();
        me == other.alpha_normal() || me == other.flipped().alpha_normal()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A named signature plus equations.
///
/// `pins` is aligned with the signature's constants: a pinned constant is fixed
/// to that element when enumerating models. Pins are an enumeration hint only;
/// they do not take part in identity checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPresentation {
    pub name: String,
    pub signature: Signature,
    pub equations: Vec<Equation>,
    pub pins: Vec<Option<usize>>,
}

impl VarietyPresentation {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        equations: Vec<Equation>,
    ) -> Result<Self, SpecError> {
        let pins = vec![None; signature.consts().len()];
        Self::with_pins(name, signature, equations, pins)
    }

    pub fn with_pins(
        name: impl Into<String>,
        signature: Signature,
        equations: Vec<Equation>,
        pins: Vec<Option<usize>>,
    ) -> Result<Self, SpecError> {
        for eq in &equations {
            eq.check(&signature)?;
        }
        assert_eq!(pins.len(), signature.consts().len(), "one pin slot per constant");
        Ok(Self {
            name: name.into(),
            signature,
            equations,
            pins,
        })
    }
}
