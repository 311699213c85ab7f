use serde::Serialize;

use super::SpecError;

/// An operation symbol of positive arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// What a name resolves to inside a signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Op(usize),
    Const(usize),
}

/// Operation symbols (arity ≥ 1) and constants (arity 0).
///
/// Names are unique across both lists; declaration order is significant and
/// is the order in which tables are stored and printed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    ops: Vec<OpSymbol>,
    consts: Vec<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts<S: Into<String>>(
        ops: impl IntoIterator<Item = (S, usize)>,
        consts: impl IntoIterator<Item = S>,
    ) -> Result<Self, SpecError> {
        let mut sig = Self::new();
        for (name, arity) in ops {
            sig.add_op(name, arity)?;
        }
        for name in consts {
            sig.add_const(name)?;
        }
        Ok(sig)
    }

    pub fn add_op(&mut self, name: impl Into<String>, arity: usize) -> Result<(), SpecError> {
        let name = name.into();
        if arity == 0 {
            return Err(SpecError::ZeroArity(name));
        }
        if self.lookup(&name).is_some() {
            return Err(SpecError::DuplicateName(name));
        }
        self.ops.push(OpSymbol { name, arity });
        Ok(())
    }

    pub fn add_const(&mut self, name: impl Into<String>) -> Result<(), SpecError> {
        let name = name.into();
        if self.lookup(&name).is_some() {
            return Err(SpecError::DuplicateName(name));
        }
        self.consts.push(name);
        Ok(())
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn consts(&self) -> &[String] {
        &self.consts
    }

    pub fn op(&self, idx: usize) -> &OpSymbol {
        &self.ops[idx]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        if let Some(i) = self.ops.iter().position(|o| o.name == name) {
            return Some(Symbol::Op(i));
        }
        self.consts.iter().position(|c| c == name).map(Symbol::Const)
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn const_index(&self, name: &str) -> Option<usize> {
        self.consts.iter().position(|c| c == name)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.arity).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty() && self.consts.is_empty()
    }

    /// A signature is pointed when it has exactly one constant and that constant is named `0`.
    pub fn is_pointed(&self) -> bool {
        self.consts.len() == 1 && self.consts[0] == "0"
    }
}
