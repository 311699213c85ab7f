use std::fmt;

use crate::algebra::FiniteAlgebra;

use super::VarietyPresentation;

impl fmt::Display for VarietyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variety {} {{", self.name)?;
        for op in self.signature.ops() {
            writeln!(f, "  op {}/{};", op.name, op.arity)?;
        }
        for (c, pin) in self.signature.consts().iter().zip(&self.pins) {
            match pin {
                Some(v) => writeln!(f, "  const {c} = {v};")?,
                None => writeln!(f, "  const {c};")?,
            }
        }
        for eq in &self.equations {
            writeln!(f, "  eq {eq};")?;
        }
        writeln!(f, "}}")
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} : {} {{", self.name(), self.variety_name())?;
        writeln!(f, "  size {};", self.size())?;
        for (i, op) in self.signature().ops().iter().enumerate() {
            let entries: Vec<String> = self.table(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  {}: [{}];", op.name, entries.join(","))?;
        }
        for (i, c) in self.signature().consts().iter().enumerate() {
            writeln!(f, "  {c} = {};", self.constant(i))?;
        }
        writeln!(f, "}}")
    }
}
