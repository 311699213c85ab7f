use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::FiniteAlgebra;
use crate::specs::Signature;

/// Tables for a spec's operations and values for its constants on a fixed
/// carrier. Equality is table equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InternalStructure {
    spec: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
    consts: Vec<usize>,
}

impl InternalStructure {
    pub(crate) fn new(spec: &str, signature: &Signature, size: usize, tables: Vec<Vec<usize>>, consts: Vec<usize>) -> Self {
        Self {
            spec: spec.to_string(),
            signature: signature.clone(),
            size,
            tables,
            consts,
        }
    }

    pub fn spec_name(&self) -> &str {
        &self.spec
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table_named(&self, op: &str) -> Option<&[usize]> {
        self.signature.op_index(op).map(|i| self.tables[i].as_slice())
    }

    pub fn constants(&self) -> &[usize] {
        &self.consts
    }

    pub fn constant_named(&self, c: &str) -> Option<usize> {
        self.signature.const_index(c).map(|i| self.consts[i])
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][args.iter().fold(0, |acc, &a| acc * self.size + a)]
    }

    /// The structure as an algebra of the spec's signature on the same carrier.
    pub fn as_algebra(&self) -> FiniteAlgebra {
        FiniteAlgebra::new(
            format!("{}_structure", self.spec),
            self.spec.clone(),
            self.signature.clone(),
            self.size,
            self.tables.clone(),
            self.consts.clone(),
        )
        .expect("structure tables are well-formed")
    }

    /// Constants first, then operations by arity and declaration order.
    pub fn order_key(&self) -> Vec<usize> {
        crate::algebra::order_key(&self.as_algebra())
    }
}

#[derive(Serialize)]
struct NamedTable<'a> {
    name: &'a str,
    arity: usize,
    table: &'a [usize],
}

#[derive(Serialize)]
struct NamedConst<'a> {
    name: &'a str,
    value: usize,
}

impl Serialize for InternalStructure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let ops: Vec<NamedTable> = self
            .signature
            .ops()
            .iter()
            .zip(&self.tables)
            .map(|(op, t)| NamedTable {
                name: &op.name,
                arity: op.arity,
                table: t,
            })
            .collect();
        let consts: Vec<NamedConst> = self
            .signature
            .consts()
            .iter()
            .zip(&self.consts)
            .map(|(c, &v)| NamedConst { name: c, value: v })
            .collect();
        let mut st = s.serialize_struct("InternalStructure", 2)?;
        st.serialize_field("consts", &consts)?;
        st.serialize_field("ops", &ops)?;
        st.end()
    }
}
