use crate::specs::{checked_pow, Signature};

use super::AlgebraError;

/// An algebra on the carrier `{0..size-1}` with one lookup table per
/// operation. Tables are row-major: the entry for `(x_1,..,x_k)` sits at
/// `x_1·n^(k-1) + … + x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    variety: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
    consts: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        variety: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
        consts: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if tables.len() != signature.ops().len() {
            return Err(AlgebraError::Malformed(format!(
                "{} tables for {} operations",
                tables.len(),
                signature.ops().len()
            )));
        }
        if consts.len() != signature.consts().len() {
            return Err(AlgebraError::Malformed(format!(
                "{} constant values for {} constants",
                consts.len(),
                signature.consts().len()
            )));
        }
        if size == 0 && !consts.is_empty() {
            return Err(AlgebraError::EmptyWithConstants);
        }
        for (op, t) in signature.ops().iter().zip(&tables) {
            let want = checked_pow(size, op.arity).ok_or(AlgebraError::TooLarge)?;
            if t.len() != want {
                return Err(AlgebraError::Malformed(format!(
                    "table `{}` has {} entries, expected {want}",
                    op.name,
                    t.len()
                )));
            }
            if t.iter().any(|&e| e >= size) {
                return Err(AlgebraError::Malformed(format!("table `{}` leaves the carrier", op.name)));
            }
        }
        if consts.iter().any(|&c| c >= size) {
            return Err(AlgebraError::Malformed("constant outside the carrier".into()));
        }
        Ok(Self {
            name: name.into(),
            variety: variety.into(),
            signature,
            size,
            tables,
            consts,
        })
    }

    /// Carrier of size `n` with no operations.
    pub fn bare(n: usize) -> Self {
        Self {
            name: format!("Set{n}"),
            variety: "Set".into(),
            signature: Signature::new(),
            size: n,
            tables: Vec::new(),
            consts: Vec::new(),
        }
    }

    /// The terminal algebra of a signature.
    pub fn one_element(signature: &Signature, variety: impl Into<String>) -> Self {
        let tables = signature.ops().iter().map(|_| vec![0]).collect();
        let consts = vec![0; signature.consts().len()];
        Self {
            name: "One".into(),
            variety: variety.into(),
            signature: signature.clone(),
            size: 1,
            tables,
            consts,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variety_name(&self) -> &str {
        &self.variety
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

    pub fn constants(&self) -> &[usize] {
        &self.consts
    }

    pub fn constant(&self, i: usize) -> usize {
        self.consts[i]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_variety(mut self, variety: impl Into<String>) -> Self {
        self.variety = variety.into();
        self
    }

    pub fn code(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size + a)
    }

    pub fn decode(&self, mut code: usize, arity: usize) -> Vec<usize> {
        let mut out = vec![0; arity];
        for slot in out.iter_mut().rev() {
            *slot = code % self.size;
            code /= self.size;
        }
        out
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][self.code(args)]
    }

    pub fn apply_named(&self, op: &str, args: &[usize]) -> Option<usize> {
        self.signature.op_index(op).map(|i| self.apply(i, args))
    }

    /// `Some(j)` when operation `op` is the projection onto argument `j`.
    pub fn projection_index(&self, op: usize) -> Option<usize> {
        let arity = self.signature.op(op).arity;
        if self.size == 0 {
            return None;
        }
        (0..arity).find(|&j| {
            self.tables[op]
                .iter()
                .enumerate()
                .all(|(code, &v)| self.decode(code, arity)[j] == v)
        })
    }

    /// Whether `x` is fixed by every operation on the diagonal and equals
    /// every constant, i.e. whether `x` is the image of a map from the
    /// terminal algebra.
    pub fn is_unit_candidate(&self, x: usize) -> bool {
        self.consts.iter().all(|&c| c == x)
            && self
                .signature
                .ops()
                .iter()
                .enumerate()
                .all(|(i, op)| self.apply(i, &vec![x; op.arity]) == x)
    }

    pub fn unit_candidates(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_unit_candidate(x)).collect()
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        self.signature == other.signature
    }

    /// Index of the designated point `0` of a pointed signature.
    pub fn point(&self) -> Option<usize> {
        self.signature.is_pointed().then(|| self.consts[0])
    }
}

impl serde::Serialize for FiniteAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let ops: Vec<serde_json::Value> = self
            .signature
            .ops()
            .iter()
            .zip(&self.tables)
            .map(|(op, t)| serde_json::json!({ "name": op.name, "arity": op.arity, "table": t }))
            .collect();
        let consts: Vec<serde_json::Value> = self
            .signature
            .consts()
            .iter()
            .zip(&self.consts)
            .map(|(c, v)| serde_json::json!({ "name": c, "value": v }))
            .collect();
        let mut st = s.serialize_struct("FiniteAlgebra", 5)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("variety", &self.variety)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("consts", &consts)?;
        st.serialize_field("ops", &ops)?;
        st.end()
    }
}
