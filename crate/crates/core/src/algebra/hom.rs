use serde::Serialize;

use crate::search::{Problem, Search, Unknown};

use super::{AlgebraError, FiniteAlgebra};

/// A structure-preserving map between two algebras over one signature.
/// Serializes as the bare map array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Homomorphism {
    map: Vec<usize>,
}

impl Homomorphism {
    /// Validates `map` as a homomorphism `dom → cod`.
    pub fn new(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: Vec<usize>) -> Result<Self, AlgebraError> {
        if !dom.same_signature(cod) {
            return Err(AlgebraError::SignatureMismatch);
        }
        if map.len() != dom.size() || map.iter().any(|&y| y >= cod.size()) {
            return Err(AlgebraError::NotHomomorphism("map has the wrong shape".into()));
        }
        if let Some(why) = compatibility_failure(dom, cod, &map) {
            return Err(AlgebraError::NotHomomorphism(why));
        }
        Ok(Self { map })
    }

    pub(crate) fn unchecked(map: Vec<usize>) -> Self {
        Self { map }
    }

    pub fn identity(a: &FiniteAlgebra) -> Self {
        Self {
            map: (0..a.size()).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn dom_size(&self) -> usize {
        self.map.len()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Homomorphism) -> Homomorphism {
        Homomorphism {
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|x| seen.insert(*x))
    }

    pub fn is_bijective_onto(&self, cod_size: usize) -> bool {
        self.map.len() == cod_size && self.is_injective()
    }

    /// Image as a sorted element list.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// Describes the first compatibility failure, scanning operations in
/// declaration order and argument tuples lexicographically.
pub fn compatibility_failure(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: &[usize]) -> Option<String> {
    let sig = dom.signature();
    for (i, c) in dom.constants().iter().enumerate() {
        if map[*c] != cod.constant(i) {
            return Some(format!("constant `{}` not preserved", sig.consts()[i]));
        }
    }
    for (i, op) in sig.ops().iter().enumerate() {
        for (code, &v) in dom.table(i).iter().enumerate() {
            let args = dom.decode(code, op.arity);
            let image: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            if map[v] != cod.apply(i, &image) {
                return Some(format!("`{}` not preserved at {:?}", op.name, args));
            }
        }
    }
    None
}

pub fn is_homomorphism(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: &[usize]) -> bool {
    dom.same_signature(cod)
        && map.len() == dom.size()
        && map.iter().all(|&y| y < cod.size())
        && compatibility_failure(dom, cod, map).is_none()
}

/// All homomorphisms `a → b` in lexicographic order of their map arrays;
/// with `only_bijective`, the isomorphisms.
pub fn enumerate_homs(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    only_bijective: bool,
) -> Result<Vec<Homomorphism>, AlgebraError> {
    if !a.same_signature(b) {
        return Err(AlgebraError::SignatureMismatch);
    }
    if only_bijective && a.size() != b.size() {
        return Ok(Vec::new());
    }
    if a.size() == 0 {
        return Ok(vec![Homomorphism { map: Vec::new() }]);
    }
    let mut search = Search::new(Problem {
        dom: a,
        val: b,
        hom: true,
        unknowns: vec![Unknown::full(1)],
        equations: Vec::new(),
    });
    let mut out = Vec::new();
    search.run(u64::MAX, |cells| {
        let h = Homomorphism { map: cells.to_vec() };
        if !only_bijective || h.is_injective() {
            out.push(h);
        }
        true
    });
    Ok(out)
}
