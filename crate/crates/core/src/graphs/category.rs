use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::compatibility_failure;
use crate::search::{Instances, Problem, Search, UEquation, UTerm, Unknown};

use super::{GraphError, ReflexiveGraph};

/// A composition `m` on the composable pairs of a reflexive graph.
/// `m(f, g)` is "`f` after `g`".
#[derive(Clone, Debug)]
pub struct CategoryStructure {
    graph: ReflexiveGraph,
    pairs: Vec<(usize, usize)>,
    m: Vec<usize>,
}

impl CategoryStructure {
    pub fn graph(&self) -> &ReflexiveGraph {
        &self.graph
    }

    /// Composable pairs, indexing [`CategoryStructure::table`].
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn table(&self) -> &[usize] {
        &self.m
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.pairs.binary_search(&(f, g)).ok().map(|i| self.m[i])
    }

    fn id_at(&self, x: usize) -> usize {
        self.graph.s0().apply(x)
    }

    /// First failed category axiom, if any: homomorphism, boundary, unit
    /// and associativity laws.
    pub fn validation_failure(&self) -> Option<String> {
        let g = &self.graph;
        let (d0, d1) = (g.d0(), g.d1());
        let (pairs_alg, _) = match g.composable_algebra() {
            Ok(p) => p,
            Err(e) => return Some(e.to_string()),
        };
        if let Some(why) = compatibility_failure(&pairs_alg, g.x1(), &self.m) {
            return Some(format!("m is not a homomorphism: {why}"));
        }
        for (&(f, h), &c) in self.pairs.iter().zip(&self.m) {
            if d1.apply(c) != d1.apply(f) || d0.apply(c) != d0.apply(h) {
                return Some(format!("boundary law fails at ({f},{h})"));
            }
        }
        for f in 0..g.x1().size() {
            if self.compose(f, self.id_at(d0.apply(f))) != Some(f) || self.compose(self.id_at(d1.apply(f)), f) != Some(f) {
                return Some(format!("unit law fails at {f}"));
            }
        }
        for &(f, h) in &self.pairs {
            for k in 0..g.x1().size() {
                if d0.apply(h) != d1.apply(k) {
                    continue;
                }
                let left = self.compose(f, h).and_then(|fh| self.compose(fh, k));
                let right = self.compose(h, k).and_then(|hk| self.compose(f, hk));
                if left.is_none() || left != right {
                    return Some(format!("associativity fails at ({f},{h},{k})"));
                }
            }
        }
        None
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let g = &self.graph;
        let (a, b) = (g.d0().apply(f), g.d1().apply(f));
        (0..g.x1().size()).find(|&h| {
            g.d0().apply(h) == b
                && g.d1().apply(h) == a
                && self.compose(f, h) == Some(self.id_at(b))
                && self.compose(h, f) == Some(self.id_at(a))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.graph.x1().size()).all(|f| self.inverse(f).is_some())
    }

    /// For a groupoid, whether `φ∘χ⁻¹∘ψ = ψ∘χ⁻¹∘φ` for all parallel arrows
    /// `φ, χ, ψ`. `None` when the structure is not a groupoid.
    pub fn is_affine(&self) -> Option<bool> {
        let g = &self.graph;
        let n1 = g.x1().size();
        let inv: Vec<usize> = (0..n1).map(|f| self.inverse(f)).collect::<Option<_>>()?;
        let ends = |f: usize| (g.d0().apply(f), g.d1().apply(f));
        let p = |x: usize, y: usize, z: usize| {
            let yz = self.compose(inv[y], z).expect("composable");
            self.compose(x, yz).expect("composable")
        };
        Some((0..n1).all(|x| {
            (0..n1).filter(|&y| ends(y) == ends(x)).all(|y| {
                (0..n1)
                    .filter(|&z| ends(z) == ends(x))
                    .all(|z| p(x, y, z) == p(z, y, x))
            })
        }))
    }
}

impl Serialize for CategoryStructure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: Vec<[usize; 3]> = self.pairs.iter().zip(&self.m).map(|(&(f, g), &c)| [f, g, c]).collect();
        let mut st = s.serialize_struct("CategoryStructure", 2)?;
        st.serialize_field("graph", &self.graph)?;
        st.serialize_field("m", &m)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_groupoid: bool,
    pub graph_is_equivalence_relation: bool,
    /// Commutativity of the hom-set Mal'tsev operation; only for groupoids.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_affine: Option<bool>,
}

pub fn classify_structure(c: &CategoryStructure) -> Classification {
    Classification {
        is_groupoid: c.is_groupoid(),
        graph_is_equivalence_relation: c.graph.is_equivalence_relation(),
        is_affine: c.is_affine(),
    }
}

/// All internal category structures on `g`, in lexicographic order of the
/// composition table.
///
/// `m` is an unknown binary table on `X1` supported on the composable pairs,
/// constrained to be a homomorphism. Boundary laws restrict each cell's
/// values; unit laws and associativity enter as explicit equation instances.
pub fn enumerate_category_structures(g: &ReflexiveGraph, budget: u64) -> Result<Vec<CategoryStructure>, GraphError> {
    if budget == 0 {
        return Err(GraphError::ZeroBudget);
    }
    let x1 = g.x1();
    let n1 = x1.size();
    let (d0, d1, s0) = (g.d0(), g.d1(), g.s0());
    let pairs = g.composable_pairs();
    let support: Vec<usize> = pairs.iter().map(|&(f, h)| f * n1 + h).collect();
    let m = |a: UTerm, b: UTerm| UTerm::Unknown(0, vec![a, b]);
    let v = UTerm::Var;
    let units_right = (0..n1).map(|f| vec![f, s0.apply(d0.apply(f))]).collect();
    let units_left = (0..n1).map(|f| vec![s0.apply(d1.apply(f)), f]).collect();
    let mut triples = Vec::new();
    for &(f, h) in &pairs {
        for k in 0..n1 {
            if d0.apply(h) == d1.apply(k) {
                triples.push(vec![f, h, k]);
            }
        }
    }
    let equations = vec![
        UEquation {
            nvars: 2,
            lhs: m(v(0), v(1)),
            rhs: v(0),
            instances: Instances::Explicit(units_right),
        },
        UEquation {
            nvars: 2,
            lhs: m(v(0), v(1)),
            rhs: v(1),
            instances: Instances::Explicit(units_left),
        },
        UEquation {
            nvars: 3,
            lhs: m(m(v(0), v(1)), v(2)),
            rhs: m(v(0), m(v(1), v(2))),
            instances: Instances::Explicit(triples),
        },
    ];
    let mut search = Search::new(Problem {
        dom: x1,
        val: x1,
        hom: true,
        unknowns: vec![Unknown {
            arity: 2,
            support: Some(support.clone()),
        }],
        equations,
    });
    for (&(f, h), &code) in pairs.iter().zip(&support) {
        let cell = search.cell_of(0, code).expect("composable cell");
        let allowed = (0..n1)
            .filter(|&c| d1.apply(c) == d1.apply(f) && d0.apply(c) == d0.apply(h))
            .collect();
        search.restrict(cell, allowed);
    }
    let mut out = Vec::new();
    let outcome = search.run(budget, |cells| {
        out.push(CategoryStructure {
            graph: g.clone(),
            pairs: pairs.clone(),
            m: cells.to_vec(),
        });
        true
    });
    if outcome.truncated {
        return Err(GraphError::BudgetExhausted { nodes: outcome.nodes });
    }
    Ok(out)
}
