use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{product, subalgebra, FiniteAlgebra, Homomorphism};
use crate::congruences::Congruence;

use super::GraphError;

/// `d0, d1: X1 → X0` with a common section `s0: X0 → X1`.
///
/// An arrow `f` goes from `d0(f)` to `d1(f)`.
#[derive(Clone, Debug)]
pub struct ReflexiveGraph {
    x1: FiniteAlgebra,
    x0: FiniteAlgebra,
    d0: Homomorphism,
    d1: Homomorphism,
    s0: Homomorphism,
}

impl ReflexiveGraph {
    pub fn new(
        x1: FiniteAlgebra,
        x0: FiniteAlgebra,
        d0: Vec<usize>,
        d1: Vec<usize>,
        s0: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let d0 = Homomorphism::new(&x1, &x0, d0)?;
        let d1 = Homomorphism::new(&x1, &x0, d1)?;
        let s0 = Homomorphism::new(&x0, &x1, s0)?;
        for x in 0..x0.size() {
            let a = s0.apply(x);
            if d0.apply(a) != x || d1.apply(a) != x {
                return Err(GraphError::NotReflexive(format!("s0({x}) is not a loop at {x}")));
            }
        }
        Ok(Self { x1, x0, d0, d1, s0 })
    }

    /// The graph of a reflexive relation `R ⊆ X × X` compatible with the
    /// operations. The arrow `(a, b)` goes from `b` to `a`.
    pub fn from_relation(x: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = x.size();
        if pairs.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(GraphError::NotReflexive("pair outside the carrier".into()));
        }
        let (sq, _) = product(&[x.clone(), x.clone()])?;
        let mut codes: Vec<usize> = pairs.iter().map(|&(a, b)| a * n + b).collect();
        codes.extend((0..n).map(|a| a * n + a));
        codes.sort_unstable();
        codes.dedup();
        let (x1, incl) = subalgebra(&sq, &codes).map_err(|_| GraphError::NotCompatible)?;
        let x1 = x1.with_name(format!("{}_graph", x.name()));
        let d1 = incl.map().iter().map(|&c| c / n).collect();
        let d0 = incl.map().iter().map(|&c| c % n).collect();
        let s0 = (0..n)
            .map(|a| incl.map().binary_search(&(a * n + a)).expect("diagonal present"))
            .collect();
        Self::new(x1, x.clone(), d0, d1, s0)
    }

    pub fn from_congruence(x: &FiniteAlgebra, c: &Congruence) -> Result<Self, GraphError> {
        if c.size() != x.size() {
            return Err(GraphError::NotReflexive("congruence on another carrier".into()));
        }
        let n = x.size();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| c.related(a, b))
            .collect();
        Self::from_relation(x, &pairs)
    }

    /// `∇_X`: every pair is an arrow.
    pub fn indiscrete(x: &FiniteAlgebra) -> Result<Self, GraphError> {
        Self::from_congruence(x, &Congruence::indiscrete(x.size()))
    }

    /// `Δ_X`: only identities.
    pub fn discrete(x: &FiniteAlgebra) -> Result<Self, GraphError> {
        let id: Vec<usize> = (0..x.size()).collect();
        Self::new(x.clone(), x.clone(), id.clone(), id.clone(), id)
    }

    pub fn x1(&self) -> &FiniteAlgebra {
        &self.x1
    }

    pub fn x0(&self) -> &FiniteAlgebra {
        &self.x0
    }

    pub fn d0(&self) -> &Homomorphism {
        &self.d0
    }

    pub fn d1(&self) -> &Homomorphism {
        &self.d1
    }

    pub fn s0(&self) -> &Homomorphism {
        &self.s0
    }

    /// `(f, g)` with `d0(f) = d1(g)`, in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let n1 = self.x1.size();
        (0..n1)
            .flat_map(|f| (0..n1).map(move |g| (f, g)))
            .filter(|&(f, g)| self.d0.apply(f) == self.d1.apply(g))
            .collect()
    }

    /// The composable pairs as a subalgebra of `X1 × X1`, with the inclusion.
    pub fn composable_algebra(&self) -> Result<(FiniteAlgebra, Homomorphism), GraphError> {
        let n1 = self.x1.size();
        let (sq, _) = product(&[self.x1.clone(), self.x1.clone()])?;
        let codes: Vec<usize> = self.composable_pairs().iter().map(|&(f, g)| f * n1 + g).collect();
        Ok(subalgebra(&sq, &codes)?)
    }

    /// Whether `(d0, d1)` is injective with reflexive, symmetric and
    /// transitive image.
    pub fn is_equivalence_relation(&self) -> bool {
        let n = self.x0.size();
        let mut rel = vec![false; n * n];
        for f in 0..self.x1.size() {
            let cell = &mut rel[self.d1.apply(f) * n + self.d0.apply(f)];
            if *cell {
                return false;
            }
            *cell = true;
        }
        let r = |a: usize, b: usize| rel[a * n + b];
        (0..n).all(|a| r(a, a))
            && (0..n).all(|a| (0..n).all(|b| !r(a, b) || r(b, a)))
            && (0..n).all(|a| (0..n).all(|b| !r(a, b) || (0..n).all(|c| !r(b, c) || r(a, c))))
    }
}

impl Serialize for ReflexiveGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ReflexiveGraph", 5)?;
        st.serialize_field("x1", self.x1.name())?;
        st.serialize_field("x0", self.x0.name())?;
        st.serialize_field("d0", &self.d0)?;
        st.serialize_field("d1", &self.d1)?;
        st.serialize_field("s0", &self.s0)?;
        st.end()
    }
}
