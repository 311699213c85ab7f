use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{FiniteAlgebra, Homomorphism};

/// A partition of `{0..n-1}` stored as least-representative vector:
/// `rep[i]` is the least element of `i`'s block. Equality is array equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    rep: Vec<usize>,
}

impl Serialize for Congruence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| format!("[{}]", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", blocks.join(","))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the two classes, returning false if they already coincided.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so roots are least elements
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub fn into_congruence(mut self) -> Congruence {
        let rep = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence { rep }
    }
}

impl Congruence {
    /// Builds from a representative vector, normalizing to least representatives.
    pub fn from_rep(rep: &[usize]) -> Option<Self> {
        if rep.iter().any(|&r| r >= rep.len()) {
            return None;
        }
        let mut uf = UnionFind::new(rep.len());
        for (x, &r) in rep.iter().enumerate() {
            uf.union(x, r);
        }
        Some(uf.into_congruence())
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut uf = UnionFind::new(n);
        let mut seen = vec![false; n];
        for b in blocks {
            for &x in b {
                if x >= n || seen[x] {
                    return None;
                }
                seen[x] = true;
                uf.union(b[0], x);
            }
        }
        Some(uf.into_congruence())
    }

    pub fn discrete(n: usize) -> Self {
        Self { rep: (0..n).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        Self { rep: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn rep(&self, x: usize) -> usize {
        self.rep[x]
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rep[x] == self.rep[y]
    }

    /// Least elements of the blocks, ascending.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.rep[x] == x).collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.rep.iter().enumerate().filter(|(x, r)| *x == **r).count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.size()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.size() {
            let r = self.rep[x];
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(x);
        }
        blocks
    }

    pub fn is_discrete(&self) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_indiscrete(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Refinement order: every block of `self` lies in a block of `other`.
    pub fn le(&self, other: &Congruence) -> bool {
        (0..self.size()).all(|x| other.rep[x] == other.rep[self.rep[x]])
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let mut first = std::collections::HashMap::new();
        let rep = (0..n)
            .map(|x| *first.entry((self.rep[x], other.rep[x])).or_insert(x))
            .collect();
        Congruence { rep }
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for x in 0..self.size() {
            uf.union(x, self.rep[x]);
            uf.union(x, other.rep[x]);
        }
        uf.into_congruence()
    }

    /// Whether every operation of `a` respects the partition. Checking one
    /// argument position at a time against the block representative suffices
    /// by transitivity.
    pub fn is_compatible(&self, a: &FiniteAlgebra) -> bool {
        self.first_incompatibility(a).is_none()
    }

    pub(crate) fn first_incompatibility(&self, a: &FiniteAlgebra) -> Option<(usize, Vec<usize>, usize)> {
        if self.size() != a.size() {
            return Some((usize::MAX, Vec::new(), 0));
        }
        for (i, op) in a.signature().ops().iter().enumerate() {
            for (code, &v) in a.table(i).iter().enumerate() {
                let args = a.decode(code, op.arity);
                for j in 0..op.arity {
                    if self.rep[args[j]] == args[j] {
                        continue;
                    }
                    let mut moved = args.clone();
                    moved[j] = self.rep[args[j]];
                    if !self.related(v, a.apply(i, &moved)) {
                        return Some((i, args, j));
                    }
                }
            }
        }
        None
    }
}

/// `R[f]`: `x ~ y` iff `f(x) = f(y)`.
pub fn kernel_congruence(f: &Homomorphism) -> Congruence {
    let mut first = std::collections::HashMap::new();
    let rep = f.map().iter().enumerate().map(|(x, &y)| *first.entry(y).or_insert(x)).collect();
    Congruence { rep }
}

/// The least congruence identifying `x` and `y`.
pub fn principal_congruence(a: &FiniteAlgebra, x: usize, y: usize) -> Congruence {
    generated_congruence(a, &[(x, y)])
}

/// The least congruence containing the given pairs. Every successful merge
/// is pushed through all unary translations `ω(.., -, ..)`.
pub fn generated_congruence(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in pairs {
        if uf.union(x, y) {
            queue.push((x, y));
        }
    }
    let mut args = Vec::new();
    while let Some((p, q)) = queue.pop() {
        for (i, op) in a.signature().ops().iter().enumerate() {
            let r = op.arity;
            let others = n.pow(r as u32 - 1);
            args.resize(r, 0);
            for j in 0..r {
                for code in 0..others {
                    let mut rest = code;
                    for pos in (0..r).rev() {
                        if pos == j {
                            continue;
                        }
                        args[pos] = rest % n;
                        rest /= n;
                    }
                    args[j] = p;
                    let u = a.apply(i, &args);
                    args[j] = q;
                    let v = a.apply(i, &args);
                    if uf.union(u, v) {
                        queue.push((u, v));
                    }
                }
            }
        }
    }
    uf.into_congruence()
}
