use std::collections::{HashMap, HashSet};

use crate::algebra::FiniteAlgebra;

use super::{principal_congruence, Congruence, CongruenceError};

/// Default guard on the number of principal congruences computed.
pub const DEFAULT_PRINCIPAL_CAP: usize = 20_000;

/// All congruences of `a`, sorted by number of blocks (descending) and then
/// representative vector. The first entry is Δ, the last ∇.
pub fn all_congruences(a: &FiniteAlgebra) -> Result<Vec<Congruence>, CongruenceError> {
    all_congruences_capped(a, DEFAULT_PRINCIPAL_CAP)
}

pub fn all_congruences_capped(a: &FiniteAlgebra, cap: usize) -> Result<Vec<Congruence>, CongruenceError> {
    let n = a.size();
    if n == 0 {
        return Err(CongruenceError::EmptyCarrier);
    }
    let pairs = n * (n - 1) / 2;
    if pairs > cap {
        return Err(CongruenceError::TooManyPrincipals { pairs, cap });
    }
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut all = vec![Congruence::discrete(n)];
    seen.insert(all[0].clone());
    let mut principals = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = principal_congruence(a, x, y);
            if seen.insert(c.clone()) {
                principals.push(c.clone());
                all.push(c);
            }
        }
    }
    // close under binary joins; joining new elements with principals suffices
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = c.join(p);
                if seen.insert(j.clone()) {
                    if seen.len() > cap {
                        return Err(CongruenceError::LatticeTooLarge { cap });
                    }
                    next.push(j.clone());
                    all.push(j);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|x, y| y.num_blocks().cmp(&x.num_blocks()).then_with(|| x.reps().cmp(y.reps())));
    Ok(all)
}

/// Materialized congruence lattice with meet/join tables over indices.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    elems: Vec<Congruence>,
    meet: Vec<usize>,
    join: Vec<usize>,
    leq: Vec<bool>,
}

impl CongruenceLattice {
    pub fn new(a: &FiniteAlgebra) -> Result<Self, CongruenceError> {
        Ok(Self::from_congruences(all_congruences(a)?))
    }

    /// Builds the tables from a list that must be closed under meet and join.
    pub fn from_congruences(elems: Vec<Congruence>) -> Self {
        let index: HashMap<&Congruence, usize> = elems.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let l = elems.len();
        let mut meet = vec![0; l * l];
        let mut join = vec![0; l * l];
        let mut leq = vec![false; l * l];
        for i in 0..l {
            for j in 0..l {
                meet[i * l + j] = index[&elems[i].meet(&elems[j])];
                join[i * l + j] = index[&elems[i].join(&elems[j])];
                leq[i * l + j] = elems[i].le(&elems[j]);
            }
        }
        Self { elems, meet, join, leq }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Congruence] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.elems[i]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.elems.iter().position(|e| e == c)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    /// Index of Δ.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of ∇.
    pub fn top(&self) -> usize {
        self.len() - 1
    }
}

/// Meet and join of two congruences of one algebra.
pub fn lattice_ops(c1: &Congruence, c2: &Congruence) -> Result<(Congruence, Congruence), CongruenceError> {
    if c1.size() != c2.size() {
        return Err(CongruenceError::CarrierMismatch);
    }
    Ok((c1.meet(c2), c1.join(c2)))
}
