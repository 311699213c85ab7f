use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;

use super::{Congruence, CongruenceError, CongruenceLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeLaw {
    Modular,
    Distributive,
    WeaklyDistributive,
}

impl LatticeLaw {
    pub const ALL: [LatticeLaw; 3] = [LatticeLaw::Modular, LatticeLaw::Distributive, LatticeLaw::WeaklyDistributive];

    pub fn name(self) -> &'static str {
        match self {
            LatticeLaw::Modular => "modular",
            LatticeLaw::Distributive => "distributive",
            LatticeLaw::WeaklyDistributive => "weakly-distributive",
        }
    }
}

impl fmt::Display for LatticeLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeLaw {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LatticeLaw::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}` (expected modular, distributive or weakly-distributive)"))
    }
}

/// A failing triple. `lhs` and `rhs` are the two sides of the law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCounterexample {
    pub t: Congruence,
    pub s: Congruence,
    pub r: Congruence,
    pub lhs: Congruence,
    pub rhs: Congruence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub law: LatticeLaw,
    pub holds: bool,
    pub lattice_size: usize,
    pub counterexample: Option<LawCounterexample>,
}

/// Checks a lattice law on the congruence lattice of `a`.
///
/// * modular: `(T ∨ S) ∧ R = T ∨ (S ∧ R)` for all `T ≤ R`;
/// * distributive: `T ∧ (R ∨ S) = (T ∧ R) ∨ (T ∧ S)`;
/// * weakly distributive: `T ∧ R = Δ = T ∧ S` implies `T ∧ (R ∨ S) = Δ`.
///
/// Triples are scanned in lexicographic order of lattice indices `(T, S, R)`
/// and the first failure is reported.
pub fn check_lattice_laws(a: &FiniteAlgebra, law: LatticeLaw) -> Result<LawVerdict, CongruenceError> {
    let lat = CongruenceLattice::new(a)?;
    Ok(check_law_on(&lat, law))
}

pub fn check_law_on(lat: &CongruenceLattice, law: LatticeLaw) -> LawVerdict {
    let l = lat.len();
    let bottom = lat.bottom();
    let test = |t: usize, s: usize, r: usize| -> Option<(usize, usize)> {
        match law {
            LatticeLaw::Modular => {
                if !lat.leq(t, r) {
                    return None;
                }
                let lhs = lat.meet(lat.join(t, s), r);
                let rhs = lat.join(t, lat.meet(s, r));
                (lhs != rhs).then_some((lhs, rhs))
            }
            LatticeLaw::Distributive => {
                let lhs = lat.meet(t, lat.join(r, s));
                let rhs = lat.join(lat.meet(t, r), lat.meet(t, s));
                (lhs != rhs).then_some((lhs, rhs))
            }
            LatticeLaw::WeaklyDistributive => {
                if lat.meet(t, r) != bottom || lat.meet(t, s) != bottom {
                    return None;
                }
                let lhs = lat.meet(t, lat.join(r, s));
                (lhs != bottom).then_some((lhs, bottom))
            }
        }
    };
    let first = (0..l * l * l).into_par_iter().find_first(|&code| {
        let (t, s, r) = (code / (l * l), code / l % l, code % l);
        test(t, s, r).is_some()
    });
    let counterexample = first.map(|code| {
        let (t, s, r) = (code / (l * l), code / l % l, code % l);
        let (lhs, rhs) = test(t, s, r).expect("failing triple");
        LawCounterexample {
            t: lat.get(t).clone(),
            s: lat.get(s).clone(),
            r: lat.get(r).clone(),
            lhs: lat.get(lhs).clone(),
            rhs: lat.get(rhs).clone(),
        }
    });
    LawVerdict {
        law,
        holds: counterexample.is_none(),
        lattice_size: l,
        counterexample,
    }
}

/// A violating configuration: `x S y`, `x' S y'`, `x R x'`, `y R y'`,
/// `x T x'` but not `y T y'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftingCounterexample {
    pub t: Congruence,
    pub s: Congruence,
    pub r: Congruence,
    pub x: usize,
    pub y: usize,
    pub x2: usize,
    pub y2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftingVerdict {
    pub holds: bool,
    pub lattice_size: usize,
    pub counterexample: Option<ShiftingCounterexample>,
}

/// Scans all triples `(T, S, R)` with `R ∧ S ≤ T` for a Shifting Lemma
/// violation; elements are scanned lexicographically in `(x, y, x', y')`.
pub fn check_shifting_lemma(a: &FiniteAlgebra) -> Result<ShiftingVerdict, CongruenceError> {
    let lat = CongruenceLattice::new(a)?;
    Ok(check_shifting_on(&lat))
}

pub fn check_shifting_on(lat: &CongruenceLattice) -> ShiftingVerdict {
    let l = lat.len();
    let first = (0..l * l * l)
        .into_par_iter()
        .map(|code| {
            let (t, s, r) = (code / (l * l), code / l % l, code % l);
            if !lat.leq(lat.meet(r, s), t) {
                return None;
            }
            shifting_witness(lat.get(t), lat.get(s), lat.get(r)).map(|w| (t, s, r, w))
        })
        .find_first(Option::is_some)
        .flatten();
    let counterexample = first.map(|(t, s, r, (x, y, x2, y2))| ShiftingCounterexample {
        t: lat.get(t).clone(),
        s: lat.get(s).clone(),
        r: lat.get(r).clone(),
        x,
        y,
        x2,
        y2,
    });
    ShiftingVerdict {
        holds: counterexample.is_none(),
        lattice_size: l,
        counterexample,
    }
}

fn shifting_witness(t: &Congruence, s: &Congruence, r: &Congruence) -> Option<(usize, usize, usize, usize)> {
    let n = t.size();
    for x in 0..n {
        for y in (0..n).filter(|&y| s.related(x, y)) {
            for x2 in (0..n).filter(|&x2| r.related(x, x2) && t.related(x, x2)) {
                for y2 in 0..n {
                    if s.related(x2, y2) && r.related(y, y2) && !t.related(y, y2) {
                        return Some((x, y, x2, y2));
                    }
                }
            }
        }
    }
    None
}
