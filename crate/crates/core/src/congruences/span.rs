use serde::Serialize;

use crate::algebra::{compatibility_failure, product, FiniteAlgebra, Homomorphism};

use super::{kernel_congruence, Congruence, CongruenceError, CongruenceLattice};

/// Two split epimorphisms `f: W → X`, `g: W → Y` with sections `s`, `t`
/// such that `f∘t` and `g∘s` are zero maps.
#[derive(Clone, Debug)]
pub struct PunctualSpan {
    w: FiniteAlgebra,
    x: FiniteAlgebra,
    y: FiniteAlgebra,
    f: Homomorphism,
    s: Homomorphism,
    g: Homomorphism,
    t: Homomorphism,
}

impl PunctualSpan {
    pub fn new(
        w: FiniteAlgebra,
        x: FiniteAlgebra,
        y: FiniteAlgebra,
        f: Vec<usize>,
        s: Vec<usize>,
        g: Vec<usize>,
        t: Vec<usize>,
    ) -> Result<Self, CongruenceError> {
        if !w.signature().is_pointed() {
            return Err(CongruenceError::NotPointed);
        }
        if !w.same_signature(&x) || !w.same_signature(&y) {
            return Err(CongruenceError::InvalidSpan("algebras do not share a signature".into()));
        }
        for (name, dom, cod, map) in [("f", &w, &x, &f), ("s", &x, &w, &s), ("g", &w, &y, &g), ("t", &y, &w, &t)] {
            if map.len() != dom.size() || map.iter().any(|&v| v >= cod.size()) {
                return Err(CongruenceError::InvalidSpan(format!("`{name}` has the wrong shape")));
            }
            if let Some(why) = compatibility_failure(dom, cod, map) {
                return Err(CongruenceError::InvalidSpan(format!("`{name}` is not a homomorphism: {why}")));
            }
        }
        let (zx, zy) = (x.point().expect("pointed"), y.point().expect("pointed"));
        if (0..x.size()).any(|a| f[s[a]] != a) {
            return Err(CongruenceError::InvalidSpan("f∘s is not the identity".into()));
        }
        if (0..y.size()).any(|b| g[t[b]] != b) {
            return Err(CongruenceError::InvalidSpan("g∘t is not the identity".into()));
        }
        if (0..y.size()).any(|b| f[t[b]] != zx) {
            return Err(CongruenceError::InvalidSpan("f∘t is not the zero map".into()));
        }
        if (0..x.size()).any(|a| g[s[a]] != zy) {
            return Err(CongruenceError::InvalidSpan("g∘s is not the zero map".into()));
        }
        Ok(Self {
            w,
            x,
            y,
            f: Homomorphism::unchecked(f),
            s: Homomorphism::unchecked(s),
            g: Homomorphism::unchecked(g),
            t: Homomorphism::unchecked(t),
        })
    }

    /// `X ← X×Y → Y` with the projections and the injections `x ↦ (x, 0)`,
    /// `y ↦ (0, y)`.
    pub fn product_span(x: &FiniteAlgebra, y: &FiniteAlgebra) -> Result<Self, CongruenceError> {
        if !x.signature().is_pointed() {
            return Err(CongruenceError::NotPointed);
        }
        let (w, proj) = product(&[x.clone(), y.clone()]).map_err(|e| CongruenceError::InvalidSpan(e.to_string()))?;
        let (zx, zy) = (x.point().expect("pointed"), y.point().expect("pointed"));
        let s = (0..x.size()).map(|a| a * y.size() + zy).collect();
        let t = (0..y.size()).map(|b| zx * y.size() + b).collect();
        Self::new(
            w,
            x.clone(),
            y.clone(),
            proj[0].map().to_vec(),
            s,
            proj[1].map().to_vec(),
            t,
        )
    }

    pub fn w(&self) -> &FiniteAlgebra {
        &self.w
    }

    pub fn x(&self) -> &FiniteAlgebra {
        &self.x
    }

    pub fn y(&self) -> &FiniteAlgebra {
        &self.y
    }

    pub fn f(&self) -> &Homomorphism {
        &self.f
    }

    pub fn s(&self) -> &Homomorphism {
        &self.s
    }

    pub fn g(&self) -> &Homomorphism {
        &self.g
    }

    pub fn t(&self) -> &Homomorphism {
        &self.t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCounterexample {
    pub t: Congruence,
    pub w: usize,
    pub w2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanVerdict {
    pub holds: bool,
    pub congruences_tested: usize,
    pub counterexample: Option<SpanCounterexample>,
}

/// For each congruence `T ⊇ R[f] ∧ R[g]` of `W`, checks
/// `R[f] ∩ (t∘g)⁻¹(T) ⊆ T`.
pub fn check_chyper_span(span: &PunctualSpan) -> Result<SpanVerdict, CongruenceError> {
    let lat = CongruenceLattice::new(&span.w)?;
    let rf = kernel_congruence(&span.f);
    let floor = rf.meet(&kernel_congruence(&span.g));
    let tg: Vec<usize> = (0..span.w.size()).map(|w| span.t.apply(span.g.apply(w))).collect();
    let n = span.w.size();
    let mut tested = 0;
    for big_t in lat.elements() {
        if !floor.le(big_t) {
            continue;
        }
        tested += 1;
        for w in 0..n {
            for w2 in 0..n {
                if rf.related(w, w2) && big_t.related(tg[w], tg[w2]) && !big_t.related(w, w2) {
                    return Ok(SpanVerdict {
                        holds: false,
                        congruences_tested: tested,
                        counterexample: Some(SpanCounterexample {
                            t: big_t.clone(),
                            w,
                            w2,
                        }),
                    });
                }
            }
        }
    }
    Ok(SpanVerdict {
        holds: true,
        congruences_tested: tested,
        counterexample: None,
    })
}
