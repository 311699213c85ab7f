use std::fmt;
use std::str::FromStr;

use crate::algebra::FiniteAlgebra;
use crate::specs::{check_identities, VarietyPresentation};

use super::catalog::{catalog, hex3};
use super::ConstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    H,
    W,
    M,
    A,
}

impl FromStr for Functor {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h" => Ok(Functor::H),
            "w" => Ok(Functor::W),
            "m" => Ok(Functor::M),
            "a" => Ok(Functor::A),
            _ => Err(ConstructionError::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functor::H => "h",
            Functor::W => "w",
            Functor::M => "m",
            Functor::A => "a",
        })
    }
}

/// Argument of [`apply_functor`]: an algebra for `h` and `m`, a prime field
/// and dimension for `w` and `a`.
#[derive(Clone, Debug)]
pub enum FunctorInput {
    Algebra(FiniteAlgebra),
    Field { p: usize, d: usize },
}

pub fn apply_functor(which: Functor, input: &FunctorInput) -> Result<FiniteAlgebra, ConstructionError> {
    match (which, input) {
        (Functor::H, FunctorInput::Algebra(g)) => h(g),
        (Functor::M, FunctorInput::Algebra(x)) => m(x),
        (Functor::W, FunctorInput::Field { p, d }) => w(*p, *d),
        (Functor::A, FunctorInput::Field { p, d }) => a(*p, *d),
        (f, _) => Err(ConstructionError::BadParams(format!(
            "functor `{f}` takes {}",
            if matches!(f, Functor::H | Functor::M) { "an algebra" } else { "a prime and a dimension" }
        ))),
    }
}

pub(crate) fn validated(alg: FiniteAlgebra, v: &VarietyPresentation) -> Result<FiniteAlgebra, ConstructionError> {
    let report = check_identities(&alg, &v.equations)?;
    if let Some(bad) = report.violations.first() {
        return Err(ConstructionError::Invalid(format!(
            "`{}` violates `{}` in {}",
            alg.name(),
            bad.equation,
            v.name
        )));
    }
    Ok(alg)
}

fn ternary(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Vec<usize> {
    let mut t = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                t.push(f(x, y, z));
            }
        }
    }
    t
}

fn third(n: usize) -> Vec<usize> {
    ternary(n, |_, _, z| z)
}

/// `h(G)`: `p1(x,y,z) = x·y⁻¹·z`, `p2 = p3 = z`.
pub fn h(g: &FiniteAlgebra) -> Result<FiniteAlgebra, ConstructionError> {
    let grp = catalog("Grp");
    if !g.same_signature(&FiniteAlgebra::one_element(&grp.signature, "Grp")) {
        return Err(ConstructionError::BadParams("h needs an algebra over mul/2, inv/1, e".into()));
    }
    validated(g.clone(), &grp)?;
    let n = g.size();
    let mul = |x, y| g.apply(0, &[x, y]);
    let inv = |x| g.apply(1, &[x]);
    let p1 = ternary(n, |x, y, z| mul(mul(x, inv(y)), z));
    let v = hex3();
    let alg = FiniteAlgebra::new(
        format!("h{}", g.name()),
        v.name.clone(),
        v.signature.clone(),
        n,
        vec![p1, third(n), third(n)],
        vec![g.constant(0)],
    )?;
    validated(alg, &v)
}

/// `m(X, p)`: `p1 = p`, `p2 = p3 = z`.
pub fn m(x: &FiniteAlgebra) -> Result<FiniteAlgebra, ConstructionError> {
    let mal = catalog("Mal");
    if !x.same_signature(&FiniteAlgebra::one_element(&mal.signature, "Mal")) {
        return Err(ConstructionError::BadParams("m needs an algebra over p/3".into()));
    }
    validated(x.clone(), &mal)?;
    let n = x.size();
    let v = catalog("CM3");
    let alg = FiniteAlgebra::new(
        format!("m{}", x.name()),
        v.name.clone(),
        v.signature.clone(),
        n,
        vec![x.table(0).to_vec(), third(n), third(n)],
        Vec::new(),
    )?;
    validated(alg, &v)
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub(crate) fn mod_inverse(a: usize, p: usize) -> Option<usize> {
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i64) as usize)
}

/// Coordinates of `F_p^d`, first coordinate most significant.
pub(crate) struct Vectors {
    pub p: usize,
    pub d: usize,
    pub size: usize,
}

impl Vectors {
    pub fn new(p: usize, d: usize) -> Result<Self, ConstructionError> {
        if !is_prime(p) {
            return Err(ConstructionError::BadParams(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(ConstructionError::BadParams("dimension must be positive".into()));
        }
        let size = p
            .checked_pow(d as u32)
            .filter(|&s| s <= 1 << 16)
            .ok_or_else(|| ConstructionError::BadParams("vector space too large".into()))?;
        Ok(Self { p, d, size })
    }

    /// Applies `f` coordinatewise to three vectors.
    pub fn zip3(&self, x: usize, y: usize, z: usize, f: impl Fn(usize, usize, usize) -> usize) -> usize {
        let (mut x, mut y, mut z) = (x, y, z);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.d {
            out += f(x % self.p, y % self.p, z % self.p) * scale;
            x /= self.p;
            y /= self.p;
            z /= self.p;
            scale *= self.p;
        }
        out
    }
}

fn field_name(p: usize, d: usize) -> String {
    format!("F{p}_{d}")
}

/// The three vector formulas shared by `w` and `a`, with `inv2 = 2⁻¹ mod p`:
/// `x + (z - y)·inv2`, `(x + z)·inv2`, `(x - y)·inv2 + z`.
fn halving_tables(p: usize, d: usize) -> Result<(usize, Vec<Vec<usize>>), ConstructionError> {
    if p == 2 {
        return Err(ConstructionError::BadParams(
            "the field must not have characteristic 2".into(),
        ));
    }
    let vs = Vectors::new(p, d)?;
    let inv2 = mod_inverse(2, p).expect("2 is invertible for odd p");
    let n = vs.size;
    let p1 = ternary(n, |x, y, z| vs.zip3(x, y, z, |x, y, z| (x + (z + p - y) * inv2) % p));
    let p2 = ternary(n, |x, _, z| vs.zip3(x, 0, z, |x, _, z| (x + z) * inv2 % p));
    let p3 = ternary(n, |x, y, z| vs.zip3(x, y, z, |x, y, z| ((x + p - y) * inv2 + z) % p));
    Ok((n, vec![p1, p2, p3]))
}

/// `w_K(F_p^d)` in Hex3.
pub fn w(p: usize, d: usize) -> Result<FiniteAlgebra, ConstructionError> {
    let (n, tables) = halving_tables(p, d)?;
    let v = hex3();
    let alg = FiniteAlgebra::new(format!("w{}", field_name(p, d)), v.name.clone(), v.signature.clone(), n, tables, vec![0])?;
    validated(alg, &v)
}

/// `a_K(F_p^d)` in CM3, the affine space modeled with origin 0.
pub fn a(p: usize, d: usize) -> Result<FiniteAlgebra, ConstructionError> {
    let (n, tables) = halving_tables(p, d)?;
    let v = catalog("CM3");
    let alg = FiniteAlgebra::new(format!("a{}", field_name(p, d)), v.name.clone(), v.signature.clone(), n, tables, Vec::new())?;
    validated(alg, &v)
}
