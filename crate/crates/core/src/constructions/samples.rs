use crate::algebra::{product, FiniteAlgebra};
use crate::specs::{Signature, VarietyPresentation};

use super::catalog::{catalog, hex3};
use super::functors::{h, m, validated, w, Vectors};
use super::ConstructionError;

fn build(v: &VarietyPresentation, name: String, n: usize, tables: Vec<Vec<usize>>, consts: Vec<usize>) -> Result<FiniteAlgebra, ConstructionError> {
    let alg = FiniteAlgebra::new(name, v.name.clone(), v.signature.clone(), n, tables, consts)?;
    validated(alg, v)
}

fn binary(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n * n).map(|c| f(c / n, c % n)).collect()
}

/// `Z_n` as a group over `mul/2, inv/1, e`.
pub fn cyclic_group(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadParams("cyclic group of order 0".into()));
    }
    let v = catalog("Grp");
    build(
        &v,
        format!("Z{n}"),
        n,
        vec![binary(n, |x, y| (x + y) % n), (0..n).map(|x| (n - x) % n).collect()],
        vec![0],
    )
}

/// `Z_2 × Z_2` with bitwise xor.
pub fn klein_group() -> Result<FiniteAlgebra, ConstructionError> {
    let v = catalog("Grp");
    build(&v, "Klein".into(), 4, vec![binary(4, |x, y| x ^ y), (0..4).collect()], vec![0])
}

/// `(F_p^d, +, -, 0)` as an abelian group.
pub fn fp_vector_space(p: usize, d: usize) -> Result<FiniteAlgebra, ConstructionError> {
    let vs = Vectors::new(p, d)?;
    let n = vs.size;
    let add = binary(n, |x, y| vs.zip3(x, y, 0, |x, y, _| (x + y) % p));
    let neg = (0..n).map(|x| vs.zip3(x, 0, 0, |x, _, _| (p - x) % p)).collect();
    build(&catalog("AbGrp"), format!("F{p}_{d}"), n, vec![add, neg], vec![0])
}

/// `(F_p^d, x - y + z)` as a Mal'tsev algebra.
pub fn affine_space(p: usize, d: usize) -> Result<FiniteAlgebra, ConstructionError> {
    let vs = Vectors::new(p, d)?;
    let n = vs.size;
    let t = (0..n * n * n)
        .map(|c| vs.zip3(c / (n * n), c / n % n, c % n, |x, y, z| (x + p - y + z) % p))
        .collect();
    build(&catalog("Mal"), format!("Aff{p}_{d}"), n, vec![t], Vec::new())
}

/// Ternary discriminator `t(x,y,z) = z` if `x = y`, else `x`.
pub fn discriminator(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadParams("discriminator on an empty set".into()));
    }
    let t = (0..n * n * n)
        .map(|c| {
            let (x, y, z) = (c / (n * n), c / n % n, c % n);
            if x == y {
                z
            } else {
                x
            }
        })
        .collect();
    build(&catalog("Disc"), format!("D{n}"), n, vec![t], Vec::new())
}

/// Implication reduct `x → y = ¬x ∨ y` of the Boolean algebra of subsets of
/// `m` atoms (elements are bitmasks, top = all ones).
pub fn boolean_implication(atoms: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if atoms == 0 || atoms > 4 {
        return Err(ConstructionError::BadParams("atoms must be between 1 and 4".into()));
    }
    let n = 1usize << atoms;
    let mask = n - 1;
    build(&catalog("Imp"), format!("B{atoms}"), n, vec![binary(n, |x, y| (!x | y) & mask)], vec![mask])
}

/// `(Z_n, +, 0)` as a commutative monoid.
pub fn cyclic_monoid(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadParams("cyclic monoid of order 0".into()));
    }
    build(&catalog("ComMon"), format!("Z{n}m"), n, vec![binary(n, |x, y| (x + y) % n)], vec![0])
}

/// `({0,1}, max, 0)`.
pub fn max_monoid() -> Result<FiniteAlgebra, ConstructionError> {
    build(&catalog("ComMon"), "Max2".into(), 2, vec![binary(2, usize::max)], vec![0])
}

pub fn one_element(sig: &Signature, variety: &str) -> FiniteAlgebra {
    FiniteAlgebra::one_element(sig, variety)
}

/// A unitary magma on `{0,1,2}` whose identity does not cooperate with
/// itself: `1 + 2 = 1`, `2 + 1 = 2`, `x + x = 0` for `x ≠ 0`.
pub fn noncommutative_unitary_magma() -> Result<FiniteAlgebra, ConstructionError> {
    build(&catalog("Mag"), "NcMag3".into(), 3, vec![vec![0, 1, 2, 1, 0, 1, 2, 2, 0]], vec![0])
}

/// The two-element pointed magma with `x + y = 0`.
pub fn zero_pointed_magma() -> Result<FiniteAlgebra, ConstructionError> {
    build(&catalog("PMag"), "ZeroMag2".into(), 2, vec![vec![0, 0, 0, 0]], vec![0])
}

/// A four-element set with one identity operation: every partition is a
/// congruence, so the lattice is the full partition lattice, which fails
/// the Shifting Lemma.
pub fn shifting_fixture() -> Result<FiniteAlgebra, ConstructionError> {
    let v = VarietyPresentation::new("Unary", Signature::from_parts([("u", 1)], Vec::<&str>::new())?, Vec::new())?;
    build(&v, "Id4".into(), 4, vec![(0..4).collect()], Vec::new())
}

/// The finite Hex3 algebras `h(Z2), h(Z3), h(Z4), h(Klein), w(F3,1),
/// w(F5,1), w(F3,2)` followed by the products of distinct pairs whose
/// carrier has at most [`PAIR_PRODUCT_MAX`] elements.
pub fn paper71_samples() -> Result<Vec<FiniteAlgebra>, ConstructionError> {
    let bases = vec![
        h(&cyclic_group(2)?)?,
        h(&cyclic_group(3)?)?,
        h(&cyclic_group(4)?)?,
        h(&klein_group()?)?,
        w(3, 1)?,
        w(5, 1)?,
        w(3, 2)?,
    ];
    let mut out = bases.clone();
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            if bases[i].size() * bases[j].size() <= PAIR_PRODUCT_MAX {
                let (p, _) = product(&[bases[i].clone(), bases[j].clone()])?;
                out.push(p.with_variety(hex3().name));
            }
        }
    }
    Ok(out)
}

/// Largest pairwise product kept in [`paper71_samples`].
pub const PAIR_PRODUCT_MAX: usize = 20;

/// The groups `Z2, Z3, Z4, Klein`.
pub fn small_groups() -> Result<Vec<FiniteAlgebra>, ConstructionError> {
    Ok(vec![cyclic_group(2)?, cyclic_group(3)?, cyclic_group(4)?, klein_group()?])
}

/// CM3 samples `m(Aff3_1)` and `a(F3,1)`.
pub fn cm3_samples() -> Result<Vec<FiniteAlgebra>, ConstructionError> {
    Ok(vec![m(&affine_space(3, 1)?)?, super::functors::a(3, 1)?])
}

/// Every built-in sample algebra with at most `max` elements, grouped by
/// variety in catalog order.
pub fn builtin_algebras_up_to(max: usize) -> Result<Vec<FiniteAlgebra>, ConstructionError> {
    let mut out = Vec::new();
    for name in ["Hex3", "CM3", "Imp", "Grp", "AbGrp", "ComMon", "Disc", "Mal", "Mag", "PMag"] {
        out.push(one_element(&catalog(name).signature, name).with_name(format!("One{name}")));
    }
    for n in 2..=4 {
        out.push(cyclic_group(n)?);
        out.push(h(&cyclic_group(n)?)?);
        out.push(cyclic_monoid(n)?);
    }
    out.push(klein_group()?);
    out.push(h(&klein_group()?)?);
    for p in [3, 5] {
        out.push(w(p, 1)?);
        out.push(fp_vector_space(p, 1)?);
        out.push(affine_space(p, 1)?);
        out.push(m(&affine_space(p, 1)?)?);
        out.push(super::functors::a(p, 1)?);
    }
    out.push(max_monoid()?);
    for n in 2..=3 {
        out.push(discriminator(n)?);
    }
    out.push(boolean_implication(1)?);
    out.push(boolean_implication(2)?);
    out.push(noncommutative_unitary_magma()?);
    out.push(zero_pointed_magma()?);
    out.retain(|a| a.size() <= max);
    Ok(out)
}

/// Resolves a named sample set.
pub fn sample_set(name: &str) -> Result<Vec<FiniteAlgebra>, ConstructionError> {
    match name {
        "paper7.1" => paper71_samples(),
        "groups" => small_groups(),
        "cm3" => cm3_samples(),
        "discriminators" => {
            let (d2, d3) = (discriminator(2)?, discriminator(3)?);
            let (p, _) = product(&[d2.clone(), d3.clone()])?;
            Ok(vec![d2, d3, p.with_variety("Disc")])
        }
        _ => Err(ConstructionError::UnknownName(name.to_string())),
    }
}

/// Resolves a single named sample such as `Z3`, `Klein`, `hZ2`, `wF3_1`,
/// `D3`, `B1`.
pub fn named_sample(name: &str) -> Result<FiniteAlgebra, ConstructionError> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| ConstructionError::UnknownName(name.to_string()));
    let field = |s: &str| -> Result<(usize, usize), ConstructionError> {
        let (p, d) = s.split_once('_').ok_or_else(|| ConstructionError::UnknownName(name.to_string()))?;
        Ok((num(p)?, num(d)?))
    };
    if let Some(rest) = name.strip_prefix('h') {
        return h(&named_sample(rest)?);
    }
    if let Some(rest) = name.strip_prefix("wF") {
        let (p, d) = field(rest)?;
        return w(p, d);
    }
    if let Some(rest) = name.strip_prefix("aF") {
        let (p, d) = field(rest)?;
        return super::functors::a(p, d);
    }
    if let Some(rest) = name.strip_prefix('m') {
        return m(&named_sample(rest)?);
    }
    if let Some(rest) = name.strip_prefix("Aff") {
        let (p, d) = field(rest)?;
        return affine_space(p, d);
    }
    if let Some(rest) = name.strip_prefix('F') {
        let (p, d) = field(rest)?;
        return fp_vector_space(p, d);
    }
    match name {
        "Klein" => return klein_group(),
        "Max2" => return max_monoid(),
        "NcMag3" => return noncommutative_unitary_magma(),
        "ZeroMag2" => return zero_pointed_magma(),
        "Id4" => return shifting_fixture(),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('Z') {
        if let Some(n) = rest.strip_suffix('m') {
            return cyclic_monoid(num(n)?);
        }
        return cyclic_group(num(rest)?);
    }
    if let Some(rest) = name.strip_prefix('D') {
        return discriminator(num(rest)?);
    }
    if let Some(rest) = name.strip_prefix('B') {
        return boolean_implication(num(rest)?);
    }
    Err(ConstructionError::UnknownName(name.to_string()))
}
