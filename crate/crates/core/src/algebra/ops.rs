use std::collections::BTreeSet;

use crate::congruences::Congruence;
use crate::specs::{checked_pow, odometer};

use super::{AlgebraError, FiniteAlgebra, Homomorphism};

/// Cartesian product with componentwise operations, plus the projections.
///
/// Elements are mixed-radix codes with the first factor most significant:
/// for factors of sizes `(n_1, n_2)` the pair `(x, y)` is `x·n_2 + y`.
pub fn product(factors: &[FiniteAlgebra]) -> Result<(FiniteAlgebra, Vec<Homomorphism>), AlgebraError> {
    let first = factors.first().ok_or(AlgebraError::EmptyProduct)?;
    if factors.iter().any(|f| !f.same_signature(first)) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let sizes: Vec<usize> = factors.iter().map(FiniteAlgebra::size).collect();
    let size = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .ok_or(AlgebraError::TooLarge)?;
    let decode = |mut code: usize| {
        let mut parts = vec![0; sizes.len()];
        for (slot, &s) in parts.iter_mut().zip(&sizes).rev() {
            *slot = code % s;
            code /= s;
        }
        parts
    };
    let encode = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (&p, &s)| acc * s + p);
    let parts_of: Vec<Vec<usize>> = (0..size).map(decode).collect();

    let sig = first.signature().clone();
    let mut tables = Vec::with_capacity(sig.ops().len());
    for (i, op) in sig.ops().iter().enumerate() {
        let len = checked_pow(size, op.arity).ok_or(AlgebraError::TooLarge)?;
        let mut table = Vec::with_capacity(len);
        let mut args = vec![0usize; op.arity];
        let mut comp_args = vec![0usize; op.arity];
        for code in 0..len {
            let mut rest = code;
            for slot in args.iter_mut().rev() {
                *slot = rest % size;
                rest /= size;
            }
            let mut out = vec![0; factors.len()];
            for (f, fac) in factors.iter().enumerate() {
                for (ca, &a) in comp_args.iter_mut().zip(&args) {
                    *ca = parts_of[a][f];
                }
                out[f] = fac.apply(i, &comp_args);
            }
            table.push(encode(&out));
        }
        tables.push(table);
    }
    let consts = (0..sig.consts().len())
        .map(|c| encode(&factors.iter().map(|f| f.constant(c)).collect::<Vec<_>>()))
        .collect();
    let name = factors.iter().map(FiniteAlgebra::name).collect::<Vec<_>>().join("_x_");
    let alg = FiniteAlgebra::new(name, first.variety_name(), sig, size, tables, consts)?;
    let projections = (0..factors.len())
        .map(|f| Homomorphism::unchecked(parts_of.iter().map(|p| p[f]).collect()))
        .collect();
    Ok((alg, projections))
}

/// Least subset containing `seed` and all constants that is closed under
/// every operation; sorted.
pub fn subalgebra_closure(a: &FiniteAlgebra, seed: &[usize]) -> Vec<usize> {
    let mut members = vec![false; a.size()];
    let mut list: Vec<usize> = Vec::new();
    for &x in seed.iter().chain(a.constants()) {
        if x < a.size() && !members[x] {
            members[x] = true;
            list.push(x);
        }
    }
    // Each pass applies every operation to every tuple containing at least
    // one element added in the previous pass.
    let mut old = 0;
    while old < list.len() {
        let fresh = list.len();
        for (i, op) in a.signature().ops().iter().enumerate() {
            let r = op.arity;
            if fresh == 0 {
                continue;
            }
            let mut idx = vec![0usize; r];
            loop {
                if idx.iter().any(|&k| k >= old) {
                    let args: Vec<usize> = idx.iter().map(|&k| list[k]).collect();
                    let v = a.apply(i, &args);
                    if !members[v] {
                        members[v] = true;
                        list.push(v);
                    }
                }
                if !odometer(&mut idx, fresh) {
                    break;
                }
            }
        }
        old = fresh;
    }
    list.sort_unstable();
    list
}

/// The subalgebra on `elements` (which must be closed), relabeled in
/// ascending order, with its inclusion.
pub fn subalgebra(a: &FiniteAlgebra, elements: &[usize]) -> Result<(FiniteAlgebra, Homomorphism), AlgebraError> {
    let set: BTreeSet<usize> = elements.iter().copied().collect();
    let elems: Vec<usize> = set.into_iter().collect();
    if elems.iter().any(|&x| x >= a.size()) {
        return Err(AlgebraError::Malformed("subset leaves the carrier".into()));
    }
    let mut index = vec![usize::MAX; a.size()];
    for (i, &x) in elems.iter().enumerate() {
        index[x] = i;
    }
    let m = elems.len();
    let mut tables = Vec::new();
    for (i, op) in a.signature().ops().iter().enumerate() {
        let len = checked_pow(m, op.arity).ok_or(AlgebraError::TooLarge)?;
        let mut table = Vec::with_capacity(len);
        let mut args = vec![0; op.arity];
        for code in 0..len {
            let mut rest = code;
            for slot in args.iter_mut().rev() {
                *slot = elems[rest % m];
                rest /= m;
            }
            let v = index[a.apply(i, &args)];
            if v == usize::MAX {
                return Err(AlgebraError::NotClosed);
            }
            table.push(v);
        }
        tables.push(table);
    }
    let consts = a
        .constants()
        .iter()
        .map(|&c| match index[c] {
            usize::MAX => Err(AlgebraError::NotClosed),
            v => Ok(v),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sub = FiniteAlgebra::new(
        format!("{}_sub", a.name()),
        a.variety_name(),
        a.signature().clone(),
        m,
        tables,
        consts,
    )?;
    Ok((sub, Homomorphism::unchecked(elems)))
}

/// Quotient by a congruence. Classes are labeled `0..k-1` in order of their
/// least element.
pub fn quotient(a: &FiniteAlgebra, c: &Congruence) -> Result<(FiniteAlgebra, Homomorphism), AlgebraError> {
    if c.size() != a.size() {
        return Err(AlgebraError::NotCongruence("carrier size mismatch".into()));
    }
    let reps = c.representatives();
    let mut label = vec![usize::MAX; a.size()];
    for (i, &r) in reps.iter().enumerate() {
        label[r] = i;
    }
    let proj: Vec<usize> = (0..a.size()).map(|x| label[c.rep(x)]).collect();
    let k = reps.len();
    let mut tables = Vec::new();
    for (i, op) in a.signature().ops().iter().enumerate() {
        let len = checked_pow(k, op.arity).ok_or(AlgebraError::TooLarge)?;
        let mut table = vec![usize::MAX; len];
        for (code, &v) in a.table(i).iter().enumerate() {
            let args = a.decode(code, op.arity);
            let qcode = args.iter().fold(0, |acc, &x| acc * k + proj[x]);
            let qv = proj[v];
            if table[qcode] == usize::MAX {
                table[qcode] = qv;
            } else if table[qcode] != qv {
                return Err(AlgebraError::NotCongruence(format!(
                    "`{}` is not compatible at {:?}",
                    op.name, args
                )));
            }
        }
        tables.push(table);
    }
    let consts = a.constants().iter().map(|&x| proj[x]).collect();
    let q = FiniteAlgebra::new(
        format!("{}_quo", a.name()),
        a.variety_name(),
        a.signature().clone(),
        k,
        tables,
        consts,
    )?;
    Ok((q, Homomorphism::unchecked(proj)))
}
