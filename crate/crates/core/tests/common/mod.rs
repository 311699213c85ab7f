#![allow(dead_code)]

use std::collections::BTreeMap;

use crystallo::specs::{Signature, Term};
use crystallo::FiniteAlgebra;
use proptest::prelude::*;

pub fn signature(ops: &[(&str, usize)], consts: &[&str]) -> Signature {
    Signature::from_parts(ops.iter().copied(), consts.iter().copied()).unwrap()
}

/// A random algebra over `sig` with `1..=max_n` elements.
pub fn arb_algebra(sig: Signature, max_n: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max_n).prop_flat_map(move |n| {
        let sig = sig.clone();
        let tables: Vec<_> = sig
            .ops()
            .iter()
            .map(|op| proptest::collection::vec(0..n, n.pow(op.arity as u32)))
            .collect();
        let consts = proptest::collection::vec(0..n, sig.consts().len());
        (tables, consts).prop_map(move |(t, c)| FiniteAlgebra::new("R", "Random", sig.clone(), n, t, c).unwrap())
    })
}

/// Random terms over `sig` in the variables `vars`.
pub fn arb_term(sig: Signature, vars: Vec<&'static str>, depth: u32) -> impl Strategy<Value = Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = vars.iter().map(|v| Just(Term::var(*v)).boxed()).collect();
    for c in sig.consts() {
        leaves.push(Just(Term::constant(c.clone())).boxed());
    }
    let leaf = proptest::strategy::Union::new(leaves);
    let ops: Vec<(String, usize)> = sig.ops().iter().map(|o| (o.name.clone(), o.arity)).collect();
    leaf.prop_recursive(depth, 24, 3, move |inner| {
        let branches: Vec<BoxedStrategy<Term>> = ops
            .iter()
            .map(|(name, arity)| {
                let name = name.clone();
                proptest::collection::vec(inner.clone(), *arity)
                    .prop_map(move |args| Term::apply(name.clone(), args))
                    .boxed()
            })
            .collect();
        proptest::strategy::Union::new(branches)
    })
}

/// Straightforward recursive evaluation, independent of the crate's compiled evaluator.
pub fn naive_eval(t: &Term, a: &FiniteAlgebra, env: &BTreeMap<String, usize>) -> usize {
    match t {
        Term::Var(v) => env[v],
        Term::Const(c) => {
            let i = a.signature().consts().iter().position(|x| x == c).unwrap();
            a.constant(i)
        }
        Term::Apply(op, args) => {
            let i = a.signature().ops().iter().position(|o| &o.name == op).unwrap();
            let vals: Vec<usize> = args.iter().map(|s| naive_eval(s, a, env)).collect();
            let n = a.size();
            let code = vals.iter().fold(0, |acc, &v| acc * n + v);
            a.table(i)[code]
        }
    }
}

/// Every map `{0..n} → {0..m}` as a vector, lexicographically.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < m {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Every partition of `{0..n}` as a least-representative vector.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let mut reps: Vec<usize> = cur.clone();
        reps.sort_unstable();
        reps.dedup();
        for r in reps {
            cur.push(r);
            go(i + 1, n, cur, out);
            cur.pop();
        }
        cur.push(i);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Direct check that `map` preserves every operation and constant.
pub fn preserves(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
    let n = a.size();
    for (i, op) in a.signature().ops().iter().enumerate() {
        for args in all_maps(op.arity, n) {
            let lhs = map[a.apply(i, &args)];
            let img: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            if lhs != b.apply(i, &img) {
                return false;
            }
        }
    }
    (0..a.signature().consts().len()).all(|c| map[a.constant(c)] == b.constant(c))
}
