mod common;

use common::{all_partitions, arb_algebra, signature};
use crystallo::algebra::{product, Homomorphism};
use crystallo::congruences::{
    all_congruences, check_chyper_span, check_lattice_laws, check_shifting_lemma, kernel_congruence, lattice_ops,
    principal_congruence, LatticeLaw, PunctualSpan,
};
use crystallo::constructions::{
    cm3_samples, cyclic_group, discriminator, h, klein_group, named_sample, w,
    zero_pointed_magma,
};
use crystallo::{Congruence, FiniteAlgebra};
use proptest::prelude::*;

fn blocks(c: &Congruence) -> Vec<Vec<usize>> {
    c.blocks()
}

/// Compatibility checked directly on the representative vector.
fn compatible(a: &FiniteAlgebra, rep: &[usize]) -> bool {
    let n = a.size();
    for (i, op) in a.signature().ops().iter().enumerate() {
        let k = op.arity;
        for x in common::all_maps(k, n) {
            for y in common::all_maps(k, n) {
                if x.iter().zip(&y).all(|(&p, &q)| rep[p] == rep[q]) && rep[a.apply(i, &x)] != rep[a.apply(i, &y)] {
                    return false;
                }
            }
        }
    }
    true
}

fn shifting_oracle(a: &FiniteAlgebra) -> bool {
    let lat = all_congruences(a).unwrap();
    let n = a.size();
    for t in &lat {
        for s in &lat {
            for r in &lat {
                if !r.meet(s).le(t) {
                    continue;
                }
                for x in 0..n {
                    for y in 0..n {
                        for x2 in 0..n {
                            for y2 in 0..n {
                                if s.related(x, y)
                                    && s.related(x2, y2)
                                    && r.related(x, x2)
                                    && r.related(y, y2)
                                    && t.related(x, x2)
                                    && !t.related(y, y2)
                                {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

#[test]
fn lattice_examples() {
    let z4 = cyclic_group(4).unwrap();
    let lat = all_congruences(&z4).unwrap();
    assert_eq!(lat.len(), 3);
    assert!(lat[0].is_discrete());
    assert_eq!(blocks(&lat[1]), vec![vec![0, 2], vec![1, 3]]);
    assert!(lat[2].is_indiscrete());

    let one = FiniteAlgebra::one_element(z4.signature(), "Grp");
    let lat1 = all_congruences(&one).unwrap();
    assert_eq!(lat1.len(), 1);
    assert!(lat1[0].is_discrete() && lat1[0].is_indiscrete());

    assert_eq!(all_congruences(&klein_group().unwrap()).unwrap().len(), 5);
}

#[test]
fn lattice_is_sorted_by_block_count_then_reps() {
    for a in [klein_group().unwrap(), h(&cyclic_group(4).unwrap()).unwrap(), discriminator(3).unwrap()] {
        let lat = all_congruences(&a).unwrap();
        for pair in lat.windows(2) {
            let k = |c: &Congruence| (std::cmp::Reverse(c.num_blocks()), c.reps().to_vec());
            assert!(k(&pair[0]) < k(&pair[1]));
        }
        for c in &lat {
            assert!(compatible(&a, c.reps()));
        }
    }
}

#[test]
fn meets_and_joins_of_klein_factor_kernels() {
    let z2 = cyclic_group(2).unwrap();
    let (p, proj) = product(&[z2.clone(), z2]).unwrap();
    let (k0, k1) = (kernel_congruence(&proj[0]), kernel_congruence(&proj[1]));
    let (meet, join) = lattice_ops(&k0, &k1).unwrap();
    assert!(meet.is_discrete());
    assert!(join.is_indiscrete());
    let delta = Congruence::discrete(p.size());
    let nabla = Congruence::indiscrete(p.size());
    assert_eq!(lattice_ops(&k0, &delta).unwrap().0, delta);
    assert_eq!(lattice_ops(&k0, &nabla).unwrap().1, nabla);
    assert!(lattice_ops(&k0, &Congruence::discrete(3)).is_err());
}

#[test]
fn kernel_examples() {
    let z4 = cyclic_group(4).unwrap();
    let z2 = cyclic_group(2).unwrap();
    assert!(kernel_congruence(&Homomorphism::identity(&z4)).is_discrete());
    let reduce = Homomorphism::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    assert_eq!(blocks(&kernel_congruence(&reduce)), vec![vec![0, 2], vec![1, 3]]);
    let zero = Homomorphism::new(&z4, &z2, vec![0; 4]).unwrap();
    assert!(kernel_congruence(&zero).is_indiscrete());
}

#[test]
fn law_examples() {
    let hz4 = h(&cyclic_group(4).unwrap()).unwrap();
    assert!(check_lattice_laws(&hz4, LatticeLaw::Modular).unwrap().holds);

    let klein = klein_group().unwrap();
    assert!(check_lattice_laws(&klein, LatticeLaw::Modular).unwrap().holds);
    let d = check_lattice_laws(&klein, LatticeLaw::Distributive).unwrap();
    assert!(!d.holds);
    let cx = d.counterexample.unwrap();
    assert_ne!(cx.lhs, cx.rhs);
    // The witnesses are three distinct atoms of the diamond.
    for c in [&cx.t, &cx.s, &cx.r] {
        assert_eq!(c.num_blocks(), 2);
    }

    assert!(check_lattice_laws(&discriminator(3).unwrap(), LatticeLaw::Distributive).unwrap().holds);
}

#[test]
fn shifting_examples() {
    let z = cyclic_group(3).unwrap();
    let one = FiniteAlgebra::one_element(z.signature(), "Grp");
    assert!(check_shifting_lemma(&one).unwrap().holds);
    let hz2 = h(&cyclic_group(2).unwrap()).unwrap();
    let wf3 = w(3, 1).unwrap();
    let (p, _) = product(&[hz2.clone(), wf3.clone()]).unwrap();
    for a in [&hz2, &wf3, &p] {
        assert!(check_shifting_lemma(a).unwrap().holds, "{}", a.name());
    }
    let fixture = named_sample("Id4").unwrap();
    let v = check_shifting_lemma(&fixture).unwrap();
    assert!(!v.holds);
    let cx = v.counterexample.unwrap();
    assert!(cx.r.meet(&cx.s).le(&cx.t));
    assert!(cx.s.related(cx.x, cx.y) && cx.s.related(cx.x2, cx.y2));
    assert!(cx.r.related(cx.x, cx.x2) && cx.r.related(cx.y, cx.y2));
    assert!(cx.t.related(cx.x, cx.x2) && !cx.t.related(cx.y, cx.y2));
    assert!(!shifting_oracle(&fixture));
}

#[test]
fn cm3_samples_are_modular() {
    for a in cm3_samples().unwrap() {
        assert!(check_lattice_laws(&a, LatticeLaw::Modular).unwrap().holds, "{}", a.name());
    }
}

#[test]
fn spans_of_hex3_products_hold() {
    let bases = [h(&cyclic_group(2).unwrap()).unwrap(), h(&cyclic_group(3).unwrap()).unwrap()];
    for x in &bases {
        for y in &bases {
            let span = PunctualSpan::product_span(x, y).unwrap();
            let v = check_chyper_span(&span).unwrap();
            assert!(v.holds, "{} x {}", x.name(), y.name());
            assert!(v.congruences_tested >= 1);
        }
    }
}

#[test]
fn span_fails_in_non_chyper_fixture() {
    let z = zero_pointed_magma().unwrap();
    let span = PunctualSpan::product_span(&z, &z).unwrap();
    let v = check_chyper_span(&span).unwrap();
    assert!(!v.holds);
    let cx = v.counterexample.unwrap();
    assert_eq!(span.f().apply(cx.w), span.f().apply(cx.w2));
    assert!(!cx.t.related(cx.w, cx.w2));
    let tg = |x: usize| span.t().apply(span.g().apply(x));
    assert!(cx.t.related(tg(cx.w), tg(cx.w2)));
}

#[test]
fn span_requires_pointed_signature() {
    let d = discriminator(2).unwrap();
    assert!(PunctualSpan::product_span(&d, &d).is_err());
    let g = cyclic_group(2).unwrap();
    // Grp's constant is `e`, not `0`.
    assert!(PunctualSpan::product_span(&g, &g).is_err());
}

#[test]
fn principal_congruences_of_z4() {
    let z4 = cyclic_group(4).unwrap();
    assert_eq!(blocks(&principal_congruence(&z4, 0, 2)), vec![vec![0, 2], vec![1, 3]]);
    assert!(principal_congruence(&z4, 0, 1).is_indiscrete());
    assert!(principal_congruence(&z4, 3, 3).is_discrete());
}

fn unary_binary() -> crystallo::Signature {
    signature(&[("f", 1), ("g", 2)], &[])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_matches_partition_filter(a in arb_algebra(unary_binary(), 4)) {
        let mut oracle: Vec<Vec<usize>> = all_partitions(a.size())
            .into_iter()
            .filter(|rep| compatible(&a, rep))
            .collect();
        oracle.sort();
        let mut got: Vec<Vec<usize>> = all_congruences(&a).unwrap().iter().map(|c| c.reps().to_vec()).collect();
        got.sort();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn join_is_least_upper_bound(a in arb_algebra(unary_binary(), 4)) {
        let lat = all_congruences(&a).unwrap();
        for c1 in &lat {
            for c2 in &lat {
                let (meet, join) = lattice_ops(c1, c2).unwrap();
                prop_assert!(c1.le(&join) && c2.le(&join));
                prop_assert!(meet.le(c1) && meet.le(c2));
                prop_assert!(lat.contains(&join) && lat.contains(&meet));
                for u in &lat {
                    if c1.le(u) && c2.le(u) {
                        prop_assert!(join.le(u));
                    }
                }
            }
        }
    }

    #[test]
    fn shifting_matches_oracle(a in arb_algebra(signature(&[("f", 1)], &[]), 4)) {
        prop_assert_eq!(check_shifting_lemma(&a).unwrap().holds, shifting_oracle(&a));
    }
}
