mod common;

use common::all_maps;
use crystallo::algebra::enumerate_homs;
use crystallo::constructions::{
    boolean_implication, builtin_algebras_up_to, cyclic_group, cyclic_monoid, discriminator, h, klein_group,
    max_monoid, noncommutative_unitary_magma, sample_set, small_groups,
};
use crystallo::internal::{
    brute_force_internal, classify_object, cooperator, crystallography_report, dual_structure, enumerate_internal,
    internal_structure_failure, subtraction_to_group, InternalError, InternalStructure, StructureSpec, Subobject,
    SubtractionOutcome, Verdict,
};
use crystallo::specs::satisfies;
use crystallo::FiniteAlgebra;

const BUDGET: u64 = 10_000_000;

fn spec(name: &str) -> StructureSpec {
    StructureSpec::builtin(name).unwrap()
}

fn structures(a: &FiniteAlgebra, s: &StructureSpec) -> Vec<InternalStructure> {
    let e = enumerate_internal(a, s, BUDGET).unwrap();
    assert!(!e.truncated);
    e.structures
}

/// `t: A × A → A` commutes with every ambient operation.
fn binary_is_hom(a: &FiniteAlgebra, t: &[usize]) -> bool {
    let n = a.size();
    for (i, op) in a.signature().ops().iter().enumerate() {
        for xs in all_maps(op.arity, n) {
            for ys in all_maps(op.arity, n) {
                let inner: Vec<usize> = xs.iter().zip(&ys).map(|(&x, &y)| t[x * n + y]).collect();
                if t[a.apply(i, &xs) * n + a.apply(i, &ys)] != a.apply(i, &inner) {
                    return false;
                }
            }
        }
    }
    (0..a.signature().consts().len()).all(|c| t[a.constant(c) * n + a.constant(c)] == a.constant(c))
}

fn unit_candidate(a: &FiniteAlgebra, e: usize) -> bool {
    a.signature().ops().iter().enumerate().all(|(i, op)| a.apply(i, &vec![e; op.arity]) == e)
        && a.constants().iter().all(|&c| c == e)
}

/// Exhaustive search for specs with one binary operation and one constant:
/// tables ordered lexicographically by (constant, table).
fn oracle_binary_pointed(a: &FiniteAlgebra, s: &StructureSpec) -> Vec<(usize, Vec<usize>)> {
    let n = a.size();
    let mut out = Vec::new();
    for e in (0..n).filter(|&e| unit_candidate(a, e)) {
        for t in all_maps(n * n, n) {
            if !binary_is_hom(a, &t) {
                continue;
            }
            let alg = FiniteAlgebra::new("o", &s.name, s.signature.clone(), n, vec![t.clone()], vec![e]).unwrap();
            if satisfies(&alg, &s.equations).unwrap() {
                out.push((e, t));
            }
        }
    }
    out
}

#[test]
fn enumeration_examples() {
    let hz2 = h(&cyclic_group(2).unwrap()).unwrap();
    let g = structures(&hz2, &spec("abelian-group"));
    assert_eq!(g.len(), 1);
    assert_eq!(g[0].table(0), &[0, 1, 1, 0]);
    assert_eq!(g[0].constants(), &[0]);

    let z2 = cyclic_group(2).unwrap();
    let p = structures(&z2, &spec("maltsev"));
    assert_eq!(p.len(), 1);
    let xor3: Vec<usize> = (0..8).map(|c| (c >> 2 ^ c >> 1 ^ c) & 1).collect();
    assert_eq!(p[0].table(0), &xor3[..]);

    assert!(structures(&discriminator(3).unwrap(), &spec("group")).is_empty());
}

#[test]
fn terminal_and_implication_examples() {
    for s in StructureSpec::all_builtins() {
        let one = FiniteAlgebra::one_element(cyclic_group(2).unwrap().signature(), "Grp");
        assert_eq!(structures(&one, &s).len(), 1, "{}", s.name);
        assert_eq!(brute_force_internal(&one, &s).unwrap().len(), 1);
    }
    let b1 = boolean_implication(1).unwrap();
    assert!(brute_force_internal(&b1, &spec("implication-algebra")).unwrap().is_empty());
    assert!(structures(&b1, &spec("implication-algebra")).is_empty());
}

#[test]
fn search_agrees_with_brute_force_on_small_fixtures() {
    let fixtures = builtin_algebras_up_to(3).unwrap();
    for name in ["unitary-magma", "group", "subtraction", "maltsev"] {
        let s = spec(name);
        for a in &fixtures {
            let fast = structures(a, &s);
            let slow = brute_force_internal(a, &s).unwrap();
            assert_eq!(fast, slow, "{name} on {}", a.name());
            for st in &fast {
                assert_eq!(internal_structure_failure(a, &s, st), None);
            }
        }
    }
}

#[test]
fn binary_specs_match_independent_oracle() {
    let fixtures = builtin_algebras_up_to(3).unwrap();
    for name in ["unitary-magma", "idempotent-unitary-magma", "commutative-monoid", "subtraction"] {
        let s = spec(name);
        for a in &fixtures {
            let got: Vec<(usize, Vec<usize>)> = structures(a, &s)
                .into_iter()
                .map(|st| (st.constants()[0], st.table(0).to_vec()))
                .collect();
            assert_eq!(got, oracle_binary_pointed(a, &s), "{name} on {}", a.name());
        }
    }
}

#[test]
fn truncation_is_reported() {
    let a = FiniteAlgebra::bare(3);
    let e = enumerate_internal(&a, &spec("maltsev"), 3).unwrap();
    assert!(e.truncated);
    let err = crystallography_report(&[a], &spec("maltsev"), 3).unwrap_err();
    assert!(matches!(err, InternalError::BudgetExhausted { .. }));
}

#[test]
fn cooperator_examples() {
    let z2 = cyclic_monoid(2).unwrap();
    let whole = Subobject::whole(&z2);
    let phi = cooperator(&z2, &whole, &whole, BUDGET).unwrap().unwrap();
    assert_eq!(phi.map(), &[0, 1, 1, 0]);

    let z4 = cyclic_monoid(4).unwrap();
    let zero = Subobject::from_elements(&z4, &[0]).unwrap();
    let all = Subobject::whole(&z4);
    let phi = cooperator(&z4, &zero, &all, BUDGET).unwrap().unwrap();
    assert_eq!(phi.map(), &[0, 1, 2, 3]);

    let nc = noncommutative_unitary_magma().unwrap();
    let w = Subobject::whole(&nc);
    assert_eq!(cooperator(&nc, &w, &w, BUDGET).unwrap(), None);
}

#[test]
fn classification_examples() {
    let hz3 = h(&cyclic_group(3).unwrap()).unwrap();
    let c = classify_object(&hz3, BUDGET).unwrap();
    assert!(c.commutative && c.abelian && c.witness_is_commutative_monoid);
    let add: Vec<usize> = (0..9).map(|i| (i / 3 + i % 3) % 3).collect();
    assert_eq!(c.witness.unwrap(), add);

    let one = FiniteAlgebra::one_element(hz3.signature(), "Hex3");
    let c = classify_object(&one, BUDGET).unwrap();
    assert!(c.commutative && c.abelian);

    let c = classify_object(&max_monoid().unwrap(), BUDGET).unwrap();
    assert!(c.commutative && !c.abelian);
    assert_eq!(c.witness.unwrap(), vec![0, 1, 1, 1]);

    assert!(classify_object(&discriminator(2).unwrap(), BUDGET).is_err());
}

#[test]
fn subtraction_recovers_groups() {
    let hz3 = h(&cyclic_group(3).unwrap()).unwrap();
    let subs = structures(&hz3, &spec("subtraction"));
    let minus: Vec<usize> = (0..9).map(|i| (i / 3 + 3 - i % 3) % 3).collect();
    assert!(subs.iter().any(|s| s.table(0) == &minus[..]));
    for s in &subs {
        match subtraction_to_group(&hz3, s).unwrap() {
            SubtractionOutcome::Group(g) => {
                let add: Vec<usize> = (0..9).map(|i| (i / 3 + i % 3) % 3).collect();
                assert_eq!(g.table(0), &add[..]);
            }
            SubtractionOutcome::Refuted(why) => panic!("{why}"),
        }
    }

    let one = FiniteAlgebra::one_element(hz3.signature(), "Hex3");
    let s = structures(&one, &spec("subtraction"));
    assert!(matches!(subtraction_to_group(&one, &s[0]).unwrap(), SubtractionOutcome::Group(_)));
}

#[test]
fn subtractions_across_small_hex3_samples_give_unique_groups() {
    let samples: Vec<FiniteAlgebra> = sample_set("paper7.1").unwrap().into_iter().filter(|a| a.size() <= 9).collect();
    for a in &samples {
        let subs = structures(a, &spec("subtraction"));
        assert_eq!(subs.len(), 1, "{}", a.name());
        let groups = structures(a, &spec("abelian-group"));
        assert_eq!(groups.len(), 1);
        match subtraction_to_group(a, &subs[0]).unwrap() {
            SubtractionOutcome::Group(g) => assert_eq!(g, groups[0]),
            SubtractionOutcome::Refuted(why) => panic!("{}: {why}", a.name()),
        }
    }
}

#[test]
fn duals_of_emitted_structures_are_emitted() {
    let samples = builtin_algebras_up_to(4).unwrap();
    for s in StructureSpec::all_builtins().into_iter().filter(|s| s.duality.is_some()) {
        for a in &samples {
            let found = structures(a, &s);
            for st in &found {
                let d = dual_structure(&s, st).unwrap();
                assert!(found.contains(&d), "{} on {}", s.name, a.name());
                if found.len() == 1 {
                    assert_eq!(&d, st);
                }
            }
        }
    }
    let sub = spec("subtraction");
    let hz2 = h(&cyclic_group(2).unwrap()).unwrap();
    let st = &structures(&hz2, &sub)[0];
    assert!(dual_structure(&sub, st).is_err());
}

#[test]
fn maltsev_structures_are_affine() {
    let affine = spec("affine");
    // Samples from varieties with a Mal'tsev term.
    let samples = builtin_algebras_up_to(5).unwrap();
    for a in samples.iter().filter(|a| ["Mal", "Disc", "Grp", "AbGrp"].contains(&a.variety_name())) {
        for st in structures(a, &spec("maltsev")) {
            let p = FiniteAlgebra::new("p", "Affine", affine.signature.clone(), a.size(), vec![st.table(0).to_vec()], vec![])
                .unwrap();
            assert!(satisfies(&p, &affine.equations).unwrap(), "{}", a.name());
        }
    }
}

#[test]
fn homs_preserve_found_group_structures() {
    let s = spec("abelian-group");
    let samples: Vec<FiniteAlgebra> = [2, 3, 4]
        .into_iter()
        .map(|n| h(&cyclic_group(n).unwrap()).unwrap())
        .chain([h(&klein_group().unwrap()).unwrap()])
        .collect();
    for a in &samples {
        let sa = &structures(a, &s)[0];
        for b in &samples {
            let sb = &structures(b, &s)[0];
            for f in enumerate_homs(a, b, false).unwrap() {
                for x in 0..a.size() {
                    for y in 0..a.size() {
                        assert_eq!(f.apply(sa.apply(0, &[x, y])), sb.apply(0, &[f.apply(x), f.apply(y)]));
                    }
                }
            }
        }
    }
}

#[test]
fn associative_maltsev_lives_on_subterminals_of_discriminator_samples() {
    for a in sample_set("discriminators").unwrap() {
        let found = structures(&a, &spec("associative-maltsev"));
        assert!(found.is_empty() || a.size() <= 1, "{}", a.name());
    }
}

#[test]
fn report_examples() {
    let groups = small_groups().unwrap();
    let r = crystallography_report(&groups, &spec("idempotent-unitary-magma"), BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::StronglyTrivializes);
    assert!(r.samples.iter().all(|s| s.count == 0));

    let one = FiniteAlgebra::one_element(groups[0].signature(), "Grp");
    let r = crystallography_report(&[one], &spec("group"), BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::Intensively);

    let r = crystallography_report(&[FiniteAlgebra::bare(3)], &spec("maltsev"), BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::Refuted);
    let w = r.witness.unwrap();
    assert_ne!(w.first, w.second);

    assert!(crystallography_report(&[], &spec("group"), BUDGET).is_err());
}
