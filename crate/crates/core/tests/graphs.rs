use crystallo::congruences::all_congruences;
use crystallo::constructions::{cyclic_group, h, named_sample, sample_set, small_groups};
use crystallo::graphs::{classify_structure, enumerate_category_structures, CategoryStructure, GraphError, ReflexiveGraph};
use crystallo::FiniteAlgebra;

const BUDGET: u64 = 10_000_000;

fn structures(g: &ReflexiveGraph) -> Vec<CategoryStructure> {
    enumerate_category_structures(g, BUDGET).unwrap()
}

/// Every reflexive graph of a congruence of `x`.
fn congruence_graphs(x: &FiniteAlgebra) -> Vec<ReflexiveGraph> {
    all_congruences(x)
        .unwrap()
        .iter()
        .map(|c| ReflexiveGraph::from_congruence(x, c).unwrap())
        .collect()
}

/// On a relation graph the composite of `(a,b)` after `(b,c)` must be `(a,c)`.
fn is_relation_composition(c: &CategoryStructure) -> bool {
    let g = c.graph();
    c.pairs().iter().zip(c.table()).all(|(&(f, h), &m)| {
        g.d1().apply(m) == g.d1().apply(f) && g.d0().apply(m) == g.d0().apply(h)
    })
}

#[test]
fn indiscrete_and_discrete_examples() {
    let x = h(&cyclic_group(2).unwrap()).unwrap();
    let nabla = ReflexiveGraph::indiscrete(&x).unwrap();
    let found = structures(&nabla);
    assert_eq!(found.len(), 1);
    let cls = classify_structure(&found[0]);
    assert!(cls.is_groupoid && cls.graph_is_equivalence_relation);
    assert_eq!(cls.is_affine, Some(true));
    assert!(is_relation_composition(&found[0]));

    let delta = ReflexiveGraph::discrete(&x).unwrap();
    let found = structures(&delta);
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].table(), &[0, 1]);
}

#[test]
fn non_transitive_relation_has_no_category_structure() {
    // Every relation is compatible with the identity operation.
    let id4 = named_sample("Id4").unwrap();
    let g = ReflexiveGraph::from_relation(&id4, &[(0, 1), (1, 2)]).unwrap();
    assert!(!g.is_equivalence_relation());
    assert!(structures(&g).is_empty());

    let closed = ReflexiveGraph::from_relation(&id4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let found = structures(&closed);
    assert_eq!(found.len(), 1);
    assert!(!classify_structure(&found[0]).is_groupoid);
}

#[test]
fn incompatible_relations_are_rejected() {
    let z3 = cyclic_group(3).unwrap();
    assert!(matches!(ReflexiveGraph::from_relation(&z3, &[(0, 1)]), Err(GraphError::NotCompatible)));
}

#[test]
fn group_samples_carry_at_most_one_groupoid() {
    for x in small_groups().unwrap() {
        for g in congruence_graphs(&x) {
            let found = structures(&g);
            assert_eq!(found.len(), 1, "{}", x.name());
            let cls = classify_structure(&found[0]);
            assert!(cls.is_groupoid);
            assert!(is_relation_composition(&found[0]));
        }
    }
}

#[test]
fn one_object_graphs_over_groups_are_internal_groups() {
    // X0 terminal and X1 = Z3: a category structure is an internal monoid.
    let z3 = cyclic_group(3).unwrap();
    let one = FiniteAlgebra::one_element(z3.signature(), "Grp");
    let g = ReflexiveGraph::new(z3, one, vec![0; 3], vec![0; 3], vec![0]).unwrap();
    let found = structures(&g);
    assert_eq!(found.len(), 1);
    let add: Vec<usize> = (0..9).map(|c| (c / 3 + c % 3) % 3).collect();
    assert_eq!(found[0].table(), &add[..]);
    let cls = classify_structure(&found[0]);
    assert!(cls.is_groupoid && !cls.graph_is_equivalence_relation);
    assert_eq!(cls.is_affine, Some(true));
}

#[test]
fn discriminator_groupoids_are_equivalence_relations() {
    for x in sample_set("discriminators").unwrap() {
        let n = x.size();
        let all_pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        // every reflexive compatible relation on small carriers
        let mut graphs = congruence_graphs(&x);
        if n <= 3 {
            let offdiag: Vec<(usize, usize)> = all_pairs.iter().copied().filter(|(a, b)| a != b).collect();
            for mask in 0u32..(1 << offdiag.len()) {
                let rel: Vec<(usize, usize)> =
                    offdiag.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                if let Ok(g) = ReflexiveGraph::from_relation(&x, &rel) {
                    graphs.push(g);
                }
            }
        }
        for g in graphs {
            for c in structures(&g) {
                assert!(classify_structure(&c).graph_is_equivalence_relation, "{}", x.name());
            }
        }
    }
}

#[test]
fn hex3_h_images_carry_at_most_one_groupoid() {
    for x in [2, 3, 4].map(|n| h(&cyclic_group(n).unwrap()).unwrap()) {
        for g in congruence_graphs(&x) {
            let found = structures(&g);
            assert!(found.len() <= 1);
            for c in &found {
                assert!(classify_structure(c).is_groupoid);
                assert_eq!(c.validation_failure(), None);
            }
        }
    }
}

#[test]
fn emitted_structures_revalidate_and_budget_is_enforced() {
    let x = h(&cyclic_group(3).unwrap()).unwrap();
    let g = ReflexiveGraph::indiscrete(&x).unwrap();
    for c in structures(&g) {
        assert_eq!(c.validation_failure(), None);
    }
    assert!(matches!(enumerate_category_structures(&g, 0), Err(GraphError::ZeroBudget)));
    // Monoids on a bare 3-element set: the search has to branch.
    let monoids = ReflexiveGraph::new(FiniteAlgebra::bare(3), FiniteAlgebra::bare(1), vec![0; 3], vec![0; 3], vec![0]).unwrap();
    assert!(matches!(
        enumerate_category_structures(&monoids, 2),
        Err(GraphError::BudgetExhausted { .. })
    ));
    assert_eq!(structures(&monoids).len(), monoid_oracle());
}

/// Associative tables on {0,1,2} with two-sided unit 0.
fn monoid_oracle() -> usize {
    let mut count = 0;
    for code in 0..3usize.pow(4) {
        let mut t = [0usize; 9];
        for x in 0..3 {
            t[x] = x;
            t[x * 3] = x;
        }
        let mut c = code;
        for (x, y) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            t[x * 3 + y] = c % 3;
            c /= 3;
        }
        let m = |x: usize, y: usize| t[x * 3 + y];
        if (0..27).all(|i| {
            let (x, y, z) = (i / 9, i / 3 % 3, i % 3);
            m(m(x, y), z) == m(x, m(y, z))
        }) {
            count += 1;
        }
    }
    count
}

#[test]
fn loops_must_be_sections() {
    let z2 = cyclic_group(2).unwrap();
    let one = FiniteAlgebra::one_element(z2.signature(), "Grp");
    assert!(ReflexiveGraph::new(one.clone(), z2.clone(), vec![0], vec![0], vec![0, 0]).is_err());
}
