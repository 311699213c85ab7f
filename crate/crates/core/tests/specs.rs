mod common;

use std::collections::BTreeMap;

use common::{arb_algebra, arb_term, naive_eval, signature};
use crystallo::constructions::{cyclic_group, h};
use crystallo::specs::{
    check_identities, eval_term, parse_algebra, parse_blocks, parse_variety, satisfies, Block, Equation, SpecError,
    Term, VarietyPresentation,
};
use crystallo::FiniteAlgebra;
use proptest::prelude::*;

const GRP: &str = "
# groups
variety Grp {
  op mul/2; op inv/1; const e;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, e) = x;
  eq mul(e, x) = x;
  eq mul(x, inv(x)) = e;
}";

const Z2: &str = "
algebra Z2 : Grp {
  size 2;
  mul: [0,1,1,0];
  inv: [0,1];
  e = 0;
}";

fn z3_maltsev() -> (VarietyPresentation, FiniteAlgebra) {
    let v = parse_variety("variety P { op p/3; eq p(x, y, x) = x; }").unwrap();
    let n = 3;
    let t = (0..27).map(|c| (c / 9 + 2 * (c / 3 % 3) + c % 3) % n).collect();
    let a = FiniteAlgebra::new("Z3p", "P", v.signature.clone(), n, vec![t], vec![]).unwrap();
    (v, a)
}

#[test]
fn parses_group_presentation_and_table() {
    let v = parse_variety(GRP).unwrap();
    assert_eq!(v.name, "Grp");
    assert_eq!(v.signature.ops().len(), 2);
    assert_eq!(v.equations.len(), 4);
    let a = parse_algebra(Z2, &v).unwrap();
    assert_eq!(a.size(), 2);
    assert!(check_identities(&a, &v.equations).unwrap().satisfied());
}

#[test]
fn print_parse_round_trip_on_presentations_and_algebras() {
    let v = parse_variety(GRP).unwrap();
    let again = parse_variety(&v.to_string()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v.to_string(), again.to_string());
    let a = parse_algebra(Z2, &v).unwrap();
    assert_eq!(parse_algebra(&a.to_string(), &v).unwrap(), a);
}

#[test]
fn pinned_and_numeral_constants_round_trip() {
    let src = "variety P { op add/2; const 0 = 0; eq add(x, 0) = x; }";
    let v = parse_variety(src).unwrap();
    assert_eq!(v.pins, vec![Some(0)]);
    assert_eq!(parse_variety(&v.to_string()).unwrap(), v);
}

#[test]
fn parse_errors_are_reported() {
    assert!(matches!(parse_variety("variety V { op f/2 }"), Err(SpecError::Syntax { .. })));
    assert!(parse_variety("variety V { op f/2; eq f(x) = x; }").is_err());
    assert!(parse_variety("variety V { op f/2; eq g(x, x) = x; }").is_err());
    assert!(parse_variety("variety V { op f/0; }").is_err());
    assert!(parse_variety("variety V { op f/1; op f/2; }").is_err());
    let v = parse_variety(GRP).unwrap();
    let short = Z2.replace("mul: [0,1,1,0]", "mul: [0,1,1]");
    assert!(matches!(parse_algebra(&short, &v), Err(SpecError::TableLength { .. })));
    let out = Z2.replace("inv: [0,1]", "inv: [0,2]");
    assert!(matches!(parse_algebra(&out, &v), Err(SpecError::OutOfRange { .. })));
    let missing = Z2.replace("  e = 0;\n", "");
    assert!(parse_algebra(&missing, &v).is_err());
}

#[test]
fn empty_carrier_only_without_constants() {
    let v = parse_variety("variety U { op f/1; }").unwrap();
    let a = parse_algebra("algebra E : U { size 0; f: []; }", &v).unwrap();
    assert_eq!(a.size(), 0);
    let g = parse_variety(GRP).unwrap();
    assert!(parse_algebra("algebra E : Grp { size 0; mul: []; inv: []; e = 0; }", &g).is_err());
}

#[test]
fn multiple_blocks_in_one_file() {
    let blocks = parse_blocks(&format!("{GRP}\n{Z2}")).unwrap();
    assert_eq!(blocks.len(), 2);
    assert!(matches!(blocks[0], Block::Variety(_)));
    assert!(matches!(blocks[1], Block::Algebra(_)));
}

#[test]
fn eval_examples() {
    let hz3 = h(&cyclic_group(3).unwrap()).unwrap();
    let t = Term::apply("p1", vec![Term::var("x"), Term::var("y"), Term::var("z")]);
    let env: BTreeMap<String, usize> = [("x", 1), ("y", 2), ("z", 0)].iter().map(|&(k, v)| (k.to_string(), v)).collect();
    // 1 - 2 + 0 in Z3
    assert_eq!(eval_term(&t, &hz3, &env).unwrap(), 2);
    let env4: BTreeMap<String, usize> = [("x".to_string(), 4)].into();
    let big = FiniteAlgebra::bare(5);
    assert_eq!(eval_term(&Term::var("x"), &big, &env4).unwrap(), 4);
    assert_eq!(eval_term(&Term::constant("0"), &hz3, &BTreeMap::new()).unwrap(), 0);
    assert!(eval_term(&Term::var("q"), &hz3, &BTreeMap::new()).is_err());
}

#[test]
fn pixley_law_fails_on_z3_at_first_assignment() {
    let (v, a) = z3_maltsev();
    let report = check_identities(&a, &v.equations).unwrap();
    assert!(!report.satisfied());
    let first = &report.violations[0];
    // p(0,1,0) = 0 - 1 + 0 = 2
    assert_eq!(first.assignment, vec![("x".to_string(), 0), ("y".to_string(), 1)]);
    assert_eq!((first.lhs, first.rhs), (2, 0));
}

#[test]
fn one_element_algebra_satisfies_everything() {
    let v = parse_variety(GRP).unwrap();
    let one = FiniteAlgebra::one_element(&v.signature, "Grp");
    let weird = Equation::new(Term::var("x"), Term::apply("inv", vec![Term::var("y")]));
    assert!(satisfies(&one, &[weird]).unwrap());
    assert!(satisfies(&one, &v.equations).unwrap());
}

#[test]
fn alpha_matching_handles_renaming_and_orientation() {
    let v = parse_variety("variety M { op f/2; eq f(x, y) = f(y, x); eq f(a, b) = a; }").unwrap();
    let e0 = &v.equations[0];
    let renamed = Equation::new(
        Term::apply("f", vec![Term::var("u"), Term::var("w")]),
        Term::apply("f", vec![Term::var("w"), Term::var("u")]),
    );
    assert!(e0.matches_up_to_renaming(&renamed));
    assert!(v.equations[1].matches_up_to_renaming(&v.equations[1].flipped()));
    assert!(!e0.matches_up_to_renaming(&v.equations[1]));
    let not_injective = Equation::new(Term::apply("f", vec![Term::var("u"), Term::var("u")]), Term::var("u"));
    assert!(!v.equations[1].matches_up_to_renaming(&not_injective));
}

fn mag_sig() -> crystallo::Signature {
    signature(&[("mul", 2), ("inv", 1)], &["e"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_agrees_with_naive_recursion(
        a in arb_algebra(mag_sig(), 4),
        t in arb_term(mag_sig(), vec!["x", "y", "z"], 4),
        xs in proptest::collection::vec(0usize..4, 3),
    ) {
        let env: BTreeMap<String, usize> = ["x", "y", "z"]
            .iter()
            .zip(&xs)
            .map(|(k, &v)| (k.to_string(), v % a.size()))
            .collect();
        prop_assert_eq!(eval_term(&t, &a, &env).unwrap(), naive_eval(&t, &a, &env));
    }

    #[test]
    fn identity_checker_matches_double_loop(
        a in arb_algebra(mag_sig(), 3),
        l in arb_term(mag_sig(), vec!["x", "y"], 3),
        r in arb_term(mag_sig(), vec!["x", "y"], 3),
    ) {
        let eq = Equation::new(l.clone(), r.clone());
        let n = a.size();
        let mut oracle = true;
        for x in 0..n {
            for y in 0..n {
                let env: BTreeMap<String, usize> = [("x".to_string(), x), ("y".to_string(), y)].into();
                oracle &= naive_eval(&l, &a, &env) == naive_eval(&r, &a, &env);
            }
        }
        prop_assert_eq!(satisfies(&a, &[eq]).unwrap(), oracle);
    }

    #[test]
    fn printed_equations_parse_back(
        l in arb_term(mag_sig(), vec!["x", "y", "z"], 3),
        r in arb_term(mag_sig(), vec!["x", "y", "z"], 3),
    ) {
        let eq = Equation::new(l, r);
        let src = format!("variety V {{ op mul/2; op inv/1; const e; eq {eq}; }}");
        let v = parse_variety(&src).unwrap();
        prop_assert_eq!(&v.equations[0], &eq);
    }

    #[test]
    fn algebras_round_trip_through_text(a in arb_algebra(mag_sig(), 4)) {
        let v = VarietyPresentation::new("Random", mag_sig(), vec![]).unwrap();
        prop_assert_eq!(parse_algebra(&a.to_string(), &v).unwrap(), a);
    }
}
