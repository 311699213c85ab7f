use crate::specs::{parse_variety, Equation, Signature, Term, VarietyPresentation};

use super::ConstructionError;

pub const HEX3: &str = "
variety Hex3 {
  op p1/3; op p2/3; op p3/3;
  const 0 = 0;
  eq p1(a, 0, 0) = a;
  eq p2(a, 0, a) = a;
  eq p3(0, 0, a) = a;
  eq p1(a, a, b) = p2(a, a, b);
  eq p2(a, b, b) = p3(a, b, b);
  eq p1(b, b, b) = b;
  eq p2(b, b, b) = b;
  eq p3(b, b, b) = b;
}";

pub const CM3: &str = "
variety CM3 {
  op p1/3; op p2/3; op p3/3;
  eq p1(a, b, b) = a;
  eq p2(a, b, a) = a;
  eq p3(b, b, a) = a;
  eq p1(a, a, b) = p2(a, a, b);
  eq p2(a, b, b) = p3(a, b, b);
}";

pub const IMP: &str = "
variety Imp {
  op imp/2;
  const 1 = 1;
  eq imp(x, x) = 1;
  eq imp(imp(x, y), x) = x;
  eq imp(imp(x, y), y) = imp(imp(y, x), x);
  eq imp(x, imp(y, z)) = imp(y, imp(x, z));
}";

pub const GRP: &str = "
variety Grp {
  op mul/2; op inv/1;
  const e = 0;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, e) = x;
  eq mul(e, x) = x;
  eq mul(x, inv(x)) = e;
  eq mul(inv(x), x) = e;
}";

pub const ABGRP: &str = "
variety AbGrp {
  op add/2; op neg/1;
  const 0 = 0;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, 0) = x;
  eq add(0, x) = x;
  eq add(x, neg(x)) = 0;
  eq add(neg(x), x) = 0;
  eq add(x, y) = add(y, x);
}";

pub const COMMON: &str = "
variety ComMon {
  op add/2;
  const 0 = 0;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, 0) = x;
  eq add(0, x) = x;
  eq add(x, y) = add(y, x);
}";

pub const DISC: &str = "
variety Disc {
  op t/3;
  eq t(x, y, y) = x;
  eq t(y, y, x) = x;
  eq t(x, y, x) = x;
}";

pub const MAL: &str = "
variety Mal {
  op p/3;
  eq p(x, y, y) = x;
  eq p(y, y, x) = x;
}";

pub const MAG: &str = "
variety Mag {
  op add/2;
  const 0 = 0;
  eq add(x, 0) = x;
  eq add(0, x) = x;
}";

pub const PMAG: &str = "
variety PMag {
  op add/2;
  const 0 = 0;
}";

const CATALOG: &[(&str, &str)] = &[
    ("Hex3", HEX3),
    ("CM3", CM3),
    ("Imp", IMP),
    ("Grp", GRP),
    ("AbGrp", ABGRP),
    ("ComMon", COMMON),
    ("Disc", DISC),
    ("Mal", MAL),
    ("Mag", MAG),
    ("PMag", PMAG),
];

/// Names accepted by [`builtin_variety`]; `CHyper` also takes a parameter.
pub fn builtin_variety_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = CATALOG.iter().map(|(n, _)| *n).collect();
    names.push("CHyper");
    names
}

/// A catalog presentation. `CHyper` needs `k ≥ 1`; the others take no
/// parameter. Names are matched case-insensitively.
pub fn builtin_variety(name: &str, k: Option<usize>) -> Result<VarietyPresentation, ConstructionError> {
    if name.eq_ignore_ascii_case("chyper") {
        let k = k.ok_or_else(|| ConstructionError::BadParams("CHyper needs k".into()))?;
        return chyper_presentation(k);
    }
    if k.is_some() {
        return Err(ConstructionError::BadParams(format!("`{name}` takes no parameter")));
    }
    let (_, src) = CATALOG
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| ConstructionError::UnknownName(name.to_string()))?;
    Ok(parse_variety(src).expect("catalog sources parse"))
}

pub(crate) fn hex3() -> VarietyPresentation {
    builtin_variety("Hex3", None).unwrap()
}

pub(crate) fn catalog(name: &str) -> VarietyPresentation {
    builtin_variety(name, None).unwrap()
}

fn p(i: usize, a: &str, b: &str, c: &str) -> Term {
    let t = |s: &str| if s == "0" { Term::constant("0") } else { Term::var(s) };
    Term::apply(format!("p{i}"), vec![t(a), t(b), t(c)])
}

/// The equations of the type `2k+1` schema, in a fixed order: the three
/// point laws, the `(a,a,b)` links, the `(a,b,b)` links, idempotency.
pub fn chyper_equations(k: usize) -> Vec<Equation> {
    let m = 2 * k + 1;
    let a = || Term::var("a");
    let b = || Term::var("b");
    let mut eqs = vec![Equation::new(p(1, "a", "0", "0"), a())];
    for i in 2..=2 * k {
        eqs.push(Equation::new(p(i, "a", "0", "a"), a()));
    }
    eqs.push(Equation::new(p(m, "0", "0", "a"), a()));
    for i in 1..=k {
        eqs.push(Equation::new(p(2 * i - 1, "a", "a", "b"), p(2 * i, "a", "a", "b")));
    }
    for i in 1..=k {
        eqs.push(Equation::new(p(2 * i, "a", "b", "b"), p(2 * i + 1, "a", "b", "b")));
    }
    for i in 1..=m {
        eqs.push(Equation::new(p(i, "b", "b", "b"), b()));
    }
    eqs
}

pub fn chyper_signature(k: usize) -> Signature {
    let mut sig = Signature::new();
    for i in 1..=2 * k + 1 {
        sig.add_op(format!("p{i}"), 3).unwrap();
    }
    sig.add_const("0").unwrap();
    sig
}

/// Pointed variety with `2k+1` ternary operations and the full schema.
pub fn chyper_presentation(k: usize) -> Result<VarietyPresentation, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::BadParams("CHyper needs k ≥ 1".into()));
    }
    let name = if k == 1 { "Hex3".to_string() } else { format!("CHyper{}", 2 * k + 1) };
    Ok(VarietyPresentation::with_pins(name, chyper_signature(k), chyper_equations(k), vec![Some(0)])
        .expect("schema is well-formed"))
}
