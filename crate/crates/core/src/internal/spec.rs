use std::fmt;

use serde::Serialize;

use crate::specs::{parse_variety, Equation, Signature, Term, VarietyPresentation};

use super::InternalError;

/// How a structure is turned into its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    /// Swap the arguments of every binary operation.
    SwapBinary,
    /// Reverse the arguments of every ternary operation.
    ReverseTernary,
}

/// A target structure: a signature and the equations its operations satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSpec {
    pub name: String,
    pub signature: Signature,
    pub equations: Vec<Equation>,
    pub duality: Option<Duality>,
}

const UNITARY_MAGMA: &str = "
variety UnitaryMagma {
  op add/2; const 0;
  eq add(x, 0) = x;
  eq add(0, x) = x;
}";

const IDEMPOTENT_UNITARY_MAGMA: &str = "
variety IdempotentUnitaryMagma {
  op add/2; const 0;
  eq add(x, 0) = x;
  eq add(0, x) = x;
  eq add(x, x) = x;
}";

const COMMUTATIVE_MONOID: &str = "
variety CommutativeMonoid {
  op add/2; const 0;
  eq add(x, 0) = x;
  eq add(0, x) = x;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, y) = add(y, x);
}";

const GROUP: &str = "
variety Group {
  op mul/2; op inv/1; const e;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, e) = x;
  eq mul(e, x) = x;
  eq mul(x, inv(x)) = e;
  eq mul(inv(x), x) = e;
}";

const ABELIAN_GROUP: &str = "
variety AbelianGroup {
  op add/2; op neg/1; const 0;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, 0) = x;
  eq add(0, x) = x;
  eq add(x, neg(x)) = 0;
  eq add(neg(x), x) = 0;
  eq add(x, y) = add(y, x);
}";

const SUBTRACTION: &str = "
variety Subtraction {
  op s/2; const 0;
  eq s(x, x) = 0;
  eq s(x, 0) = x;
}";

const OPIMPLICATIVE_SUBTRACTION: &str = "
variety OpimplicativeSubtraction {
  op s/2; const 0;
  eq s(x, x) = 0;
  eq s(x, 0) = x;
  eq s(0, x) = 0;
}";

const IMPLICATIVE_OPSUBTRACTION: &str = "
variety ImplicativeOpsubtraction {
  op s/2; const 0;
  eq s(x, x) = 0;
  eq s(0, x) = x;
  eq s(x, 0) = 0;
}";

const IMPLICATION_ALGEBRA: &str = "
variety ImplicationAlgebra {
  op imp/2; const 1;
  eq imp(x, x) = 1;
  eq imp(imp(x, y), x) = x;
  eq imp(imp(x, y), y) = imp(imp(y, x), x);
  eq imp(x, imp(y, z)) = imp(y, imp(x, z));
}";

const MALTSEV: &str = "
variety Maltsev {
  op p/3;
  eq p(x, y, y) = x;
  eq p(y, y, x) = x;
}";

const ASSOCIATIVE_MALTSEV: &str = "
variety AssociativeMaltsev {
  op p/3;
  eq p(x, y, y) = x;
  eq p(y, y, x) = x;
  eq p(x, y, p(z, u, v)) = p(p(x, y, z), u, v);
}";

const AFFINE: &str = "
variety Affine {
  op p/3;
  eq p(x, y, y) = x;
  eq p(y, y, x) = x;
  eq p(x, y, p(z, u, v)) = p(p(x, y, z), u, v);
  eq p(x, y, z) = p(z, y, x);
}";

const PIXLEY_MALTSEV: &str = "
variety PixleyMaltsev {
  op p/3;
  eq p(x, y, y) = x;
  eq p(y, y, x) = x;
  eq p(x, y, x) = x;
}";

const CATALOG: &[(&str, &str, Option<Duality>)] = &[
    ("unitary-magma", UNITARY_MAGMA, Some(Duality::SwapBinary)),
    ("idempotent-unitary-magma", IDEMPOTENT_UNITARY_MAGMA, Some(Duality::SwapBinary)),
    ("commutative-monoid", COMMUTATIVE_MONOID, Some(Duality::SwapBinary)),
    ("group", GROUP, Some(Duality::SwapBinary)),
    ("abelian-group", ABELIAN_GROUP, Some(Duality::SwapBinary)),
    ("subtraction", SUBTRACTION, None),
    ("opimplicative-subtraction", OPIMPLICATIVE_SUBTRACTION, None),
    ("implicative-opsubtraction", IMPLICATIVE_OPSUBTRACTION, None),
    ("implication-algebra", IMPLICATION_ALGEBRA, None),
    ("maltsev", MALTSEV, Some(Duality::ReverseTernary)),
    ("associative-maltsev", ASSOCIATIVE_MALTSEV, Some(Duality::ReverseTernary)),
    ("affine", AFFINE, Some(Duality::ReverseTernary)),
    ("pixley-maltsev", PIXLEY_MALTSEV, Some(Duality::ReverseTernary)),
];

impl StructureSpec {
    /// Names of the built-in specs, in catalog order.
    pub fn builtin_names() -> Vec<&'static str> {
        CATALOG.iter().map(|(n, _, _)| *n).collect()
    }

    pub fn builtin(name: &str) -> Result<Self, InternalError> {
        let (n, src, duality) = CATALOG
            .iter()
            .find(|(n, _, _)| *n == name)
            .ok_or_else(|| InternalError::UnknownSpec(name.to_string()))?;
        let v = parse_variety(src).expect("built-in spec parses");
        Ok(Self {
            name: n.to_string(),
            signature: v.signature,
            equations: v.equations,
            duality: *duality,
        })
    }

    pub fn all_builtins() -> Vec<Self> {
        Self::builtin_names().into_iter().map(|n| Self::builtin(n).unwrap()).collect()
    }

    /// A user-supplied spec; duality is detected by checking that the dual of
    /// every equation is an equation of the spec up to renaming and sides.
    pub fn from_presentation(v: &VarietyPresentation) -> Self {
        let mut spec = Self {
            name: v.name.clone(),
            signature: v.signature.clone(),
            equations: v.equations.clone(),
            duality: None,
        };
        for d in [Duality::SwapBinary, Duality::ReverseTernary] {
            if spec.is_closed_under(d) {
                spec.duality = Some(d);
                break;
            }
        }
        spec
    }

    fn is_closed_under(&self, d: Duality) -> bool {
        let touched = self.signature.ops().iter().any(|op| match d {
            Duality::SwapBinary => op.arity == 2,
            Duality::ReverseTernary => op.arity == 3,
        });
        touched
            && self.equations.iter().all(|eq| {
                let dual = Equation::new(dualize(&eq.lhs, d, &self.signature), dualize(&eq.rhs, d, &self.signature));
                self.equations.iter().any(|e| e.matches_up_to_renaming(&dual))
            })
    }

    pub fn as_presentation(&self) -> VarietyPresentation {
        VarietyPresentation::new(self.name.clone(), self.signature.clone(), self.equations.clone())
            .expect("spec equations are well-formed")
    }
}

pub(crate) fn dualize(t: &Term, d: Duality, sig: &Signature) -> Term {
    match t {
        Term::Apply(op, args) => {
            let mut args: Vec<Term> = args.iter().map(|a| dualize(a, d, sig)).collect();
            let arity = args.len();
            if matches!((d, arity), (Duality::SwapBinary, 2) | (Duality::ReverseTernary, 3)) && sig.op_index(op).is_some() {
                args.reverse();
            }
            Term::Apply(op.clone(), args)
        }
        other => other.clone(),
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
