use serde::Serialize;

use crate::algebra::{product, subalgebra, FiniteAlgebra, Homomorphism};
use crate::search::{Problem, Search, Unknown};
use crate::specs::{odometer, CompiledEquation};

use super::{Duality, InternalError, InternalStructure, StructureSpec};

/// A subalgebra together with its inclusion into an ambient algebra.
#[derive(Clone, Debug)]
pub struct Subobject {
    pub algebra: FiniteAlgebra,
    pub inclusion: Homomorphism,
}

impl Subobject {
    pub fn whole(a: &FiniteAlgebra) -> Self {
        Self {
            algebra: a.clone(),
            inclusion: Homomorphism::identity(a),
        }
    }

    /// The subalgebra on a closed subset.
    pub fn from_elements(a: &FiniteAlgebra, elements: &[usize]) -> Result<Self, InternalError> {
        let (algebra, inclusion) = subalgebra(a, elements)?;
        Ok(Self { algebra, inclusion })
    }
}

/// The homomorphism `φ: U × V → A` with `φ(x, 0) = u(x)` and `φ(0, y) = v(y)`,
/// if there is one. Two or more such maps are reported as an error.
pub fn cooperator(a: &FiniteAlgebra, u: &Subobject, v: &Subobject, budget: u64) -> Result<Option<Homomorphism>, InternalError> {
    let (Some(_), Some(zu), Some(zv)) = (a.point(), u.algebra.point(), v.algebra.point()) else {
        return Err(InternalError::NotPointed);
    };
    if !u.algebra.same_signature(a) || !v.algebra.same_signature(a) {
        return Err(InternalError::SignatureMismatch);
    }
    let (uv, _) = product(&[u.algebra.clone(), v.algebra.clone()])?;
    let m = v.algebra.size();
    let mut search = Search::new(Problem {
        dom: &uv,
        val: a,
        hom: true,
        unknowns: vec![Unknown::full(1)],
        equations: Vec::new(),
    });
    for x in 0..u.algebra.size() {
        search.restrict(x * m + zv, vec![u.inclusion.apply(x)]);
    }
    for y in 0..m {
        search.restrict(zu * m + y, vec![v.inclusion.apply(y)]);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let outcome = search.run(budget, |cells| {
        found.push(cells.to_vec());
        found.len() < 2
    });
    if found.len() >= 2 {
        return Err(InternalError::MultipleCooperators);
    }
    if outcome.truncated {
        return Err(InternalError::BudgetExhausted {
            sample: a.name().to_string(),
            nodes: outcome.nodes,
        });
    }
    Ok(found.pop().map(Homomorphism::unchecked))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectClass {
    pub commutative: bool,
    pub abelian: bool,
    /// Binary table of the cooperator `X × X → X`, if it exists.
    pub witness: Option<Vec<usize>>,
    /// Whether the witness is a commutative monoid with unit the point.
    pub witness_is_commutative_monoid: bool,
}

/// `X` is commutative when `1_X` cooperates with itself, abelian when the
/// resulting monoid is a group.
pub fn classify_object(a: &FiniteAlgebra, budget: u64) -> Result<ObjectClass, InternalError> {
    let whole = Subobject::whole(a);
    let Some(phi) = cooperator(a, &whole, &whole, budget)? else {
        return Ok(ObjectClass {
            commutative: false,
            abelian: false,
            witness: None,
            witness_is_commutative_monoid: false,
        });
    };
    let n = a.size();
    let zero = a.point().expect("pointed");
    let add = |x: usize, y: usize| phi.apply(x * n + y);
    let mut monoid = (0..n).all(|x| add(x, zero) == x && add(zero, x) == x);
    for x in 0..n {
        for y in 0..n {
            monoid &= add(x, y) == add(y, x);
            for z in 0..n {
                monoid &= add(add(x, y), z) == add(x, add(y, z));
            }
        }
    }
    let abelian = monoid && (0..n).all(|x| (0..n).any(|y| add(x, y) == zero));
    Ok(ObjectClass {
        commutative: true,
        abelian,
        witness: Some(phi.map().to_vec()),
        witness_is_commutative_monoid: monoid,
    })
}

/// Checks that `st` is an internal `spec`-structure on `a`. Returns a
/// description of the first failure.
pub fn internal_structure_failure(a: &FiniteAlgebra, spec: &StructureSpec, st: &InternalStructure) -> Option<String> {
    let n = a.size();
    if st.size() != n || st.signature() != &spec.signature {
        return Some("shape does not match the spec".into());
    }
    for (c, &e) in spec.signature.consts().iter().zip(st.constants()) {
        if !a.is_unit_candidate(e) {
            return Some(format!("constant `{c}` = {e} is not a unit candidate"));
        }
    }
    for (op, t) in spec.signature.ops().iter().zip(st.tables()) {
        if let Some(why) = power_hom_failure(a, op.arity, t) {
            return Some(format!("`{}` is not a homomorphism: {why}", op.name));
        }
    }
    let refs: Vec<&[usize]> = st.tables().iter().map(Vec::as_slice).collect();
    for eq in &spec.equations {
        let ce = CompiledEquation::new(eq, &spec.signature).expect("spec equations are well-formed");
        if let Some(asg) = ce.first_violation(n, &refs, st.constants()) {
            return Some(format!("`{eq}` fails at {asg:?}"));
        }
    }
    None
}

/// Whether `table: a^k → a` commutes with every operation and constant of `a`.
pub(crate) fn power_hom_failure(a: &FiniteAlgebra, k: usize, table: &[usize]) -> Option<String> {
    let n = a.size();
    if n == 0 {
        return None;
    }
    let comp = |code: usize, q: usize| (code / n.pow((k - 1 - q) as u32)) % n;
    for &c in a.constants() {
        if table[(0..k).fold(0, |acc, _| acc * n + c)] != c {
            return Some("an ambient constant is not preserved".into());
        }
    }
    let m = table.len();
    for (i, op) in a.signature().ops().iter().enumerate() {
        let r = op.arity;
        let mut tuple = vec![0usize; r];
        let mut args = vec![0usize; r];
        loop {
            let mut code = 0;
            for q in 0..k {
                for (slot, &t) in args.iter_mut().zip(&tuple) {
                    *slot = comp(t, q);
                }
                code = code * n + a.apply(i, &args);
            }
            for (slot, &t) in args.iter_mut().zip(&tuple) {
                *slot = table[t];
            }
            if table[code] != a.apply(i, &args) {
                return Some(format!("`{}` not preserved", op.name));
            }
            if !odometer(&mut tuple, m) {
                break;
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubtractionOutcome {
    Group(InternalStructure),
    Refuted(String),
}

/// Recovers `x + y := s(x, s(0, y))`, `-y := s(0, y)` from an internal
/// subtraction and checks it is an internal abelian group whose difference
/// map is `s`.
pub fn subtraction_to_group(a: &FiniteAlgebra, st: &InternalStructure) -> Result<SubtractionOutcome, InternalError> {
    let sub = StructureSpec::builtin("subtraction")?;
    if let Some(why) = internal_structure_failure(a, &sub, st) {
        return Err(InternalError::Malformed(format!("not an internal subtraction: {why}")));
    }
    let n = a.size();
    let s = |x: usize, y: usize| st.apply(0, &[x, y]);
    let zero = st.constants()[0];
    let neg: Vec<usize> = (0..n).map(|y| s(zero, y)).collect();
    let add: Vec<usize> = (0..n * n).map(|c| s(c / n, neg[c % n])).collect();
    let group_spec = StructureSpec::builtin("abelian-group")?;
    let g = InternalStructure::new(&group_spec.name, &group_spec.signature, n, vec![add.clone(), neg.clone()], vec![zero]);
    if let Some(why) = internal_structure_failure(a, &group_spec, &g) {
        return Ok(SubtractionOutcome::Refuted(why));
    }
    for x in 0..n {
        for y in 0..n {
            if s(x, y) != add[x * n + neg[y]] {
                return Ok(SubtractionOutcome::Refuted(format!("s({x},{y}) differs from x + (-y)")));
            }
        }
    }
    Ok(SubtractionOutcome::Group(g))
}

/// The argument-reversed structure of a duality-closed spec.
pub fn dual_structure(spec: &StructureSpec, st: &InternalStructure) -> Result<InternalStructure, InternalError> {
    let d = spec.duality.ok_or_else(|| InternalError::NotDualityClosed(spec.name.clone()))?;
    let n = st.size();
    let tables = spec
        .signature
        .ops()
        .iter()
        .zip(st.tables())
        .map(|(op, t)| {
            let flip = matches!((d, op.arity), (Duality::SwapBinary, 2) | (Duality::ReverseTernary, 3));
            if !flip {
                return t.clone();
            }
            (0..t.len())
                .map(|code| {
                    let mut args = vec![0; op.arity];
                    let mut rest = code;
                    for slot in args.iter_mut().rev() {
                        *slot = rest % n;
                        rest /= n;
                    }
                    args.reverse();
                    t[args.iter().fold(0, |acc, &x| acc * n + x)]
                })
                .collect()
        })
        .collect();
    Ok(InternalStructure::new(&st.spec_name().to_string(), st.signature(), n, tables, st.constants().to_vec()))
}
