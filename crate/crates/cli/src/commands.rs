use std::fmt::Write as _;

use anyhow::{anyhow, Result};
use crystallo::algebra::{dedup_isomorphic, enumerate_models};
use crystallo::congruences::{
    all_congruences_capped, check_chyper_span, check_law_on, check_shifting_on, CongruenceLattice, LatticeLaw,
    PunctualSpan,
};
use crystallo::constructions::{apply_functor, jt_clone_search, pad_chyper, Functor, FunctorInput, JtSearchResult};
use crystallo::graphs::{classify_structure, enumerate_category_structures, ReflexiveGraph};
use crystallo::internal::{
    brute_force_internal, classify_object, cooperator, crystallography_report, enumerate_internal, Subobject,
};
use crystallo::specs::{check_identities, parse_blocks, Block};
use crystallo::{Congruence, FiniteAlgebra, InternalError};
use serde_json::{json, Value};

use crate::inputs::{load_structure, load_variety, parse_elements, parse_pairs, Scope};
use crate::Failure;

/// A command's result, rendered as JSON or text by the caller.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Nonzero when the result itself is a rejection.
    pub code: i32,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Self { json, text, code: 0 }
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "HOLDS"
    } else {
        "FAILS"
    }
}

fn budget_error(what: &str, nodes: u64) -> Failure {
    Failure::Budget(format!("{what}: budget exhausted after {nodes} nodes"))
}

pub fn validate(files: &[String]) -> Result<Output> {
    let mut varieties = Vec::new();
    let mut algebras = Vec::new();
    let mut text = String::new();
    let mut rejected = false;
    for path in files {
        let src = std::fs::read_to_string(path).map_err(|e| anyhow!("cannot read `{path}`: {e}"))?;
        let blocks = parse_blocks(&src).map_err(|e| anyhow!("in `{path}`: {e}"))?;
        let local: Vec<_> = blocks
            .iter()
            .filter_map(|b| match b {
                Block::Variety(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        for v in &local {
            writeln!(text, "variety {}: {} ops, {} consts, {} equations", v.name, v.signature.ops().len(), v.signature.consts().len(), v.equations.len())?;
            varieties.push(json!({
                "file": path,
                "name": v.name,
                "ops": v.signature.ops().len(),
                "consts": v.signature.consts().len(),
                "equations": v.equations.len(),
            }));
        }
        if blocks.iter().any(|b| matches!(b, Block::Algebra(_))) {
            let scope = Scope::new(None)?;
            let explicit: Vec<FiniteAlgebra> = scope.algebras(path)?;
            for a in explicit {
                let v = local
                    .iter()
                    .find(|v| v.name == a.variety_name())
                    .cloned()
                    .map(Ok)
                    .unwrap_or_else(|| load_variety(&format!("builtin:{}", a.variety_name())))?;
                let report = check_identities(&a, &v.equations)?;
                rejected |= !report.satisfied();
                writeln!(
                    text,
                    "algebra {} : {} size {}: {}",
                    a.name(),
                    v.name,
                    a.size(),
                    if report.satisfied() { "valid" } else { "INVALID" }
                )?;
                if let Some(bad) = report.violations.first() {
                    writeln!(text, "  first violation: {} at {:?}", bad.equation, bad.assignment)?;
                }
                algebras.push(json!({
                    "file": path,
                    "name": a.name(),
                    "variety": v.name,
                    "size": a.size(),
                    "valid": report.satisfied(),
                    "first_violation": report.violations.first(),
                }));
            }
        }
    }
    let mut out = Output::new(json!({ "varieties": varieties, "algebras": algebras }), text);
    if rejected {
        out.code = 2;
    }
    Ok(out)
}

pub fn check(scope: &Scope, algebra: &str, equations: Option<&str>) -> Result<Output> {
    let a = scope.algebra(algebra)?;
    let v = match (equations, scope.variety()) {
        (Some(path), _) => load_variety(path)?,
        (None, Some(v)) => v.clone(),
        (None, None) => load_variety(&format!("builtin:{}", a.variety_name()))?,
    };
    let report = check_identities(&a, &v.equations)?;
    let mut text = format!(
        "{} against {} ({} equations): {}\n",
        a.name(),
        v.name,
        v.equations.len(),
        if report.satisfied() { "SATISFIED" } else { "VIOLATED" }
    );
    for viol in &report.violations {
        writeln!(text, "  {} at {:?}: {} != {}", viol.equation, viol.assignment, viol.lhs, viol.rhs)?;
    }
    Ok(Output::new(
        json!({
            "algebra": a.name(),
            "variety": v.name,
            "satisfied": report.satisfied(),
            "total_violations": report.total_violations,
            "violations": report.violations,
        }),
        text,
    ))
}

pub fn congruences(scope: &Scope, algebra: &str, cap: usize) -> Result<Output> {
    let a = scope.algebra(algebra)?;
    let cons = all_congruences_capped(&a, cap)?;
    let mut text = format!("{}: {} congruences\n", a.name(), cons.len());
    for c in &cons {
        writeln!(text, "  {c}")?;
    }
    Ok(Output::new(
        json!({ "algebra": a.name(), "size": a.size(), "count": cons.len(), "congruences": cons }),
        text,
    ))
}

pub fn laws(scope: &Scope, algebra: &str, laws: &[LatticeLaw]) -> Result<Output> {
    let a = scope.algebra(algebra)?;
    let lat = CongruenceLattice::new(&a)?;
    let laws: Vec<LatticeLaw> = if laws.is_empty() { LatticeLaw::ALL.to_vec() } else { laws.to_vec() };
    let mut text = format!("{}: lattice of {} congruences\n", a.name(), lat.len());
    let mut results = Vec::new();
    for law in laws {
        let v = check_law_on(&lat, law);
        writeln!(text, "  {law}: {}", holds(v.holds))?;
        if let Some(c) = &v.counterexample {
            writeln!(text, "    T = {}, S = {}, R = {}: {} vs {}", c.t, c.s, c.r, c.lhs, c.rhs)?;
        }
        results.push(json!({
            "law": law,
            "verdict": holds(v.holds),
            "counterexample": v.counterexample,
        }));
    }
    Ok(Output::new(
        json!({ "algebra": a.name(), "lattice_size": lat.len(), "laws": results }),
        text,
    ))
}

pub fn shifting(scope: &Scope, algebra: &str) -> Result<Output> {
    let a = scope.algebra(algebra)?;
    let lat = CongruenceLattice::new(&a)?;
    let v = check_shifting_on(&lat);
    let mut text = format!("{}: Shifting Lemma {}\n", a.name(), holds(v.holds));
    if let Some(c) = &v.counterexample {
        writeln!(
            text,
            "  T = {}, S = {}, R = {}; x = {}, y = {}, x' = {}, y' = {}",
            c.t, c.s, c.r, c.x, c.y, c.x2, c.y2
        )?;
    }
    Ok(Output::new(
        json!({
            "algebra": a.name(),
            "lattice_size": v.lattice_size,
            "verdict": holds(v.holds),
            "counterexample": v.counterexample,
        }),
        text,
    ))
}

pub fn chyper_span(scope: &Scope, left: &str, right: &str) -> Result<Output> {
    let x = scope.algebra(left)?;
    let y = scope.algebra(right)?;
    let span = PunctualSpan::product_span(&x, &y)?;
    let v = check_chyper_span(&span)?;
    let mut text = format!(
        "{} x {}: span condition {} ({} congruences tested)\n",
        x.name(),
        y.name(),
        holds(v.holds),
        v.congruences_tested
    );
    if let Some(c) = &v.counterexample {
        writeln!(text, "  T = {}; w = {}, w' = {}", c.t, c.w, c.w2)?;
    }
    Ok(Output::new(
        json!({
            "left": x.name(),
            "right": y.name(),
            "verdict": holds(v.holds),
            "congruences_tested": v.congruences_tested,
            "counterexample": v.counterexample,
        }),
        text,
    ))
}

pub fn internal(scope: &Scope, algebra: &str, structure: &str, brute: bool, budget: u64) -> Result<Output, Failure> {
    let a = scope.valid_algebra(algebra)?;
    let s = load_structure(structure)?;
    let (structures, nodes) = if brute {
        (brute_force_internal(&a, &s).map_err(Failure::from_core)?, None)
    } else {
        let e = enumerate_internal(&a, &s, budget).map_err(Failure::from_core)?;
        if e.truncated {
            return Err(budget_error(a.name(), e.nodes));
        }
        (e.structures, Some(e.nodes))
    };
    let mut text = format!("{}: {} internal {} structure(s)\n", a.name(), structures.len(), s.name);
    for st in &structures {
        for (op, t) in st.signature().ops().iter().zip(st.tables()) {
            writeln!(text, "  {}: {:?}", op.name, t).unwrap();
        }
        for (c, v) in st.signature().consts().iter().zip(st.constants()) {
            writeln!(text, "  {c} = {v}").unwrap();
        }
    }
    let mut json = json!({
        "algebra": a.name(),
        "structure": s.name,
        "method": if brute { "brute-force" } else { "search" },
        "count": structures.len(),
        "structures": structures,
    });
    if let Some(n) = nodes {
        json["nodes"] = json!(n);
    }
    Ok(Output::new(json, text))
}

pub fn cooperator_cmd(scope: &Scope, algebra: &str, u: Option<&str>, v: Option<&str>, budget: u64) -> Result<Output, Failure> {
    let a = scope.algebra(algebra)?;
    let sub = |spec: Option<&str>| -> Result<Subobject, Failure> {
        match spec {
            None => Ok(Subobject::whole(&a)),
            Some(s) => Subobject::from_elements(&a, &parse_elements(s)?).map_err(Failure::from_core),
        }
    };
    let (su, sv) = (sub(u)?, sub(v)?);
    let phi = cooperator(&a, &su, &sv, budget).map_err(Failure::from_core)?;
    let mut json = json!({
        "algebra": a.name(),
        "u": su.inclusion.map(),
        "v": sv.inclusion.map(),
        "exists": phi.is_some(),
        "cooperator": phi,
    });
    let mut text = format!(
        "{}: cooperator {}\n",
        a.name(),
        if phi.is_some() { "exists" } else { "does not exist" }
    );
    if let Some(p) = &phi {
        writeln!(text, "  map: {:?}", p.map()).unwrap();
    }
    if u.is_none() && v.is_none() {
        let class = classify_object(&a, budget).map_err(Failure::from_core)?;
        writeln!(text, "  commutative: {}, abelian: {}", class.commutative, class.abelian).unwrap();
        json["object"] = json!(class);
    }
    Ok(Output::new(json, text))
}

pub fn report(scope: &Scope, samples: &str, structure: &str, models: Option<usize>, budget: u64) -> Result<Output, Failure> {
    let mut algs = scope.algebras(samples)?;
    if let Some(n) = models {
        let v = scope
            .variety()
            .ok_or_else(|| Failure::Usage("--models needs --variety".into()))?;
        let e = enumerate_models(v, n, budget).map_err(Failure::from_core)?;
        if e.truncated {
            return Err(budget_error(&format!("models of {} of size {n}", v.name), e.nodes));
        }
        algs.extend(
            e.models
                .into_iter()
                .enumerate()
                .map(|(i, m)| m.with_name(format!("{}_model{n}_{i}", v.name))),
        );
    }
    if let Some(v) = scope.variety() {
        for a in &algs {
            let r = check_identities(a, &v.equations).map_err(Failure::from_core)?;
            if !r.satisfied() {
                return Err(Failure::Input(anyhow!("`{}` is not a {} algebra", a.name(), v.name)));
            }
        }
    }
    let s = load_structure(structure)?;
    let r = crystallography_report(&algs, &s, budget).map_err(|e| match e {
        InternalError::BudgetExhausted { sample, nodes } => budget_error(&sample, nodes),
        e => Failure::from_core(e),
    })?;
    let mut text = String::new();
    for sample in &r.samples {
        writeln!(text, "{:<24} size {:>3}  count {}", sample.name, sample.size, sample.count).unwrap();
    }
    writeln!(text, "verdict: {}", r.verdict).unwrap();
    writeln!(text, "at most one structure per sample: {}", r.crystallographic).unwrap();
    if let Some(w) = &r.witness {
        writeln!(text, "witness: two structures on {}", w.sample).unwrap();
    }
    Ok(Output::new(json!(r), text))
}

pub fn graphs(scope: &Scope, algebra: &str, relation: &str, budget: u64) -> Result<Output, Failure> {
    let a = scope.algebra(algebra)?;
    let graphs: Vec<(String, ReflexiveGraph)> = match relation {
        "nabla" => vec![("nabla".into(), ReflexiveGraph::indiscrete(&a).map_err(Failure::from_core)?)],
        "delta" => vec![("delta".into(), ReflexiveGraph::discrete(&a).map_err(Failure::from_core)?)],
        "congruences" => all_congruences_capped(&a, crystallo::congruences::DEFAULT_PRINCIPAL_CAP)
            .map_err(Failure::from_core)?
            .iter()
            .map(|c: &Congruence| Ok((c.to_string(), ReflexiveGraph::from_congruence(&a, c).map_err(Failure::from_core)?)))
            .collect::<Result<_, Failure>>()?,
        pairs => {
            let pairs = parse_pairs(pairs)?;
            vec![(relation.to_string(), ReflexiveGraph::from_relation(&a, &pairs).map_err(Failure::from_core)?)]
        }
    };
    let mut text = String::new();
    let mut results = Vec::new();
    for (label, g) in graphs {
        let found = enumerate_category_structures(&g, budget).map_err(|e| match e {
            crystallo::GraphError::BudgetExhausted { nodes } => budget_error(&label, nodes),
            e => Failure::from_core(e),
        })?;
        let classes: Vec<_> = found.iter().map(classify_structure).collect();
        writeln!(text, "{} relation {}: {} category structure(s)", a.name(), label, found.len()).unwrap();
        for c in &classes {
            writeln!(
                text,
                "  groupoid: {}, equivalence relation: {}, affine: {}",
                c.is_groupoid,
                c.graph_is_equivalence_relation,
                c.is_affine.map_or("n/a".to_string(), |b| b.to_string())
            )
            .unwrap();
        }
        results.push(json!({
            "relation": label,
            "graph": g,
            "count": found.len(),
            "structures": found.iter().zip(&classes).map(|(s, c)| json!({ "structure": s, "classification": c })).collect::<Vec<_>>(),
        }));
    }
    Ok(Output::new(json!({ "algebra": a.name(), "graphs": results }), text))
}

pub fn construct(scope: &Scope, functor: Option<&str>, input: Option<&str>, p: Option<usize>, d: usize, sample: Option<&str>) -> Result<Output, Failure> {
    let a = match (functor, sample) {
        (Some(f), None) => {
            let f: Functor = f.parse().map_err(Failure::from_core)?;
            let arg = match (f, input, p) {
                (Functor::H | Functor::M, Some(spec), None) => FunctorInput::Algebra(scope.algebra(spec)?),
                (Functor::W | Functor::A, None, Some(p)) => FunctorInput::Field { p, d },
                _ => {
                    return Err(Failure::Usage(
                        "h and m take --input ALGEBRA; w and a take --p PRIME [--d DIM]".into(),
                    ))
                }
            };
            apply_functor(f, &arg).map_err(Failure::from_core)?
        }
        (None, Some(s)) => scope.algebra(&format!("builtin:{}", s.strip_prefix("builtin:").unwrap_or(s)))?,
        _ => return Err(Failure::Usage("give exactly one of --functor or --sample".into())),
    };
    Ok(Output::new(json!(a), a.to_string()))
}

pub fn pad(scope: &Scope, variety: &str, times: usize, models: Option<&str>) -> Result<Output, Failure> {
    if times == 0 {
        return Err(Failure::Usage("--times must be positive".into()));
    }
    let mut v = load_variety(variety)?;
    let models = match models {
        Some(m) => scope.algebras(m)?,
        None => Vec::new(),
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut verified = true;
    for _ in 0..times {
        let (next, rep) = pad_chyper(&v, &models).map_err(Failure::from_core)?;
        writeln!(
            text,
            "{} (type {}) -> type {}: {}",
            rep.source,
            rep.source_type,
            rep.target_type,
            if rep.verified { "verified" } else { "NOT verified" }
        )
        .unwrap();
        for e in &rep.equations {
            writeln!(text, "  {:<40} {:?}", e.substituted, e.justification).unwrap();
        }
        verified &= rep.verified;
        reports.push(rep);
        v = next;
    }
    text.push_str(&v.to_string());
    Ok(Output::new(
        json!({ "verified": verified, "steps": reports, "presentation": v.to_string() }),
        text,
    ))
}

pub fn models(variety: &str, size: usize, canonical: bool, limit: Option<usize>, budget: u64) -> Result<Output, Failure> {
    let v = load_variety(variety)?;
    let e = enumerate_models(&v, size, budget).map_err(Failure::from_core)?;
    if e.truncated {
        return Err(budget_error(&format!("models of {} of size {size}", v.name), e.nodes));
    }
    let mut ms = e.models;
    if canonical {
        ms = dedup_isomorphic(ms).map_err(Failure::from_core)?;
    }
    let total = ms.len();
    if let Some(l) = limit {
        ms.truncate(l);
    }
    let ms: Vec<FiniteAlgebra> = ms
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.with_name(format!("{}_model{size}_{i}", v.name)))
        .collect();
    let mut text = format!("{}: {} model(s) of size {size}{}\n", v.name, total, if canonical { " up to isomorphism" } else { "" });
    for m in &ms {
        text.push_str(&m.to_string());
    }
    Ok(Output::new(
        json!({ "variety": v.name, "size": size, "count": total, "canonical": canonical, "models": ms }),
        text,
    ))
}

pub fn jt(scope: &Scope, algebra: &str, limit: usize) -> Result<Output, Failure> {
    let a = scope.algebra(algebra)?;
    let r = jt_clone_search(&a, limit).map_err(Failure::from_core)?;
    let text = match &r {
        JtSearchResult::Found { table, generated } => {
            format!("{}: binary term with x+0 = x = 0+x found after {generated} tables: {table:?}\n", a.name())
        }
        JtSearchResult::NoneInClone { generated } => {
            format!("{}: no such binary term ({generated} binary term operations)\n", a.name())
        }
        JtSearchResult::NoneWithinBudget { generated } => {
            format!("{}: no JT term within budget ({generated} tables)\n", a.name())
        }
    };
    Ok(Output::new(json!({ "algebra": a.name(), "result": r }), text))
}
