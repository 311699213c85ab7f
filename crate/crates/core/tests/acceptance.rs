//! Acceptance suite: one line per criterion, each checked against its time
//! limit. Criterion 12 reruns the others and compares their JSON evidence.

use std::time::{Duration, Instant};

use crystallo::algebra::{enumerate_homs, enumerate_models, product};
use crystallo::congruences::{check_chyper_span, check_lattice_laws, check_shifting_lemma, LatticeLaw, PunctualSpan};
use crystallo::constructions::{
    boolean_implication, builtin_algebras_up_to, builtin_variety, cm3_samples, cyclic_group, cyclic_monoid, h,
    klein_group, named_sample, pad_chyper, sample_set, small_groups, w, zero_pointed_magma, Justification,
};
use crystallo::graphs::{classify_structure, enumerate_category_structures, ReflexiveGraph};
use crystallo::internal::{
    brute_force_internal, crystallography_report, enumerate_internal, StructureSpec, Verdict,
};
use crystallo::specs::satisfies;
use crystallo::{Congruence, FiniteAlgebra, DEFAULT_BUDGET};
use serde_json::{json, Value};

struct Outcome {
    ok: bool,
    detail: String,
    evidence: Value,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>, evidence: Value) -> Self {
        Self {
            ok,
            detail: detail.into(),
            evidence,
        }
    }
}

fn spec(name: &str) -> StructureSpec {
    StructureSpec::builtin(name).unwrap()
}

fn count(a: &FiniteAlgebra, s: &StructureSpec) -> usize {
    let e = enumerate_internal(a, s, DEFAULT_BUDGET).unwrap();
    assert!(!e.truncated, "budget exhausted on {}", a.name());
    e.structures.len()
}

fn c1_oracle_equivalence() -> Outcome {
    let algebras = builtin_algebras_up_to(3).unwrap();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for s in StructureSpec::all_builtins() {
        for a in &algebras {
            let fast = enumerate_internal(a, &s, DEFAULT_BUDGET).unwrap();
            let slow = brute_force_internal(a, &s);
            let same = !fast.truncated && slow.as_ref().is_ok_and(|slow| *slow == fast.structures);
            if !same {
                mismatches.push(format!("{} on {}", s.name, a.name()));
            }
            rows.push(json!({ "spec": s.name, "algebra": a.name(), "count": fast.structures.len(), "agree": same }));
        }
    }
    let detail = format!("{} pairs, {} mismatches", rows.len(), mismatches.len());
    Outcome::new(mismatches.is_empty(), detail, json!(rows))
}

fn c2_hex3_crystallography() -> Outcome {
    let hex3 = builtin_variety("Hex3", None).unwrap();
    let models = enumerate_models(&hex3, 2, DEFAULT_BUDGET).unwrap();
    let mut samples = sample_set("paper7.1").unwrap();
    let n_paper = samples.len();
    samples.extend(
        models
            .models
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.with_name(format!("Hex3_model2_{i}"))),
    );
    let mut ok = !models.truncated;
    let mut ev = Vec::new();
    let mut detail = Vec::new();
    for name in ["abelian-group", "subtraction"] {
        let r = crystallography_report(&samples, &spec(name), DEFAULT_BUDGET).unwrap();
        ok &= r.max_count <= 1 && r.verdict == Verdict::Crystallographic;
        let paper = crystallography_report(&samples[..n_paper], &spec(name), DEFAULT_BUDGET).unwrap();
        ok &= paper.max_count <= 1;
        detail.push(format!("{name}: {} (max {})", r.verdict, r.max_count));
        let counts: Vec<usize> = r.samples.iter().map(|s| s.count).collect();
        ev.push(json!({ "spec": name, "verdict": r.verdict, "paper_verdict": paper.verdict, "counts": counts }));
    }
    detail.push(format!("{} samples", samples.len()));
    Outcome::new(ok, detail.join(", "), json!(ev))
}

fn c3_multiplication() -> Outcome {
    let group = spec("abelian-group");
    let mut ok = true;
    let mut ev = Vec::new();
    for p in [3, 5] {
        let hp = h(&cyclic_group(p).unwrap()).unwrap();
        let wp = w(p, 1).unwrap();
        let isos = enumerate_homs(&hp, &wp, true).unwrap().len();
        let (ch, cw) = (count(&hp, &group), count(&wp, &group));
        ok &= isos == 0 && ch == 1 && cw == 1;
        ev.push(json!({ "p": p, "isomorphisms": isos, "h_groups": ch, "w_groups": cw }));
    }
    Outcome::new(ok, "h(F_p) and w(F_p,1) for p = 3, 5", json!(ev))
}

fn c4_h_fully_faithful() -> Outcome {
    let groups = small_groups().unwrap();
    let mut ok = true;
    let mut ev = Vec::new();
    for g in &groups {
        for k in &groups {
            let grp: Vec<Vec<usize>> = enumerate_homs(g, k, false).unwrap().iter().map(|f| f.map().to_vec()).collect();
            let hex: Vec<Vec<usize>> = enumerate_homs(&h(g).unwrap(), &h(k).unwrap(), false)
                .unwrap()
                .iter()
                .map(|f| f.map().to_vec())
                .collect();
            ok &= grp == hex;
            ev.push(json!({ "from": g.name(), "to": k.name(), "group_homs": grp.len(), "hex3_homs": hex.len() }));
        }
    }
    Outcome::new(ok, format!("{} pairs", ev.len()), json!(ev))
}

fn c5_maltsev_uniqueness() -> Outcome {
    let maltsev = spec("maltsev");
    let affine = spec("affine");
    let mut ok = true;
    let mut ev = Vec::new();
    for g in small_groups().unwrap() {
        let n = g.size();
        let found = enumerate_internal(&g, &maltsev, DEFAULT_BUDGET).unwrap().structures;
        let expected: Vec<usize> = (0..n * n * n)
            .map(|c| {
                let (x, y, z) = (c / (n * n), c / n % n, c % n);
                g.apply(0, &[g.apply(0, &[x, g.apply(1, &[y])]), z])
            })
            .collect();
        let unique = found.len() == 1 && found[0].table(0) == &expected[..];
        let is_affine = found.iter().all(|st| {
            let p = FiniteAlgebra::new("p", "Affine", affine.signature.clone(), n, vec![st.table(0).to_vec()], vec![])
                .unwrap();
            satisfies(&p, &affine.equations).unwrap()
        });
        ok &= unique && is_affine;
        ev.push(json!({ "group": g.name(), "count": found.len(), "is_x_yinv_z": unique, "affine": is_affine }));
    }
    Outcome::new(ok, "Z2, Z3, Z4, Klein", json!(ev))
}

fn c6_pixley_trivialization() -> Outcome {
    let mut ok = true;
    let mut ev = Vec::new();
    for a in sample_set("discriminators").unwrap() {
        let groups = count(&a, &spec("group"));
        let assoc = count(&a, &spec("associative-maltsev"));
        let distributive = check_lattice_laws(&a, LatticeLaw::Distributive).unwrap().holds;
        ok &= groups == 0 && assoc == 0 && distributive;
        ev.push(json!({ "algebra": a.name(), "groups": groups, "associative_maltsev": assoc, "distributive": distributive }));
    }
    Outcome::new(ok, "D2, D3, D2xD3", json!(ev))
}

fn c7_shifting() -> Outcome {
    let mut ok = true;
    let mut ev = Vec::new();
    let mut samples = sample_set("paper7.1").unwrap();
    samples.extend(cm3_samples().unwrap());
    for a in &samples {
        let holds = check_shifting_lemma(a).unwrap().holds;
        ok &= holds;
        ev.push(json!({ "algebra": a.name(), "holds": holds }));
    }
    let fixture = named_sample("Id4").unwrap();
    let fails = !check_shifting_lemma(&fixture).unwrap().holds;
    ok &= fails;
    ev.push(json!({ "algebra": fixture.name(), "holds": !fails }));
    Outcome::new(ok, format!("{} samples hold, fixture fails: {fails}", samples.len()), json!(ev))
}

fn c8_chyper_spans() -> Outcome {
    let bases = [h(&cyclic_group(2).unwrap()).unwrap(), h(&cyclic_group(3).unwrap()).unwrap()];
    let mut ok = true;
    let mut ev = Vec::new();
    for x in &bases {
        for y in &bases {
            let v = check_chyper_span(&PunctualSpan::product_span(x, y).unwrap()).unwrap();
            ok &= v.holds;
            ev.push(json!({ "x": x.name(), "y": y.name(), "holds": v.holds, "tested": v.congruences_tested }));
        }
    }
    let z = zero_pointed_magma().unwrap();
    let v = check_chyper_span(&PunctualSpan::product_span(&z, &z).unwrap()).unwrap();
    ok &= !v.holds;
    ev.push(json!({ "x": z.name(), "y": z.name(), "holds": v.holds, "tested": v.congruences_tested }));
    Outcome::new(ok, "4 Hex3 spans hold, fixture fails", json!(ev))
}

fn c9_padding() -> Outcome {
    let hex3 = builtin_variety("Hex3", None).unwrap();
    let (five, r5) = pad_chyper(&hex3, &[]).unwrap();
    let (_, r7) = pad_chyper(&five, &[]).unwrap();
    let justified = |r: &crystallo::constructions::PaddingReport| {
        r.verified && r.equations.iter().all(|e| e.justification != Justification::Unjustified)
    };
    let ok = justified(&r5) && justified(&r7) && r5.target_type == 5 && r7.target_type == 7;
    let detail = format!("type 5: {} equations, type 7: {} equations", r5.equations.len(), r7.equations.len());
    Outcome::new(ok, detail, json!([r5, r7]))
}

fn c10_trivialization() -> Outcome {
    let mut ok = true;
    let mut ev = Vec::new();
    let mut expect = |a: &FiniteAlgebra, s: &str, want: usize| {
        let got = count(a, &spec(s));
        ok &= got == want;
        ev.push(json!({ "algebra": a.name(), "spec": s, "count": got, "expected": want }));
    };
    for g in small_groups().unwrap() {
        expect(&g, "idempotent-unitary-magma", 0);
    }
    for m in [boolean_implication(1).unwrap(), boolean_implication(2).unwrap()] {
        expect(&m, "implication-algebra", 0);
    }
    for m in [cyclic_monoid(2).unwrap(), cyclic_monoid(3).unwrap()] {
        expect(&m, "opimplicative-subtraction", 0);
    }
    let one = |v: &str| {
        FiniteAlgebra::one_element(&builtin_variety(v, None).unwrap().signature, v).with_name(format!("One{v}"))
    };
    expect(&one("Grp"), "idempotent-unitary-magma", 1);
    expect(&one("Imp"), "implication-algebra", 1);
    expect(&one("ComMon"), "opimplicative-subtraction", 1);
    Outcome::new(ok, format!("{} counts", ev.len()), json!(ev))
}

fn c11_groupoids() -> Outcome {
    let mut ok = true;
    let mut ev = Vec::new();
    let z2 = cyclic_group(2).unwrap();
    let z3 = cyclic_group(3).unwrap();
    let z4 = cyclic_group(4).unwrap();
    let klein = klein_group().unwrap();
    let (_, proj) = product(&[z2.clone(), z2]).unwrap();
    let klein_kernel = crystallo::congruences::kernel_congruence(&proj[0]);
    let graphs = vec![
        ("nabla_Z2", ReflexiveGraph::indiscrete(&cyclic_group(2).unwrap()).unwrap()),
        ("nabla_Z3", ReflexiveGraph::indiscrete(&z3).unwrap()),
        (
            "Z4_mod2",
            ReflexiveGraph::from_congruence(&z4, &Congruence::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap()).unwrap(),
        ),
        ("Klein_kernel", ReflexiveGraph::from_congruence(&klein, &klein_kernel).unwrap()),
    ];
    for (name, g) in &graphs {
        let found = enumerate_category_structures(g, DEFAULT_BUDGET).unwrap();
        let groupoid = found.len() == 1 && classify_structure(&found[0]).is_groupoid;
        ok &= groupoid;
        ev.push(json!({ "graph": name, "count": found.len(), "groupoid": groupoid }));
    }
    let mut disc_structures = 0;
    for x in sample_set("discriminators").unwrap() {
        let n = x.size();
        let mut graphs: Vec<ReflexiveGraph> = crystallo::congruences::all_congruences(&x)
            .unwrap()
            .iter()
            .map(|c| ReflexiveGraph::from_congruence(&x, c).unwrap())
            .collect();
        if n <= 3 {
            let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
            for mask in 0u32..(1 << off.len()) {
                let rel: Vec<(usize, usize)> =
                    off.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                if let Ok(g) = ReflexiveGraph::from_relation(&x, &rel) {
                    graphs.push(g);
                }
            }
        }
        for g in &graphs {
            for c in enumerate_category_structures(g, DEFAULT_BUDGET).unwrap() {
                disc_structures += 1;
                ok &= classify_structure(&c).graph_is_equivalence_relation;
            }
        }
        ev.push(json!({ "discriminator": x.name(), "graphs": graphs.len() }));
    }
    Outcome::new(ok, format!("4 group graphs, {disc_structures} discriminator structures"), json!(ev))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 11] = [
    (1, "oracle equivalence", 60, c1_oracle_equivalence),
    (2, "Hex3 crystallography", 300, c2_hex3_crystallography),
    (3, "multiplication phenomenon", 10, c3_multiplication),
    (4, "h fully faithful", 30, c4_h_fully_faithful),
    (5, "Mal'tsev uniqueness and affinity", 30, c5_maltsev_uniqueness),
    (6, "trivialization by Pixley", 60, c6_pixley_trivialization),
    (7, "Shifting Lemma", 120, c7_shifting),
    (8, "CHyper span condition", 120, c8_chyper_spans),
    (9, "padding self-certification", 5, c9_padding),
    (10, "self/mutual trivialization", 60, c10_trivialization),
    (11, "groupoid uniqueness", 120, c11_groupoids),
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    let mut first_json = Vec::new();
    for (id, name, limit, run) in CRITERIA {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = out.ok && in_time;
        println!(
            "criterion {id:>2} {} {name}: {} [{:.2}s / {limit}s]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(id);
        }
        first_json.push(serde_json::to_string(&out.evidence).unwrap());
    }

    let start = Instant::now();
    let mut differing = Vec::new();
    for ((id, _, _, run), before) in CRITERIA.iter().zip(&first_json) {
        if serde_json::to_string(&run().evidence).unwrap() != *before {
            differing.push(*id);
        }
    }
    let pass = differing.is_empty();
    println!(
        "criterion 12 {} determinism: {} criteria rerun, differing: {differing:?} [{:.2}s]",
        if pass { "PASS" } else { "FAIL" },
        CRITERIA.len(),
        start.elapsed().as_secs_f64()
    );
    if !pass {
        failed.push(12);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
