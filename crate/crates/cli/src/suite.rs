//! The verification suites behind `verify`, `lie` and `report`.

use serde::Serialize;

use brown_core::brown::iso::{build_iso_chain, IsoChain};
use brown_core::brown::mat4::check_hat_identities;
use brown_core::brown::model_a::{build_model_a, ModelA};
use brown_core::brown::model_b::{build_model_b, BElt, ModelB};
use brown_core::brown::recognition::recognition_invariants;
use brown_core::composition::{gamma_matrix, sigma11, verify_basis_lemma};
use brown_core::jordan::build_albert;
use brown_core::liealg::{build_tower, JacobiMode, LieTable, LieTower};
use brown_core::structurable::{
    check_structurable, check_trace_invariance, gram_rank, matrix_trace, orthogonality_violations, trace_form,
};
use brown_core::Field;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, r: Result<(), String>) -> Self {
        let passed = r.is_ok();
        Check { id: id.into(), passed, detail: r.err() }
    }

    pub fn expect<T: PartialEq + std::fmt::Debug>(id: impl Into<String>, got: T, want: T) -> Self {
        let r = if got == want { Ok(()) } else { Err(format!("got {got:?}, expected {want:?}")) };
        Check::new(id, r)
    }
}

fn ok_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub struct Models {
    pub a: ModelA<Field>,
    pub b: ModelB<Field>,
    pub iso: IsoChain<Field>,
}

pub fn build_models() -> Result<Models, String> {
    let a = build_model_a::<Field>().map_err(|e| e.to_string())?;
    let b = build_model_b::<Field>().map_err(|e| e.to_string())?;
    let iso = build_iso_chain(&b).map_err(|e| e.to_string())?;
    Ok(Models { a, b, iso })
}

const GAMMA: [[[i8; 4]; 4]; 4] = [
    [[1, -1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1], [-1, 1, -1, -1]],
    [[-1, -1, -1, -1], [-1, 1, -1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1]],
    [[-1, 1, 1, 1], [-1, -1, -1, 1], [-1, 1, -1, -1], [-1, -1, 1, -1]],
    [[-1, -1, -1, -1], [1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1]],
];
const SIGMA11: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];

/// The computed cocycle tables against the published γ blocks
/// (γ11, γ12, γ21, γ22) and σ11.
pub fn cocycle_tables() -> Vec<Check> {
    let g = gamma_matrix();
    let mut out: Vec<Check> = GAMMA
        .iter()
        .enumerate()
        .map(|(b, want)| {
            let (r, c) = (b / 2, b % 2);
            let got: Vec<Vec<i8>> = (0..4).map(|j| g[4 * r + j][4 * c..4 * c + 4].to_vec()).collect();
            let want: Vec<Vec<i8>> = want.iter().map(|row| row.to_vec()).collect();
            Check::expect(format!("gamma-{}{}", r + 1, c + 1), got, want)
        })
        .collect();
    out.push(Check::expect("sigma-11", sigma11(), SIGMA11));
    out
}

pub fn basis_lemma() -> Vec<Check> {
    let r = verify_basis_lemma();
    vec![Check::new("basis-lemma", ok_if(r.passed(), || r.violations.join("; ")))]
}

pub fn model_b(b: &ModelB<Field>) -> Vec<Check> {
    let mut out = vec![Check::new(
        "model-b-grading",
        ok_if(b.grading.verified && b.grading.is_fine_dim1(), || "grading not verified".into()),
    )];
    let r = b.check_products();
    for (fam, c) in &r.families {
        let detail = c.first_mismatch.as_ref().map(|(x, y)| format!("{} mismatches, first at ({x}, {y})", c.mismatches));
        out.push(Check::new(format!("model-b-products-{fam}"), ok_if(c.mismatches == 0 && c.checked > 0, || detail.unwrap_or_default())));
    }
    out.push(Check::new(
        "model-b-commutation",
        ok_if(r.commutation_failures == 0, || format!("{} failures", r.commutation_failures)),
    ));
    out.push(Check::new("model-b-fourth-powers", b.check_fourth_powers().map(|_| ())));
    out
}

pub fn model_a(a: &ModelA<Field>, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, ok, detail) in a.verify_pi().checks.into_iter().chain(a.verify_automorphisms().checks) {
        let id = format!("model-a-{}", name.replace(' ', "-"));
        out.push(Check { id, passed: ok, detail });
    }
    out.push(Check::new("model-a-hat-identities", check_hat_identities::<Field>(50, seed)));
    let t = a.verify_component_table();
    let detail = || {
        t.failures()
            .iter()
            .map(|f| format!("{} at {}: {}", f.label, f.degree, f.detail.clone().unwrap_or_default()))
            .collect::<Vec<_>>()
            .join("; ")
    };
    out.push(Check::new("model-a-component-table", ok_if(t.passed(), detail)));
    out.push(Check::new(
        "model-a-grading",
        ok_if(a.grading.verified && a.grading.is_fine_dim1(), || "grading not verified".into()),
    ));
    out
}

pub fn structurable(m: &Models, trials: usize, seed: u64) -> Vec<Check> {
    [("A", &m.a.alg), ("B", &m.b.graded)]
        .into_iter()
        .map(|(name, alg)| {
            let r = check_structurable(alg, trials, seed);
            let detail = || {
                let mut v = r.trial_failures.clone();
                v.extend(r.skew_alternativity_failures.iter().cloned());
                v.extend(r.involution.clone());
                v.truncate(3);
                v.join("; ")
            };
            let ok = r.passed() && r.skew_dimension == 1;
            Check::new(format!("structurable-{name}"), ok_if(ok, detail))
        })
        .collect()
}

pub fn iso(m: &Models, seed: u64) -> Vec<Check> {
    vec![
        Check::new("iso-chain", m.iso.verify(&m.a, &m.b)),
        Check::new("iso-special-elements", m.iso.check_special_elements(&m.b, 50, seed)),
    ]
}

/// The trace as a linear form on a basis given in native coordinates.
fn trace_on(basis: &[brown_core::linalg::SparseVec<Field>], tr: &[Field]) -> Vec<Field> {
    basis.iter().map(|v| v.dot_dense(tr)).collect()
}

pub fn trace_form_checks(m: &Models, seed: u64) -> Vec<Check> {
    let tr_b = trace_on(&m.b.basis, &matrix_trace::<Field>());
    let tr_a = trace_on(&m.a.eigenbasis, &m.iso.transported_trace());
    let mut out = Vec::new();
    for (name, alg, grading, tr) in [("B", &m.b.graded, &m.b.grading, tr_b), ("A", &m.a.graded, &m.a.grading, tr_a)] {
        let gram = trace_form(alg, &tr);
        out.push(Check::expect(format!("trace-form-{name}-rank"), gram_rank(&gram), 56));
        let v = orthogonality_violations(&gram, &grading.group, &grading.degrees);
        out.push(Check::new(format!("trace-form-{name}-orthogonality"), ok_if(v.is_empty(), || format!("{} violations", v.len()))));
        out.push(Check::new(format!("trace-form-{name}-invariance"), check_trace_invariance(alg, &gram, 100, seed)));
    }
    out
}

pub fn rank_suite(trials: usize, seed: u64) -> Vec<Check> {
    let r = build_albert::<Field>().rank_suite(trials, 100, seed);
    vec![Check::new("rank-orbit-suite", ok_if(r.passed(), || format!("ranks {:?}; {}", r.fixed_ranks, r.failures.join("; "))))]
}

pub fn recognition(m: &Models) -> Vec<Check> {
    let ra = recognition_invariants("A", &m.a.graded, &m.a.grading, false);
    let rb = recognition_invariants("B", &m.b.graded, &m.b.grading, true);
    vec![
        Check::new("recognition-A", ok_if(ra.passed(), || format!("{ra:?}"))),
        Check::new("recognition-B", ok_if(rb.passed(), || format!("{rb:?}"))),
        Check::new("recognition-fingerprints", ok_if(ra.fingerprint == rb.fingerprint, || "fingerprints differ".into())),
    ]
}

/// Everything except the Lie layer.
pub fn verify_all(trials: usize, seed: u64) -> Result<Vec<Check>, String> {
    let m = build_models()?;
    let mut out = cocycle_tables();
    out.extend(basis_lemma());
    out.extend(model_b(&m.b));
    out.extend(model_a(&m.a, seed));
    out.extend(structurable(&m, trials, seed));
    out.extend(iso(&m, seed));
    out.extend(trace_form_checks(&m, seed));
    out.extend(rank_suite(trials, seed));
    out.extend(recognition(&m));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LieWhich {
    Der,
    Str,
    Kan,
}

pub fn tower() -> Result<(ModelB<Field>, LieTower<Field>), String> {
    let b = build_model_b::<Field>().map_err(|e| e.to_string())?;
    let t = build_tower(&b.graded, &b.grading, BElt::S0.index()).map_err(|e| e.to_string())?;
    Ok((b, t))
}

/// Certifies one Lie algebra of the tower; returns its table with the
/// certificates filled in.
pub fn lie(which: LieWhich, jacobi: JacobiMode, b: &ModelB<Field>, t: &LieTower<Field>) -> (LieTable<Field>, Vec<Check>) {
    let name = match which {
        LieWhich::Der => "der",
        LieWhich::Str => "str",
        LieWhich::Kan => "kan",
    };
    let id = |s: &str| format!("lie-{name}-{s}");
    let mut table = match which {
        LieWhich::Der => t.der.table.clone(),
        LieWhich::Str => t.str_.table.clone(),
        LieWhich::Kan => t.kan.table.clone(),
    };
    let mut out = Vec::new();
    let (dim, killing, center) = match which {
        LieWhich::Der => (78, 78, 0),
        LieWhich::Str => (134, 133, 1),
        LieWhich::Kan => (248, 248, 0),
    };
    out.push(Check::expect(id("dim"), table.dim(), dim));
    out.push(Check::new(id("antisymmetry"), ok_if(table.is_antisymmetric(), || "not antisymmetric".into())));
    let g = table.verify_grading();
    out.push(Check::new(id("grading"), ok_if(g.as_ref().is_some_and(|r| r.passed()), || format!("{:?}", g.and_then(|r| r.witness)))));
    table.certify_jacobi(jacobi);
    let jr = table.certificates.jacobi.clone().expect("just certified");
    out.push(Check::new(id("jacobi"), ok_if(jr.passed(), || format!("witness {:?}", jr.witness))));
    let (k, c) = table.certify_killing_and_center();
    out.push(Check::expect(id("killing-rank"), k, killing));
    out.push(Check::expect(id("center-dim"), c, center));
    match which {
        LieWhich::Der => {
            out.push(Check::new(id("kills-s0"), ok_if(t.der.kills(&[b.graded.basis(BElt::S0.index())]), || "a derivation moves s0".into())));
            out.push(Check::new(id("leibniz"), t.der.check_leibniz(&b.graded, 50, 0).map_err(|k| format!("trial {k}"))));
        }
        LieWhich::Str => {
            out.push(Check::expect(id("parity-dims"), t.str_.parity_dims(), (79, 55)));
            out.push(Check::expect(id("derived-dim"), table.derived_dim(), 133));
            let (inside, rank) = t.str_.inner_structure(&b.graded, &b.grading);
            out.push(Check::expect(id("inner-structure"), (inside, rank), (true, 134)));
        }
        LieWhich::Kan => {
            out.push(Check::expect(id("piece-dims"), t.kan.piece_dims(), [1, 56, 134, 56, 1]));
        }
    }
    (table, out)
}
