//! Regression against stored summaries of the Lie tower. Set
//! `BROWN_BLESS=1` to rewrite the golden file after an intended change.

use std::collections::BTreeMap;
use std::path::PathBuf;

use brown_core::brown::model_b::{build_model_b, BElt};
use brown_core::liealg::{build_tower, LieTable};
use brown_core::Field;
use serde_json::{json, Value};

fn summary(t: &LieTable<Field>) -> Value {
    let g = t.grading.as_ref().expect("graded");
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for d in g.component_dims().values() {
        *hist.entry(*d).or_default() += 1;
    }
    json!({
        "dim": t.dim(),
        "group": g.group.to_string(),
        "support": g.support().len(),
        "component_dims": hist,
    })
}

#[test]
fn tower_matches_golden() {
    let b = build_model_b::<Field>().unwrap();
    let t = build_tower(&b.graded, &b.grading, BElt::S0.index()).unwrap();
    let got = json!({
        "der": summary(&t.der.table),
        "der_labels": t.der.table.labels(),
        "str": summary(&t.str_.table),
        "kan": summary(&t.kan.table),
        "kan_pieces": t.kan.piece_dims(),
    });
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/tower.json");
    if std::env::var_os("BROWN_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).expect("golden file")).unwrap();
    assert_eq!(got, want);
}
