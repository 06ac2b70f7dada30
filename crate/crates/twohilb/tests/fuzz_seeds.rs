//! Replays the checked-in fuzz corpus through the same assertions as the fuzz targets.

use std::path::PathBuf;

use twohilb::dsl::{eval_str, parse, Value};
use twohilb::json::{from_json, to_json, Document};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn parse_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_expr") {
        if let Ok(e) = parse(&text) {
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 10);
}

#[test]
fn deserialize_seeds() {
    let mut ok = 0;
    for (name, text) in seeds("deserialize_cell") {
        if let Ok(doc) = from_json(&text) {
            let written = to_json(&doc);
            assert_eq!(from_json(&written).unwrap(), doc, "{name}");
            ok += 1;
        }
    }
    assert!(ok >= 5);
}

#[test]
fn eval_seeds() {
    let mut ok = 0;
    for (name, text) in seeds("eval") {
        let doc = match eval_str(&text) {
            Ok(Value::OneCell(f)) => Document::OneCell(f),
            Ok(Value::TwoCell(a)) => Document::TwoCell(a),
            Err(_) => continue,
        };
        assert_eq!(from_json(&to_json(&doc)).unwrap(), doc, "{name}");
        ok += 1;
    }
    assert!(ok >= 9);
}
