#![no_main]

use libfuzzer_sys::fuzz_target;
use twohilb::dsl::{eval_str, Value};
use twohilb::json::{from_json, to_json, Document};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let doc = match eval_str(text) {
        Ok(Value::OneCell(f)) => Document::OneCell(f),
        Ok(Value::TwoCell(a)) => Document::TwoCell(a),
        Err(_) => return,
    };
    let written = to_json(&doc);
    assert_eq!(from_json(&written).expect("evaluated cell serializes"), doc);
});
