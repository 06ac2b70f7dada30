#![no_main]

use libfuzzer_sys::fuzz_target;
use twohilb::json::{from_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = from_json(text) {
        let written = to_json(&doc);
        let back = from_json(&written).expect("written document parses");
        assert_eq!(to_json(&back), written);
    }
});
