#![no_main]
use libfuzzer_sys::fuzz_target;

use gluing_core::cog::Presentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Presentation::from_json(text) {
        let q = Presentation::from_json(&p.to_json()).expect("serialised presentation parses");
        assert_eq!(p.to_text(), q.to_text());
    }
});
