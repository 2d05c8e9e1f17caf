#![no_main]
use libfuzzer_sys::fuzz_target;

use gluing_core::construction::GluedComplexJson;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(u) = GluedComplexJson::parse(text) {
        let back = GluedComplexJson::parse(&u.to_json()).expect("serialised complex parses");
        assert_eq!(u.to_json(), back.to_json());
    }
});
