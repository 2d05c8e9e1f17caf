#![no_main]
use libfuzzer_sys::fuzz_target;

use gluing_core::cog::{relation_matrix, Presentation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = Presentation::parse_text(text) else { return };
    let q = Presentation::parse_text(&p.to_text()).expect("printed presentation parses");
    assert_eq!(p.generators(), q.generators());
    assert_eq!(relation_matrix(&p), relation_matrix(&q));
});
