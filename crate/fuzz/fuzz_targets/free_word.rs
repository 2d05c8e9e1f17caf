#![no_main]
use libfuzzer_sys::fuzz_target;

use gluing_core::cog::FreeWord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let names: Vec<String> = ["a", "b", "x_1"].iter().map(|s| s.to_string()).collect();
    if let Ok(w) = FreeWord::parse(text, &names) {
        let _ = w.free_reduce().cyclic_reduce();
    }
});
