#![no_main]
use libfuzzer_sys::fuzz_target;

use gluing_core::coxeter::{CoxeterMatrix, CoxeterSystem};

fuzz_target!(|data: &[u8]| {
    let Some((&shape, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    // A3, the (3,3,3) triangle group, or a free product of three Z/2.
    let codes = match shape % 3 {
        0 => vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]],
        1 => vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]],
        _ => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
    };
    let sys = CoxeterSystem::with_default_labels(CoxeterMatrix::from_codes(&codes).unwrap());
    let Ok(w) = sys.parse_word(text) else { return };
    // Normal forms come from braid-class search, sized for short words.
    if w.len() > 20 {
        return;
    }
    let printed = sys.format_word(&w);
    let back = sys.parse_word(&printed).expect("printed word parses");
    assert!(sys.equal(&w, &back).unwrap());
});
