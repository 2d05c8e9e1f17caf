#![no_main]
use libfuzzer_sys::fuzz_target;

use gluing_core::coxeter::{CoxeterMatrix, CoxeterSystem};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = (n % 6) as usize;
    if rest.len() < n * n {
        return;
    }
    let rows: Vec<Vec<u32>> =
        (0..n).map(|i| rest[i * n..(i + 1) * n].iter().map(|&b| u32::from(b % 8)).collect()).collect();
    if let Ok(m) = CoxeterMatrix::from_codes(&rows) {
        let sys = CoxeterSystem::with_default_labels(m);
        let _ = sys.nerve();
        let _ = sys.enumerate_ball(Some(3), 2000);
    }
});
