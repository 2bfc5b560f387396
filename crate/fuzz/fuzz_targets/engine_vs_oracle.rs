#![no_main]

use libfuzzer_sys::fuzz_target;
use prefixcode::{brute_force_optimal, compute_optimal, Instance, Options};

// Bytes: n, then up to four letter costs.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let n = 1 + n as usize % 14;
    let costs: Vec<u64> = rest.iter().take(4).map(|&b| 1 + b as u64 % 9).collect();
    let Ok(inst) = Instance::from_integers(&costs, n) else {
        return;
    };
    let sol = compute_optimal(&inst, Options::default()).unwrap();
    if let Ok(res) = brute_force_optimal(&inst, 2_000_000) {
        assert_eq!(sol.optimal_cost, res.cost);
    }
});
