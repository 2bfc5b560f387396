#![no_main]

use libfuzzer_sys::fuzz_target;
use prefixcode::{assign_codewords, compute_optimal, Instance, Options};

// First byte picks the instance, the rest is a letter stream.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let costs: &[u64] = match head % 4 {
        0 => &[1, 2],
        1 => &[2, 2, 5],
        2 => &[1, 1, 3, 4],
        _ => &[3, 5],
    };
    let n = 1 + (head as usize / 4) % 40;
    let inst = Instance::from_integers(costs, n).unwrap();
    let sol = compute_optimal(&inst, Options::default()).unwrap();
    let code = assign_codewords(&sol.tree, &inst).unwrap();
    let letters: Vec<u32> = rest
        .iter()
        .map(|&b| b as u32 % (costs.len() as u32 + 1))
        .collect();
    if let Ok(symbols) = code.decode(&letters) {
        assert_eq!(code.encode(&symbols).unwrap(), letters);
    }
});
