#![no_main]

use libfuzzer_sys::fuzz_target;
use prefixcode::{parse_cost_list, parse_rational, Instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_rational(text) {
        assert!(*q.numer() > 0 && *q.denom() > 0);
    }
    let Ok(costs) = parse_cost_list(text) else {
        return;
    };
    if let Ok(inst) = Instance::new(&costs, 3) {
        assert_eq!(inst.r(), costs.len());
        assert!(inst.costs().windows(2).all(|w| w[0] <= w[1]));
        // rescaling must be exact
        let mut sorted = costs.clone();
        sorted.sort();
        for (c, q) in inst.costs().iter().zip(&sorted) {
            let back = prefixcode::Rational::new(
                *c as u128 * inst.scale_numer() as u128,
                inst.scale_denom() as u128,
            );
            assert_eq!(&back, q);
        }
    }
});
