//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so the corpus stays meaningful on stable toolchains.

use std::path::PathBuf;

use prefixcode::codec::{parse_letters, render_letters};
use prefixcode::{
    assign_codewords, brute_force_optimal, compute_optimal, parse_cost_list, parse_rational,
    CodeDocument, Instance, Options, Rational,
};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_costs_seeds() {
    let mut accepted = 0;
    for (_, data) in seeds("parse_costs") {
        let Ok(text) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(q) = parse_rational(text) {
            assert!(*q.numer() > 0 && *q.denom() > 0);
        }
        let Ok(costs) = parse_cost_list(text) else {
            continue;
        };
        if let Ok(inst) = Instance::new(&costs, 3) {
            accepted += 1;
            let mut sorted = costs.clone();
            sorted.sort();
            for (c, q) in inst.costs().iter().zip(&sorted) {
                let back = Rational::new(
                    *c as u128 * inst.scale_numer() as u128,
                    inst.scale_denom() as u128,
                );
                assert_eq!(&back, q);
            }
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn parse_glyphs_seeds() {
    let glyphs: Vec<String> = [".", "_", "-."].iter().map(|s| s.to_string()).collect();
    for (name, data) in seeds("parse_glyphs") {
        let Ok(text) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(letters) = parse_letters(text, Some(&glyphs), 3) {
            assert_eq!(
                render_letters(&letters, Some(&glyphs)),
                text.trim(),
                "{name}"
            );
        }
        if let Ok(letters) = parse_letters(text, None, 5) {
            let again = parse_letters(&render_letters(&letters, None), None, 5).unwrap();
            assert_eq!(again, letters, "{name}");
        }
    }
}

#[test]
fn decode_letters_seeds() {
    for (name, data) in seeds("decode_letters") {
        let Some((&head, rest)) = data.split_first() else {
            continue;
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
            assert_eq!(code.encode(&symbols).unwrap(), letters, "{name}");
        }
    }
}

#[test]
fn code_document_seeds() {
    let mut valid = 0;
    for (name, data) in seeds("code_document") {
        let Ok(doc) = CodeDocument::from_json(&data) else {
            continue;
        };
        let Ok(code) = doc.to_code() else {
            continue;
        };
        valid += 1;
        assert_eq!(code.total_length(), doc.optimal_cost, "{name}");
        // with one word every stream is empty, so only n > 1 round-trips
        let symbols: Vec<usize> = if code.n() > 1 {
            (0..code.n()).collect()
        } else {
            Vec::new()
        };
        let letters = code.encode(&symbols).unwrap();
        assert_eq!(code.decode(&letters).unwrap(), symbols, "{name}");
        assert_eq!(
            CodeDocument::from_json(doc.to_json().as_bytes()).unwrap(),
            doc
        );
    }
    assert!(valid >= 5);
}

#[test]
fn engine_vs_oracle_seeds() {
    for (name, data) in seeds("engine_vs_oracle") {
        let Some((&n, rest)) = data.split_first() else {
            continue;
        };
        let n = 1 + n as usize % 14;
        let costs: Vec<u64> = rest.iter().take(4).map(|&b| 1 + b as u64 % 9).collect();
        let Ok(inst) = Instance::from_integers(&costs, n) else {
            continue;
        };
        let sol = compute_optimal(&inst, Options::default()).unwrap();
        let res = brute_force_optimal(&inst, 2_000_000).unwrap();
        assert_eq!(sol.optimal_cost, res.cost, "{name}");
    }
}
