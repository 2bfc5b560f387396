#![no_main]

use libfuzzer_sys::fuzz_target;
use prefixcode::codec::{parse_letters, render_letters};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let glyphs: Vec<String> = [".", "_", "-."].iter().map(|s| s.to_string()).collect();
    if let Ok(letters) = parse_letters(text, Some(&glyphs), 3) {
        assert!(letters.iter().all(|&l| (1..=3).contains(&l)));
        assert_eq!(render_letters(&letters, Some(&glyphs)), text.trim());
    }
    if let Ok(letters) = parse_letters(text, None, 5) {
        let again = parse_letters(&render_letters(&letters, None), None, 5).unwrap();
        assert_eq!(again, letters);
    }
});
