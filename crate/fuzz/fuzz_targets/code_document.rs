#![no_main]

use libfuzzer_sys::fuzz_target;
use prefixcode::CodeDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = CodeDocument::from_json(data) else {
        return;
    };
    let Ok(code) = doc.to_code() else {
        return;
    };
    assert_eq!(code.n(), doc.n);
    assert_eq!(code.total_length(), doc.optimal_cost);
    // with one word every stream is empty, so only n > 1 round-trips
    let symbols: Vec<usize> = if code.n() > 1 {
        (0..code.n()).collect()
    } else {
        Vec::new()
    };
    let letters = code.encode(&symbols).unwrap();
    assert_eq!(code.decode(&letters).unwrap(), symbols);
    let again = CodeDocument::from_json(doc.to_json().as_bytes()).unwrap();
    assert_eq!(again, doc);
});
