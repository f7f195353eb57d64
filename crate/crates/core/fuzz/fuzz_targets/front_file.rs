#![no_main]

use jetlink::front::FrontFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    let Ok(file) = FrontFile::parse(text) else { return };
    // anything accepted must render back to itself
    let again = FrontFile::parse(&file.to_string()).expect("rendered file reparses");
    assert_eq!(again, file);
    if file.word.word_area() <= 64 {
        if let Ok(f) = file.oriented() {
            let _ = f.classical_invariants();
        }
    }
});
