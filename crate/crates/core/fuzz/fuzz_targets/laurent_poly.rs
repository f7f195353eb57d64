#![no_main]

use jetlink::polyring::LaurentPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 2048 {
        return;
    }
    if let Ok(p) = LaurentPoly::parse(text) {
        assert_eq!(LaurentPoly::parse(&p.to_string()).as_ref(), Ok(&p));
    }
});
