#![no_main]

use cloudinv::parse::parse_coeffs_literal;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lc) = parse_coeffs_literal(text) {
        assert!(lc.m.is_finite() && lc.h.is_finite());
    }
});
