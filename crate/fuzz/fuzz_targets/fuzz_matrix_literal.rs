#![no_main]

use cloudinv::parse::parse_matrix_literal;
use cloudinv::Matrix2;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = parse_matrix_literal(text) else {
        return;
    };
    assert!(m.is_finite());
    let again = parse_matrix_literal(&m.to_string()).expect("displayed literal parses");
    assert_eq!(again, m);
    let _ = Matrix2::try_from(m);
});
