#![no_main]

use cloudinv::parse::parse_family_literal;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(fam) = parse_family_literal(text) else {
        return;
    };
    let again = parse_family_literal(&fam.to_string()).expect("displayed literal parses");
    assert_eq!(again, fam);
    if let Ok(phi) = fam.identity_parameter() {
        let _ = fam.evaluate(phi);
    }
    let _ = fam.kernel_spec();
});
