#![no_main]

use cloudinv::parse::{parse_cloud_csv, parse_cloud_csv_bytes, write_cloud_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(cloud) = parse_cloud_csv_bytes(data) else {
        return;
    };
    assert!(cloud.len() >= 2);
    let back = parse_cloud_csv(&write_cloud_csv(&cloud)).expect("written CSV parses");
    assert_eq!(back, cloud);
    let rs = cloud.raw_sums();
    assert!(rs.d >= 0.0 && rs.hn >= 0.0);
    let _ = cloud.linear_coefficients();
});
