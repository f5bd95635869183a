#![no_main]
use libfuzzer_sys::fuzz_target;
use massless::report::{parse_report_json, to_csv, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_report_json(s) {
        assert_eq!(parse_report_json(&to_json(&r)).unwrap(), r);
        let _ = to_csv(&r);
    }
});
