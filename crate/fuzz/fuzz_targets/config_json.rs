#![no_main]
use libfuzzer_sys::fuzz_target;
use massless::config::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = parse_config(s) {
        // accepted configs must survive their own validation and re-serialization
        assert!(cfg.validate().is_ok());
        let again = serde_json::to_string(&cfg).unwrap();
        assert_eq!(parse_config(&again).unwrap(), cfg);
    }
});
