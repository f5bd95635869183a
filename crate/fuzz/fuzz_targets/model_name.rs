#![no_main]
use libfuzzer_sys::fuzz_target;
use massless::perception::{parse_model_name, ModelName, MAX_TWO_S};

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    match parse_model_name(&s) {
        Ok(ModelName::Spin(t)) | Ok(ModelName::SymPow(t)) => assert!((1..=MAX_TWO_S).contains(&t)),
        _ => {}
    }
});
