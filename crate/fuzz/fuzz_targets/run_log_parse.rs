#![no_main]

use jcmp_core::simcore::parse_run_log;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = parse_run_log(text) {
        let mut out = String::new();
        for r in &records {
            out.push_str(&serde_json::to_string(r).unwrap());
            out.push('\n');
        }
        assert_eq!(parse_run_log(&out).unwrap(), records);
    }
});
