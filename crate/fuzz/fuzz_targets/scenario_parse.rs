#![no_main]

use jcmp_core::simcore::Scenario;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let parsed = Scenario::from_toml_with(text, |_| Ok(jcmp_core::channel::DEFAULT_MODE_TABLE.to_string()));
    if let Ok(s) = parsed {
        // anything accepted must survive a canonical round trip
        let again = Scenario::from_toml_str(&s.to_toml_string()).expect("canonical form reparses");
        assert_eq!(again.content_hash(), s.content_hash());
    }
});
