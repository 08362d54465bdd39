#![no_main]

use jcmp_core::channel::{per_rayleigh, ModeTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(tbl) = ModeTable::from_toml_str(text) {
        let back = ModeTable::from_records(&tbl.to_records()).expect("records reload");
        assert_eq!(back.len(), tbl.len());
        for m in tbl.modes() {
            let p = per_rayleigh(1.0, m).expect("valid mode evaluates");
            assert!((0.0..=1.0).contains(&p));
        }
    }
});
