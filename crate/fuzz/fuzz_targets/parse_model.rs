#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(v) = grcat::text::parse_model(src) {
            let _ = grcat::text::write_model(None, &v);
        }
    }
});
