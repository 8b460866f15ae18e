#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(v) = grcat::text::parse_category(src) {
            let again = grcat::text::parse_category(&grcat::text::write_category(None, &v)).unwrap();
            assert_eq!(again, v);
        }
    }
});
