#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(v) = grcat::text::parse_graph(src) {
            let again = grcat::text::parse_graph(&grcat::text::write_graph(v.name.as_deref(), &v.graph)).unwrap();
            assert_eq!(again, v);
        }
    }
});
