#![no_main]

use libfuzzer_sys::fuzz_target;

use honeycomb::io;

fuzz_target!(|data: &str| {
    if let Ok(set) = io::parse_edges(data) {
        assert_eq!(io::parse_edges(&io::edges_json(&set)).unwrap(), set);
    }
});
