#![no_main]

use libfuzzer_sys::fuzz_target;

use honeycomb::io;

fuzz_target!(|data: &str| {
    if let Ok(h) = io::parse_cocirculation(data) {
        assert_eq!(io::parse_cocirculation(&io::cocirculation_json(&h)).unwrap(), h);
    }
});
