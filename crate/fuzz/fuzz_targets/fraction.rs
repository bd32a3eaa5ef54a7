#![no_main]

use libfuzzer_sys::fuzz_target;

use honeycomb::rational;

fuzz_target!(|data: &str| {
    if let Ok(x) = rational::parse(data) {
        // The canonical form must parse back to the same value.
        let s = rational::format(&x);
        assert_eq!(rational::parse(&s).unwrap(), x);
    }
});
