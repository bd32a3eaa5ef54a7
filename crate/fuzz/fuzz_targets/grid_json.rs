#![no_main]

use libfuzzer_sys::fuzz_target;

use honeycomb::io;

fuzz_target!(|data: &str| {
    if let Ok(g) = io::parse_grid(data) {
        assert_eq!(io::parse_grid(&io::grid_json(&g)).unwrap(), g);
        let _ = g.sides();
        let _ = g.rhombi();
    }
});
