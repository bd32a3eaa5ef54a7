#![no_main]

use libfuzzer_sys::fuzz_target;

use honeycomb::io;
use honeycomb::integralizer::potential;

fuzz_target!(|data: &str| {
    let Ok(hc) = io::parse_honeycomb(data) else { return };
    assert_eq!(io::parse_honeycomb(&io::honeycomb_json(&hc)).unwrap(), hc);
    let _ = hc.boundary_partition();
    let _ = potential(&hc);
    // Gluing the dual grid costs time proportional to the weights; keep
    // that to small inputs.
    if hc.total_weight() <= 64 {
        let _ = honeycomb::duality::honeycomb_to_grid(&hc);
    }
});
