#![no_main]

use libfuzzer_sys::fuzz_target;
use momentkit::format::parse_point_set;
use momentkit::geometry::convex_hull;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(points) = parse_point_set(text) {
        // The rank-3 hull is quartic, keep inputs small.
        if points.len() <= 32 {
            let _ = convex_hull(&points);
        }
    }
});
