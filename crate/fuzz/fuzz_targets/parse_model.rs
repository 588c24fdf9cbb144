#![no_main]

use libfuzzer_sys::fuzz_target;
use momentkit::format::{model_to_json, parse_model};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(model) = parse_model(text) {
        // Anything accepted must survive a round trip unchanged.
        let again = parse_model(&model_to_json(&model)).expect("serialized model parses");
        assert_eq!(model_to_json(&again), model_to_json(&model));
    }
});
