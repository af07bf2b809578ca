#![no_main]

use fm_lattice::parse::parse_generator_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_generator_spec(text) {
        // Display emits the canonical tag:params form.
        assert_eq!(parse_generator_spec(&spec.to_string()), Ok(spec));
    }
});
