#![no_main]

use fm_lattice::parse::parse_type_label;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(label) = parse_type_label(text) {
        assert_eq!(parse_type_label(label.as_str()), Ok(label));
    }
});
