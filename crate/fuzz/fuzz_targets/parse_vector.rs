#![no_main]

use fm_lattice::parse::parse_vector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_vector(text) {
        // Accepted inputs must round-trip through the canonical form.
        let canonical = format!("{},{},{},{}", v.r, v.s1, v.s2, v.t);
        assert_eq!(parse_vector(&canonical), Ok(v));
    }
});
