#![no_main]

use fm_lattice::parse::parse_mat2;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_mat2(text) {
        let canonical = m.0.map(|e| e.to_string()).join(",");
        assert_eq!(parse_mat2(&canonical), Ok(m));
    }
});
