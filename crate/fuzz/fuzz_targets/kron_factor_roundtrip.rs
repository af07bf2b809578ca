#![no_main]

use fm_lattice::transform::{kron, kron_factor, Mat2, Mat4};
use fm_lattice::Int;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: ([i16; 8], [i16; 16])| {
    let (pair, raw) = input;

    let a = Mat2([pair[0], pair[1], pair[2], pair[3]].map(Int::from));
    let b = Mat2([pair[4], pair[5], pair[6], pair[7]].map(Int::from));
    if a.det().abs() == 1 && b.det().abs() == 1 {
        let m = kron(&a, &b);
        let (fa, fb) = kron_factor(&m).expect("unimodular pairs factor");
        assert!((fa, fb) == (a, b) || (fa, fb) == (a.neg(), b.neg()));
        assert_eq!(kron(&fa, &fb), m);
    }

    // Arbitrary matrices must never panic, and any factorization found
    // must reproduce the input exactly.
    let m = Mat4(raw.map(Int::from));
    if let Some((fa, fb)) = kron_factor(&m) {
        assert_eq!(kron(&fa, &fb), m);
        assert_eq!(fa.det().abs(), 1);
        assert_eq!(fb.det().abs(), 1);
    }
});
