#![no_main]

use fm_lattice::lattice::MukaiVector;
use fm_lattice::reduction::reduce_vector;
use fm_lattice::surface::all_types;
use fm_lattice::Int;
use libfuzzer_sys::fuzz_target;

// i32 entries keep every intermediate of a composed word orders of
// magnitude inside i128, so the overflow abort can never fire here.
fuzz_target!(|input: ([i32; 4], u8)| {
    let (entries, type_index) = input;
    let st = &all_types()[usize::from(type_index) % 13];
    let v = MukaiVector::from_array(entries.map(Int::from));
    if let Ok(report) = reduce_vector(&v, st) {
        assert!(report.verified);
        assert_eq!(report.word.matrix().apply(&MukaiVector::POINT), v);
        assert_eq!(
            report.trace.last().copied().unwrap_or(MukaiVector::POINT),
            v
        );
        for factor in report.word.factors() {
            factor.validate(st).unwrap();
        }
    }
});
