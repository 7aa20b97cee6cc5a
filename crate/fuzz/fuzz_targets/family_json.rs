#![no_main]

use libfuzzer_sys::fuzz_target;

use riglab::core::{family_from_json, family_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(family) = family_from_json(text) {
        // accepted families uphold the invariants and round-trip
        // bit-exactly
        assert!(family.n() >= 1);
        for iv in family.intervals() {
            assert!(iv.lo() <= iv.hi());
            assert!(iv.lo().is_finite() && iv.hi().is_finite());
        }
        let serialized = family_to_json(&family);
        let back = family_from_json(&serialized).expect("own output re-parses");
        assert_eq!(family, back);
        assert_eq!(serialized, family_to_json(&back));
    }
});
