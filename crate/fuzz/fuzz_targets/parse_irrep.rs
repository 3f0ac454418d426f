//! The representation grammar must never panic; accepted literals round-trip
//! through Display, and binding them to a concrete group may reject but must
//! not crash.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ruelle_core::parse::{parse_irrep, resolve_irrep};
use ruelle_core::reps::{centralizer_m, maximal_compact};
use ruelle_core::rootdata::RankOneGroup;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(literal) = parse_irrep(text) {
        assert_eq!(parse_irrep(&literal.to_string()).expect("display must re-parse"), literal);
        // Binding against small groups exercises rank/dominance validation.
        for n in [1u32, 2, 3, 4] {
            let g = RankOneGroup::real_hyperbolic(n).unwrap();
            let _ = resolve_irrep(&literal, &maximal_compact(&g).unwrap());
            let _ = resolve_irrep(&literal, &centralizer_m(&g).unwrap());
        }
    }
});
