//! The rational grammar must never panic, and accepted values must survive a
//! Display → parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ruelle_core::parse::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_rational(text) {
        let reparsed = parse_rational(&value.to_string()).expect("canonical form must parse");
        assert_eq!(reparsed, value);
        assert!(!value.denom().to_string().starts_with('-'), "denominator must be positive");
    }
});
