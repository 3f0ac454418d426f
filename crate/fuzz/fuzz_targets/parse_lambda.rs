//! The spectral-parameter grammar must never panic, and every accepted value
//! must re-parse from its canonical rendering to the same exact number.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ruelle_core::parse::parse_lambda;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_lambda(text) {
        // Parsed parts are plain rationals (no radical sneaks in via text).
        let re = value.re.as_rational().expect("real part is rational").clone();
        let im = value.im.as_rational().expect("imaginary part is rational").clone();
        let canonical = if im.is_negative() {
            format!("{re}-{}i", im.abs())
        } else {
            format!("{re}+{im}i")
        };
        assert_eq!(parse_lambda(&canonical).expect("canonical form must parse"), value);
    }
});
