//! JSON decoding of the exact number types must never panic, must enforce
//! canonical form (positive squarefree radicand), and accepted values must
//! survive a serialize → deserialize round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ruelle_core::exactnum::{ComplexQuad, QuadExt, Rational};

fn round_trip<T>(value: &T)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let json = serde_json::to_string(value).expect("serialization is infallible");
    let back: T = serde_json::from_str(&json).expect("own output must deserialize");
    assert_eq!(&back, value);
}

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = serde_json::from_slice::<Rational>(data) {
        round_trip(&r);
    }
    if let Ok(q) = serde_json::from_slice::<QuadExt>(data) {
        assert!(q.d() >= 1, "radicand must be normalized positive");
        assert_eq!(q.d() == 1, q.is_rational());
        round_trip(&q);
    }
    if let Ok(z) = serde_json::from_slice::<ComplexQuad>(data) {
        round_trip(&z);
    }
});
