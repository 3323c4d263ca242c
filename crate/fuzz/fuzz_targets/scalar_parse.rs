#![no_main]

use divext::scalar::FieldSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for field in [FieldSpec::Rationals, FieldSpec::Prime(7), FieldSpec::Prime(4_294_967_291)] {
        if let Ok(x) = field.parse(text) {
            let again = field.parse(&x.to_string()).expect("printed scalars parse");
            assert_eq!(again, x);
            assert_eq!(field.from_json(&x.to_json()).expect("serialized scalars parse"), x);
        }
    }
});
