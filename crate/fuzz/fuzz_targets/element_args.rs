#![no_main]

use divext::constructions::{hamilton, quadratic_field};
use divext::scalar::FieldSpec;
use divext::spec::{parse_block, parse_elements};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let algebras = [hamilton(FieldSpec::Rationals), quadratic_field(FieldSpec::Prime(5), 2)];
    for alg in &algebras {
        if let Ok(xs) = parse_elements(text, alg) {
            assert!(xs.iter().all(|x| x.0.len() == alg.dim()));
        }
        if let Ok(block) = parse_block(text, alg) {
            assert_eq!(block.entries().len(), block.a * block.b);
        }
    }
});
