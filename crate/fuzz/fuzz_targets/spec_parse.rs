#![no_main]

use divext::probe::ProbeConfig;
use divext::spec::parse_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let cfg = ProbeConfig { seed: 0, trials: 4 };
    if let Ok(doc) = parse_spec(text, cfg) {
        for name in doc.embedding_names() {
            let _ = doc.embedding(name).expect("listed").is_tight();
        }
    }
});
