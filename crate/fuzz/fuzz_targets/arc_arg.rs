#![no_main]

use infgon::arcs::Arc;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(arc) = text.parse::<Arc>() {
        assert!(arc.t() < arc.u());
        assert_eq!(arc.to_string().parse::<Arc>(), Ok(arc));
    }
});
