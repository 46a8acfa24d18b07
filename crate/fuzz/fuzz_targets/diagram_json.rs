#![no_main]

use infgon::diagram::ArcDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(diagram) = ArcDiagram::from_json(text) else { return };
    let json = diagram.to_json();
    assert_eq!(ArcDiagram::from_json(&json).as_ref(), Ok(&diagram));
    let (lo, hi) = diagram.min_window();
    if hi - lo <= 200 {
        let _ = diagram.validate(lo, hi);
    }
});
