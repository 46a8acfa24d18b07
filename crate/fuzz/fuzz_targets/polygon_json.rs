#![no_main]

use infgon::polygon::PolygonAngulation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(polygon) = PolygonAngulation::from_json(text) else { return };
    assert_eq!(PolygonAngulation::from_json(&polygon.to_json()).as_ref(), Ok(&polygon));
    for &t in polygon.diagonals() {
        let options = polygon.polygon_mutations(t).expect("diagonal of a valid angulation");
        assert_eq!(options.len() as i64, polygon.d() + 1);
    }
});
