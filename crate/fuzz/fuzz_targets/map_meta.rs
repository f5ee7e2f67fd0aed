#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::raster::MapMeta;

fuzz_target!(|s: &str| {
    if let Ok(m) = MapMeta::parse(s) {
        assert!(m.resolution > 0.0 && m.origin.iter().all(|v| v.is_finite()));
    }
});
