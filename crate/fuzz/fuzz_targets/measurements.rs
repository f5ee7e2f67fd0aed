#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::localization::{format_measurements, parse_measurements};

fuzz_target!(|s: &str| {
    if let Ok(ms) = parse_measurements(s) {
        let again = parse_measurements(&format_measurements(&ms)).unwrap();
        assert_eq!(again.len(), ms.len());
    }
});
