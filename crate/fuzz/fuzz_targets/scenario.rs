#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::scenario::Scenario;

fuzz_target!(|s: &str| {
    let _ = Scenario::parse(s);
});
