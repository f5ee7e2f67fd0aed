#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::IntervalBox;

fuzz_target!(|s: &str| {
    if let Ok(b) = s.parse::<IntervalBox>() {
        assert_eq!(b.to_string().parse::<IntervalBox>().unwrap(), b);
    }
});
