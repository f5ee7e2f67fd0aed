#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::Interval;

fuzz_target!(|s: &str| {
    if let Ok(x) = s.parse::<Interval>() {
        // Whatever parses must print back to the same interval.
        assert_eq!(x.to_string().parse::<Interval>().unwrap(), x);
    }
});
