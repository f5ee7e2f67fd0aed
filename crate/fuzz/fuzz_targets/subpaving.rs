#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::SubPaving;

fuzz_target!(|s: &str| {
    if let Ok(sp) = SubPaving::parse(s) {
        let text = sp.to_text();
        assert_eq!(SubPaving::parse(&text).unwrap().to_text(), text);
    }
});
