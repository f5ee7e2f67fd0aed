#![no_main]

use libfuzzer_sys::fuzz_target;
use setmink::pgm::{decode_pgm, encode_pgm};

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = decode_pgm(data) {
        assert_eq!(img.pixels.len(), img.width * img.height);
        let back = decode_pgm(&encode_pgm(&img)).unwrap();
        assert_eq!(back.pixels, img.pixels);
    }
});
