#![no_main]

use libfuzzer_sys::fuzz_target;

// Complex literals ("1.5", "1+2i", "-i", ...) come straight from config
// values; parsing must never panic, including on non-ASCII input and
// pathological sign/exponent placement.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = qscissors::config::parse_complex(text);
});
