#![no_main]

use costsem_core::stlc::check;
use costsem_core::surface::{parse_stlc, print_stlc};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_stlc(src) {
        let _ = check(&[], &t);
        let _ = print_stlc(&t);
    }
});
