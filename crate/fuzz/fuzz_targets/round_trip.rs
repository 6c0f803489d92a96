#![no_main]

use costsem_core::surface::{parse_ma, parse_stlc, print_cmd, print_exp, print_stlc, MaProgram};
use libfuzzer_sys::fuzz_target;

// First byte picks the language.
fuzz_target!(|data: &[u8]| {
    let Some((&lang, rest)) = data.split_first() else { return };
    let Ok(src) = std::str::from_utf8(rest) else { return };
    if lang % 2 == 0 {
        if let Ok(t) = parse_stlc(src) {
            assert_eq!(parse_stlc(&print_stlc(&t)).as_ref(), Ok(&t));
        }
    } else {
        match parse_ma(src) {
            Ok(MaProgram::Exp(e)) => assert_eq!(parse_ma(&print_exp(&e)), Ok(MaProgram::Exp(e))),
            Ok(MaProgram::Cmd(m)) => assert_eq!(parse_ma(&print_cmd(&m)), Ok(MaProgram::Cmd(m))),
            Err(_) => {}
        }
    }
});
