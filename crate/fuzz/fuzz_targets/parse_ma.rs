#![no_main]

use costsem_core::algol::{check_cmd, check_exp};
use costsem_core::surface::{parse_ma, MaProgram};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    match parse_ma(src) {
        Ok(MaProgram::Exp(e)) => {
            let _ = check_exp(&[], &[], &e);
        }
        Ok(MaProgram::Cmd(m)) => {
            let _ = check_cmd(&[], &[], &m);
        }
        Err(_) => {}
    }
});
