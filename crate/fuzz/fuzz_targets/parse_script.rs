#![no_main]
use kd3_core::format::script::{parse_script, serialize_script};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(moves) = parse_script(data) {
        let text = serialize_script(&moves);
        assert_eq!(
            parse_script(text.as_bytes()).expect("serialized script parses"),
            moves
        );
    }
});
