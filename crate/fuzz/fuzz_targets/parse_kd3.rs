#![no_main]
use kd3_core::format::{parse_kd3, serialize_document};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(doc) = parse_kd3(data) {
        let text = serialize_document(&doc);
        let again = parse_kd3(text.as_bytes()).expect("serialized document parses");
        assert_eq!(serialize_document(&again), text);
    }
});
