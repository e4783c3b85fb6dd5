#![no_main]
use kd3_core::format::matrix::{parse_matrix, serialize_matrix};
use kd3_core::matrix::smith_normal_form;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = parse_matrix(data) {
        let text = serialize_matrix(&m);
        assert_eq!(
            parse_matrix(text.as_bytes()).expect("serialized matrix parses"),
            m
        );
        if m.rows() <= 8 && m.cols() <= 8 {
            let snf = smith_normal_form(&m);
            assert_eq!(snf.rank, m.rank());
        }
    }
});
