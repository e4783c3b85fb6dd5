#![no_main]
use kd3_core::format::presentation::{parse_presentation, serialize_presentation};
use kd3_core::groups::{count_homs, tietze_simplify, TargetGroup};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = parse_presentation(data) {
        let text = serialize_presentation(&p);
        assert_eq!(
            parse_presentation(text.as_bytes()).expect("serialized presentation parses"),
            p
        );
        if p.generators <= 4 && p.total_length() <= 64 {
            let q = tietze_simplify(&p, 32);
            let z = TargetGroup::Cyclic(6);
            assert_eq!(count_homs(&p, &z).ok(), count_homs(&q, &z).ok());
        }
    }
});
