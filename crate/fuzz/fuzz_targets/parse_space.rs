#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(space) = ofm_core::io::parse_space(data) {
        if space.len() <= 4 && space.opens().len() <= 16 {
            for f in ofm_core::filter::open_filters(&space) {
                assert!(ofm_core::filter::is_open_filter(&space, f.members()));
            }
            let _ = space.specialization_order();
        }
    }
});
