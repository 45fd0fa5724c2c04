#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(poset) = ofm_core::io::parse_poset(data) {
        // small accepted inputs get the order machinery exercised too
        if poset.len() <= 4 {
            for x in 0..poset.len() {
                for y in 0..poset.len() {
                    assert_eq!(poset.way_below(x, y), poset.leq(x, y));
                }
            }
            let _ = poset.scott_opens();
        }
    }
});
