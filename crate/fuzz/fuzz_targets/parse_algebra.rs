#![no_main]

use libfuzzer_sys::fuzz_target;
use ofm_core::filter::FilterSpace;
use ofm_core::io::{match_structure, parse_algebra, space_from_file, SpaceRef};

fuzz_target!(|data: &[u8]| {
    if let Ok(file) = parse_algebra(data) {
        if let SpaceRef::Inline(sf) = &file.space {
            if let Ok(space) = space_from_file(sf) {
                if space.len() <= 3 && space.opens().len() <= 8 {
                    if let Ok(fs) = FilterSpace::build(&space, Some(64), Some(256)) {
                        let _ = match_structure(&fs, &file.r);
                    }
                }
            }
        }
    }
});
