#![no_main]

use libfuzzer_sys::fuzz_target;
use ofm_core::io::{parse_map, space_from_file, SpaceRef};
use ofm_core::topology::ContinuousMap;

fuzz_target!(|data: &[u8]| {
    if let Ok(file) = parse_map(data) {
        // only inline spaces; the fuzz target never touches the filesystem
        if let (SpaceRef::Inline(d), SpaceRef::Inline(c)) = (&file.domain, &file.codomain) {
            if let (Ok(domain), Ok(codomain)) = (space_from_file(d), space_from_file(c)) {
                if domain.len() <= 4 && codomain.len() <= 4 {
                    let _ = ContinuousMap::new(domain, codomain, &file.assignment);
                }
            }
        }
    }
});
