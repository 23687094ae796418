use std::ffi::{CStr, CString};
use std::ptr;

use shortlrc_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(shortlrc_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn new_code(q: u64, n: usize, k: usize, r: usize) -> *mut ShortlrcCode {
    let mut code = ptr::null_mut();
    let st = unsafe { shortlrc_code_new(q, n, k, r, &mut code) };
    assert_eq!(st, ShortlrcStatus::Ok, "{}", last_error());
    assert!(!code.is_null());
    code
}

#[test]
fn accessors() {
    let code = new_code(13, 10, 5, 3);
    unsafe {
        assert_eq!(shortlrc_code_length(code), 10);
        assert_eq!(shortlrc_code_dimension(code), 5);
        assert_eq!(shortlrc_code_locality(code), 3);
        assert_eq!(shortlrc_code_field_order(code), 13);
        assert_eq!(shortlrc_code_distance(code), 4);
        assert_eq!(shortlrc_code_length(ptr::null()), 0);
        shortlrc_code_free(code);
        shortlrc_code_free(ptr::null_mut());
    }
}

#[test]
fn invalid_params_report_errors() {
    let mut code = ptr::null_mut();
    let st = unsafe { shortlrc_code_new(13, 9, 4, 3, &mut code) };
    assert_eq!(st, ShortlrcStatus::InvalidParams);
    assert!(code.is_null());
    assert!(last_error().contains("s = 1 not supported"));

    let st = unsafe { shortlrc_code_new(13, 10, 8, 3, &mut code) };
    assert_eq!(st, ShortlrcStatus::InvalidParams);
    let st = unsafe { shortlrc_code_new(13, 10, 5, 3, ptr::null_mut()) };
    assert_eq!(st, ShortlrcStatus::NullPointer);

    // success clears the message
    let code = new_code(13, 10, 5, 3);
    assert_eq!(last_error(), "");
    unsafe { shortlrc_code_free(code) };
}

#[test]
fn encode_repair_decode() {
    let code = new_code(13, 10, 5, 3);
    let msg = [1u32, 2, 3, 4, 5];
    let mut word = [0u32; 10];
    unsafe {
        assert_eq!(
            shortlrc_encode(code, msg.as_ptr(), 5, word.as_mut_ptr(), 10),
            ShortlrcStatus::Ok
        );
        for i in 1..=10 {
            let mut damaged = word;
            damaged[i - 1] = 0;
            let mut v = u32::MAX;
            assert_eq!(
                shortlrc_repair(code, damaged.as_ptr(), 10, i, &mut v),
                ShortlrcStatus::Ok
            );
            assert_eq!(v, word[i - 1], "coordinate {i}");
        }
        let mut v = 0;
        assert_eq!(
            shortlrc_repair(code, word.as_ptr(), 10, 11, &mut v),
            ShortlrcStatus::InvalidInput
        );

        let mut erased = [0u8; 10];
        erased[0] = 1;
        erased[5] = 1;
        erased[9] = 1;
        let mut out = [0u32; 5];
        let st = shortlrc_decode(code, word.as_ptr(), erased.as_ptr(), 10, out.as_mut_ptr(), 5);
        assert_eq!(st, ShortlrcStatus::Ok, "{}", last_error());
        assert_eq!(out, msg);

        let erased = [1u8, 1, 1, 1, 1, 1, 1, 0, 0, 0];
        let st = shortlrc_decode(code, word.as_ptr(), erased.as_ptr(), 10, out.as_mut_ptr(), 5);
        assert_eq!(st, ShortlrcStatus::Unrecoverable);

        // short output buffer, wrong lengths, out-of-field symbols
        assert_eq!(
            shortlrc_encode(code, msg.as_ptr(), 5, word.as_mut_ptr(), 9),
            ShortlrcStatus::InvalidInput
        );
        assert_eq!(
            shortlrc_encode(code, msg.as_ptr(), 4, word.as_mut_ptr(), 10),
            ShortlrcStatus::InvalidInput
        );
        let bad = [13u32, 0, 0, 0, 0];
        assert_eq!(
            shortlrc_encode(code, bad.as_ptr(), 5, word.as_mut_ptr(), 10),
            ShortlrcStatus::InvalidInput
        );
        assert_eq!(
            shortlrc_encode(ptr::null(), msg.as_ptr(), 5, word.as_mut_ptr(), 10),
            ShortlrcStatus::NullPointer
        );
        shortlrc_code_free(code);
    }
}

#[test]
fn json_roundtrip_matches_library() {
    let code = new_code(16, 14, 7, 3);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(shortlrc_code_to_json(code, &mut json), ShortlrcStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        let lib = shortlrc::codefile::spec_to_json(
            &shortlrc::build_code(&shortlrc::validate_params(16, 14, 7, 3).unwrap()).unwrap(),
        );
        assert_eq!(text, lib);

        let mut back = ptr::null_mut();
        assert_eq!(shortlrc_code_from_json(json, &mut back), ShortlrcStatus::Ok);
        assert_eq!(shortlrc_code_length(back), 14);
        shortlrc_string_free(json);

        let broken = CString::new(text.replace("\"gamma\"", "\"gama\"")).unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(
            shortlrc_code_from_json(broken.as_ptr(), &mut none),
            ShortlrcStatus::InvalidInput
        );
        assert!(none.is_null());
        assert!(!last_error().is_empty());
        shortlrc_code_free(back);
        shortlrc_code_free(code);
    }
}

#[test]
fn bounds_and_verify() {
    let mut b = ShortlrcBounds::default();
    unsafe {
        assert_eq!(shortlrc_bounds(10, 5, 3, &mut b), ShortlrcStatus::Ok);
    }
    assert_eq!(
        b,
        ShortlrcBounds {
            singleton_like: 5,
            improved: 4,
            improved_applicable: true,
            rate_bound_holds: true,
            delta: 1
        }
    );
    unsafe {
        assert_eq!(shortlrc_bounds(10, 4, 3, &mut b), ShortlrcStatus::Ok);
        assert!(!b.improved_applicable);
        assert_eq!(shortlrc_bounds(0, 4, 3, &mut b), ShortlrcStatus::InvalidParams);
    }

    let code = new_code(13, 10, 5, 3);
    let mut rep = ShortlrcVerifyReport::default();
    unsafe {
        assert_eq!(shortlrc_verify(code, 5_000_000, 0, 200, &mut rep), ShortlrcStatus::Ok);
        assert!(rep.all_passed);
        assert_eq!((rep.distance_found, rep.distance_expected), (4, 4));
        assert_eq!(
            shortlrc_verify(code, 1000, 0, 200, &mut rep),
            ShortlrcStatus::BudgetExceeded
        );
        shortlrc_code_free(code);
    }
}
