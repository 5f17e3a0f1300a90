use std::ffi::{CStr, CString};
use std::ptr;

use clusterpos_ffi::*;

unsafe fn owned(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    cp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = cp_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn cheb_values_and_errors() {
    unsafe {
        let mut v = 0i64;
        assert_eq!(cp_cheb(3, 4, &mut v), CpStatus::Ok);
        assert_eq!(v, 8);
        assert!(cp_last_error().is_null());
        assert_eq!(cp_cheb(1, 5, &mut v), CpStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert_eq!(cp_cheb(3, 5, ptr::null_mut()), CpStatus::NullPointer);
    }
}

#[test]
fn greedy_matches_oracle() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cp_greedy_rank2(3, 5, &mut g), CpStatus::Ok);
        assert_eq!(cp_poly_num_terms(g), 19);
        assert_eq!(owned(cp_poly_min_coefficient(g)), "1");

        let b = [0i64, 3, -3, 0];
        let seq = [1usize, 2, 1];
        let mut o = ptr::null_mut();
        assert_eq!(cp_oracle_expand(b.as_ptr(), 2, seq.as_ptr(), seq.len(), 1, &mut o), CpStatus::Ok);
        let mut eq = false;
        assert_eq!(cp_poly_equal(g, o, &mut eq), CpStatus::Ok);
        assert!(eq);
        cp_poly_free(g);
        cp_poly_free(o);
    }
}

#[test]
fn json_round_trip_and_arithmetic() {
    unsafe {
        let names = [CString::new("x1").unwrap(), CString::new("x2").unwrap()];
        let ptrs: Vec<_> = names.iter().map(|c| c.as_ptr()).collect();
        let text = CString::new("x1^2 - x2^2").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(cp_poly_parse(ptrs.as_ptr(), 2, text.as_ptr(), &mut p), CpStatus::Ok);
        let text = CString::new("x1 + x2").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(cp_poly_parse(ptrs.as_ptr(), 2, text.as_ptr(), &mut d), CpStatus::Ok);

        let mut q = ptr::null_mut();
        assert_eq!(cp_poly_div_exact(p, d, &mut q), CpStatus::Ok);
        assert_eq!(owned(cp_poly_to_string(q)), "-x2 + x1");

        let mut back = ptr::null_mut();
        assert_eq!(cp_poly_mul(q, d, &mut back), CpStatus::Ok);
        let json = CString::new(owned(cp_poly_to_json(back))).unwrap();
        let mut parsed = ptr::null_mut();
        assert_eq!(cp_poly_from_json(json.as_ptr(), &mut parsed), CpStatus::Ok);
        let mut eq = false;
        cp_poly_equal(parsed, p, &mut eq);
        assert!(eq);

        let mut sum = ptr::null_mut();
        assert_eq!(cp_poly_add(q, d, &mut sum), CpStatus::Ok);
        assert_eq!(owned(cp_poly_to_string(sum)), "2*x1");

        let mut bad = ptr::null_mut();
        assert_eq!(cp_poly_div_exact(d, q, &mut bad), CpStatus::NotDivisible);
        assert!(bad.is_null());

        for h in [p, d, q, back, parsed, sum] {
            cp_poly_free(h);
        }
    }
}

#[test]
fn bad_inputs_map_to_codes() {
    unsafe {
        let junk = CString::new("{not json").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(cp_poly_from_json(junk.as_ptr(), &mut p), CpStatus::Parse);
        assert_eq!(cp_poly_from_json(ptr::null(), &mut p), CpStatus::NullPointer);
        assert!(last_error().contains("json"));

        let not_skew = [0i64, 1, 1, 0];
        let mut o = ptr::null_mut();
        assert_eq!(cp_oracle_expand(not_skew.as_ptr(), 2, ptr::null(), 0, 1, &mut o), CpStatus::InvalidArgument);
        let b = [0i64, 2, -2, 0];
        assert_eq!(cp_oracle_expand(b.as_ptr(), 2, ptr::null(), 0, 3, &mut o), CpStatus::InvalidArgument);

        assert_eq!(cp_poly_num_terms(ptr::null()), 0);
        assert!(cp_poly_to_json(ptr::null()).is_null());
        cp_poly_free(ptr::null_mut());
        cp_string_free(ptr::null_mut());
    }
}

#[test]
fn rank3_formulas_agree() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(cp_rank3_dyck(2, 2, 2, 5, &mut a), CpStatus::Ok);
        assert_eq!(cp_mixed_expand(2, 2, 2, 4, 1, 0, &mut b), CpStatus::Ok);
        let mut eq = false;
        cp_poly_equal(a, b, &mut eq);
        assert!(eq);
        cp_poly_free(a);
        cp_poly_free(b);

        let mut c = ptr::null_mut();
        assert_eq!(cp_rank3_dyck(2, 2, 1, 4, &mut c), CpStatus::AcyclicInput);
    }
}

#[test]
fn positivity_entry_points() {
    unsafe {
        let b = [0i64, 3, -7, -3, 0, 3, 7, -3, 0];
        let seq = [2usize, 1, 3, 1, 2, 1];
        let mut ok = false;
        assert_eq!(cp_verify_sequence(b.as_ptr(), seq.as_ptr(), seq.len(), 0.0, 0.0, &mut ok), CpStatus::Ok);
        assert!(ok);

        let c = [0i64, 2, -2, -2, 0, 2, 2, -2, 0];
        let seq = [1usize, 2, 3, 1];
        ok = false;
        assert_eq!(cp_check_positivity(c.as_ptr(), seq.as_ptr(), seq.len(), 4e6, 2e5, &mut ok), CpStatus::Ok);
        assert!(ok);

        let tiny = cp_check_positivity(c.as_ptr(), seq.as_ptr(), seq.len(), 1.0, 1.0, &mut ok);
        assert_eq!(tiny, CpStatus::ResourceLimit);
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(cp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/clusterpos.h")).unwrap();
    assert!(h.contains("#ifndef CLUSTERPOS_H"));
    assert!(h.contains("typedef struct CpPoly CpPoly;"));
    for f in [
        "cp_last_error",
        "cp_cheb",
        "cp_greedy_rank2",
        "cp_rank3_dyck",
        "cp_mixed_expand",
        "cp_oracle_expand",
        "cp_poly_parse",
        "cp_poly_from_json",
        "cp_poly_to_json",
        "cp_poly_free",
        "cp_string_free",
        "cp_check_positivity",
        "cp_verify_sequence",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("CP_STATUS_OK = 0"));
}
