use std::ffi::{CStr, CString};
use std::ptr;

use qpl_ffi::*;

fn unit(k: usize) -> Vec<i64> {
    let mut v = vec![0i64; 40];
    v[k] = 1;
    v
}

unsafe fn last_error() -> String {
    let p = qpl_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(qpl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn quadruple_round_trip_and_errors() {
    unsafe {
        let coords: Vec<i64> = (0..40).map(|i| i - 20).collect();
        let mut q = ptr::null_mut();
        assert_eq!(qpl_quadruple_new(coords.as_ptr(), 40, &mut q), QplStatus::Ok);
        assert!(qpl_last_error().is_null());
        let mut s = ptr::null_mut();
        assert_eq!(qpl_quadruple_to_string(q, &mut s), QplStatus::Ok);
        let line = CStr::from_ptr(s).to_owned();
        qpl_string_free(s);
        let mut q2 = ptr::null_mut();
        assert_eq!(qpl_quadruple_parse(line.as_ptr(), &mut q2), QplStatus::Ok);
        let mut s2 = ptr::null_mut();
        qpl_quadruple_to_string(q2, &mut s2);
        assert_eq!(CStr::from_ptr(s2), line.as_c_str());
        qpl_string_free(s2);
        qpl_quadruple_free(q);
        qpl_quadruple_free(q2);

        let mut bad = ptr::null_mut();
        assert_eq!(qpl_quadruple_new(coords.as_ptr(), 39, &mut bad), QplStatus::InvalidArgument);
        assert!(last_error().contains("39"));
        let text = CString::new("1 2 x").unwrap();
        assert_eq!(qpl_quadruple_parse(text.as_ptr(), &mut bad), QplStatus::ParseError);
        assert!(last_error().contains("column"));
        assert_eq!(qpl_quadruple_new(ptr::null(), 40, &mut bad), QplStatus::NullPointer);
        assert!(bad.is_null());
    }
}

#[test]
fn classify_zero_and_act() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(qpl_quadruple_new(vec![0i64; 40].as_ptr(), 40, &mut q), QplStatus::Ok);
        let mut c = QplClassification {
            classified: true,
            i: 9,
            reducible: true,
            s5_certified: true,
        };
        assert_eq!(qpl_classify(q, 1, &mut c), QplStatus::Ok);
        assert!(!c.classified && c.i == 0);
        qpl_quadruple_free(q);

        // Swapping the first two matrices moves a12 to b12.
        let mut q = ptr::null_mut();
        qpl_quadruple_new(unit(0).as_ptr(), 40, &mut q);
        let mut g4 = [0i64; 16];
        g4[1] = 1;
        g4[4] = 1;
        g4[10] = 1;
        g4[15] = 1;
        let mut g5 = [0i64; 25];
        for i in 0..5 {
            g5[6 * i] = 1;
        }
        let mut moved = ptr::null_mut();
        assert_eq!(qpl_quadruple_act(q, g4.as_ptr(), g5.as_ptr(), &mut moved), QplStatus::Ok);
        let mut s = ptr::null_mut();
        qpl_quadruple_to_string(moved, &mut s);
        let want: Vec<String> = unit(10).iter().map(|v| v.to_string()).collect();
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), want.join(" "));
        qpl_string_free(s);
        qpl_quadruple_free(moved);

        g5[0] = 2;
        let mut rejected = ptr::null_mut();
        assert_eq!(
            qpl_quadruple_act(q, g4.as_ptr(), g5.as_ptr(), &mut rejected),
            QplStatus::InvalidArgument
        );
        qpl_quadruple_free(q);
    }
}

#[test]
fn atlas_handle() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(qpl_atlas_generate(&mut a), QplStatus::Ok);
        assert_eq!(qpl_atlas_len(a), 152);
        let mut label = ptr::null_mut();
        let mut k = 0u32;
        assert_eq!(qpl_atlas_case(a, 0, &mut label, &mut k), QplStatus::Ok);
        assert_eq!(k, 40);
        qpl_string_free(label);
        assert_eq!(qpl_atlas_case(a, 152, &mut label, &mut k), QplStatus::NotFound);
        qpl_atlas_free(a);
        assert_eq!(qpl_atlas_len(ptr::null()), 0);
    }
}

#[test]
fn beta_from_fixture_and_tame() {
    let dir = CString::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/localfields")).unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        let mut ok = false;
        assert_eq!(qpl_beta_p(2, dir.as_ptr(), &mut s, &mut ok), QplStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "37/32");
        assert!(ok);
        qpl_string_free(s);
        assert_eq!(qpl_beta_p(11, ptr::null(), &mut s, &mut ok), QplStatus::Ok);
        assert!(ok);
        qpl_string_free(s);
        assert_eq!(qpl_beta_p(3, ptr::null(), &mut s, &mut ok), QplStatus::InvalidArgument);
        assert!(last_error().contains("wild"));
    }
}

#[test]
fn run_cli() {
    let args: Vec<CString> = ["qpl", "--format", "text", "beta", "--infinity"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let ptrs: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let mut out = ptr::null_mut();
        let mut code = -1;
        assert_eq!(qpl_run(ptrs.len(), ptrs.as_ptr(), &mut out, &mut code), QplStatus::Ok);
        assert_eq!(code, 0);
        assert!(CStr::from_ptr(out).to_str().unwrap().contains("beta_infinity 13/120"));
        qpl_string_free(out);
        let mut code = -1;
        assert_eq!(qpl_run(2, [ptrs[0], c"nonsense".as_ptr()].as_ptr(), &mut out, &mut code), QplStatus::Ok);
        assert_eq!(code, 2);
        qpl_string_free(out);
    }
}
