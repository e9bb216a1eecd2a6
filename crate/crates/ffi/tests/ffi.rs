use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qsg_ffi::*;

fn form(json: &str) -> *mut QsgQForm {
    let s = CString::new(json).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { qsg_qform_from_json(s.as_ptr(), &mut q) }, QsgStatus::Ok);
    q
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qsg_string_free(s) };
    out
}

#[test]
fn ranks_through_handles() {
    let q = form(r#"{"n":4,"terms":[[0,1,1],[2,3,1]]}"#);
    let (mut n, mut r, mut g) = (0, 0, 0);
    unsafe {
        assert_eq!(qsg_qform_n(q, &mut n), QsgStatus::Ok);
        assert_eq!(qsg_qform_rank(q, &mut r), QsgStatus::Ok);
        assert_eq!(qsg_qform_gram_rank(q, &mut g), QsgStatus::Ok);
    }
    assert_eq!((n, r, g), (4, 2, 4));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qsg_qform_minimal_space_json(q, &mut s) }, QsgStatus::Ok);
    assert!(take(s).contains("\"basis\""));
    assert_eq!(unsafe { qsg_qform_to_json(q, &mut s) }, QsgStatus::Ok);
    let text = take(s);
    let back = form(&text);
    unsafe {
        qsg_qform_free(back);
        qsg_qform_free(q);
    }
}

#[test]
fn radical_membership_of_the_quadruple() {
    let a = form(r#"{"n":4,"terms":[[0,1,1],[2,3,1]]}"#);
    let b = form(r#"{"n":4,"terms":[[0,1,1],[2,3,-1]]}"#);
    let xw = form(r#"{"n":4,"terms":[[0,3,1]]}"#);
    let yz = form(r#"{"n":4,"terms":[[1,2,1]]}"#);
    let both = [xw as *const QsgQForm, yz as *const QsgQForm];
    let mut member = false;
    unsafe {
        assert_eq!(qsg_radical_product_member(a, b, both.as_ptr(), 2, &mut member), QsgStatus::Ok);
        assert!(member);
        assert_eq!(qsg_radical_product_member(a, b, both.as_ptr(), 1, &mut member), QsgStatus::Ok);
        assert!(!member);
        assert_eq!(qsg_radical_product_member(a, b, ptr::null(), 0, &mut member), QsgStatus::Precondition);
        for q in [a, b, xw, yz] {
            qsg_qform_free(q);
        }
    }
}

#[test]
fn classify_json() {
    let input = CString::new(
        r#"{"A":{"n":4,"terms":[[0,1,1],[2,3,1]]},"B":{"n":4,"terms":[[0,1,1],[2,3,-1]]},"third":[{"n":4,"terms":[[0,3,1]]}]}"#,
    )
    .unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qsg_classify_pair_json(input.as_ptr(), &mut out) }, QsgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert!(!v["reducible_combination"].is_null());
}

#[test]
fn errors_are_reported_not_raised() {
    let mut q = ptr::null_mut();
    let bad = CString::new("{\"n\":2,\"terms\":[[0,7,1]]}").unwrap();
    unsafe {
        assert_eq!(qsg_qform_from_json(bad.as_ptr(), &mut q), QsgStatus::InvalidInput);
        assert!(q.is_null());
        assert!(take(qsg_last_error()).contains("out of range"));
        assert_eq!(qsg_qform_from_json(ptr::null(), &mut q), QsgStatus::NullPointer);
        assert_eq!(qsg_qform_rank(ptr::null(), ptr::null_mut()), QsgStatus::NullPointer);
        let mut passed = false;
        assert_eq!(qsg_selftest_criterion(9, 0, &mut passed), QsgStatus::InvalidInput);
        assert_eq!(qsg_selftest_criterion(1, 0, &mut passed), QsgStatus::Ok);
        assert!(passed);
        qsg_string_free(ptr::null_mut());
        qsg_qform_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qsg.h")).unwrap();
    for name in [
        "qsg_qform_from_json",
        "qsg_qform_free",
        "qsg_qform_rank",
        "qsg_radical_product_member",
        "qsg_classify_pair_json",
        "qsg_last_error",
        "qsg_string_free",
        "QSG_STATUS_BUDGET_EXCEEDED",
    ] {
        assert!(h.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile_dir();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"qsg.h\"\nint main(void) { QsgQForm *q = 0; size_t r; \
         if (qsg_qform_rank(q, &r) != QSG_STATUS_NULL_POINTER) return 1; qsg_qform_free(q); return 0; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("qsg-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
